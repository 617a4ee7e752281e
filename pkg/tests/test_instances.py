import pytest

from cnfexplain.errors import ParseError
from cnfexplain.instances import (
    InstanceFile,
    load_instance,
    parse_instance,
    save_instance,
    serialize_instance,
)
from cnfexplain.sequence import CostPolicy

RUNNING = """\
# the four-clause worked example
p running 3
g base 60
g spec 100
w - base -1 -2 3 0
w - base -1 2 3 0
w - spec 1 0
w - spec -2 -3 0
i 0
e 1 -2 3 0
x 101 122 102
"""


def test_parse_running_example():
    inst = parse_instance(RUNNING)
    assert inst.name == "running" and inst.num_vars == 3
    assert len(inst.clauses) == 4
    assert inst.initial == frozenset()
    assert inst.expected_end == {1, -2, 3}
    assert inst.expected_costs == [101, 122, 102]
    assert inst.resolved_weights() == [60, 60, 100, 100]


def test_explicit_weight_beats_group_default():
    inst = parse_instance("p t 2\ng g1 50\nw 7 g1 1 2 0\nw - g1 -1 0\ni 0\n")
    assert inst.resolved_weights() == [7, 50]


def test_policy_default_when_no_group_weight():
    inst = parse_instance("p t 1\nw - misc 1 0\ni 0\n")
    assert inst.resolved_weights(CostPolicy(constraint_weight=42)) == [42]


def test_facts_only_instance_is_valid():
    inst = parse_instance("p facts 2\ni 1 -2 0\n")
    assert inst.clauses == [] and inst.initial == {1, -2}


def test_round_trip(tmp_path):
    inst = parse_instance(RUNNING)
    path = tmp_path / "running.inst"
    save_instance(inst, path)
    again = load_instance(path)
    assert again == inst
    assert parse_instance(serialize_instance(again)) == inst


def test_undeclared_variable_rejected():
    with pytest.raises(ParseError):
        parse_instance("p t 2\nw - g 3 0\n")


def test_unknown_directive_rejected():
    with pytest.raises(ParseError) as err:
        parse_instance("p t 1\nq nonsense\n")
    assert err.value.line == 2


def test_missing_header_rejected():
    with pytest.raises(ParseError):
        parse_instance("w - g 1 0\n")


def test_inconsistent_initial_rejected():
    with pytest.raises(ParseError):
        parse_instance("p t 1\ni 1 -1 0\n")


def test_missing_terminator_rejected():
    with pytest.raises(ParseError):
        parse_instance("p t 2\nw - g 1 2\n")


def test_empty_clause_rejected():
    with pytest.raises(ParseError):
        parse_instance("p t 2\nw - g 0\n")


def test_nonpositive_weight_rejected():
    with pytest.raises(ParseError):
        parse_instance("p t 1\nw 0 g 1 0\n")


def test_duplicate_header_rejected():
    with pytest.raises(ParseError):
        parse_instance("p a 1\np b 1\n")
