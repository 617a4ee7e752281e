import random

import pytest

from cnfexplain.errors import ContradictionError
from cnfexplain.formula import ElementKind, build_sequence_formula, build_step_formula
from cnfexplain.growing import GrowKind, GrowStrategy, corr_subsets, grow
from cnfexplain.oracle import FormulaOracle, polarity_from
from helpers import (
    RUN_CLAUSES,
    RUN_IEND,
    RUN_WEIGHTS,
    brute_max_satisfied,
    enumerate_models,
)

HINT = polarity_from(RUN_IEND)


def step1():
    f = build_step_formula(RUN_CLAUSES, RUN_WEIGHTS, [], RUN_IEND)
    return f, FormulaOracle(f)


def whole():
    f = build_sequence_formula(RUN_CLAUSES, RUN_WEIGHTS, [], RUN_IEND)
    return f, FormulaOracle(f)


def test_strategy_names():
    assert GrowStrategy.named("sat") == GrowStrategy(GrowKind.SAT)
    assert GrowStrategy.named("multi-subsetmax") == GrowStrategy(GrowKind.SUBSETMAX, True)
    assert GrowStrategy.named("multi-maxsat") == GrowStrategy(GrowKind.MAXSAT_DOMAIN, True)
    assert GrowStrategy.named("none") == GrowStrategy(GrowKind.NONE)
    with pytest.raises(ValueError):
        GrowStrategy(GrowKind.MAXSAT_FULL, multi=True)
    with pytest.raises(ValueError):
        GrowStrategy(GrowKind.NONE, multi=True)


def test_sat_grow_is_superset_and_satisfiable():
    f, oracle = step1()
    s = frozenset({f.neg_element(3)})
    grown = grow(s, f, GrowStrategy(GrowKind.SAT), oracle, hint=HINT)
    assert s <= grown
    assert oracle.check(grown).satisfiable


def test_grow_of_unsat_subset_raises():
    f, oracle = step1()
    with pytest.raises(ContradictionError):
        grow(frozenset({2, f.neg_element(1)}), f, GrowStrategy(GrowKind.SAT), oracle)


def test_subsetmax_grow_is_maximal():
    f, oracle = step1()
    s = frozenset({f.neg_element(3)})
    grown = grow(s, f, GrowStrategy(GrowKind.SUBSETMAX), oracle, hint=HINT)
    assert s <= grown
    assert oracle.check(grown).satisfiable
    for e in f.indices():
        if e not in grown:
            assert not oracle.check(grown | {e}).satisfiable


def test_subsetmax_fixpoint_on_maximal_subset():
    f, oracle = step1()
    s = frozenset({f.neg_element(3)})
    grown = grow(s, f, GrowStrategy(GrowKind.SUBSETMAX), oracle, hint=HINT)
    again = grow(grown, f, GrowStrategy(GrowKind.SUBSETMAX), oracle, hint=HINT)
    assert again == grown


def test_maxsat_domain_grow_minimizes_domain_complement():
    f, oracle = step1()
    s = frozenset({f.neg_element(1)})
    grown = grow(s, f, GrowStrategy(GrowKind.MAXSAT_DOMAIN), oracle, hint=HINT)
    domain = f.of_kind(ElementKind.CONSTRAINT) | f.of_kind(ElementKind.FACT)
    satisfied = len(grown & domain)
    # brute-force optimum: models of {-1} maximizing satisfied constraints
    want = brute_max_satisfied([f.clause(e) for e in s], [f.clause(e) for e in sorted(domain)], 3)
    assert satisfied == want


def test_maxsat_full_grow_counts_everything():
    f, oracle = step1()
    s = frozenset({f.neg_element(1)})
    grown = grow(s, f, GrowStrategy(GrowKind.MAXSAT_FULL), oracle, hint=HINT)
    want = brute_max_satisfied(
        [f.clause(e) for e in s], [f.clause(e) for e in f.indices()], 3
    )
    assert len(grown) == want


def test_corr_subsets_single_no_grow_is_plain_complement():
    f, oracle = step1()
    s = frozenset({f.neg_element(3)})
    (k,) = corr_subsets(s, f, GrowStrategy(GrowKind.NONE), oracle)
    assert k == frozenset(f.indices()) - s


def test_corr_subsets_disjoint_from_input_and_complement_satisfiable():
    f, oracle = step1()
    for strategy in (GrowKind.SAT, GrowKind.SUBSETMAX, GrowKind.MAXSAT_DOMAIN, GrowKind.MAXSAT_FULL):
        s = frozenset({f.neg_element(3)})
        for k in corr_subsets(s, f, GrowStrategy(strategy), oracle, hint=HINT):
            assert not (k & s)
            assert oracle.check(frozenset(f.indices()) - k).satisfiable


def test_single_mode_projected_view_matches_worked_example():
    f, oracle = whole()
    s = frozenset({f.neg_element(3)})
    (k,) = corr_subsets(s, f, GrowStrategy(GrowKind.SAT), oracle, projection=f.selectable())
    # unselectable facts are struck from the selectable view
    assert k & f.selectable() == {2, f.neg_element(-2)}  # the unit constraint and {x2}


def test_multi_sat_enumeration_of_worked_example():
    f, oracle = whole()
    s = frozenset({f.neg_element(3)})
    ks = corr_subsets(s, f, GrowStrategy(GrowKind.SAT, multi=True), oracle,
                      projection=f.selectable(), hint=HINT)
    assert len(ks) == 2
    projected = [k & f.selectable() for k in ks]
    assert all(projected)
    assert not (projected[0] & projected[1])
    for k in ks:
        assert oracle.check(frozenset(f.indices()) - k).satisfiable


def test_multi_modes_pairwise_disjoint_on_projection():
    f, oracle = whole()
    for kind in (GrowKind.SAT, GrowKind.SUBSETMAX, GrowKind.MAXSAT_DOMAIN):
        s = frozenset({f.neg_element(1)})
        ks = corr_subsets(s, f, GrowStrategy(kind, multi=True), oracle,
                          projection=f.selectable(), hint=HINT)
        assert ks
        projected = [k & f.selectable() for k in ks]
        for i, a in enumerate(projected):
            for b in projected[i + 1 :]:
                assert not (a & b)


def test_mss_complement_is_minimal_correction_subset():
    f, oracle = step1()
    s = frozenset({f.neg_element(3)})
    mss = grow(s, f, GrowStrategy(GrowKind.SUBSETMAX), oracle, hint=HINT)
    (k,) = corr_subsets(mss, f, GrowStrategy(GrowKind.SUBSETMAX), oracle, hint=HINT)
    assert k == frozenset(f.indices()) - mss
    # minimal: putting any element back leaves a correction subset no longer
    for e in k:
        assert not oracle.check(mss | {e}).satisfiable


def test_random_grow_invariants():
    rng = random.Random(5)
    f, oracle = whole()
    sat_subsets = []
    for model in enumerate_models(RUN_CLAUSES, 3):
        sat_subsets.append(f.satisfied_elements(model))
    for strategy in (GrowKind.SAT, GrowKind.SUBSETMAX):
        for base in sat_subsets:
            seed = frozenset(rng.sample(sorted(base), min(2, len(base))))
            grown = grow(seed, f, GrowStrategy(strategy), oracle, hint=HINT)
            assert seed <= grown
            assert oracle.check(grown).satisfiable
