"""Instance file format: DIMACS-style clauses with weight and group metadata.

Grammar (one directive per line, ``#`` starts a comment):

    p <name> <num-vars>          header, required first directive
    g <group> <weight>           default weight for clauses of the group
    w <weight|-> <group> <lit..> 0   clause; '-' defers to group/policy default
    i <lit..> 0                  initial interpretation (at most once)
    e <lit..> 0                  expected end interpretation (optional)
    x <cost..>                   expected per-step explanation costs (optional)

Literals are signed integers over variables 1..num-vars.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError
from .formula import is_consistent
from .sequence import CostPolicy


@dataclass
class InstanceFile:
    name: str
    num_vars: int
    clauses: list[frozenset[int]] = field(default_factory=list)
    weights: list[int | None] = field(default_factory=list)
    groups: list[str] = field(default_factory=list)
    group_weights: dict[str, int] = field(default_factory=dict)
    initial: frozenset[int] = frozenset()
    expected_end: frozenset[int] | None = None
    expected_costs: list[int] | None = None

    def resolved_weights(self, policy: CostPolicy = CostPolicy()) -> list[int]:
        out = []
        for w, g in zip(self.weights, self.groups):
            if w is not None:
                out.append(w)
            else:
                out.append(self.group_weights.get(g, policy.constraint_weight))
        return out


def load_instance(path: str | Path) -> InstanceFile:
    return parse_instance(Path(path).read_text(), str(path))


def parse_instance(text: str, source: str = "<string>") -> InstanceFile:
    inst: InstanceFile | None = None
    saw_initial = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if inst is not None:
                raise ParseError("duplicate 'p' header", lineno)
            if len(parts) != 3:
                raise ParseError("'p' expects a name and a variable count", lineno)
            try:
                nv = int(parts[2])
            except ValueError:
                raise ParseError(f"bad variable count {parts[2]!r}", lineno)
            if nv < 0:
                raise ParseError("variable count must be non-negative", lineno)
            inst = InstanceFile(parts[1], nv)
            continue
        if inst is None:
            raise ParseError("file must start with a 'p <name> <vars>' header", lineno)
        if tag == "g":
            if len(parts) != 3:
                raise ParseError("'g' expects a group name and a weight", lineno)
            inst.group_weights[parts[1]] = _parse_weight(parts[2], lineno)
        elif tag == "w":
            if len(parts) < 4:
                raise ParseError("'w' expects a weight, a group and a clause", lineno)
            weight = None if parts[1] == "-" else _parse_weight(parts[1], lineno)
            lits = _parse_lits(parts[3:], inst.num_vars, lineno)
            if not lits:
                raise ParseError("empty clause", lineno)
            if not is_consistent(lits):
                raise ParseError("clause contains a literal and its negation", lineno)
            inst.clauses.append(frozenset(lits))
            inst.weights.append(weight)
            inst.groups.append(parts[2])
        elif tag == "i":
            if saw_initial:
                raise ParseError("duplicate 'i' directive", lineno)
            saw_initial = True
            lits = _parse_lits(parts[1:], inst.num_vars, lineno)
            if not is_consistent(lits):
                raise ParseError("inconsistent initial interpretation", lineno)
            inst.initial = frozenset(lits)
        elif tag == "e":
            lits = _parse_lits(parts[1:], inst.num_vars, lineno)
            if not is_consistent(lits):
                raise ParseError("inconsistent expected end interpretation", lineno)
            inst.expected_end = frozenset(lits)
        elif tag == "x":
            try:
                inst.expected_costs = [int(t) for t in parts[1:]]
            except ValueError:
                raise ParseError("expected integer costs", lineno)
        else:
            raise ParseError(f"unknown directive {tag!r}", lineno)
    if inst is None:
        raise ParseError(f"no 'p' header found in {source}")
    return inst


def _parse_weight(token: str, lineno: int) -> int:
    try:
        w = int(token)
    except ValueError:
        raise ParseError(f"bad weight {token!r}", lineno)
    if w <= 0:
        raise ParseError("weights must be positive", lineno)
    return w


def _parse_lits(tokens: list[str], num_vars: int, lineno: int) -> list[int]:
    if not tokens or tokens[-1] != "0":
        raise ParseError("literal list must end with 0", lineno)
    lits = []
    for col, tok in enumerate(tokens[:-1], start=1):
        try:
            lit = int(tok)
        except ValueError:
            raise ParseError(f"bad literal {tok!r}", lineno, col)
        if lit == 0:
            raise ParseError("literal 0 before the terminator", lineno, col)
        if abs(lit) > num_vars:
            raise ParseError(f"literal {lit} references an undeclared variable", lineno, col)
        lits.append(lit)
    return lits


def serialize_instance(inst: InstanceFile) -> str:
    lines = [f"p {inst.name} {inst.num_vars}"]
    for group, weight in sorted(inst.group_weights.items()):
        lines.append(f"g {group} {weight}")
    for clause, weight, group in zip(inst.clauses, inst.weights, inst.groups):
        w = "-" if weight is None else str(weight)
        lits = " ".join(str(l) for l in _ordered(clause))
        lines.append(f"w {w} {group} {lits} 0")
    lines.append("i " + " ".join(str(l) for l in _ordered(inst.initial)) + " 0"
                 if inst.initial else "i 0")
    if inst.expected_end is not None:
        lines.append("e " + " ".join(str(l) for l in _ordered(inst.expected_end)) + " 0")
    if inst.expected_costs is not None:
        lines.append("x " + " ".join(str(c) for c in inst.expected_costs))
    return "\n".join(lines) + "\n"


def save_instance(inst: InstanceFile, path: str | Path) -> None:
    Path(path).write_text(serialize_instance(inst))


def _ordered(lits) -> list[int]:
    return sorted(lits, key=lambda l: (abs(l), l < 0))
