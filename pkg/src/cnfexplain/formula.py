"""Literals, clauses, interpretations and the weighted element store.

Literals are non-zero signed integers in DIMACS convention: ``v`` is the
positive literal of variable ``v >= 1`` and ``-v`` its negation.  An
interpretation is a consistent set of literals.  A weighted formula is an
indexed store of clauses, each tagged as a problem constraint, a derived-fact
unit or a negated literal still to be derived, and each carrying a cost
weight.  Element indices are stable for the life of the formula so solvers
can keep handles across calls.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

#: Sentinel weight for elements that must never enter an optimal subset.
#: Absorbing under addition and larger than every finite weight.
INF = float("inf")

Weight = int | float
Clause = frozenset[int]
Interpretation = frozenset[int]


class ElementKind(Enum):
    CONSTRAINT = "constraint"
    FACT = "fact"
    NEG_LIT = "neg"


def variable(lit: int) -> int:
    return abs(lit)


def is_consistent(lits: Iterable[int]) -> bool:
    """True iff the set contains no complementary pair."""
    s = set(lits)
    return all(-l not in s for l in s)


def clause_of(lits: Iterable[int]) -> Clause:
    """Validate and freeze a clause: nonempty, no 0, no complementary pair."""
    c = frozenset(lits)
    if not c:
        raise ValueError("empty clause")
    if 0 in c:
        raise ValueError("literal 0 is not allowed")
    if not is_consistent(c):
        raise ValueError(f"clause contains a literal and its negation: {sorted(c)}")
    return c


def interpretation_of(lits: Iterable[int]) -> Interpretation:
    i = frozenset(lits)
    if 0 in i:
        raise ValueError("literal 0 is not allowed")
    if not is_consistent(i):
        raise ValueError(f"inconsistent interpretation: {sorted(i)}")
    return i


def negated_remaining(iend: Iterable[int], i: Iterable[int]) -> frozenset[int]:
    """The negations of the literals still to be explained, {-l for l in iend - i}."""
    iend_f = interpretation_of(iend)
    i_f = interpretation_of(i)
    if not i_f <= iend_f:
        raise ValueError("current interpretation is not a subset of the end interpretation")
    return frozenset(-l for l in iend_f - i_f)


def sorted_lits(lits: Iterable[int]) -> list[int]:
    """Stable literal order: by variable, positive before negative."""
    return sorted(lits, key=lambda l: (abs(l), l < 0))


class CostModel:
    """Per-element weights; the cost of a subset is the (INF-absorbing) sum."""

    def __init__(self, weights: Iterable[Weight] = ()):
        self._weights: list[Weight] = []
        for w in weights:
            self._weights.append(_checked_weight(w))

    def append(self, w: Weight) -> None:
        self._weights.append(_checked_weight(w))

    def weight(self, element: int) -> Weight:
        self._validate(element)
        return self._weights[element]

    def set_weight(self, element: int, w: Weight) -> None:
        self._validate(element)
        self._weights[element] = _checked_weight(w)

    def subset_cost(self, subset: Iterable[int]) -> Weight:
        total: Weight = 0
        for e in subset:
            self._validate(e)
            w = self._weights[e]
            if w == INF:
                return INF
            total += w
        return total

    def is_selectable(self, element: int) -> bool:
        return self.weight(element) != INF

    def __len__(self) -> int:
        return len(self._weights)

    def _validate(self, element: int) -> None:
        if not 0 <= element < len(self._weights):
            raise ValueError(f"unknown element index {element}")


def _checked_weight(w: Weight) -> Weight:
    if w == INF:
        return INF
    if not isinstance(w, int) or isinstance(w, bool) or w < 0:
        raise ValueError(f"weights must be non-negative integers or INF, got {w!r}")
    return w


class WeightedFormula:
    """Indexed clause store partitioned into constraints, facts and negated literals."""

    def __init__(self) -> None:
        self._clauses: list[Clause] = []
        self._kinds: list[ElementKind] = []
        self.costs = CostModel()
        self._fact_index: dict[int, int] = {}
        self._neg_index: dict[int, int] = {}

    def add(self, lits: Iterable[int], kind: ElementKind, weight: Weight) -> int:
        clause = clause_of(lits)
        if kind is not ElementKind.CONSTRAINT and len(clause) != 1:
            raise ValueError(f"{kind.value} elements must be unit clauses, got {sorted(clause)}")
        index = len(self._clauses)
        if kind is ElementKind.FACT:
            (lit,) = clause
            if lit in self._fact_index:
                raise ValueError(f"duplicate fact element for literal {lit}")
            self._fact_index[lit] = index
        elif kind is ElementKind.NEG_LIT:
            (lit,) = clause
            if lit in self._neg_index:
                raise ValueError(f"duplicate negated-literal element for {lit}")
            self._neg_index[lit] = index
        self._clauses.append(clause)
        self._kinds.append(kind)
        self.costs.append(weight)
        return index

    def __len__(self) -> int:
        return len(self._clauses)

    def indices(self) -> range:
        return range(len(self._clauses))

    def clause(self, element: int) -> Clause:
        return self._clauses[element]

    def kind(self, element: int) -> ElementKind:
        return self._kinds[element]

    def of_kind(self, kind: ElementKind) -> frozenset[int]:
        return frozenset(e for e, k in enumerate(self._kinds) if k is kind)

    def fact_element(self, lit: int) -> int:
        """Element index of the fact unit clause {lit}."""
        return self._fact_index[lit]

    def neg_element(self, lit: int) -> int:
        """Element index of the negated-literal unit clause {-lit}."""
        return self._neg_index[-lit]

    def num_vars(self) -> int:
        return max((abs(l) for c in self._clauses for l in c), default=0)

    def selectable(self) -> frozenset[int]:
        """Elements with finite weight, i.e. the vocabulary optimal subsets may use."""
        return frozenset(e for e in self.indices() if self.costs.is_selectable(e))

    def satisfies(self, model: Interpretation, element: int) -> bool:
        return bool(self._clauses[element] & model)

    def satisfied_elements(self, model: Interpretation) -> frozenset[int]:
        return frozenset(e for e in self.indices() if self._clauses[e] & model)

    def __iter__(self) -> Iterator[tuple[int, Clause, ElementKind, Weight]]:
        for e in self.indices():
            yield e, self._clauses[e], self._kinds[e], self.costs.weight(e)


def subset_cost(costs: CostModel, subset: Iterable[int]) -> Weight:
    return costs.subset_cost(subset)


def build_step_formula(
    constraints: Sequence[Iterable[int]],
    constraint_weights: Sequence[Weight],
    i: Iterable[int],
    iend: Iterable[int],
    fact_weight: int = 1,
    neg_weight: int = 1,
) -> WeightedFormula:
    """The per-step unsatisfiable formula: constraints, facts for ``i`` and the
    negations of the literals still to be derived.

    Constraint elements come first, in input order, so element index k < len
    (constraints) is the k-th input constraint in every formula built here.
    """
    if len(constraint_weights) != len(constraints):
        raise ValueError("one weight per constraint required")
    remaining_negs = negated_remaining(iend, i)
    f = WeightedFormula()
    for clause, w in zip(constraints, constraint_weights):
        f.add(clause, ElementKind.CONSTRAINT, w)
    for lit in sorted_lits(i):
        f.add([lit], ElementKind.FACT, fact_weight)
    for lit in sorted_lits(remaining_negs):
        f.add([lit], ElementKind.NEG_LIT, neg_weight)
    return f


def build_literal_formula(
    constraints: Sequence[Iterable[int]],
    constraint_weights: Sequence[Weight],
    i: Iterable[int],
    lit: int,
    fact_weight: int = 1,
    neg_weight: int = 1,
) -> WeightedFormula:
    """Single-literal step formula: constraints, facts for ``i`` and {-lit} only."""
    i_f = interpretation_of(i)
    if lit in i_f or -lit in i_f:
        raise ValueError(f"literal {lit} is already decided by the interpretation")
    f = WeightedFormula()
    for clause, w in zip(constraints, constraint_weights):
        f.add(clause, ElementKind.CONSTRAINT, w)
    for l in sorted_lits(i_f):
        f.add([l], ElementKind.FACT, fact_weight)
    f.add([-lit], ElementKind.NEG_LIT, neg_weight)
    return f


def build_sequence_literal_formula(
    constraints: Sequence[Iterable[int]],
    constraint_weights: Sequence[Weight],
    i0: Iterable[int],
    iend: Iterable[int],
    lit: int,
    fact_weight: int = 1,
    neg_weight: int = 1,
) -> WeightedFormula:
    """Persistent single-literal formula: constraints, facts for the whole end
    interpretation (INF until derived) and {-lit} only.  Stable element
    indices let one hitting-set state follow the literal across steps."""
    iend_f = interpretation_of(iend)
    i0_f = interpretation_of(i0)
    if lit not in iend_f or lit in i0_f:
        raise ValueError(f"literal {lit} is not awaiting explanation")
    f = WeightedFormula()
    for clause, w in zip(constraints, constraint_weights):
        f.add(clause, ElementKind.CONSTRAINT, w)
    for l in sorted_lits(iend_f):
        f.add([l], ElementKind.FACT, fact_weight if l in i0_f else INF)
    f.add([-lit], ElementKind.NEG_LIT, neg_weight)
    return f


def build_sequence_formula(
    constraints: Sequence[Iterable[int]],
    constraint_weights: Sequence[Weight],
    i0: Iterable[int],
    iend: Iterable[int],
    fact_weight: int = 1,
    neg_weight: int = 1,
) -> WeightedFormula:
    """Whole-sequence formula over constraints, all end-interpretation facts and
    the negations of everything left to derive from ``i0``.

    Facts not yet derived carry INF weight so the hitting-set solver cannot
    select them; the sequence driver lowers a fact to ``fact_weight`` and
    raises its negation to INF as literals get derived.
    """
    iend_f = interpretation_of(iend)
    i0_f = interpretation_of(i0)
    if not i0_f <= iend_f:
        raise ValueError("initial interpretation must be contained in the end interpretation")
    f = WeightedFormula()
    for clause, w in zip(constraints, constraint_weights):
        f.add(clause, ElementKind.CONSTRAINT, w)
    for lit in sorted_lits(iend_f):
        f.add([lit], ElementKind.FACT, fact_weight if lit in i0_f else INF)
    for lit in sorted_lits(iend_f - i0_f):
        f.add([-lit], ElementKind.NEG_LIT, neg_weight)
    return f
