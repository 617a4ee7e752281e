"""Grow strategies and correction-subset extraction.

Given a satisfiable element subset of an unsatisfiable formula, ``grow``
extends it to a larger satisfiable subset; the complement of the grown
subset is a correction subset and becomes a set-to-hit.  ``corr_subsets``
either emits one such complement or, in multi mode, keeps enlarging the
subset with the selectable part of each complement and emits a chain of
complements until the subset goes unsatisfiable.  Emitted sets are full
complements; with a projection the sets are pairwise disjoint on the
projected (currently selectable) vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .errors import ContradictionError
from .formula import ElementKind, Interpretation, WeightedFormula
from .maxsat import MaxSatProblem, maxsat_solve
from .oracle import FormulaOracle
from .timing import Deadline


class GrowKind(Enum):
    NONE = "none"
    SAT = "sat"
    SUBSETMAX = "subsetmax"
    MAXSAT_DOMAIN = "maxsat-domain"
    MAXSAT_FULL = "maxsat-full"


@dataclass(frozen=True)
class GrowStrategy:
    kind: GrowKind
    multi: bool = False

    def __post_init__(self):
        if self.multi and self.kind in (GrowKind.NONE, GrowKind.MAXSAT_FULL):
            raise ValueError(f"no multi variant for grow strategy {self.kind.value}")

    @classmethod
    def named(cls, name: str) -> "GrowStrategy":
        """Parse names like 'sat', 'multi-subsetmax', 'maxsat-domain', 'none'."""
        multi = name.startswith("multi-")
        base = name.removeprefix("multi-")
        if base == "maxsat":
            base = "maxsat-domain"
        return cls(GrowKind(base), multi)


def grow(
    s: frozenset[int],
    formula: WeightedFormula,
    strategy: GrowStrategy,
    oracle: FormulaOracle,
    selectable: frozenset[int] | None = None,
    hint: Mapping[int, bool] | None = None,
    model: Interpretation | None = None,
    deadline: Deadline | None = None,
) -> frozenset[int]:
    """Extend a satisfiable subset; the result is satisfiable and contains ``s``.

    A model witnessing satisfiability of ``s`` may be passed in to skip the
    initial oracle call.
    """
    if strategy.kind is GrowKind.NONE:
        return frozenset(s)
    if model is None:
        res = oracle.check(s, hint, deadline)
        if not res.satisfiable:
            raise ContradictionError("cannot grow an unsatisfiable subset")
        model = res.model
    if strategy.kind is GrowKind.SAT:
        return formula.satisfied_elements(model)
    if strategy.kind is GrowKind.SUBSETMAX:
        grown = set(formula.satisfied_elements(model))
        for e in formula.indices():
            if e in grown:
                continue
            res = oracle.check(sorted(grown | {e}), hint, deadline)
            if res.satisfiable:
                grown |= formula.satisfied_elements(res.model)
        return frozenset(grown)
    if strategy.kind is GrowKind.MAXSAT_DOMAIN:
        soft = formula.of_kind(ElementKind.CONSTRAINT) | formula.of_kind(ElementKind.FACT)
        if selectable is not None:
            soft &= selectable
    else:  # MAXSAT_FULL
        soft = frozenset(formula.indices())
    solution = maxsat_solve(MaxSatProblem(frozenset(s), soft, hint), formula, deadline)
    return formula.satisfied_elements(solution.model)


def corr_subsets(
    s: frozenset[int],
    formula: WeightedFormula,
    strategy: GrowStrategy,
    oracle: FormulaOracle,
    projection: frozenset[int] | None = None,
    hint: Mapping[int, bool] | None = None,
    model: Interpretation | None = None,
    deadline: Deadline | None = None,
) -> list[frozenset[int]]:
    """Nonempty list of correction subsets of the formula, each disjoint from ``s``.

    Every emitted set K is the complement of a satisfiable grown subset, so
    formula-minus-K is satisfiable.  In multi mode the satisfiable subset is
    enlarged by each complement restricted to the projection (when given)
    and another complement is extracted, until unsatisfiability stops the
    chain; the complements are then pairwise disjoint on the projection.
    """
    everything = frozenset(formula.indices())
    if strategy.kind is GrowKind.NONE:
        if model is None and not oracle.check(s, hint, deadline).satisfiable:
            raise ContradictionError("correction subsets start from a satisfiable subset")
        return [everything - s]
    if not strategy.multi:
        grown = grow(s, formula, strategy, oracle, selectable=projection, hint=hint,
                     model=model, deadline=deadline)
        return [everything - grown]
    emitted: list[frozenset[int]] = []
    current = frozenset(s)
    while True:
        if model is None:
            res = oracle.check(current, hint, deadline)
            if not res.satisfiable:
                break
            model = res.model
        grown = grow(current, formula, strategy, oracle, selectable=projection, hint=hint,
                     model=model, deadline=deadline)
        model = None
        complement = everything - grown
        emitted.append(complement)
        addition = complement if projection is None else complement & projection
        assert addition, "complement has no selectable part, the subset could not grow"
        current |= addition
    if not emitted:
        raise ContradictionError("correction subsets start from a satisfiable subset")
    return emitted
