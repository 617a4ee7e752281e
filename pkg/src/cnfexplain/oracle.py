"""Satisfiability oracle over element subsets of one weighted formula.

Every formula element gets a selector variable so that repeated subset
checks reuse one incremental solver (and its learned clauses).  Polarity
hints steer found models, which the grow strategies rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ContradictionError
from .formula import Interpretation, WeightedFormula, interpretation_of
from .satsolver import SatSolver
from .timing import Deadline


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    model: Interpretation | None = None
    #: on UNSAT from an element check: an unsatisfiable subset of the elements
    core: frozenset[int] | None = None

    def __post_init__(self):
        assert self.satisfiable == (self.model is not None)


def polarity_from(interpretation: Iterable[int]) -> dict[int, bool]:
    """Polarity hint assigning every variable the sign it takes in the interpretation."""
    return {abs(l): l > 0 for l in interpretation}


class FormulaOracle:
    """Assumption-based activation of formula elements on a shared solver."""

    def __init__(self, formula: WeightedFormula, seed: int | None = None):
        self.formula = formula
        self._nvars = formula.num_vars()
        self._solver = SatSolver(self._nvars, seed=seed)
        self._selector: list[int] = []
        self._element_of: dict[int, int] = {}
        for e in formula.indices():
            sel = self._solver.new_var()
            self._selector.append(sel)
            self._element_of[sel] = e
            self._solver.add_clause([-sel, *formula.clause(e)])

    def check(
        self,
        subset: Iterable[int],
        hint: Mapping[int, bool] | None = None,
        deadline: Deadline | None = None,
    ) -> SatResult:
        """Decide satisfiability of the conjunction of the subset's clauses."""
        assumptions = [self._selector[e] for e in sorted(subset)]
        sat = self._solver.solve(assumptions, polarity=hint, deadline=deadline)
        if not sat:
            core = frozenset(self._element_of[s] for s in self._solver.core())
            return SatResult(False, core=core)
        model = frozenset(l for l in self._solver.model() if abs(l) <= self._nvars)
        assert all(
            self.formula.clause(e) & model for e in subset
        ), "model does not satisfy an activated clause"
        return SatResult(True, model)

    def is_satisfiable(self, subset: Iterable[int], deadline: Deadline | None = None) -> bool:
        return self.check(subset, deadline=deadline).satisfiable


def check_clauses(
    clauses: Sequence[Iterable[int]],
    hint: Mapping[int, bool] | None = None,
    seed: int | None = None,
    deadline: Deadline | None = None,
) -> SatResult:
    """One-shot satisfiability check of a plain clause list."""
    nvars = max((abs(l) for c in clauses for l in c), default=0)
    solver = SatSolver(nvars, seed=seed)
    for c in clauses:
        solver.add_clause(c)
    if not solver.solve(polarity=hint, deadline=deadline):
        return SatResult(False)
    model = solver.model()
    assert all(frozenset(c) & model for c in clauses), "model does not satisfy the input"
    return SatResult(True, model)


def propagate(
    constraints: Sequence[Iterable[int]],
    i: Iterable[int] = (),
    deadline: Deadline | None = None,
) -> Interpretation:
    """Maximal consequence of ``constraints and i``: the literals true in every model.

    Computed by model-intersection refinement: take any model as the
    candidate, then repeatedly ask for a model falsifying at least one
    candidate literal and intersect, until no such model exists.
    """
    i_f = interpretation_of(i)
    nvars = max(
        max((abs(l) for c in constraints for l in c), default=0),
        max((abs(l) for l in i_f), default=0),
    )
    solver = SatSolver(nvars)
    for c in constraints:
        solver.add_clause(c)
    for l in i_f:
        solver.add_clause([l])
    if not solver.solve(deadline=deadline):
        raise ContradictionError("constraints and interpretation are unsatisfiable")
    candidate = set(solver.model())
    while True:
        solver.add_clause([-l for l in candidate])
        if not solver.solve(deadline=deadline):
            break
        candidate &= solver.model()
    result = frozenset(candidate)
    assert i_f <= result
    return result
