"""Unweighted partial MaxSAT: maximize satisfied soft clauses under hard ones.

Linear SAT-UNSAT search over relaxation literals.  Each soft clause gets a
relaxation variable; a sequential unit counter over those variables is
encoded once and tightened through assumptions until the bound becomes
infeasible, so the last model is optimal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import ContradictionError
from .formula import Interpretation, WeightedFormula
from .satsolver import SatSolver
from .timing import Deadline


@dataclass(frozen=True)
class MaxSatProblem:
    hard: frozenset[int]
    soft: frozenset[int]
    hint: Mapping[int, bool] | None = None


@dataclass(frozen=True)
class MaxSatSolution:
    model: Interpretation
    satisfied_soft: frozenset[int]


def maxsat_solve(
    problem: MaxSatProblem,
    formula: WeightedFormula,
    deadline: Deadline | None = None,
) -> MaxSatSolution:
    """Model of the hard clauses satisfying as many soft clauses as possible."""
    nvars = formula.num_vars()
    solver = SatSolver(nvars)
    for e in sorted(problem.hard):
        solver.add_clause(formula.clause(e))
    soft = sorted(problem.soft - problem.hard)
    relax = []
    for e in soft:
        r = solver.new_var()
        relax.append(r)
        solver.add_clause([r, *formula.clause(e)])
    if not solver.solve(polarity=problem.hint, deadline=deadline):
        raise ContradictionError("hard clauses are unsatisfiable")
    best = _restrict(solver.model(), nvars)
    violated = _violated(formula, soft, best)
    if violated:
        counter_top = _encode_counter(solver, relax, width=len(violated))
        bound = len(violated) - 1
        while bound >= 0:
            assumption = -counter_top[bound]  # forbid "at least bound+1 relaxed"
            if not solver.solve([assumption], polarity=problem.hint, deadline=deadline):
                break
            best = _restrict(solver.model(), nvars)
            bound = len(_violated(formula, soft, best)) - 1
    satisfied = frozenset(e for e in problem.soft if formula.satisfies(best, e))
    assert all(formula.satisfies(best, e) for e in problem.hard)
    return MaxSatSolution(best, satisfied)


def _restrict(model: frozenset[int], nvars: int) -> Interpretation:
    return frozenset(l for l in model if abs(l) <= nvars)


def _violated(formula: WeightedFormula, soft: list[int], model: Interpretation) -> list[int]:
    return [e for e in soft if not formula.satisfies(model, e)]


def _encode_counter(solver: SatSolver, lits: list[int], width: int) -> list[int]:
    """Sequential at-least counter: returns outputs where output[j-1] is forced
    true whenever at least j of ``lits`` are true; assuming its negation caps
    the count at j-1."""
    width = min(width, len(lits))
    prev: list[int] = []
    for i, r in enumerate(lits):
        cur = [solver.new_var() for _ in range(min(i + 1, width))]
        solver.add_clause([-r, cur[0]])
        for j in range(len(prev)):
            if j < len(cur):
                solver.add_clause([-prev[j], cur[j]])
            if j + 1 < len(cur):
                solver.add_clause([-r, -prev[j], cur[j + 1]])
        prev = cur
    return prev
