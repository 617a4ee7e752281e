"""Optimal constrained unsatisfiable subset extraction.

The core loop alternates an exact constrained hitting-set solve over the
accumulated correction subsets with a satisfiability check of the candidate:
an unsatisfiable optimal hitting set of a collection of correction subsets
is an optimal constrained unsatisfiable subset of the formula, and an
infeasible hitting-set problem proves none exists.  Variants: a cost-bounded
run used for per-literal sweeps, and an interleaved search that advances
only the currently cheapest literal across independent per-literal states.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .errors import ContradictionError
from .formula import INF, CostModel, ElementKind, Weight, WeightedFormula
from .growing import GrowStrategy, corr_subsets
from .hitting import CostBound, HittingSetSolver, StructuralConstraint, TriviallyTrue
from .oracle import FormulaOracle
from .timing import Deadline


class OcusStatus(Enum):
    FOUND = "found"
    FAILURE = "failure"


@dataclass
class OcusStats:
    iterations: int = 0
    time_hs: float = 0.0
    time_sat: float = 0.0
    time_grow: float = 0.0
    sets_added: int = 0

    def merge(self, other: "OcusStats") -> None:
        self.iterations += other.iterations
        self.time_hs += other.time_hs
        self.time_sat += other.time_sat
        self.time_grow += other.time_grow
        self.sets_added += other.sets_added


@dataclass
class OcusResult:
    status: OcusStatus
    subset: frozenset[int] | None
    cost: Weight | None
    stats: OcusStats = field(default_factory=OcusStats)

    @property
    def found(self) -> bool:
        return self.status is OcusStatus.FOUND


def ocus(
    formula: WeightedFormula,
    costs: CostModel,
    p: StructuralConstraint,
    strategy: GrowStrategy,
    state: HittingSetSolver | None = None,
    oracle: FormulaOracle | None = None,
    hint: Mapping[int, bool] | None = None,
    deadline: Deadline | None = None,
    check_input: bool = True,
) -> OcusResult:
    """Cost-minimal unsatisfiable subset satisfying ``p``, by implicit hitting sets.

    A persistent hitting-set ``state`` carries sets-to-hit, weights and a warm
    incumbent across calls; a fresh one is created otherwise.
    """
    if costs is not formula.costs:
        raise ValueError("cost model must be the one owned by the formula")
    if oracle is None:
        oracle = FormulaOracle(formula)
    if state is None:
        state = HittingSetSolver(formula, costs, p)
    elif state.constraint != p:
        state.set_constraint(p)
    stats = OcusStats()
    selectable = formula.selectable()
    if check_input:
        t0 = time.perf_counter()
        sat_input = oracle.check(selectable, hint, deadline).satisfiable
        stats.time_sat += time.perf_counter() - t0
        if sat_input:
            raise ValueError("the (selectable part of the) formula is satisfiable; no unsatisfiable subset exists")
    previous_cost: Weight = 0
    while True:
        t0 = time.perf_counter()
        candidate = state.solve(deadline)
        stats.time_hs += time.perf_counter() - t0
        stats.iterations += 1  # one candidate hitting set examined
        if candidate is None:
            return OcusResult(OcusStatus.FAILURE, None, None, stats)
        cost = costs.subset_cost(candidate)
        assert cost >= previous_cost, "optimal hitting-set cost decreased while sets only grew"
        previous_cost = cost
        t0 = time.perf_counter()
        res = oracle.check(candidate, hint, deadline)
        stats.time_sat += time.perf_counter() - t0
        if not res.satisfiable:
            assert p.holds(candidate, costs)
            return OcusResult(OcusStatus.FOUND, candidate, cost, stats)
        t0 = time.perf_counter()
        corrections = corr_subsets(
            candidate, formula, strategy, oracle,
            projection=selectable, hint=hint, model=res.model, deadline=deadline,
        )
        stats.time_grow += time.perf_counter() - t0
        for k in corrections:
            changed = state.add_set(k)
            assert changed, "correction subset was already covered; the loop would not progress"
        stats.sets_added += len(corrections)


def ocus_bounded(
    formula: WeightedFormula,
    costs: CostModel,
    bound: Weight,
    strategy: GrowStrategy,
    state: HittingSetSolver | None = None,
    oracle: FormulaOracle | None = None,
    hint: Mapping[int, bool] | None = None,
    deadline: Deadline | None = None,
    check_input: bool = True,
) -> OcusResult:
    """Optimal unsatisfiable subset of a single-literal step formula, but only
    if one cheaper than ``bound`` exists; FAILURE otherwise."""
    negs = formula.of_kind(ElementKind.NEG_LIT)
    if len(negs) != 1:
        raise ValueError("bounded extraction expects the single-literal step formula")
    return ocus(
        formula, costs, CostBound(bound), strategy,
        state=state, oracle=oracle, hint=hint, deadline=deadline, check_input=check_input,
    )


def ocus_split(
    formulas: Mapping[int, WeightedFormula],
    strategy: GrowStrategy,
    states: Mapping[int, HittingSetSolver] | None = None,
    oracles: Mapping[int, FormulaOracle] | None = None,
    hint: Mapping[int, bool] | None = None,
    deadline: Deadline | None = None,
) -> tuple[int, OcusResult]:
    """Globally cheapest unsatisfiable subset across per-literal formulas.

    Keeps one hitting-set state per literal and repeatedly advances only the
    literal whose current optimal hitting set is cheapest; the first popped
    unsatisfiable hitting set is the global optimum.  Returns the winning
    literal and its result.
    """
    if not formulas:
        raise ValueError("at least one literal required")
    states = dict(states) if states else {}
    oracles = dict(oracles) if oracles else {}
    stats = OcusStats()
    queue: list[tuple[Weight, tuple[int, bool], int]] = []
    best_hs: dict[int, frozenset[int]] = {}
    for lit in sorted(formulas, key=_lit_key):
        f = formulas[lit]
        if lit not in states:
            states[lit] = HittingSetSolver(f, f.costs, TriviallyTrue())
        if lit not in oracles:
            oracles[lit] = FormulaOracle(f)
        t0 = time.perf_counter()
        candidate = states[lit].solve(deadline)
        stats.time_hs += time.perf_counter() - t0
        if candidate is None:
            continue
        best_hs[lit] = candidate
        heapq.heappush(queue, (f.costs.subset_cost(candidate), _lit_key(lit), lit))
    popped_floor: Weight = 0
    while queue:
        cost, _, lit = heapq.heappop(queue)
        assert cost >= popped_floor, "queue priorities must be non-decreasing"
        popped_floor = cost
        stats.iterations += 1  # one candidate hitting set examined
        f = formulas[lit]
        state, orc = states[lit], oracles[lit]
        candidate = best_hs[lit]
        t0 = time.perf_counter()
        res = orc.check(candidate, hint, deadline)
        stats.time_sat += time.perf_counter() - t0
        if not res.satisfiable:
            return lit, OcusResult(OcusStatus.FOUND, candidate, cost, stats)
        t0 = time.perf_counter()
        corrections = corr_subsets(
            candidate, f, strategy, orc,
            projection=f.selectable(), hint=hint, model=res.model, deadline=deadline,
        )
        stats.time_grow += time.perf_counter() - t0
        for k in corrections:
            state.add_set(k)
        stats.sets_added += len(corrections)
        t0 = time.perf_counter()
        candidate = state.solve(deadline)
        stats.time_hs += time.perf_counter() - t0
        if candidate is None:
            continue
        best_hs[lit] = candidate
        heapq.heappush(queue, (f.costs.subset_cost(candidate), _lit_key(lit), lit))
    return 0, OcusResult(OcusStatus.FAILURE, None, None, stats)


def _lit_key(lit: int) -> tuple[int, bool]:
    return (abs(lit), lit < 0)


def bootstrap_sets(
    state: HittingSetSolver,
    satsets: Iterable[Iterable[int]],
    formula: WeightedFormula,
) -> int:
    """Seed the solver with the complements of known satisfiable element subsets.

    Every subset of a satisfiable set is satisfiable, so each complement with
    respect to the current formula is a valid set-to-hit.  Returns the number
    of sets actually added.
    """
    universe = frozenset(formula.indices())
    added = 0
    for satset in satsets:
        k = universe - frozenset(satset)
        if k and state.add_set(k):
            added += 1
    return added


def bootstrap_from_clauses(
    state: HittingSetSolver,
    satisfiable_clause_sets: Iterable[Iterable[frozenset[int]]],
    formula: WeightedFormula,
) -> int:
    """Bootstrap across formulas: satisfiable subsets remembered as clause sets
    are mapped onto the current formula's elements by clause identity."""
    mapped = []
    for clauses in satisfiable_clause_sets:
        cset = set(clauses)
        mapped.append([e for e in formula.indices() if formula.clause(e) in cset])
    return bootstrap_sets(state, mapped, formula)
