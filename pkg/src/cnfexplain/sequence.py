"""Step-wise explanation sequences.

Drives any of the one-step searches (deletion-MUS sweep, constrained
optimal subset, bounded per-literal sweep, interleaved per-literal search)
from an initial interpretation to the maximal consequence of the
constraints, recording for every step which facts and constraints imply
which newly derived literals and at what cost.

Incremental mode keeps solver state alive across steps: one hitting-set
solver over the whole sequence formula for the constrained search (facts
enter at INF weight and are lowered once derived, derived negations are
raised to INF), or one solver per remaining literal for the bounded and
interleaved searches.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterable, Mapping, Sequence

from .engine import OcusStats, bootstrap_sets, ocus, ocus_bounded, ocus_split
from .errors import SolveTimeout
from .formula import (
    INF,
    ElementKind,
    Interpretation,
    Weight,
    WeightedFormula,
    build_literal_formula,
    build_sequence_formula,
    build_sequence_literal_formula,
    build_step_formula,
    interpretation_of,
    sorted_lits,
)
from .growing import GrowKind, GrowStrategy
from .hitting import ExactlyOne, HittingSetSolver, TriviallyTrue
from .mus import mus_deletion
from .oracle import FormulaOracle, polarity_from, propagate
from .timing import Deadline


class OneStepStrategy(Enum):
    MUS = "mus"
    OCUS = "ocus"
    OCUS_BOUND = "ocus-bound"
    OCUS_SPLIT = "ocus-split"


@dataclass(frozen=True)
class CostPolicy:
    """Default element weights: costly constraints, cheap facts."""

    constraint_weight: int = 60
    specific_constraint_weight: int = 100
    fact_weight: int = 1
    neg_weight: int = 1

    def resolve(self, constraints: Sequence, weights: Sequence[int | None] | None) -> list[int]:
        if weights is None:
            return [self.constraint_weight] * len(constraints)
        if len(weights) != len(constraints):
            raise ValueError("one weight per constraint required")
        return [self.constraint_weight if w is None else w for w in weights]


@dataclass
class StepStats:
    wall: float = 0.0
    time_hs: float = 0.0
    time_sat: float = 0.0
    time_grow: float = 0.0
    iterations: int = 0
    sets_added: int = 0

    def absorb(self, o: OcusStats) -> None:
        self.time_hs += o.time_hs
        self.time_sat += o.time_sat
        self.time_grow += o.time_grow
        self.iterations += o.iterations
        self.sets_added += o.sets_added


@dataclass(frozen=True)
class ExplanationStep:
    """One implication: used_facts and used_constraints imply the derived literals."""

    target: int
    used_facts: frozenset[int]
    used_constraints: frozenset[int]
    derived: frozenset[int]
    cost: Weight
    subset: frozenset[int]
    stats: StepStats = field(default_factory=StepStats, compare=False)


@dataclass
class ExplanationSequence:
    steps: list[ExplanationStep]
    initial: Interpretation
    final: Interpretation
    complete: bool = True

    def costs(self) -> list[Weight]:
        return [s.cost for s in self.steps]

    def derived(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for s in self.steps:
            out |= s.derived
        return out

    def explained_fraction(self) -> float:
        todo = len(self.final - self.initial)
        return 1.0 if todo == 0 else len(self.derived()) / todo


def explain_sequence(
    constraints: Sequence[Iterable[int]],
    policy: CostPolicy = CostPolicy(),
    i0: Iterable[int] = (),
    strategy: OneStepStrategy = OneStepStrategy.OCUS,
    grow: GrowStrategy = GrowStrategy(GrowKind.SAT),
    incremental: bool = True,
    constraint_weights: Sequence[int | None] | None = None,
    seed: int | None = None,
    time_limit: float | None = None,
    on_step: Callable[[ExplanationStep], None] | None = None,
) -> ExplanationSequence:
    """Explain everything the constraints entail from the initial interpretation.

    Returns a sequence of steps whose derived sets, together with ``i0``,
    reach the maximal consequence.  On a time limit the partial sequence is
    returned flagged incomplete.  Raises ContradictionError when constraints
    and ``i0`` conflict.
    """
    constraints = [frozenset(c) for c in constraints]
    weights = policy.resolve(constraints, constraint_weights)
    i0_f = interpretation_of(i0)
    deadline = Deadline.after(time_limit)
    iend = propagate(constraints, i0_f, deadline)
    hint = polarity_from(iend)
    runner = _Runner(constraints, weights, policy, i0_f, iend, grow, incremental, seed, hint)
    steps: list[ExplanationStep] = []
    current = i0_f
    complete = True
    while current != iend:
        if deadline is not None and deadline.expired():
            complete = False
            break
        t0 = time.perf_counter()
        try:
            subset, formula, ostats = runner.one_step(strategy, current, deadline)
            step = _decode_step(subset, formula, constraints, ostats)
            t1 = time.perf_counter()
            consequence = propagate(
                [constraints[c] for c in sorted(step.used_constraints)],
                step.used_facts,
                deadline,
            )
            step.stats.time_sat += time.perf_counter() - t1
        except SolveTimeout:
            complete = False
            break
        new = consequence - current
        assert new and new <= iend - current, "a step must derive new literals of the consequence"
        step = replace(step, derived=frozenset(new))
        current = current | new
        runner.after_step(new)
        step.stats.wall = time.perf_counter() - t0
        steps.append(step)
        if on_step is not None:
            on_step(step)
    return ExplanationSequence(steps, i0_f, iend, complete)


def _decode_step(
    subset: frozenset[int],
    formula: WeightedFormula,
    constraints: Sequence[frozenset[int]],
    ostats: OcusStats | None,
) -> ExplanationStep:
    """Split a step subset into used facts, used constraints and the target literal.

    Constraint elements are always added first, so an element index below
    len(constraints) is the position of the constraint in the input list.
    """
    ncons = len(constraints)
    used_constraints = []
    used_facts = []
    targets = []
    for e in sorted(subset):
        kind = formula.kind(e)
        if kind is ElementKind.CONSTRAINT:
            used_constraints.append(e)
        elif kind is ElementKind.FACT:
            (lit,) = formula.clause(e)
            used_facts.append(lit)
        else:
            (neg,) = formula.clause(e)
            targets.append(-neg)
    assert len(targets) == 1, "a step subset must contain exactly one literal to explain"
    assert all(e < ncons for e in used_constraints)
    stats = StepStats()
    if ostats is not None:
        stats.absorb(ostats)
    return ExplanationStep(
        target=targets[0],
        used_facts=frozenset(used_facts),
        used_constraints=frozenset(used_constraints),
        derived=frozenset(),
        cost=formula.costs.subset_cost(subset),
        subset=frozenset(subset),
        stats=stats,
    )


class _Runner:
    """Per-strategy one-step dispatch plus the persistent state of incremental modes."""

    def __init__(self, constraints, weights, policy, i0, iend, grow, incremental, seed, hint):
        self.constraints = constraints
        self.weights = weights
        self.policy = policy
        self.i0 = i0
        self.iend = iend
        self.grow = grow
        self.incremental = incremental
        self.seed = seed
        self.hint = hint
        self._whole: tuple[WeightedFormula, FormulaOracle, HittingSetSolver] | None = None
        self._per_literal: dict[int, tuple[WeightedFormula, FormulaOracle, HittingSetSolver]] = {}
        self._literal_costs: dict[int, Weight] = {}

    def one_step(self, strategy, current, deadline):
        if strategy is OneStepStrategy.MUS:
            return self._step_mus(current, deadline)
        if strategy is OneStepStrategy.OCUS:
            if self.incremental:
                return self._step_ocus_incremental(current, deadline)
            return self._step_ocus_fresh(current, deadline)
        if strategy is OneStepStrategy.OCUS_BOUND:
            return self._step_bounded(current, deadline)
        if strategy is OneStepStrategy.OCUS_SPLIT:
            return self._step_split(current, deadline)
        raise ValueError(f"unknown strategy {strategy}")

    def after_step(self, newly_derived: frozenset[int]) -> None:
        if self._whole is not None:
            formula, _, solver = self._whole
            update_weights_after_step(formula, solver, newly_derived, self.policy)
        for lit in list(self._per_literal):
            if lit in newly_derived:
                del self._per_literal[lit]
                continue
            formula, _, solver = self._per_literal[lit]
            update_weights_after_step(formula, solver, newly_derived, self.policy)

    # ----------------------------------------------------------- MUS baseline

    def _step_mus(self, current, deadline):
        formula = build_step_formula(
            self.constraints, self.weights, current, self.iend,
            self.policy.fact_weight, self.policy.neg_weight,
        )
        oracle = FormulaOracle(formula, seed=self.seed)
        base = formula.of_kind(ElementKind.CONSTRAINT) | formula.of_kind(ElementKind.FACT)
        best = None
        best_cost: Weight = INF
        stats = OcusStats()
        t0 = time.perf_counter()
        for lit in sorted_lits(self.iend - current):
            core = mus_deletion(base | {formula.neg_element(lit)}, oracle, self.hint, deadline)
            cost = formula.costs.subset_cost(core)
            if cost < best_cost:
                best, best_cost = core, cost
        stats.time_sat = time.perf_counter() - t0
        return best, formula, stats

    # ------------------------------------------------------------------ OCUS

    def _step_ocus_fresh(self, current, deadline):
        formula = build_step_formula(
            self.constraints, self.weights, current, self.iend,
            self.policy.fact_weight, self.policy.neg_weight,
        )
        oracle = FormulaOracle(formula, seed=self.seed)
        p = ExactlyOne(formula.of_kind(ElementKind.NEG_LIT))
        res = ocus(formula, formula.costs, p, self.grow, oracle=oracle, hint=self.hint,
                   deadline=deadline)
        assert res.found, "an optimal subset always exists under the exactly-one constraint"
        return res.subset, formula, res.stats

    def _step_ocus_incremental(self, current, deadline):
        if self._whole is None:
            formula = build_sequence_formula(
                self.constraints, self.weights, self.i0, self.iend,
                self.policy.fact_weight, self.policy.neg_weight,
            )
            oracle = FormulaOracle(formula, seed=self.seed)
            p = ExactlyOne(formula.of_kind(ElementKind.NEG_LIT))
            solver = HittingSetSolver(formula, formula.costs, p)
            self._whole = (formula, oracle, solver)
        formula, oracle, solver = self._whole
        res = ocus(formula, formula.costs, solver.constraint, self.grow,
                   state=solver, oracle=oracle, hint=self.hint, deadline=deadline)
        assert res.found, "an optimal subset always exists under the exactly-one constraint"
        return res.subset, formula, res.stats

    # --------------------------------------------------- per-literal variants

    def _literal_state(self, lit, current):
        if self.incremental:
            if lit not in self._per_literal:
                formula = build_sequence_literal_formula(
                    self.constraints, self.weights, self.i0, self.iend, lit,
                    self.policy.fact_weight, self.policy.neg_weight,
                )
                # facts derived before this state was created are already known
                for known in current - self.i0:
                    formula.costs.set_weight(formula.fact_element(known), self.policy.fact_weight)
                oracle = FormulaOracle(formula, seed=self.seed)
                solver = HittingSetSolver(formula, formula.costs, TriviallyTrue())
                self._per_literal[lit] = (formula, oracle, solver)
            return self._per_literal[lit]
        formula = build_literal_formula(
            self.constraints, self.weights, current, lit,
            self.policy.fact_weight, self.policy.neg_weight,
        )
        oracle = FormulaOracle(formula, seed=self.seed)
        solver = HittingSetSolver(formula, formula.costs, TriviallyTrue())
        return formula, oracle, solver

    def _sweep_order(self, remaining):
        """Cheapest previous per-literal bound first; literals never scored last."""
        scored = sorted(
            (l for l in remaining if l in self._literal_costs),
            key=lambda l: (self._literal_costs[l], abs(l), l < 0),
        )
        fresh = sorted_lits(l for l in remaining if l not in self._literal_costs)
        return scored + fresh

    def _step_bounded(self, current, deadline):
        best = None
        bound: Weight = INF
        stats = OcusStats()
        for lit in self._sweep_order(self.iend - current):
            formula, oracle, solver = self._literal_state(lit, current)
            res = ocus_bounded(formula, formula.costs, bound, self.grow,
                               state=solver, oracle=oracle, hint=self.hint, deadline=deadline)
            stats.merge(res.stats)
            if res.found:
                best = (res.subset, formula)
                bound = res.cost
                self._literal_costs[lit] = res.cost
        assert best is not None, "the unbounded first sweep call always finds a subset"
        return best[0], best[1], stats

    def _step_split(self, current, deadline):
        remaining = sorted_lits(self.iend - current)
        formulas = {}
        states = {}
        oracles = {}
        for lit in remaining:
            formula, oracle, solver = self._literal_state(lit, current)
            formulas[lit], oracles[lit], states[lit] = formula, oracle, solver
        lit, res = ocus_split(formulas, self.grow, states=states, oracles=oracles,
                              hint=self.hint, deadline=deadline)
        assert res.found, "per-literal step formulas always contain an unsatisfiable subset"
        return res.subset, formulas[lit], res.stats


def update_weights_after_step(
    formula: WeightedFormula,
    solver: HittingSetSolver,
    newly_derived: Iterable[int],
    policy: CostPolicy = CostPolicy(),
) -> None:
    """Once a literal is derived its fact becomes selectable at the fact weight
    and its negation becomes unselectable."""
    for lit in newly_derived:
        try:
            solver.set_weight(formula.fact_element(lit), policy.fact_weight)
        except KeyError:
            pass
        try:
            solver.set_weight(formula.neg_element(lit), INF)
        except KeyError:
            pass


# ----------------------------------------------------------- one-step entries


def onestep_mus(
    constraints: Sequence[Iterable[int]],
    i: Iterable[int],
    iend: Iterable[int],
    policy: CostPolicy = CostPolicy(),
    constraint_weights: Sequence[int | None] | None = None,
    seed: int | None = None,
    deadline: Deadline | None = None,
) -> tuple[frozenset[int], WeightedFormula]:
    """Cheapest deletion-MUS over the remaining literals (the sweep baseline)."""
    runner = _onestep_runner(constraints, i, iend, policy, constraint_weights, seed)
    subset, formula, _ = runner._step_mus(interpretation_of(i), deadline)
    return subset, formula


def onestep_ocus(
    constraints: Sequence[Iterable[int]],
    i: Iterable[int],
    iend: Iterable[int],
    grow: GrowStrategy = GrowStrategy(GrowKind.SAT),
    policy: CostPolicy = CostPolicy(),
    constraint_weights: Sequence[int | None] | None = None,
    seed: int | None = None,
    deadline: Deadline | None = None,
) -> tuple[frozenset[int], WeightedFormula, OcusStats]:
    """Cost-minimal step subset via the exactly-one constrained search."""
    runner = _onestep_runner(constraints, i, iend, policy, constraint_weights, seed)
    runner.grow = grow
    return runner._step_ocus_fresh(interpretation_of(i), deadline)


def onestep_bounded(
    constraints: Sequence[Iterable[int]],
    i: Iterable[int],
    iend: Iterable[int],
    grow: GrowStrategy = GrowStrategy(GrowKind.SAT),
    policy: CostPolicy = CostPolicy(),
    constraint_weights: Sequence[int | None] | None = None,
    seed: int | None = None,
    deadline: Deadline | None = None,
) -> tuple[frozenset[int], WeightedFormula, OcusStats]:
    """Cost-minimal step subset via the bounded per-literal sweep."""
    runner = _onestep_runner(constraints, i, iend, policy, constraint_weights, seed)
    runner.grow = grow
    return runner._step_bounded(interpretation_of(i), deadline)


def onestep_split(
    constraints: Sequence[Iterable[int]],
    i: Iterable[int],
    iend: Iterable[int],
    grow: GrowStrategy = GrowStrategy(GrowKind.SAT),
    policy: CostPolicy = CostPolicy(),
    constraint_weights: Sequence[int | None] | None = None,
    seed: int | None = None,
    deadline: Deadline | None = None,
) -> tuple[frozenset[int], WeightedFormula, OcusStats]:
    """Cost-minimal step subset via the interleaved per-literal search."""
    runner = _onestep_runner(constraints, i, iend, policy, constraint_weights, seed)
    runner.grow = grow
    return runner._step_split(interpretation_of(i), deadline)


def _onestep_runner(constraints, i, iend, policy, constraint_weights, seed) -> _Runner:
    constraints = [frozenset(c) for c in constraints]
    weights = policy.resolve(constraints, constraint_weights)
    iend_f = interpretation_of(iend)
    return _Runner(
        constraints, weights, policy, interpretation_of(i), iend_f,
        GrowStrategy(GrowKind.SAT), False, seed, polarity_from(iend_f),
    )
