"""Exact optimal weighted hitting sets under structural side constraints.

The solver owns a growing collection of sets-to-hit and answers repeated
"cheapest subset that hits everything and satisfies p" queries, as a MIP
solver would, but self-contained: depth-first branch and bound over element
inclusion.  Exactly-one groups are branched first, unit sets are forced by
fail-first subproblem selection, and a lower bound from pairwise-disjoint
unhit sets prunes the search.  INF-weight elements are never selectable.

Ties between equal-cost optima break toward the lexicographically smallest
sorted index tuple, which keeps every run reproducible.  (With strictly
positive weights every optimum is inclusion-minimal and the tie-break is
over all optima; zero-weight elements never enter a solution gratuitously.)  The incumbent of
the previous solve seeds the next one (warm restart), and sets-to-hit are
kept as a minimal antichain: supersets of stored sets are redundant because
hitting a subset implies hitting its superset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import SolveTimeout
from .formula import INF, CostModel, Weight, WeightedFormula
from .timing import Deadline


class StructuralConstraint:
    """Predicate on element subsets that hitting sets must satisfy."""

    def holds(self, subset: frozenset[int], costs: CostModel) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class TriviallyTrue(StructuralConstraint):
    def holds(self, subset, costs):
        return True


@dataclass(frozen=True)
class ExactlyOne(StructuralConstraint):
    over: frozenset[int]

    def __post_init__(self):
        if not self.over:
            raise ValueError("exactly-one group must be nonempty")

    def holds(self, subset, costs):
        return len(subset & self.over) == 1


@dataclass(frozen=True)
class CostBound(StructuralConstraint):
    """Strict upper bound: a subset qualifies iff its cost is below ``bound``."""

    bound: Weight

    def holds(self, subset, costs):
        return costs.subset_cost(subset) < self.bound


@dataclass(frozen=True)
class And(StructuralConstraint):
    parts: tuple[StructuralConstraint, ...]

    def holds(self, subset, costs):
        return all(p.holds(subset, costs) for p in self.parts)


def _normalize(p: StructuralConstraint) -> tuple[list[frozenset[int]], Weight]:
    """Flatten to (exactly-one groups, strict cost cap)."""
    groups: list[frozenset[int]] = []
    bound: Weight = INF

    def walk(c: StructuralConstraint) -> None:
        nonlocal bound
        if isinstance(c, TriviallyTrue):
            return
        if isinstance(c, ExactlyOne):
            groups.append(c.over)
        elif isinstance(c, CostBound):
            bound = min(bound, c.bound)
        elif isinstance(c, And):
            for part in c.parts:
                walk(part)
        else:
            raise TypeError(f"unsupported structural constraint {c!r}")

    walk(p)
    return groups, bound


class SetsToHit:
    """Deduplicated collection of nonempty element-index sets, kept minimal."""

    def __init__(self) -> None:
        self._sets: list[tuple[int, frozenset[int]]] = []
        self._next_id = 0

    def add(self, settohit: Iterable[int]) -> bool:
        s = frozenset(settohit)
        if not s:
            raise ValueError("empty set-to-hit would make the problem infeasible")
        if any(stored <= s for _, stored in self._sets):
            return False
        self._sets = [(i, stored) for i, stored in self._sets if not s < stored]
        self._sets.append((self._next_id, s))
        self._next_id += 1
        return True

    def __len__(self) -> int:
        return len(self._sets)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return (s for _, s in self._sets)

    def items(self) -> list[tuple[int, frozenset[int]]]:
        return list(self._sets)


class HittingSetSolver:
    """Incremental exact solver for cost-minimal constrained hitting sets."""

    def __init__(self, formula: WeightedFormula, costs: CostModel, p: StructuralConstraint):
        if costs is not formula.costs:
            raise ValueError("cost model must be the one owned by the formula")
        self.formula = formula
        self.costs = costs
        self.constraint = p
        self.sets = SetsToHit()
        self._universe = list(formula.indices())
        self._last: frozenset[int] | None = None
        self.solve_count = 0
        self.node_count = 0

    def set_constraint(self, p: StructuralConstraint) -> None:
        self.constraint = p

    def add_set(self, settohit: Iterable[int]) -> bool:
        s = frozenset(settohit)
        for e in s:
            self.costs.weight(e)  # raises on unknown index
        return self.sets.add(s)

    def set_weight(self, element: int, w: Weight) -> None:
        self.costs.set_weight(element, w)

    def solve(self, deadline: Deadline | None = None) -> frozenset[int] | None:
        """Cheapest subset hitting every stored set and satisfying the
        constraint, or None when no such subset exists."""
        self.solve_count += 1
        groups, bound = _normalize(self.constraint)
        weights = [self.costs.weight(e) for e in self._universe]

        def finite(e: int) -> bool:
            # group members outside the universe are simply unselectable
            return 0 <= e < len(weights) and weights[e] != INF

        sets = [(sid, s, tuple(sorted(e for e in s if finite(e)))) for sid, s in self.sets.items()]
        cap = math.inf if bound == INF else bound - 1

        best_cost = math.inf
        best_sol: frozenset[int] | None = None
        best_tup: tuple[int, ...] = ()
        seed = self._seed_incumbent(groups, bound)
        if seed is not None:
            best_cost, best_sol, best_tup = seed

        nodes = 0

        def search(cost, chosen, banned, unhit, gi):
            nonlocal best_cost, best_sol, best_tup, nodes
            nodes += 1
            if deadline is not None and nodes % 1024 == 0:
                deadline.check("hitting-set search")
            if gi < len(groups):
                group = groups[gi]
                already = [e for e in chosen if e in group]
                if len(already) > 1:
                    return
                if len(already) == 1:
                    search(cost, chosen, banned | (group - set(already)), unhit, gi + 1)
                    return
                tried: set[int] = set()
                for m in sorted(
                    (e for e in group if finite(e) and e not in banned),
                    key=lambda e: (weights[e], e),
                ):
                    if cost + weights[m] > min(best_cost, cap):
                        break
                    search(
                        cost + weights[m],
                        chosen + [m],
                        banned | tried | (group - {m}),
                        [s for s in unhit if m not in s[1]],
                        gi + 1,
                    )
                    tried.add(m)
                return
            # single pass: lower bound from disjoint unhit sets + fail-first target
            lb = 0
            used: set[int] = set()
            target_members: tuple[int, ...] | None = None
            target_key: tuple[int, int] | None = None
            for sid, sfro, smem in unhit:
                members = [e for e in smem if e not in banned]
                if not members:
                    return  # unhittable branch
                key = (len(members), sid)
                if target_key is None or key < target_key:
                    target_key, target_members = key, tuple(members)
                if used.isdisjoint(members):
                    lb += min(weights[e] for e in members)
                    used.update(members)
            if cost + lb > min(best_cost, cap):
                return
            if target_members is None:
                tup = tuple(sorted(chosen))
                if cost < best_cost or (cost == best_cost and tup < best_tup):
                    best_cost, best_sol, best_tup = cost, frozenset(chosen), tup
                return
            tried = set()
            for m in target_members:
                search(
                    cost + weights[m],
                    chosen + [m],
                    banned | tried,
                    [s for s in unhit if m not in s[1]],
                    gi,
                )
                tried.add(m)

        search(0, [], set(), sets, 0)
        self.node_count += nodes
        if best_sol is None:
            return None
        assert self.constraint.holds(best_sol, self.costs)
        assert all(best_sol & s for s in self.sets)
        self._last = best_sol
        return best_sol

    def _seed_incumbent(self, groups, bound):
        sol = self._last
        if sol is None:
            return None
        cost: Weight = 0
        for e in sol:
            w = self.costs.weight(e)
            if w == INF:
                return None
            cost += w
        if bound != INF and cost >= bound:
            return None
        if any(len(sol & g) != 1 for g in groups):
            return None
        if any(not (sol & s) for s in self.sets):
            return None
        return cost, sol, tuple(sorted(sol))


def hs_new(formula: WeightedFormula, costs: CostModel, p: StructuralConstraint) -> HittingSetSolver:
    return HittingSetSolver(formula, costs, p)


def hs_add_set(solver: HittingSetSolver, settohit: Iterable[int]) -> bool:
    return solver.add_set(settohit)


def hs_set_weight(solver: HittingSetSolver, element: int, w: Weight) -> None:
    solver.set_weight(element, w)


def hs_solve(solver: HittingSetSolver, deadline: Deadline | None = None) -> frozenset[int] | None:
    return solver.solve(deadline)
