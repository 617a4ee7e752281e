import random

import pytest

from cnfexplain.errors import ContradictionError
from cnfexplain.formula import ElementKind, WeightedFormula
from cnfexplain.maxsat import MaxSatProblem, maxsat_solve
from helpers import F2_CLAUSES, brute_max_satisfied, random_clauses


def formula_of(clauses):
    f = WeightedFormula()
    for c in clauses:
        f.add(c, ElementKind.CONSTRAINT, 1)
    return f


def test_unsat_f2_best_is_five():
    f = formula_of(F2_CLAUSES)
    sol = maxsat_solve(MaxSatProblem(frozenset(), frozenset(range(6))), f)
    assert len(sol.satisfied_soft) == 5


def test_soft_empty_returns_hard_model():
    f = formula_of(F2_CLAUSES)
    sol = maxsat_solve(MaxSatProblem(frozenset({0, 1}), frozenset()), f)
    assert sol.satisfied_soft == frozenset()
    assert all(f.satisfies(sol.model, e) for e in (0, 1))


def test_satisfiable_soft_all_satisfied():
    f = formula_of(F2_CLAUSES[:4])
    sol = maxsat_solve(MaxSatProblem(frozenset(), frozenset(range(4))), f)
    assert sol.satisfied_soft == frozenset(range(4))


def test_hard_unsat_raises():
    f = formula_of([[1], [-1]])
    with pytest.raises(ContradictionError):
        maxsat_solve(MaxSatProblem(frozenset({0, 1}), frozenset()), f)


def test_hard_clauses_always_satisfied():
    f = formula_of(F2_CLAUSES)
    sol = maxsat_solve(MaxSatProblem(frozenset({3, 5}), frozenset(range(6))), f)
    assert all(f.satisfies(sol.model, e) for e in (3, 5))
    assert {3, 5} <= sol.satisfied_soft


def test_optimum_matches_brute_force_on_random_instances():
    rng = random.Random(2024)
    for _ in range(80):
        nv = rng.randint(2, 9)
        clauses = random_clauses(rng, nv, rng.randint(3, 20))
        f = formula_of(clauses)
        k = rng.randint(0, len(clauses) // 2)
        hard_idx = frozenset(rng.sample(range(len(clauses)), k))
        hard = [clauses[e] for e in sorted(hard_idx)]
        soft_idx = frozenset(range(len(clauses))) - hard_idx
        soft = [clauses[e] for e in sorted(soft_idx)]
        try:
            want = brute_max_satisfied(hard, soft, nv)
        except AssertionError:
            with pytest.raises(ContradictionError):
                maxsat_solve(MaxSatProblem(hard_idx, soft_idx), f)
            continue
        sol = maxsat_solve(MaxSatProblem(hard_idx, soft_idx), f)
        got = len(sol.satisfied_soft & soft_idx)
        assert got == want, (clauses, sorted(hard_idx), got, want)
