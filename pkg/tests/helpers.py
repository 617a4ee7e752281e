"""Shared fixtures and independent brute-force oracles for the test suite.

The oracles here deliberately avoid the package's solvers: satisfiability
and model sets come from assignment bitmasks, optima from exhaustive subset
enumeration, so they can certify the real implementations.
"""

from __future__ import annotations

import itertools
import random

from cnfexplain.formula import INF

# The four-clause running example and its cost model.
RUN_CLAUSES = [
    frozenset({-1, -2, 3}),   # c1
    frozenset({-1, 2, 3}),    # c2
    frozenset({1}),           # c3
    frozenset({-2, -3}),      # c4
]
RUN_WEIGHTS = [60, 60, 100, 100]
RUN_IEND = frozenset({1, -2, 3})

# The six-clause unsatisfiable formula; {c1, c2, c4, c6} is one of its cores.
F2_CLAUSES = [
    frozenset({-1, -2, 3}),   # c1
    frozenset({-1, 2, 3}),    # c2
    frozenset({-2, -3}),      # c3
    frozenset({1}),           # c4
    frozenset({-1, 2}),       # c5
    frozenset({-1, -3}),      # c6
]


# ------------------------------------------------------- assignment bitmasks

def true_mask(var: int, nvars: int) -> int:
    """Bit a is set iff assignment a (little-endian var bits) makes var true."""
    half = 1 << (var - 1)
    mask = ((1 << half) - 1) << half
    width = 1 << var
    total = 1 << nvars
    while width < total:
        mask |= mask << width
        width <<= 1
    return mask & ((1 << total) - 1)


def clause_mask(clause, nvars: int) -> int:
    full = (1 << (1 << nvars)) - 1
    m = 0
    for lit in clause:
        t = true_mask(abs(lit), nvars)
        m |= t if lit > 0 else (full ^ t)
    return m


def models_mask(clauses, nvars: int) -> int:
    m = (1 << (1 << nvars)) - 1
    for c in clauses:
        m &= clause_mask(c, nvars)
    return m


def brute_satisfiable(clauses, nvars: int) -> bool:
    return models_mask(clauses, nvars) != 0


def brute_consequence(clauses, units, nvars: int) -> frozenset[int]:
    """Literals true in every model of clauses plus unit literals."""
    m = models_mask(list(clauses) + [[l] for l in units], nvars)
    assert m != 0, "consequence of an unsatisfiable formula is undefined"
    out = []
    for v in range(1, nvars + 1):
        t = true_mask(v, nvars) & ((1 << (1 << nvars)) - 1)
        if m & t == m:
            out.append(v)
        elif m & t == 0:
            out.append(-v)
    return frozenset(out)


def enumerate_models(clauses, nvars: int):
    m = models_mask(clauses, nvars)
    a = 0
    while m:
        if m & 1:
            yield frozenset(v if (a >> (v - 1)) & 1 else -v for v in range(1, nvars + 1))
        m >>= 1
        a += 1


# ------------------------------------------------------ exhaustive optimizers

def brute_min_hitting(sets, weights, groups=(), bound=INF):
    """(cost, subset) of the cheapest hitting set satisfying the constraints,
    or None; ties broken toward the lexicographically smallest index tuple."""
    n = len(weights)
    best = None
    for bits in range(1 << n):
        subset = [e for e in range(n) if bits >> e & 1]
        if any(weights[e] == INF for e in subset):
            continue
        if any(len([e for e in subset if e in g]) != 1 for g in groups):
            continue
        if any(not (set(subset) & s) for s in sets):
            continue
        cost = sum(weights[e] for e in subset)
        if bound != INF and cost >= bound:
            continue
        key = (cost, tuple(subset))
        if best is None or key < best:
            best = key
    return best


def brute_ocus(clauses, weights, nvars, groups=(), bound=INF):
    """(cost, subset) of the cheapest unsatisfiable p-true subset, or None."""
    n = len(clauses)
    masks = [clause_mask(c, nvars) for c in clauses]
    full = (1 << (1 << nvars)) - 1
    combined = [full] * (1 << n)
    best = None
    for bits in range(1, 1 << n):
        low = bits & -bits
        combined[bits] = combined[bits ^ low] & masks[low.bit_length() - 1]
        if combined[bits]:
            continue  # satisfiable
        subset = [e for e in range(n) if bits >> e & 1]
        if any(weights[e] == INF for e in subset):
            continue
        if any(len([e for e in subset if e in g]) != 1 for g in groups):
            continue
        cost = sum(weights[e] for e in subset)
        if bound != INF and cost >= bound:
            continue
        key = (cost, tuple(subset))
        if best is None or key < best:
            best = key
    return best


def brute_max_satisfied(hard, soft, nvars) -> int:
    """Maximum number of soft clauses satisfiable together with all hard ones."""
    best = -1
    for bits in range(1 << nvars):
        assign = {v: bool(bits >> (v - 1) & 1) for v in range(1, nvars + 1)}
        if not all(any(assign[abs(l)] == (l > 0) for l in c) for c in hard):
            continue
        best = max(best, sum(1 for c in soft if any(assign[abs(l)] == (l > 0) for l in c)))
    assert best >= 0, "hard clauses are unsatisfiable"
    return best


# --------------------------------------------------------- random generators

def random_clauses(rng: random.Random, nvars: int, nclauses: int, max_len: int = 3):
    clauses = []
    for _ in range(nclauses):
        k = rng.randint(1, min(max_len, nvars))
        vs = rng.sample(range(1, nvars + 1), k)
        clauses.append(frozenset(v if rng.random() < 0.5 else -v for v in vs))
    return clauses


def random_unsat_clauses(rng: random.Random, nvars: int, nclauses: int):
    """Random clause list that is unsatisfiable as a whole (rejection sampling)."""
    while True:
        clauses = random_clauses(rng, nvars, nclauses)
        if not brute_satisfiable(clauses, nvars):
            return clauses


def random_sat_clauses(rng: random.Random, nvars: int, nclauses: int):
    while True:
        clauses = random_clauses(rng, nvars, nclauses)
        if brute_satisfiable(clauses, nvars):
            return clauses


# ------------------------------------------------------------ sudoku oracle

def sudoku_solutions(grid):
    """All completions of a 4x4 or 9x9 grid, by plain backtracking."""
    n = len(grid)
    box = {4: 2, 9: 3}[n]
    work = [row[:] for row in grid]
    out = []

    def ok(r, c, v):
        if any(work[r][j] == v for j in range(n) if j != c):
            return False
        if any(work[i][c] == v for i in range(n) if i != r):
            return False
        br, bc = (r // box) * box, (c // box) * box
        return not any(
            work[i][j] == v
            for i in range(br, br + box)
            for j in range(bc, bc + box)
            if (i, j) != (r, c)
        )

    def rec(pos):
        if pos == n * n:
            out.append([row[:] for row in work])
            return
        r, c = divmod(pos, n)
        if work[r][c]:
            rec(pos + 1)
            return
        for v in range(1, n + 1):
            if ok(r, c, v):
                work[r][c] = v
                rec(pos + 1)
        work[r][c] = 0

    rec(0)
    return out


def sudoku_forced_literals(grid) -> frozenset[int]:
    """Cell-value literals shared by every completion of the grid."""
    from cnfexplain.sudoku import cell_value_var

    n = len(grid)
    sols = sudoku_solutions(grid)
    assert sols, "grid has no completions"
    lits = []
    for r in range(n):
        for c in range(n):
            for d in range(1, n + 1):
                vals = {s[r][c] == d for s in sols}
                if vals == {True}:
                    lits.append(cell_value_var(n, r, c, d))
                elif vals == {False}:
                    lits.append(-cell_value_var(n, r, c, d))
    return frozenset(lits)


# 6 givens taken from the solution [[1,2,3,4],[3,4,1,2],[2,1,4,3],[4,3,2,1]];
# the puzzle has a unique completion.
SUDOKU4_6GIVENS = [
    [1, 2, 0, 0],
    [3, 0, 0, 0],
    [0, 0, 4, 0],
    [0, 3, 0, 1],
]
