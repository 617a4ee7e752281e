"""A small deterministic CDCL solver.

Two-watched-literal propagation, first-UIP clause learning and
non-chronological backjumping, with an assumption interface in the MiniSat
style.  Branching uses a fixed variable order (optionally permuted by a
seed) and per-variable polarity suggestions, which keeps repeated runs
bit-reproducible.  Built for the desk-scale formulas of this package, not
for competitive solving.
"""

from __future__ import annotations

import random
from typing import Iterable, Mapping, Sequence

from .errors import SolveTimeout
from .timing import Deadline

_TRUE = 1
_FALSE = -1
_UNDEF = 0


def _ilit(lit: int) -> int:
    """External signed literal -> internal index (2v for v, 2v+1 for -v)."""
    return (lit << 1) if lit > 0 else ((-lit << 1) | 1)


def _elit(ilit: int) -> int:
    v = ilit >> 1
    return -v if ilit & 1 else v


class SatSolver:
    """Incremental CDCL solver over variables 1..num_vars."""

    def __init__(self, num_vars: int = 0, seed: int | None = None):
        self._nvars = 0
        self._seed = seed
        self._order: list[int] = []
        self._value: list[int] = [_UNDEF, _UNDEF]  # indexed by internal literal
        self._level: list[int] = [0]
        self._reason: list[list[int] | None] = [None]
        self._watches: list[list[list[int]]] = [[], []]
        self._seen: list[bool] = [False]
        self._clauses: list[list[int]] = []
        self._learned: list[list[int]] = []
        self._trail: list[int] = []
        self._trail_lim: list[int] = []
        self._decide_heads: list[int] = []
        self._head = 0
        self._qhead = 0
        self._unsat = False
        self._model: frozenset[int] | None = None
        self._core: frozenset[int] = frozenset()
        self._order_stale = False
        self.ensure_vars(num_vars)

    # ------------------------------------------------------------------ setup

    def ensure_vars(self, n: int) -> None:
        if n <= self._nvars:
            return
        for _ in range(self._nvars, n):
            self._value.extend((_UNDEF, _UNDEF))
            self._watches.extend(([], []))
            self._level.append(0)
            self._reason.append(None)
            self._seen.append(False)
        self._nvars = n
        self._order_stale = True

    def _refresh_order(self) -> None:
        if self._order_stale:
            self._order = list(range(1, self._nvars + 1))
            if self._seed is not None:
                random.Random(self._seed).shuffle(self._order)
            self._order_stale = False

    def new_var(self) -> int:
        self.ensure_vars(self._nvars + 1)
        return self._nvars

    @property
    def num_vars(self) -> int:
        return self._nvars

    def add_clause(self, lits: Iterable[int]) -> None:
        """Add a clause; only legal between solve() calls (decision level 0)."""
        assert not self._trail_lim, "add_clause while search is active"
        if self._unsat:
            return
        ext = set(lits)
        if any(-l in ext for l in ext):
            return  # tautology
        clause: list[int] = []
        for l in sorted(ext, key=lambda x: (abs(x), x < 0)):
            if abs(l) > self._nvars:
                self.ensure_vars(abs(l))
            il = _ilit(l)
            v = self._value[il]
            if v == _TRUE:
                return  # already satisfied at level 0
            if v == _FALSE:
                continue  # permanently false, drop the literal
            clause.append(il)
        if not clause:
            self._unsat = True
            return
        if len(clause) == 1:
            self._enqueue(clause[0], None)
            return
        self._attach(clause)
        self._clauses.append(clause)

    def _attach(self, clause: list[int]) -> None:
        # watches[l] holds the clauses currently watching literal l
        self._watches[clause[0]].append(clause)
        self._watches[clause[1]].append(clause)

    # ------------------------------------------------------------------ state

    def value_of(self, lit: int) -> int:
        """1 true, -1 false, 0 unassigned (external literal)."""
        return self._value[_ilit(lit)]

    def model(self) -> frozenset[int]:
        """Literals of the last satisfying assignment, one per variable."""
        assert self._model is not None, "no model available"
        return self._model

    def core(self) -> frozenset[int]:
        """Subset of the assumptions responsible for the last UNSAT answer.

        Empty when the formula is unsatisfiable on its own.
        """
        return self._core

    # ----------------------------------------------------------------- search

    def solve(
        self,
        assumptions: Sequence[int] = (),
        polarity: Mapping[int, bool] | None = None,
        deadline: Deadline | None = None,
    ) -> bool:
        self._model = None
        self._core = frozenset()
        self._backtrack(0)
        self._refresh_order()
        self._head = 0
        if self._unsat or self._propagate() is not None:
            self._unsat = True
            return False
        self._reduce_learned()
        polarity = polarity or {}
        conflicts = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                if not self._trail_lim:
                    self._unsat = True
                    return False
                conflicts += 1
                if deadline is not None and conflicts % 128 == 0:
                    deadline.check("SAT search")
                learned, bt = self._analyze(confl)
                self._backtrack(bt)
                if len(learned) == 1:
                    self._enqueue(learned[0], None)
                else:
                    self._attach(learned)
                    self._learned.append(learned)
                    self._enqueue(learned[0], learned)
                continue
            if len(self._trail_lim) < len(assumptions):
                lit = assumptions[len(self._trail_lim)]
                il = _ilit(lit)
                v = self._value[il]
                if v == _FALSE:
                    self._core = self._analyze_final(il)
                    self._backtrack(0)
                    return False
                self._new_level()
                if v == _UNDEF:
                    self._enqueue(il, None)
                continue
            var = self._pick_var()
            if var is None:
                self._model = frozenset(
                    _elit(self._trail[k]) for k in range(len(self._trail))
                )
                self._backtrack(0)
                return True
            self._new_level()
            sign = polarity.get(var, False)
            self._enqueue(_ilit(var if sign else -var), None)

    def _pick_var(self) -> int | None:
        value = self._value
        order = self._order
        head = self._head
        while head < len(order):
            v = order[head]
            if value[v << 1] == _UNDEF:
                self._head = head
                return v
            head += 1
        self._head = head
        return None

    def _new_level(self) -> None:
        self._trail_lim.append(len(self._trail))
        self._decide_heads.append(self._head)

    def _enqueue(self, ilit: int, reason: list[int] | None) -> None:
        self._value[ilit] = _TRUE
        self._value[ilit ^ 1] = _FALSE
        self._level[ilit >> 1] = len(self._trail_lim)
        self._reason[ilit >> 1] = reason
        self._trail.append(ilit)

    def _propagate(self) -> list[int] | None:
        value = self._value
        while self._qhead < len(self._trail):
            p = self._trail[self._qhead]
            self._qhead += 1
            flit = p ^ 1
            ws = self._watches[flit]
            i = j = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == flit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                if value[first] == _TRUE:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    if value[c[k]] != _FALSE:
                        c[1], c[k] = c[k], c[1]
                        self._watches[c[1]].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if value[first] == _FALSE:
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        return c
                    self._enqueue(first, c)
            del ws[j:]
        return None

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        """First-UIP learning; returns (learned clause, backjump level).

        learned[0] is the asserting literal.
        """
        seen = self._seen
        level = self._level
        reason = self._reason
        current = len(self._trail_lim)
        learned: list[int] = []
        count = 0
        p: int | None = None
        idx = len(self._trail) - 1
        cleanup: list[int] = []
        while True:
            for q in confl:
                if q == p:
                    continue
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    cleanup.append(v)
                    if level[v] >= current:
                        count += 1
                    else:
                        learned.append(q)
            while not seen[self._trail[idx] >> 1]:
                idx -= 1
            p = self._trail[idx]
            seen[p >> 1] = False
            count -= 1
            idx -= 1
            if count == 0:
                break
            confl = reason[p >> 1]  # type: ignore[assignment]
        for v in cleanup:
            seen[v] = False
        asserting = p ^ 1
        if not learned:
            return [asserting], 0
        bt = max(level[q >> 1] for q in learned)
        # position a literal of the backjump level second so watches stay valid
        for k, q in enumerate(learned):
            if level[q >> 1] == bt:
                learned[0], learned[k] = learned[k], learned[0]
                break
        return [asserting] + learned, bt

    def _analyze_final(self, il: int) -> frozenset[int]:
        """Assumptions responsible for the failed assumption literal ``il``."""
        core = {_elit(il)}
        seen = self._seen
        seen[il >> 1] = True
        for k in range(len(self._trail) - 1, -1, -1):
            q = self._trail[k]
            vq = q >> 1
            if not seen[vq]:
                continue
            seen[vq] = False
            if self._level[vq] == 0:
                continue
            reason = self._reason[vq]
            if reason is None:
                core.add(_elit(q))
            else:
                for x in reason:
                    if x >> 1 != vq:
                        seen[x >> 1] = True
        return frozenset(core)

    def _backtrack(self, target: int) -> None:
        if len(self._trail_lim) <= target:
            return
        limit = self._trail_lim[target]
        value = self._value
        for k in range(len(self._trail) - 1, limit - 1, -1):
            il = self._trail[k]
            value[il] = _UNDEF
            value[il ^ 1] = _UNDEF
            self._reason[il >> 1] = None
        del self._trail[limit:]
        self._head = self._decide_heads[target]
        del self._trail_lim[target:]
        del self._decide_heads[target:]
        self._qhead = min(self._qhead, len(self._trail))

    def _reduce_learned(self) -> None:
        cap = max(2000, 2 * len(self._clauses))
        if len(self._learned) <= cap:
            return
        assert not self._trail_lim
        for il in self._trail:
            self._reason[il >> 1] = None  # level-0 facts need no reasons
        keep = self._learned[len(self._learned) // 2 :]
        self._learned = keep
        for lists in self._watches:
            lists.clear()
        for c in self._clauses:
            self._attach(c)
        for c in keep:
            self._attach(c)
