"""Deletion-based subset-minimal unsatisfiable core extraction."""

from __future__ import annotations

from typing import Iterable, Mapping

from .oracle import FormulaOracle
from .timing import Deadline


def mus_deletion(
    subset: Iterable[int],
    oracle: FormulaOracle,
    hint: Mapping[int, bool] | None = None,
    deadline: Deadline | None = None,
) -> frozenset[int]:
    """Shrink an unsatisfiable element subset to a minimal one.

    First restricts to the solver's failed-assumption core, then scans the
    remaining elements in ascending index order (fixed, so the extracted
    core is reproducible) and drops each element whose removal keeps the
    rest unsatisfiable, re-restricting to the reported core after every
    unsatisfiable probe.
    """
    res = oracle.check(subset, hint, deadline)
    if res.satisfiable:
        raise ValueError("deletion-based extraction requires an unsatisfiable subset")
    work = sorted(res.core if res.core else subset)
    kept: list[int] = []
    while work:
        e, rest = work[0], work[1:]
        trial = kept + rest
        res = oracle.check(trial, hint, deadline)
        if res.satisfiable:
            kept.append(e)
            work = rest
        else:
            work = sorted(set(rest) & res.core) if res.core else rest
    return frozenset(kept)
