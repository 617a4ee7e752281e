"""Wall-clock budget shared by the solving layers."""

from __future__ import annotations

import time

from .errors import SolveTimeout


class Deadline:
    """Absolute point in time after which solvers must abort with SolveTimeout."""

    def __init__(self, seconds: float):
        self.limit = seconds
        self._until = time.monotonic() + seconds

    @classmethod
    def after(cls, seconds: float | None) -> "Deadline | None":
        return None if seconds is None else cls(seconds)

    def expired(self) -> bool:
        return time.monotonic() > self._until

    def check(self, what: str = "solve") -> None:
        if self.expired():
            raise SolveTimeout(f"{what} exceeded the {self.limit:g}s time limit")

    def remaining(self) -> float:
        return self._until - time.monotonic()
