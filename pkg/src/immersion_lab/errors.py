"""Exception types and the search budget shared by the exact solvers."""

from __future__ import annotations

import os

ENV_CAPACITY = "IMMERSION_LAB_CAPACITY"
DEFAULT_CAPACITY = 5_000_000


class InputError(ValueError):
    """Malformed or inconsistent input (unknown ids, invalid cuts, ...)."""


class CapacityError(RuntimeError):
    """A search ran out of its node-expansion budget before deciding."""


def default_capacity() -> int:
    raw = os.environ.get(ENV_CAPACITY)
    if raw is None or raw.strip() == "":
        return DEFAULT_CAPACITY
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"{ENV_CAPACITY} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise InputError(f"{ENV_CAPACITY} must be positive, got {value}")
    return value


class Budget:
    """Counts node expansions; raises CapacityError once the limit is hit.

    One budget may be threaded through nested searches so that the limit
    applies to a whole top-level call.
    """

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = default_capacity() if limit is None else int(limit)
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise CapacityError(f"search budget of {self.limit} node expansions exhausted")

    @property
    def remaining(self) -> int:
        return max(0, self.limit - self.used)


def as_budget(budget: "Budget | int | None") -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)
