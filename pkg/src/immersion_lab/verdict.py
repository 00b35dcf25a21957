from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a certificate or axiom check.

    ``reason`` names the violated clause and ``witness`` carries the
    offending objects; both are empty when ``ok``.
    """

    ok: bool
    reason: str = ""
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def failed(cls, reason: str, witness: Any = None) -> "Verdict":
        return cls(False, reason, witness)
