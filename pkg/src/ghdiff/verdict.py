"""Falsification outcomes returned by the convexity and derivative checkers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional


@dataclass(frozen=True)
class Witness:
    target: Any
    s: float
    lhs: Any
    rhs: Any
    channel: Optional[str] = None
    detail: str = ""

    @property
    def gap(self) -> float:
        """``lhs - rhs`` for real-valued witnesses (nan otherwise)."""
        try:
            return float(self.lhs) - float(self.rhs)
        except TypeError:
            return float("nan")


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[Witness] = None
    checked: int = 0

    @classmethod
    def ok(cls, checked: int = 0) -> Verdict:
        return cls(True, None, checked)

    @classmethod
    def violation(cls, witness: Witness, checked: int = 0) -> Verdict:
        return cls(False, witness, checked)

    def __bool__(self) -> bool:
        return self.holds

    def __str__(self) -> str:
        if self.holds:
            return f"HoldsOnSamples({self.checked} checks)"
        w = self.witness
        chan = f" [{w.channel}]" if w.channel else ""
        return f"Violation{chan}(s={w.s}, lhs={w.lhs}, rhs={w.rhs})"
