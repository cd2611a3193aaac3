"""Result objects shared by the verifiers and the suite runner."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Verification:
    """Outcome of one executable identity check."""

    name: str
    passed: bool
    witness: str = ""
    details: dict = field(default_factory=dict)
    skipped: bool = False

    def __bool__(self):
        return self.passed

    @property
    def status(self):
        if self.skipped:
            return "skipped"
        return "pass" if self.passed else "fail"

    @classmethod
    def skip(cls, name, reason):
        return cls(name, True, reason, skipped=True)

    @classmethod
    def combine(cls, name, parts, witness=None):
        parts = list(parts)
        failed = [p for p in parts if not p.passed]
        if failed:
            text = "; ".join(f"{p.name}: {p.witness}" for p in failed)
            return cls(name, False, text, {"parts": [p.name for p in parts]})
        active = [p for p in parts if not p.skipped]
        if not active and parts:
            return cls.skip(name, "; ".join(p.witness for p in parts))
        return cls(name, True, witness if witness is not None else f"{len(active)} sub-checks passed")
