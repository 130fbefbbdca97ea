"""Named exact checks and their aggregation."""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Matrix


@dataclass(frozen=True)
class Check:
    name: str
    residual_is_zero: bool
    max_abs_numerator_bits: int = 0
    detail: str = ""

    @classmethod
    def residual(cls, name: str, *residuals: Matrix) -> "Check":
        """Pass iff every residual matrix is exactly zero."""
        ok = all(r.is_zero() for r in residuals)
        bits = 0 if ok else max(r.max_numerator_bits() for r in residuals)
        return cls(name, ok, bits)

    @classmethod
    def condition(cls, name: str, ok: bool, detail: str = "") -> "Check":
        return cls(name, bool(ok), 0, "" if ok else detail)


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.residual_is_zero for c in self.checks)

    def __bool__(self):
        return self.passed

    def __len__(self):
        return len(self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.residual_is_zero]

    def first_failure(self) -> Check | None:
        fails = self.failures
        return fails[0] if fails else None

    def __add__(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.checks + other.checks)

    def render(self) -> str:
        width = max((len(c.name) for c in self.checks), default=4)
        lines = []
        for c in self.checks:
            status = "ok" if c.residual_is_zero else "FAIL"
            line = f"{c.name:<{width}}  {status}"
            if not c.residual_is_zero:
                if c.max_abs_numerator_bits:
                    line += f"  (residual bits {c.max_abs_numerator_bits})"
                if c.detail:
                    line += f"  {c.detail}"
            lines.append(line)
        lines.append(f"{'overall':<{width}}  {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "residual_is_zero": c.residual_is_zero,
                    "max_abs_numerator_bits": c.max_abs_numerator_bits,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }
