"""Exact-residual check reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import format_scalar


class DimensionError(ValueError):
    """Structures of incompatible shapes were combined."""


class PreconditionError(ValueError):
    """An input failed the checker required by an operation."""

    def __init__(self, message: str, report: "CheckReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Violation:
    indices: tuple[int, ...]
    residual: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {"tuple": list(self.indices),
                "residual": [format_scalar(v) for v in self.residual]}


@dataclass
class CheckReport:
    """Residuals of a family of identities over all basis tuples.

    ``conditions`` decide :attr:`passed`.  ``variants`` hold informational
    residuals (alternative readings of an identity) that never affect it.
    """

    conditions: dict[str, list[Violation]] = field(default_factory=dict)
    variants: dict[str, list[Violation]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(not v for v in self.conditions.values())

    def __bool__(self) -> bool:
        return self.passed

    def failing(self) -> list[str]:
        return [name for name, v in self.conditions.items() if v]

    def ok(self, name: str) -> bool:
        return not self.conditions[name]

    def add(self, name: str, residual: np.ndarray, nvalue_axes: int = 1,
            variant: bool = False) -> None:
        """Record the nonzero slices of a residual tensor.

        The trailing ``nvalue_axes`` axes form the residual vector; the leading
        axes index basis tuples.
        """
        target = self.variants if variant else self.conditions
        target[name] = violations_from(residual, nvalue_axes)

    def add_list(self, name: str, violations: list[Violation], variant: bool = False) -> None:
        target = self.variants if variant else self.conditions
        target[name] = sorted(violations, key=lambda v: v.indices)

    def merge(self, prefix: str, other: "CheckReport") -> None:
        for name, v in other.conditions.items():
            self.conditions[f"{prefix}.{name}"] = v
        for name, v in other.variants.items():
            self.variants[f"{prefix}.{name}"] = v

    def residual_map(self, name: str, variant: bool = False) -> dict:
        source = self.variants if variant else self.conditions
        return {v.indices: v.residual for v in source[name]}

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "conditions": {k: {"pass": not v, "violations": [x.to_json() for x in v]}
                           for k, v in sorted(self.conditions.items())},
            "variants": {k: {"zero": not v, "violations": [x.to_json() for x in v]}
                         for k, v in sorted(self.variants.items())},
        }

    def summary(self) -> str:
        lines = []
        for name, v in self.conditions.items():
            lines.append(f"{name}: {'ok' if not v else f'{len(v)} violations'}")
        return "\n".join(lines)


def violations_from(residual: np.ndarray, nvalue_axes: int = 1) -> list[Violation]:
    residual = np.asarray(residual, dtype=object)
    lead = residual.shape[:residual.ndim - nvalue_axes]
    out = []
    for idx in np.ndindex(*lead):
        vals = residual[idx].reshape(-1)
        if any(v != 0 for v in vals):
            out.append(Violation(tuple(int(i) for i in idx), tuple(Fraction(v) for v in vals)))
    return out
