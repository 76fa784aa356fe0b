"""Result containers and root-selection policies shared by the solvers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import KIND_LINEAR, KIND_ZERO, PotentialSpec
from .poly import as_rational

METHOD_A1 = "A1"
METHOD_A2 = "A2"
METHOD_A3 = "A3"
METHOD_RR = "RR"
METHOD_EXACT = "EXACT"


@dataclass(frozen=True)
class EigenEstimate:
    """One eigenvalue estimate produced by a single method at one order N.

    ``eps`` is a float convenience view; when a certified rational enclosure
    is available it is kept in ``enclosure`` so renderers can extract more
    digits than a float carries.  For the stationary-point method, ``w`` holds
    the quotient value at the reported point (its exact value in ``w_exact``).
    """

    method: str
    n: int
    state: int
    eps: float
    residual: float
    bracket: tuple[float, float]
    w: float | None = None
    enclosure: tuple[Fraction, Fraction] | None = None
    w_exact: Fraction | None = None

    def eps_rational(self) -> Fraction:
        """Best available rational image of eps (enclosure midpoint)."""
        if self.enclosure is not None:
            return (self.enclosure[0] + self.enclosure[1]) / 2
        return Fraction(self.eps)


@dataclass(frozen=True)
class RootSelection:
    """Which root of a method's closure equation to report.

    ``default`` lets each method use its natural rule (smallest root for the
    boundary and fixed-point methods, smallest quotient value for the
    stationary method).  ``nearest`` needs a target.
    """

    policy: str = "default"
    target: Fraction | None = None

    def __post_init__(self) -> None:
        if self.policy not in ("default", "smallest", "nearest", "min-w"):
            raise ValueError(f"unknown selection policy {self.policy!r}")
        if (self.policy == "nearest") != (self.target is not None):
            raise ValueError("'nearest' selection requires a target, others forbid it")

    @classmethod
    def parse(cls, text: str) -> "RootSelection":
        """Parse ``smallest``, ``min-w``, or ``nearest:<value>``."""
        text = text.strip()
        if text.startswith("nearest:"):
            return cls("nearest", as_rational(text.split(":", 1)[1]))
        return cls(text)

    def pick_index(self, values: list[Fraction], state: int) -> int:
        """Index into ascending candidate values under this policy."""
        if not values:
            raise ValueError("no candidates to select from")
        if self.policy == "nearest":
            return min(range(len(values)), key=lambda i: abs(values[i] - self.target))
        # smallest / default: the (state+1)-th smallest
        return state


DEFAULT_SELECTION = RootSelection()


def default_bracket(potential: PotentialSpec, state: int = 0) -> tuple[Fraction, Fraction]:
    """Search bracket (0, (state+2)^2 pi^2 max(1, 1 + bound)) on the energy axis.

    The bound term accounts for how far the potential can shift the spectrum:
    the exact slope for a linear ramp, a coefficient-sum bound otherwise.
    """
    if potential.kind == KIND_ZERO:
        bound = Fraction(0)
    elif potential.kind == KIND_LINEAR:
        bound = potential.lam
    else:
        bound = sum((abs(c) for c in potential.v.coeffs), Fraction(0))
    factor = max(Fraction(1), 1 + bound)
    hi = Fraction((state + 2) ** 2) * Fraction(math.pi) ** 2 * factor
    return (Fraction(0), hi)
