"""Power-series solution of the confined problem and the boundary method.

For -phi'' + v(q) phi = eps phi on [0, 1] with phi(0) = phi(1) = 0, write
phi = sum_j c_j q^j.  The left boundary condition and the equation force
c_0 = 0, c_2 = 0, and (choosing the normalization c_1 = 1)

    c_j = ( sum_{i=0}^{j-2} v_{j-i-2} c_i  -  eps c_{j-2} ) / (j (j-1)),  j >= 3,

where v_k are the coefficients of the dimensionless potential.  Each c_j is a
polynomial in eps with exact rational coefficients, of eps-degree at most
floor((j-1)/2).

Truncating at order N gives two objects: the boundary polynomial
B(eps) = sum_{j=1..N} c_j(eps), whose roots enforce phi(1) = 0 (the "A1"
estimates), and a trial function sum_{j=1..N-1} c_j(eps) (q^j - q^N) that
satisfies both boundary conditions identically and feeds the variational
methods.

The module also carries the small bivariate toolkit (lists of eps-polynomials
indexed by q-power) that the quotient construction builds on.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from . import rootfind
from .estimates import (
    DEFAULT_SELECTION,
    METHOD_A1,
    EigenEstimate,
    RootSelection,
    default_bracket,
)
from .model import PotentialSpec
from .poly import RationalPoly, as_rational

logger = logging.getLogger(__name__)

# Enclosure half-width used by the solver entry points; tight enough that a
# renderer can trust 25 significant digits from the midpoint.
SOLVER_TOL = Fraction(1, 10**26)


@dataclass(frozen=True)
class EnergySeries:
    """Coefficients c_0..c_n of the interior solution, as polynomials in eps."""

    n: int
    potential: PotentialSpec
    c: tuple[RationalPoly, ...]


@dataclass(frozen=True)
class TrialFunction:
    """Terms (j, c_j) of the two-sided trial function sum c_j (q^j - q^n)."""

    n: int
    potential: PotentialSpec
    terms: tuple[tuple[int, RationalPoly], ...]


def build_series(potential: PotentialSpec, n: int, c1=Fraction(1)) -> EnergySeries:
    """Run the recurrence up to c_n.  Requires n >= 3.

    ``c1`` rescales the (arbitrary) normalization of the interior solution;
    every c_j is homogeneous of degree one in it.
    """
    if n < 3:
        raise ValueError("series order must be at least 3")
    v = potential.v
    if v.degree > n - 3:
        logger.info(
            "potential coefficients beyond degree %d cannot affect a series "
            "truncated at N=%d; they are ignored",
            n - 3,
            n,
        )
    zero = RationalPoly.zero("eps")
    c: list[RationalPoly] = [zero, RationalPoly.constant(as_rational(c1), "eps"), zero]
    eps = RationalPoly.monomial(1, 1, "eps")
    for j in range(3, n + 1):
        acc = zero
        for i in range(1, j - 1):  # c_0 = 0 contributes nothing
            vk = v.coeff(j - i - 2)
            if vk:
                acc = acc + c[i] * vk
        acc = acc - eps * c[j - 2]
        c.append(acc * Fraction(1, j * (j - 1)))
    return EnergySeries(n=n, potential=potential, c=tuple(c))


def boundary_polynomial(series: EnergySeries) -> RationalPoly:
    """B(eps) = sum_{j=1..n} c_j(eps); its roots make phi(1) vanish."""
    acc = RationalPoly.zero("eps")
    for cj in series.c[1:]:
        acc = acc + cj
    return acc


def build_trial(series: EnergySeries) -> TrialFunction:
    """Trial function from a series of order n >= 4 (terms j = 1..n-1)."""
    if series.n < 4:
        raise ValueError("trial function needs series order at least 4")
    terms = tuple(
        (j, series.c[j]) for j in range(1, series.n) if not series.c[j].is_zero
    )
    return TrialFunction(n=series.n, potential=series.potential, terms=terms)


def specialize(s, eps) -> RationalPoly:
    """Substitute a numeric eps, returning an exact polynomial in q.

    Accepts int/Fraction (exact) or float (converted to its exact rational
    value first, so the result is still exact arithmetic on the given bits).
    """
    if isinstance(eps, float):
        eps = Fraction(eps)
    else:
        eps = as_rational(eps)
    if isinstance(s, EnergySeries):
        coeffs = [cj.eval(eps) for cj in s.c]
        return RationalPoly.from_coeffs(coeffs, "q")
    if isinstance(s, TrialFunction):
        coeffs = [Fraction(0)] * (s.n + 1)
        for j, cj in s.terms:
            value = cj.eval(eps)
            coeffs[j] += value
            coeffs[s.n] -= value
        return RationalPoly.from_coeffs(coeffs, "q")
    raise TypeError(f"cannot specialize {type(s).__name__}")


# ----------------------------------------------------------------------
# bivariate helpers: a polynomial in (q, eps) as a list of eps-polynomials
# indexed by q-power.

QSeries = list


def trial_q_series(trial: TrialFunction) -> QSeries:
    """The trial function as eps-polynomial coefficients of q^0..q^n."""
    zero = RationalPoly.zero("eps")
    out = [zero] * (trial.n + 1)
    for j, cj in trial.terms:
        out[j] = out[j] + cj
        out[trial.n] = out[trial.n] - cj
    return out


def potential_q_series(v: RationalPoly) -> QSeries:
    """Lift a rational q-polynomial to eps-constant coefficients."""
    return [RationalPoly.constant(c, "eps") for c in v.coeffs]


def q_series_mul(a: QSeries, b: QSeries) -> QSeries:
    zero = RationalPoly.zero("eps")
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai.is_zero:
            continue
        for j, bj in enumerate(b):
            if bj.is_zero:
                continue
            out[i + j] = out[i + j] + ai * bj
    return out


def q_series_derivative(a: QSeries) -> QSeries:
    return [k * c for k, c in enumerate(a)][1:]


def q_series_integral01(a: QSeries) -> RationalPoly:
    """Integrate over q in [0, 1]: sum coeff_k / (k+1), an eps-polynomial."""
    acc = RationalPoly.zero("eps")
    for k, c in enumerate(a):
        acc = acc + c * Fraction(1, k + 1)
    return acc


# ----------------------------------------------------------------------
# A1: roots of the boundary polynomial

def solve_a1(
    potential: PotentialSpec,
    n: int,
    bracket=None,
    state: int = 0,
    selection: RootSelection = DEFAULT_SELECTION,
    tol: Fraction = SOLVER_TOL,
) -> EigenEstimate | None:
    """Eigenvalue estimate from B(eps) = 0; None when no suitable root exists."""
    series = build_series(potential, n)
    b = boundary_polynomial(series)
    if bracket is None:
        bracket = default_bracket(potential, state)
    if b.degree < 1:
        return None
    report = rootfind.isolate_real_roots(b, bracket, tol=Fraction(1, 10**16))
    if not report.roots:
        return None
    candidates = [
        (iv[0] + iv[1]) / 2 for iv in report.isolator_intervals
    ]
    try:
        idx = selection.pick_index(candidates, state)
    except ValueError:
        return None
    if idx >= len(candidates):
        return None
    enclosure = rootfind.certified_root(b, report.isolator_intervals[idx], 2 * tol)
    mid = (enclosure[0] + enclosure[1]) / 2
    return EigenEstimate(
        method=METHOD_A1,
        n=n,
        state=state,
        eps=float(mid),
        residual=abs(float(b.eval(mid))),
        bracket=(float(report.bracket[0]), float(report.bracket[1])),
        enclosure=enclosure,
    )
