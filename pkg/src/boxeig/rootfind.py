"""Certified real-root location for polynomials with rational coefficients.

The counting layer is exact: Sturm sequences are built in rational arithmetic
with a primitive-part reduction after every remainder step, so sign-variation
counts (and hence root counts on half-open intervals) carry no rounding error.
Isolation bisects the requested bracket until each piece holds at most one
distinct root.

Refinement is a hybrid: a fast Newton/bisection loop in extended-precision
floating point proposes a root, and the result is certified by evaluating the
polynomial exactly at the two endpoints of a rational enclosure of width at
most twice the requested tolerance.  If certification fails the code falls
back to pure rational bisection, so the returned enclosure is always trusted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from mpmath.ctx_mp import MPContext

from .poly import RationalPoly, as_rational

logger = logging.getLogger(__name__)

DEFAULT_TOL = Fraction(1, 10**13)

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class RootReport:
    """Result of isolating (and refining) the real roots in a bracket."""

    bracket: Interval
    isolator_intervals: tuple[Interval, ...]
    roots: tuple[tuple[float, int], ...]  # (value, multiplicity_hint), ascending
    refined_to: float


def _sign(x: Fraction) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def sturm_sequence(p: RationalPoly) -> list[RationalPoly]:
    """Signed remainder sequence of (p, p'), primitive-reduced at every step."""
    if p.is_zero:
        raise ValueError("Sturm sequence of the zero polynomial is undefined")
    chain = [p.primitive_part()]
    d = p.differentiate()
    if d.is_zero:
        return chain
    chain.append(d.primitive_part())
    while chain[-1].degree >= 0:
        _, r = chain[-2].divmod(chain[-1])
        if r.is_zero:
            break
        chain.append((-r).primitive_part())
    return chain


def sign_variations(chain: Sequence[RationalPoly], x: Fraction) -> int:
    """Number of sign changes in the chain evaluated at x (zeros skipped)."""
    signs = [s for s in (_sign(p.eval(x)) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: RationalPoly, lo, hi) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    lo, hi = as_rational(_exactify(lo)), as_rational(_exactify(hi))
    if lo >= hi:
        raise ValueError("empty interval")
    chain = sturm_sequence(p)
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic-free gcd (primitive, positive leading coefficient)."""
    if a.is_zero:
        return b.primitive_part()
    a = a.primitive_part()
    b = b.primitive_part()
    while not b.is_zero:
        _, r = a.divmod(b)
        a, b = b, (r.primitive_part() if not r.is_zero else RationalPoly.zero(a.var))
    if a.leading < 0:
        a = -a
    return a


def square_free_part(p: RationalPoly) -> RationalPoly:
    """p with repeated factors collapsed to multiplicity one."""
    d = p.differentiate()
    if d.is_zero:
        return p.primitive_part()
    g = poly_gcd(p, d)
    if g.degree <= 0:
        return p.primitive_part()
    return p.divexact(g).primitive_part()


def _exactify(x) -> Fraction:
    """Exact rational image of an int/Fraction/float/str bound."""
    if isinstance(x, float):
        return Fraction(x)
    return as_rational(x)


def _multiplicity_at(p: RationalPoly, r: Fraction) -> int:
    """Exact multiplicity of a known rational root."""
    linear = RationalPoly.from_coeffs([-r, 1], p.var)
    m = 0
    while True:
        q, rem = p.divmod(linear)
        if not rem.is_zero:
            return m
        m += 1
        p = q
        if p.is_zero:
            return m


def _multiplicity_hint(p: RationalPoly, lo: Fraction, hi: Fraction) -> int:
    """1 for a simple root; k when the gcd chain still has a root in (lo, hi]."""
    m = 1
    g = poly_gcd(p, p.differentiate())
    while g.degree >= 1 and count_real_roots(g, lo, hi) >= 1:
        m += 1
        g = poly_gcd(g, g.differentiate())
    return m


def isolate_real_roots(
    p: RationalPoly,
    bracket: tuple,
    tol=DEFAULT_TOL,
) -> RootReport:
    """Isolate and refine every distinct real root of p inside the bracket.

    Roots landing exactly on a bracket endpoint are reported as inside.  The
    returned roots are ascending, refined to within ``tol``, and carry a
    multiplicity hint (1 unless a repeated root was detected).
    """
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    lo, hi = _exactify(bracket[0]), _exactify(bracket[1])
    if lo >= hi:
        raise ValueError("bracket must satisfy lo < hi")
    tol = _exactify(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")

    intervals: list[Interval] = []
    if p.degree >= 1:
        chain = sturm_sequence(p)
        if p.eval(lo) == 0:
            intervals.append((lo, lo))
        _split(p, chain, lo, hi, sign_variations(chain, lo), sign_variations(chain, hi), intervals)
    intervals.sort(key=lambda iv: (iv[0], iv[1]))

    roots: list[tuple[float, int]] = []
    for a, b in intervals:
        if a == b:
            mult = _multiplicity_at(p, a)
            roots.append((float(a), mult))
        else:
            enc = certified_root(p, (a, b), 2 * tol)
            mult = _multiplicity_hint(p, a, b)
            roots.append((float((enc[0] + enc[1]) / 2), mult))
    return RootReport(
        bracket=(lo, hi),
        isolator_intervals=tuple(intervals),
        roots=tuple(roots),
        refined_to=float(tol),
    )


def _split(
    p: RationalPoly,
    chain: Sequence[RationalPoly],
    lo: Fraction,
    hi: Fraction,
    vlo: int,
    vhi: int,
    out: list[Interval],
) -> None:
    """Recursive bisection until each piece holds at most one distinct root."""
    count = vlo - vhi  # roots in (lo, hi]
    if count <= 0:
        return
    if count == 1:
        if p.eval(hi) == 0:
            out.append((hi, hi))
        else:
            out.append((lo, hi))
        return
    mid = (lo + hi) / 2
    vmid = sign_variations(chain, mid)
    _split(p, chain, lo, mid, vlo, vmid, out)
    _split(p, chain, mid, hi, vmid, vhi, out)


def mpf_to_rational(x) -> Fraction:
    """Exact Fraction equal to an mpmath float (sign * mantissa * 2**exp)."""
    sign, man, exp, _ = x._mpf_
    man = int(man)
    if man == 0:
        return Fraction(0)
    v = Fraction(man) * (Fraction(2) ** exp)
    return -v if sign else v


def _horner(coeffs, x):
    acc = x * 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def refine_enclosure(p: RationalPoly, interval: tuple, width) -> Interval:
    """Shrink an isolating interval to a certified enclosure of width <= width.

    Requires an exact sign change (or an exact root at an endpoint, which is
    returned degenerately).  The endpoints of the result carry exactly
    verified opposite signs of p.
    """
    lo, hi = _exactify(interval[0]), _exactify(interval[1])
    width = _exactify(width)
    if width <= 0:
        raise ValueError("enclosure width must be positive")
    slo = _sign(p.eval(lo))
    shi = _sign(p.eval(hi))
    if slo == 0:
        return (lo, lo)
    if shi == 0:
        return (hi, hi)
    if slo == shi:
        raise ValueError("interval endpoints do not bracket a sign change")

    # Fast phase: Newton/bisection in extended precision, inside the bracket.
    digits = max(20, _digits_needed(width) + 10)
    guess = _float_phase(p, lo, hi, slo, digits)
    if guess is not None:
        half = width / 2
        a = guess - half
        b = guess + half
        if lo < a and b < hi:
            sa = _sign(p.eval(a))
            if sa == 0:
                return (a, a)
            sb = _sign(p.eval(b))
            if sb == 0:
                return (b, b)
            if sa == slo and sb == shi:
                return (a, b)
        logger.debug("floating-point phase not certified; falling back to bisection")

    # Trusted fallback: pure rational bisection on exact signs.
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = _sign(p.eval(mid))
        if sm == 0:
            return (mid, mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def _digits_needed(width: Fraction) -> int:
    d = 1
    scale = Fraction(1, 10)
    while scale > width and d < 1000:
        d += 1
        scale /= 10
    return d


def _float_phase(p: RationalPoly, lo: Fraction, hi: Fraction, slo: int, digits: int):
    """Newton with bisection safeguarding at `digits` decimals; None on failure."""
    ctx = MPContext()
    ctx.dps = digits
    coeffs = [ctx.mpf(c.numerator) / c.denominator for c in p.coeffs]
    dcoeffs = [k * c for k, c in enumerate(coeffs)][1:]
    a = ctx.mpf(lo.numerator) / lo.denominator
    b = ctx.mpf(hi.numerator) / hi.denominator
    x = (a + b) / 2
    target = ctx.mpf(10) ** (-digits + 4)
    for _ in range(200):
        if b - a < target:
            break
        fx = _horner(coeffs, x)
        if fx == 0:
            break
        if (fx > 0) == (slo > 0):
            a = x
        else:
            b = x
        dfx = _horner(dcoeffs, x)
        if dfx != 0:
            nx = x - fx / dfx
            if a < nx < b:
                x = nx
                continue
        x = (a + b) / 2
    return mpf_to_rational(x)


def certified_root(p: RationalPoly, interval: Interval, width) -> Interval:
    """Certified enclosure for the single root in an isolating interval.

    Degenerate intervals (exact rational roots) pass through; intervals whose
    endpoints have equal signs (even-multiplicity roots) are retried on the
    square-free part, which shares the root but crosses zero there.
    """
    if interval[0] == interval[1]:
        return interval
    try:
        return refine_enclosure(p, interval, width)
    except ValueError:
        return refine_enclosure(square_free_part(p), interval, width)


def refine(p: RationalPoly, interval: tuple, tol=DEFAULT_TOL) -> float:
    """Refine the single root in the interval to within tol (absolute).

    The result is certified by an exact sign check on a rational enclosure of
    width at most 2*tol.  An isolating interval without a sign change (an
    even-multiplicity root) is retried on the square-free part of p.
    """
    tol = _exactify(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    lo, hi = _exactify(interval[0]), _exactify(interval[1])
    slo = _sign(p.eval(lo))
    shi = _sign(p.eval(hi))
    work = p
    if slo != 0 and shi != 0 and slo == shi:
        work = square_free_part(p)
        if _sign(work.eval(lo)) == _sign(work.eval(hi)) != 0:
            raise ValueError("interval does not isolate a root")
        logger.debug("refining an even-multiplicity root via the square-free part")
    a, b = refine_enclosure(work, (lo, hi), 2 * tol)
    return float((a + b) / 2)
