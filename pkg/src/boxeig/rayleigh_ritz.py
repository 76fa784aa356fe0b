"""Rayleigh-Ritz reference method on the polynomial basis f_j = q^j - q^n.

The basis functions (j = 1..n-1) vanish at both walls, so matrix elements
are plain integrals over [0, 1]:

    S_ij = integral f_i f_j,
    H_ij = integral (f_i' f_j' + v f_i f_j),

both exact rationals.  Eigenvalue estimates are the roots of
det(H - eps S) = 0; the determinant is expanded into an exact polynomial in
eps by fraction-free (Bareiss) elimination over the polynomial ring, then
handed to the shared root machinery.  For a symmetric positive-definite S
all n-1 roots are real and they bound the true spectrum from above.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import rootfind
from .estimates import METHOD_RR, EigenEstimate, default_bracket
from .model import PotentialSpec
from .poly import RationalPoly
from .series import SOLVER_TOL
from .variational import as_rational_bound


@dataclass(frozen=True)
class SecularSystem:
    """Matrices and characteristic polynomial of det(H - eps S) for one n."""

    n: int
    potential: PotentialSpec
    h: tuple[tuple[Fraction, ...], ...]
    s: tuple[tuple[Fraction, ...], ...]
    char_poly: RationalPoly

    @property
    def size(self) -> int:
        return self.n - 1


def basis_function(j: int, n: int) -> RationalPoly:
    """f_j = q^j - q^n."""
    return RationalPoly.monomial(j, 1, "q") - RationalPoly.monomial(n, 1, "q")


def build_secular(potential: PotentialSpec, n: int) -> SecularSystem:
    """Assemble S, H and expand det(H - eps S).  Requires n >= 3."""
    if n < 3:
        raise ValueError("basis order must be at least 3")
    size = n - 1
    f = [basis_function(j, n) for j in range(1, n)]
    df = [fj.differentiate() for fj in f]
    v = potential.v
    s_rows = []
    h_rows = []
    for i in range(size):
        s_row = []
        h_row = []
        for j in range(size):
            if j < i:
                s_row.append(s_rows[j][i])
                h_row.append(h_rows[j][i])
                continue
            fifj = f[i] * f[j]
            s_row.append(fifj.integrate_01())
            h_elem = (df[i] * df[j]).integrate_01()
            if not v.is_zero:
                h_elem += (v * fifj).integrate_01()
            h_row.append(h_elem)
        s_rows.append(s_row)
        h_rows.append(h_row)

    pencil = [
        [
            RationalPoly.from_coeffs([h_rows[i][j], -s_rows[i][j]], "eps")
            for j in range(size)
        ]
        for i in range(size)
    ]
    char_poly = bareiss_determinant(pencil)
    return SecularSystem(
        n=n,
        potential=potential,
        h=tuple(tuple(r) for r in h_rows),
        s=tuple(tuple(r) for r in s_rows),
        char_poly=char_poly,
    )


def bareiss_determinant(matrix: list[list[RationalPoly]]) -> RationalPoly:
    """Exact determinant of a square polynomial matrix, fraction-free.

    Every division in the Bareiss recurrence is exact in the polynomial
    ring, which keeps intermediate degrees linear in the elimination step
    instead of exponential.
    """
    size = len(matrix)
    if size == 0:
        raise ValueError("empty matrix")
    var = matrix[0][0].var
    a = [list(row) for row in matrix]
    if any(len(row) != size for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = RationalPoly.one(var)
    for k in range(size - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, size):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return RationalPoly.zero(var)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.divexact(prev)
            a[i][k] = RationalPoly.zero(var)
        prev = a[k][k]
    return a[size - 1][size - 1] * sign


def leading_principal_minors(matrix) -> list[Fraction]:
    """Exact leading principal minors det(M[:k][:k]), k = 1..size."""
    size = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    minors = []
    det = Fraction(1)
    # plain fraction Gaussian elimination, recording pivots
    for k in range(size):
        if a[k][k] == 0:
            pivot = next(
                (i for i in range(k + 1, size) if a[i][k] != 0), None
            )
            if pivot is None:
                det = Fraction(0)
                minors.extend([Fraction(0)] * (size - k))
                return minors
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        for i in range(k + 1, size):
            factor = a[i][k] / a[k][k]
            for j in range(k, size):
                a[i][j] -= factor * a[k][j]
        det *= a[k][k]
        minors.append(det)
    return minors


def solve_secular(
    system: SecularSystem,
    state: int = 0,
    bracket=None,
    tol: Fraction = SOLVER_TOL,
) -> EigenEstimate | None:
    """The (state+1)-th smallest root of det(H - eps S) in the bracket."""
    if state >= system.size:
        raise ValueError(
            f"state {state} out of range for a basis of size {system.size}"
        )
    if bracket is None:
        bracket = default_bracket(system.potential, state)
    bracket = (as_rational_bound(bracket[0]), as_rational_bound(bracket[1]))
    report = rootfind.isolate_real_roots(system.char_poly, bracket, tol=Fraction(1, 10**16))
    if state >= len(report.isolator_intervals):
        return None
    enclosure = rootfind.certified_root(
        system.char_poly, report.isolator_intervals[state], 2 * tol
    )
    mid = (enclosure[0] + enclosure[1]) / 2
    # det(S) equals the telescoped product of the elimination pivots
    # M_k / M_{k-1}, so dividing by it makes the determinant monic in eps:
    # the residual is the value of prod_k (eps_k - eps) at the midpoint.
    det_s = leading_principal_minors(system.s)[-1]
    residual = abs(system.char_poly.eval(mid)) / det_s
    return EigenEstimate(
        method=METHOD_RR,
        n=system.n,
        state=state,
        eps=float(mid),
        residual=float(residual),
        bracket=(float(bracket[0]), float(bracket[1])),
        enclosure=enclosure,
    )


def solve_rr(
    potential: PotentialSpec,
    n: int,
    bracket=None,
    state: int = 0,
    tol: Fraction = SOLVER_TOL,
) -> EigenEstimate | None:
    """Convenience: build the secular system at order n and solve."""
    return solve_secular(build_secular(potential, n), state, bracket, tol)
