"""Eigenvalues of a particle confined to a 1D box with a polynomial potential.

The package implements three power-series estimates (boundary roots,
stationary Rayleigh quotients, and quotient fixed points), a Rayleigh-Ritz
reference on the same polynomial basis, and independent high-precision
benchmarks (box eigenvalues, Airy quantization for a linear ramp, and an RK4
shooting integrator).  All symbolic work is exact rational arithmetic;
floating point appears only at root refinement and in the benchmarks.
"""

from .estimates import (
    METHOD_A1,
    METHOD_A2,
    METHOD_A3,
    METHOD_EXACT,
    METHOD_RR,
    EigenEstimate,
    RootSelection,
    default_bracket,
)
from .model import (
    BoxProblem,
    DimensionlessProblem,
    PotentialSpec,
    energy_to_epsilon,
    epsilon_to_energy,
    linear_coupling,
    load_problem,
    nondimensionalize,
    parse_problem,
    require_unit_interval,
    serialize_problem,
)
from .oracle import (
    AiryValue,
    RootScanError,
    airy,
    exact_box,
    exact_linear,
    series_integrate,
    shoot,
    shoot_richardson,
    shoot_root,
)
from .poly import Rational, RationalPoly, as_rational, format_rational
from .rayleigh_ritz import (
    SecularSystem,
    bareiss_determinant,
    build_secular,
    solve_rr,
    solve_secular,
)
from .rootfind import (
    RootReport,
    count_real_roots,
    isolate_real_roots,
    refine,
    refine_enclosure,
    sturm_sequence,
)
from .series import (
    EnergySeries,
    TrialFunction,
    boundary_polynomial,
    build_series,
    build_trial,
    solve_a1,
    specialize,
)
from .variational import (
    RayleighQuotient,
    build_quotient,
    kinetic_energy_forms,
    quotient_for,
    solve_a2,
    solve_a3,
)

__version__ = "0.1.0"

__all__ = [
    "AiryValue",
    "BoxProblem",
    "DimensionlessProblem",
    "EigenEstimate",
    "EnergySeries",
    "METHOD_A1",
    "METHOD_A2",
    "METHOD_A3",
    "METHOD_EXACT",
    "METHOD_RR",
    "PotentialSpec",
    "Rational",
    "RationalPoly",
    "RayleighQuotient",
    "RootReport",
    "RootScanError",
    "RootSelection",
    "SecularSystem",
    "TrialFunction",
    "airy",
    "as_rational",
    "bareiss_determinant",
    "boundary_polynomial",
    "build_quotient",
    "build_secular",
    "build_series",
    "build_trial",
    "count_real_roots",
    "default_bracket",
    "energy_to_epsilon",
    "epsilon_to_energy",
    "exact_box",
    "exact_linear",
    "format_rational",
    "isolate_real_roots",
    "kinetic_energy_forms",
    "linear_coupling",
    "load_problem",
    "nondimensionalize",
    "parse_problem",
    "quotient_for",
    "refine",
    "refine_enclosure",
    "require_unit_interval",
    "serialize_problem",
    "series_integrate",
    "shoot",
    "shoot_richardson",
    "shoot_root",
    "solve_a1",
    "solve_a2",
    "solve_a3",
    "solve_rr",
    "solve_secular",
    "specialize",
    "sturm_sequence",
]
