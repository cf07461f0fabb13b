"""radeig: two routes through one radial eigenvalue problem.

The operator L = -d2/dxi2 - (1/xi) d/dxi + gamma^2/xi^2 - a/xi + b xi + xi^2
(measure xi dxi) is solved both by terminating its power series -- which
works only on isolated parameter curves and yields a single eigenvalue per
tuned model -- and by a Rayleigh-Ritz variational solver that produces the
full spectrum for any real (gamma >= 0, a, b). A finite-difference oracle,
physics checks and deterministic CSV/JSON emitters round out the package.
"""

__version__ = "0.1.0"

from .model import ModelParams
from .frobenius import (
    SeriesCoefficients,
    TruncationRoots,
    TruncationSolution,
    polynomial_radial_function,
    series_coefficients,
    truncation_energy,
    truncation_polynomial_in_a,
    truncation_polynomial_in_b,
    truncation_roots_a,
    truncation_roots_b,
    truncation_solutions,
)
from .moments import MomentTable, moments
from .ritz import (
    IllConditionedBasisError,
    SpectrumResult,
    hamiltonian_matrix,
    overlap_matrix,
    solve_generalized,
    spectrum,
)
from .oracle import FdResult, GridSpec, fd_spectrum
from .wavefunctions import RadialFunction
from .analysis import (
    asymptote_check,
    curve_scan,
    eigenfunction_profile,
    expectation,
    hellmann_feynman_check,
)
from .records import OutputRecord, read_csv, read_json, write_csv, write_json

__all__ = [
    "__version__",
    "ModelParams",
    "SeriesCoefficients",
    "TruncationRoots",
    "TruncationSolution",
    "polynomial_radial_function",
    "series_coefficients",
    "truncation_energy",
    "truncation_polynomial_in_a",
    "truncation_polynomial_in_b",
    "truncation_roots_a",
    "truncation_roots_b",
    "truncation_solutions",
    "MomentTable",
    "moments",
    "IllConditionedBasisError",
    "SpectrumResult",
    "hamiltonian_matrix",
    "overlap_matrix",
    "solve_generalized",
    "spectrum",
    "FdResult",
    "GridSpec",
    "fd_spectrum",
    "RadialFunction",
    "asymptote_check",
    "curve_scan",
    "eigenfunction_profile",
    "expectation",
    "hellmann_feynman_check",
    "OutputRecord",
    "read_csv",
    "read_json",
    "write_csv",
    "write_json",
]
