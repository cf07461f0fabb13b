"""Series-solution machinery: recurrence, termination conditions, root curves.

The substitution R = xi^gamma exp(-b xi/2 - xi^2/2) P(xi), P = sum c_j xi^j
turns L R = W R into a three-term recurrence for the c_j:

    c_{j+2} = [b(2g+2j+3) - 2a] c_{j+1} / [2(j+2)(2g+j+2)]
            + [4(2g+2j-W+2) - b^2] c_j  / [4(j+2)(2g+j+2)],
    j = -1, 0, 1, ...   with c_{-1} = 0, c_0 = 1.

Forcing W = 2(g+n+1) - b^2/4 together with c_{n+1} = 0 terminates the series
at degree n: once W is fixed this way the c_j factor collapses to
8(j-n)/[4(j+2)(2g+j+2)], so every c_j with j > n vanishes as well. Viewed as
a polynomial in a (or in b), c_{n+1} has degree exactly n+1, and its real
roots are the isolated models possessing a degree-n polynomial solution.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .model import ModelParams
from .wavefunctions import RadialFunction


class RootFindingError(RuntimeError):
    """Raised when polishing a termination-polynomial root fails to converge."""

    def __init__(self, message, polynomial):
        super().__init__(message)
        self.polynomial = np.asarray(polynomial, dtype=float)


@dataclass(frozen=True)
class SeriesCoefficients:
    """c_0..c_jmax of the series at a trial eigenvalue W (c_0 = 1)."""

    params: ModelParams
    W: float
    c: np.ndarray

    def __len__(self):
        return len(self.c)


@dataclass(frozen=True)
class TruncationSolution:
    """One terminated-series solution: degree n, tuned parameters, energy W.

    `root_index` is the 1-based position of the tuned parameter among the
    ascending real roots; `coeffs` are c_0..c_n of the polynomial factor.
    """

    n: int
    params: ModelParams
    W: float
    root_index: int
    coeffs: np.ndarray


@dataclass(frozen=True)
class TruncationRoots:
    """Ascending real roots of the termination polynomial, with bookkeeping.

    The polynomial has degree n+1; `num_complex` counts excluded complex
    roots (realness of all roots is only conjectured, so the count may be
    less than n+1). `polynomial` stores ascending-power coefficients.
    """

    variable: str  # 'a' or 'b'
    roots: np.ndarray
    degree: int
    num_complex: int
    polynomial: np.ndarray

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)


def series_coefficients(params, W, jmax):
    """Run the recurrence up to c_jmax at trial eigenvalue W."""
    if jmax < 0:
        raise ValueError(f"jmax must be >= 0, got {jmax}")
    g, a, b = params.gamma, params.a, params.b
    c = np.empty(jmax + 1)
    c[0] = 1.0
    prev, curr = 0.0, 1.0  # c_{-1}, c_0
    for j in range(-1, jmax - 1):
        den = (j + 2.0) * (2.0 * g + j + 2.0)
        nxt = (b * (2 * g + 2 * j + 3) - 2 * a) * curr / (2 * den) + (
            4 * (2 * g + 2 * j - W + 2) - b * b
        ) * prev / (4 * den)
        c[j + 2] = nxt
        prev, curr = curr, nxt
    return SeriesCoefficients(params=params, W=W, c=c)


def truncation_energy(n, gamma, b):
    """W at which a degree-n polynomial solution can terminate."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    return 2.0 * (gamma + n + 1) - b * b / 4.0


def _termination_polynomial_exact(n, gamma, variable, fixed):
    """c_{n+1} as an exact polynomial in `variable` ('a' or 'b').

    The other parameter is held at `fixed`; W is eliminated using the
    termination energy, which reduces the c_j factor to 8(j-n) over the
    usual denominator. Fraction arithmetic keeps the coefficients exact for
    the given (binary-float) gamma and fixed value.
    """
    g = Fraction(gamma)
    f = Fraction(fixed)
    # c_j represented by ascending coefficient lists in the free variable
    prev = [Fraction(0)]  # c_{-1}
    curr = [Fraction(1)]  # c_0
    for j in range(-1, n):
        if variable == "a":
            beta0, beta1 = f * (2 * g + 2 * j + 3), Fraction(-2)
        else:
            beta0, beta1 = Fraction(-2) * f, 2 * g + 2 * j + 3
        den = 2 * (j + 2) * (2 * g + j + 2)
        nxt = [beta0 * ck / den for ck in curr] + [Fraction(0)]
        for k, ck in enumerate(curr):
            nxt[k + 1] += beta1 * ck / den
        bfac = Fraction(4 * (j - n)) / den
        for k, ck in enumerate(prev):
            nxt[k] += bfac * ck
        prev, curr = curr, nxt
    return curr  # c_{n+1}


def truncation_polynomial_in_a(n, gamma, b):
    """Ascending coefficients of c_{n+1} as a degree-(n+1) polynomial in a."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    exact = _termination_polynomial_exact(n, gamma, "a", b)
    return np.array([float(x) for x in exact])


def truncation_polynomial_in_b(n, gamma, a):
    """Ascending coefficients of c_{n+1} as a degree-(n+1) polynomial in b."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    exact = _termination_polynomial_exact(n, gamma, "b", a)
    return np.array([float(x) for x in exact])


def _polish_root(coeffs, x0):
    """Newton-polish a companion-matrix root of the ascending-coeff polynomial."""
    powers = np.arange(len(coeffs))
    dcoeffs = coeffs[1:] * powers[1:]

    def p(x):
        return float(np.polyval(coeffs[::-1], x))

    def dp(x):
        return float(np.polyval(dcoeffs[::-1], x))

    x = float(x0)
    for _ in range(60):
        scale = float(np.abs(coeffs) @ np.abs(x) ** powers) + 1e-300
        fx = p(x)
        if abs(fx) <= 1e-12 * scale:
            return x
        d = dp(x)
        if d == 0.0:
            break
        x -= fx / d
    scale = float(np.abs(coeffs) @ np.abs(x) ** powers) + 1e-300
    if abs(p(x)) <= 1e-10 * scale:  # flat multiple-root plateau
        return x
    raise RootFindingError(
        f"Newton polish stalled at x={x} (residual {p(x):.3e}, scale {scale:.3e})", coeffs
    )


def _roots_of(coeffs, variable):
    degree = len(coeffs) - 1
    companion_roots = np.roots(coeffs[::-1])
    real = []
    num_complex = 0
    for z in companion_roots:
        if abs(z.imag) <= max(1e-8 * abs(z), 1e-12):
            real.append(_polish_root(coeffs, z.real))
        else:
            num_complex += 1
    return TruncationRoots(
        variable=variable,
        roots=np.sort(np.array(real)),
        degree=degree,
        num_complex=num_complex,
        polynomial=coeffs,
    )


def truncation_roots_a(n, gamma, b):
    """Ascending real roots a^(1) < ... of the termination polynomial in a."""
    return _roots_of(truncation_polynomial_in_a(n, gamma, b), "a")


def truncation_roots_b(n, gamma, a):
    """Ascending real roots in b (W varies with b along these roots)."""
    return _roots_of(truncation_polynomial_in_b(n, gamma, a), "b")


def truncation_solutions(n, gamma, b):
    """All terminated solutions of degree n at the given gamma, b.

    One TruncationSolution per real root a^(i); coefficients come from the
    recurrence and are checked to terminate (c_{n+1} and the forced c_{n+2}
    vanish relative to max |c_j|).
    """
    W = truncation_energy(n, gamma, b)
    solutions = []
    for index, root in enumerate(truncation_roots_a(n, gamma, b), start=1):
        params = ModelParams(gamma=gamma, a=float(root), b=b)
        series = series_coefficients(params, W, n + 2)
        tail = np.abs(series.c[n + 1 : n + 3]).max()
        scale = np.abs(series.c[: n + 1]).max()
        if tail > 1e-10 * scale:
            raise RootFindingError(
                f"series does not terminate at root a={root} (tail {tail:.3e})",
                truncation_polynomial_in_a(n, gamma, b),
            )
        solutions.append(
            TruncationSolution(
                n=n, params=params, W=W, root_index=index, coeffs=series.c[: n + 1].copy()
            )
        )
    return solutions


def polynomial_radial_function(solution):
    """R(xi) = xi^gamma exp(-b xi/2 - xi^2/2) sum_j c_j xi^j for a solution."""
    return RadialFunction.from_polynomial(
        solution.params.gamma, solution.params.b, solution.coeffs
    )
