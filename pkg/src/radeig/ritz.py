"""Rayleigh-Ritz variational solver over the non-orthogonal basis
u_j(xi) = xi^(gamma+j) exp(-xi^2/2), j = 0..N-1 (measure xi dxi).

Matrix elements reduce to Gaussian moments:

    S_ij = M(2g+i+j+1)
    H_ij = -j(2g+j) M(2g+i+j-1) + (2g+2j+2) M(2g+i+j+1)
           - a M(2g+i+j) + b M(2g+i+j+2)

H is analytically symmetric; the returned matrix is (H + H^T)/2.

Conditioning note: even scaled to unit diagonal, the Gram matrix of this
basis has condition number growing like exp(1.77 N), so plain double
Cholesky breaks down around N = 15. The solver therefore factorizes S in
extended precision (mpmath, digits scaled with N). S depends only on
(gamma, N) and H is affine in (a, b), so the reduction

    A(a, b) = L^-1 H L^-T = A0 - a A1 + b A2

is computed once per (gamma, N), cached, and every eigensolve afterwards is
a fast double-precision Jacobi diagonalization of a well-conditioned matrix.
Eigenvalues remain variational upper bounds, nonincreasing in N.
"""

import threading
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np
from mpmath import mp

from .kernels import jacobi_eigh
from .model import ModelParams
from .moments import MomentTable, moments, shifted_moments, shifted_moments_mp

__all__ = [
    "MomentTable",
    "moments",
    "IllConditionedBasisError",
    "overlap_matrix",
    "hamiltonian_matrix",
    "solve_generalized",
    "spectrum",
    "SpectrumResult",
    "ReducedOperator",
    "reduced_operator",
    "clear_reduction_cache",
]

N_LADDER_STEP = 10
N_MAX_DEFAULT = 80
DEGENERACY_GAP = 1e-12


class IllConditionedBasisError(RuntimeError):
    """Cholesky breakdown: the basis is numerically linearly dependent."""

    def __init__(self, n, message):
        super().__init__(message)
        self.basis_size = n


def _dps_for(n):
    # cond(S) ~ exp(1.77 N) ~ 10^(0.77 N); add guard digits
    return max(30, int(0.8 * n) + 25)


def overlap_matrix(gamma, n, scaled=False):
    """Overlap S_ij = M(2*gamma + i + j + 1), optionally unit-diagonal scaled."""
    if n < 1:
        raise ValueError(f"basis size must be >= 1, got {n}")
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    m = shifted_moments(2.0 * gamma, 2 * n + 2)
    idx = np.arange(n)
    s = m[idx[:, None] + idx[None, :] + 1]
    if scaled:
        d = np.sqrt(m[2 * idx + 1])
        s = s / d[:, None] / d[None, :]
    return s


def hamiltonian_matrix(params, n, scaled=False, symmetrize=True):
    """Matrix of L in the basis; symmetrized (H + H^T)/2 unless disabled."""
    if n < 1:
        raise ValueError(f"basis size must be >= 1, got {n}")
    g, a, b = params.gamma, params.a, params.b
    m = shifted_moments(2.0 * g, 2 * n + 3)
    idx = np.arange(n)
    p = idx[:, None] + idx[None, :]  # moment index offset from 2*gamma
    j = idx[None, :]
    h = (2.0 * g + 2 * j + 2) * m[p + 1] - a * m[p] + b * m[p + 2]
    # the j=0 column has no centrifugal-kinetic term; M(2g-1) may not exist
    h[:, 1:] -= (j[:, 1:] * (2.0 * g + j[:, 1:])) * m[p[:, 1:] - 1]
    if scaled:
        d = np.sqrt(m[2 * idx + 1])
        h = h / d[:, None] / d[None, :]
    if symmetrize:
        h = 0.5 * (h + h.T)
    return h


@dataclass
class ReducedOperator:
    """Cached Cholesky-reduced operator pieces for one (gamma, N).

    A(a, b) = A0 - a*A1 + b*A2 is the standard-form matrix L^-1 H L^-T of
    the unit-diagonal-scaled problem; `dps` is the mpmath precision used.
    `back_transform` maps a reduced eigenvector y to coefficients on the raw
    basis u_j, normalized to unit radial norm (c^T S c = y^T y = 1).
    """

    gamma: float
    n: int
    dps: int
    A0: np.ndarray = field(repr=False)
    A1: np.ndarray = field(repr=False)
    A2: np.ndarray = field(repr=False)
    _L_inv_T: object = field(repr=False)  # mpmath matrix
    _dnorm: np.ndarray = field(repr=False)

    def assemble(self, a, b):
        out = self.A0 - a * self.A1 + b * self.A2
        return 0.5 * (out + out.T)

    def back_transform(self, y):
        """Raw-basis coefficients c_j for a reduced eigenvector y."""
        with mp.workdps(self.dps):
            ymp = mp.matrix([mp.mpf(float(v)) for v in y])
            c = self._L_inv_T * ymp
            out = np.array([float(c[i]) for i in range(self.n)])
        return out / self._dnorm

    def inv_xi_quotient(self, y):
        """<1/xi> of the state with reduced eigenvector y (unit norm)."""
        return float(y @ self.A1 @ y)

    def xi_quotient(self, y):
        """<xi> of the state with reduced eigenvector y (unit norm)."""
        return float(y @ self.A2 @ y)


_cache_lock = threading.Lock()
_reduction_cache = OrderedDict()
_CACHE_MAX = 64


def clear_reduction_cache():
    with _cache_lock:
        _reduction_cache.clear()


def _build_reduction(gamma, n):
    dps = _dps_for(n)
    with mp.workdps(dps):
        m = shifted_moments_mp(2.0 * gamma, 2 * n + 3)
        d = [mp.sqrt(m[2 * i + 1]) for i in range(n)]
        g = mp.mpf(gamma)
        S = mp.matrix(n)
        K = mp.matrix(n)
        C = mp.matrix(n)
        D = mp.matrix(n)
        for i in range(n):
            for j in range(n):
                scale = d[i] * d[j]
                p = i + j
                S[i, j] = m[p + 1] / scale
                k = (2 * g + 2 * j + 2) * m[p + 1]
                if j > 0:
                    k -= j * (2 * g + j) * m[p - 1]
                K[i, j] = k / scale
                C[i, j] = m[p] / scale
                D[i, j] = m[p + 2] / scale
        for i in range(n):
            for j in range(i):
                sym = (K[i, j] + K[j, i]) / 2
                K[i, j] = sym
                K[j, i] = sym
        try:
            L = mp.cholesky(S)
        except ValueError as exc:
            raise IllConditionedBasisError(
                n, f"extended-precision Cholesky failed at N={n} (dps={dps}): {exc}"
            ) from exc
        L_inv = L**-1
        A0, A1, A2 = (_to_float(L_inv * M * L_inv.T) for M in (K, C, D))
        return ReducedOperator(
            gamma=float(gamma),
            n=n,
            dps=dps,
            A0=A0,
            A1=A1,
            A2=A2,
            _L_inv_T=L_inv.T,
            _dnorm=np.array([float(x) for x in d]),
        )


def _to_float(mat):
    n = mat.rows
    out = np.array([[float(mat[i, j]) for j in range(n)] for i in range(n)])
    return 0.5 * (out + out.T)


def reduced_operator(gamma, n):
    """Cached extended-precision reduction for basis size n at this gamma."""
    key = (round(float(gamma), 12), n)
    with _cache_lock:
        if key in _reduction_cache:
            _reduction_cache.move_to_end(key)
            return _reduction_cache[key]
    red = _build_reduction(gamma, n)
    with _cache_lock:
        _reduction_cache[key] = red
        while len(_reduction_cache) > _CACHE_MAX:
            _reduction_cache.popitem(last=False)
    return red


def solve_generalized(h, s, count=None):
    """Lowest eigenpairs of H c = W S c for symmetric H, positive-definite S.

    S is Cholesky-factorized (S = L L^T), the standard symmetric problem
    L^-1 H L^-T is diagonalized by cyclic Jacobi rotations, and eigenvectors
    are back-substituted (normalized c^T S c = 1).

    float64 inputs use plain double-precision factorization and raise
    IllConditionedBasisError when S is numerically indefinite (reduce N, or
    assemble in extended precision: mpmath-matrix inputs are factorized at
    the current mpmath precision instead, which tolerates the basis's
    exponential ill-conditioning).
    """
    if isinstance(h, mp.matrix) or isinstance(s, mp.matrix):
        if not (isinstance(h, mp.matrix) and isinstance(s, mp.matrix)):
            raise TypeError("H and S must both be mpmath matrices or both float arrays")
        n = s.rows
        count = n if count is None else count
        if count > n:
            raise ValueError(f"count={count} exceeds basis size {n}")
        try:
            L = mp.cholesky(s)
        except ValueError as exc:
            raise IllConditionedBasisError(
                n, f"Cholesky failed at N={n} in extended precision: {exc}"
            ) from exc
        L_inv = L**-1
        a = _to_float(L_inv * h * L_inv.T)
        w, y = jacobi_eigh(a)
        vecs = np.empty((n, count))
        L_inv_T = L_inv.T
        for k in range(count):
            ymp = mp.matrix([mp.mpf(float(v)) for v in y[:, k]])
            c = L_inv_T * ymp
            vecs[:, k] = [float(c[i]) for i in range(n)]
        return w[:count], vecs

    h = np.asarray(h, dtype=float)
    s = np.asarray(s, dtype=float)
    n = s.shape[0]
    count = n if count is None else count
    if count > n:
        raise ValueError(f"count={count} exceeds basis size {n}")
    try:
        L = np.linalg.cholesky(s)
    except np.linalg.LinAlgError as exc:
        cond = float(np.linalg.cond(s))
        raise IllConditionedBasisError(
            n,
            f"overlap matrix numerically indefinite at N={n} (cond ~ {cond:.2e}); "
            "reduce the basis size or assemble in extended precision",
        ) from exc
    from scipy.linalg import solve_triangular

    x = solve_triangular(L, h, lower=True)
    a = solve_triangular(L, x.T, lower=True).T
    w, y = jacobi_eigh(0.5 * (a + a.T))
    vecs = solve_triangular(L.T, y[:, :count], lower=False)
    return w[:count], vecs


@dataclass
class SpectrumResult:
    """Converged variational eigenvalues with coefficient vectors.

    eigenvalues are ascending (strict up to DEGENERACY_GAP; closer pairs are
    listed in `degenerate_pairs`). coefficient_vectors[k] expands state k on
    the raw basis u_j with unit radial norm and R > 0 as xi -> 0+.
    `convergence[k]` is |W_k(N) - W_k(N - step)| from the final ladder step.
    """

    params: ModelParams
    basis_size: int
    eigenvalues: np.ndarray
    coefficient_vectors: list
    convergence: np.ndarray
    converged: bool
    degenerate_pairs: tuple = ()
    reduced_vectors: np.ndarray = field(default=None, repr=False)
    reduction: ReducedOperator = field(default=None, repr=False)


def _ladder(count, n_max):
    start = max(N_LADDER_STEP, N_LADDER_STEP * -(-count // N_LADDER_STEP))
    return list(range(start, n_max + 1, N_LADDER_STEP))


def spectrum(params, count, target_tol=1e-9, n_max=N_MAX_DEFAULT, basis_size=None):
    """Lowest `count` eigenvalues of L, converged in basis size.

    The basis grows through N = 10, 20, ... up to n_max until every requested
    eigenvalue moves by less than target_tol between steps (the change of the
    top requested eigenvalue is included, and in practice dominates). If the
    ladder is exhausted first, the best result is returned flagged
    unconverged. `basis_size` forces a single fixed N (no ladder).
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if target_tol <= 0:
        raise ValueError(f"target_tol must be > 0, got {target_tol}")
    sizes = [basis_size] if basis_size is not None else _ladder(count, n_max)
    if sizes and sizes[-1] < count:
        raise ValueError(f"count={count} exceeds maximum basis size {sizes[-1]}")

    previous = None
    converged = False
    deltas = np.full(count, np.inf)
    w = y = red = None
    n_used = None
    for n in sizes:
        red = reduced_operator(params.gamma, n)
        a = red.assemble(params.a, params.b)
        values, vectors = jacobi_eigh(a)
        w = values[:count]
        y = vectors[:, :count]
        n_used = n
        if previous is not None:
            deltas = np.abs(w - previous)
            if deltas.max() < target_tol:
                converged = True
                break
        previous = w
    if basis_size is not None:
        converged = True
        deltas = np.zeros(count)

    coeffs = []
    for k in range(count):
        c = red.back_transform(y[:, k])
        lead = c[np.nonzero(c)[0][0]] if np.any(c) else 1.0
        coeffs.append(c if lead > 0 else -c)

    gaps = np.diff(w)
    degenerate = tuple(int(i) for i in np.nonzero(gaps < DEGENERACY_GAP)[0])
    return SpectrumResult(
        params=params,
        basis_size=n_used,
        eigenvalues=w.copy(),
        coefficient_vectors=coeffs,
        convergence=deltas.copy(),
        converged=converged,
        degenerate_pairs=degenerate,
        reduced_vectors=y.copy(),
        reduction=red,
    )
