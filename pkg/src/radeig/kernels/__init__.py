"""Dense symmetric eigensolver kernel with compiled/pure-Python backends.

The cyclic Jacobi sweep is the hot inner loop of every spectrum computation,
so it is compiled with Cython when possible. The numpy implementation in
``_jacobi_py`` is selected automatically when the extension is unavailable.
``set_backend`` switches explicitly (used by the benchmark and tests); there
is no environment-variable configuration.
"""

import numpy as np

from . import _jacobi_py

try:
    from . import _jacobi_cy

    _DEFAULT = "cython"
except ImportError:  # extension not built
    _jacobi_cy = None
    _DEFAULT = "python"

_IMPLS = {"python": _jacobi_py.jacobi_sweeps}
if _jacobi_cy is not None:
    _IMPLS["cython"] = _jacobi_cy.jacobi_sweeps

_active = _DEFAULT


def available_backends():
    return sorted(_IMPLS)


def get_backend():
    return _active


def set_backend(name):
    """Select 'cython' or 'python'. Returns the previously active backend."""
    global _active
    if name not in _IMPLS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    previous = _active
    _active = name
    return previous


def jacobi_eigh(matrix, tol=1e-15, max_sweeps=60, backend=None):
    """All eigenpairs of a symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    matrix : (n, n) array_like, symmetric
    tol : float
        Stop when the off-diagonal Frobenius norm falls below ``tol`` times
        the Frobenius norm of the input.
    backend : str, optional
        Force 'cython' or 'python' for this call.

    Returns
    -------
    w : (n,) ndarray, eigenvalues ascending
    v : (n, n) ndarray, eigenvectors in columns, sign-fixed so the largest
        component of each vector is positive.
    """
    a = np.array(matrix, dtype=float, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(a).max())):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(n, order="C")
    impl = _IMPLS[backend or _active]
    impl(a, v, tol, max_sweeps)
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    # deterministic sign: largest-magnitude component positive
    for k in range(n):
        idx = int(np.argmax(np.abs(v[:, k])))
        if v[idx, k] < 0.0:
            v[:, k] = -v[:, k]
    return w, v
