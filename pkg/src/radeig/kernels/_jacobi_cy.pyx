# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi eigensolver kernel.

Mirrors the rotation order and thresholds of the pure-Python fallback in
``_jacobi_py.py`` so both backends produce matching spectra.
"""

from libc.math cimport fabs, sqrt

DEF EPS = 2.220446049250313e-16


def jacobi_sweeps(double[:, ::1] a, double[:, ::1] v, double tol, int max_sweeps):
    """Diagonalize symmetric ``a`` in place, accumulating rotations into ``v``."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, k, sweep
    cdef double fro, off, stop, apq, tau, t, c, s, rp, rq
    cdef bint rotated

    if n == 1:
        return 0
    fro = 0.0
    for p in range(n):
        for q in range(n):
            fro += a[p, q] * a[p, q]
    fro = sqrt(fro)
    if fro == 0.0:
        return 0
    stop = tol * fro

    with nogil:
        for sweep in range(max_sweeps):
            off = 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    off += a[p, q] * a[p, q]
            off = sqrt(2.0 * off)
            if off <= stop:
                with gil:
                    return sweep
            rotated = False
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if fabs(apq) <= EPS * sqrt(fabs(a[p, p] * a[q, q])) + 1e-300:
                        continue
                    rotated = True
                    tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                    if tau != 0.0:
                        t = 1.0 / (fabs(tau) + sqrt(1.0 + tau * tau))
                        if tau < 0.0:
                            t = -t
                    else:
                        t = 1.0
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    for k in range(n):
                        rp = a[p, k]
                        rq = a[q, k]
                        a[p, k] = c * rp - s * rq
                        a[q, k] = s * rp + c * rq
                    for k in range(n):
                        rp = a[k, p]
                        rq = a[k, q]
                        a[k, p] = c * rp - s * rq
                        a[k, q] = s * rp + c * rq
                    for k in range(n):
                        rp = v[k, p]
                        rq = v[k, q]
                        v[k, p] = c * rp - s * rq
                        v[k, q] = s * rp + c * rq
            if not rotated:
                with gil:
                    return sweep + 1
    raise RuntimeError(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
        f"(n={n}, off-norm {off:.3e}, target {stop:.3e})"
    )
