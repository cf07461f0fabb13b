"""Pure-Python (numpy) cyclic Jacobi eigensolver, the fallback kernel.

Same sweep order and rotation thresholds as the compiled version in
``_jacobi_cy.pyx``; row/column updates are vectorized with numpy.
"""

import numpy as np


def jacobi_sweeps(a, v, tol, max_sweeps):
    """Diagonalize symmetric ``a`` in place, accumulating rotations into ``v``.

    Returns the number of sweeps performed. ``a`` ends (numerically) diagonal,
    ``v``'s columns are the eigenvectors of the original matrix.
    """
    n = a.shape[0]
    if n == 1:
        return 0
    fro = np.sqrt((a * a).sum())
    if fro == 0.0:
        return 0
    stop = tol * fro
    eps = np.finfo(float).eps
    for sweep in range(max_sweeps):
        off = np.sqrt(2.0 * (np.triu(a, 1) ** 2).sum())
        if off <= stop:
            return sweep
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                # skip rotations that cannot change the result in double precision
                if abs(apq) <= eps * np.sqrt(abs(a[p, p] * a[q, q])) + 1e-300:
                    continue
                rotated = True
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau)) if tau != 0.0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        if not rotated:
            return sweep + 1
    raise RuntimeError(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
        f"(n={n}, off-norm {off:.3e}, target {stop:.3e})"
    )
