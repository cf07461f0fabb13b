"""Evaluatable radial functions R(xi) with quadrature norms.

Two forms occur:

* polynomial: R = xi^gamma exp(-b xi/2 - xi^2/2) P(xi), P a polynomial
  (the terminated-series solutions);
* expansion: R = sum_j c_j xi^(gamma+j) exp(-xi^2/2)
  (variational solutions in the non-orthogonal basis).

Square integrability and all norms use the radial measure xi dxi.
"""

import numpy as np
from scipy.integrate import quad


class RadialFunction:
    """R(xi) in polynomial or basis-expansion form."""

    def __init__(self, gamma, coefficients, kind, linear_weight=0.0):
        if kind not in ("polynomial", "expansion"):
            raise ValueError(f"unknown kind {kind!r}")
        self.gamma = float(gamma)
        self.coefficients = np.asarray(coefficients, dtype=float)
        self.kind = kind
        self.linear_weight = float(linear_weight)  # b in exp(-b xi / 2)
        self._norm = None

    @classmethod
    def from_polynomial(cls, gamma, b, poly_coefficients):
        return cls(gamma, poly_coefficients, "polynomial", linear_weight=b)

    @classmethod
    def from_expansion(cls, gamma, basis_coefficients):
        return cls(gamma, basis_coefficients, "expansion")

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        scalar = xi.ndim == 0
        x = np.atleast_1d(xi).astype(float)
        if self.kind == "polynomial":
            poly = np.zeros_like(x)
            for c in self.coefficients[::-1]:
                poly = poly * x + c
            with np.errstate(divide="ignore"):
                pref = np.where(
                    x > 0.0,
                    np.power(x, self.gamma, where=x > 0.0, out=np.ones_like(x)),
                    1.0 if self.gamma == 0.0 else 0.0,
                )
            out = pref * np.exp(-self.linear_weight * x / 2.0 - x * x / 2.0) * poly
        else:
            j = np.arange(len(self.coefficients))
            powers = np.power.outer(np.maximum(x, 0.0), j + self.gamma)
            if self.gamma == 0.0:
                powers[x == 0.0, 0] = 1.0
            else:
                powers[x == 0.0, :] = 0.0
            out = (powers @ self.coefficients) * np.exp(-x * x / 2.0)
        return float(out[0]) if scalar else out

    @property
    def xi_cutoff(self):
        """Integration cutoff; the exp(-xi^2) tail is below 1e-16 of the peak."""
        return self.gamma + abs(self.linear_weight) + 12.0

    def norm_squared(self):
        """integral_0^inf R(xi)^2 xi dxi by adaptive quadrature."""
        if self._norm is None:
            value, err = quad(lambda t: self(t) ** 2 * t, 0.0, self.xi_cutoff, limit=200)
            if not np.isfinite(value) or (value != 0.0 and err > 1e-8 * abs(value)):
                raise RuntimeError(f"norm quadrature did not converge (value={value}, err={err})")
            self._norm = value
        return self._norm

    def norm(self):
        return float(np.sqrt(self.norm_squared()))

    def normalized(self):
        """Unit-norm copy, sign-fixed so R > 0 as xi -> 0+."""
        coeffs = self.coefficients / self.norm()
        lead = coeffs[np.nonzero(coeffs)[0][0]] if np.any(coeffs) else 1.0
        if lead < 0.0:
            coeffs = -coeffs
        out = RadialFunction(self.gamma, coeffs, self.kind, self.linear_weight)
        out._norm = 1.0
        return out

    def profile(self, xi_grid):
        """xi R(xi)^2 sampled on a grid."""
        xi_grid = np.asarray(xi_grid, dtype=float)
        return xi_grid * self(xi_grid) ** 2

    def count_nodes(self, xi_max=None, samples=4000):
        """Interior zeros of R on (0, xi_max), counted by sign changes."""
        hi = self.xi_cutoff if xi_max is None else xi_max
        x = np.linspace(0.0, hi, samples + 1)[1:]
        values = self(x)
        scale = np.abs(values).max()
        signs = np.sign(np.where(np.abs(values) > 1e-12 * scale, values, 0.0))
        signs = signs[signs != 0.0]
        return int(np.sum(signs[1:] != signs[:-1]))
