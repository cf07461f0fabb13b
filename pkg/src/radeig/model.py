"""Model parameters of the radial operator.

The operator acting on R(xi), with inner product measure xi dxi on (0, inf):

    L = -d2/dxi2 - (1/xi) d/dxi + gamma^2/xi^2 - a/xi + b*xi + xi^2

`gamma` is the effective angular quantum number, `a` the Coulomb strength and
`b` the linear-term strength. Eigenvalues are denoted W throughout.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ModelParams:
    """One choice of (gamma, a, b) defining the operator L."""

    gamma: float
    a: float
    b: float

    def __post_init__(self):
        for name in ("gamma", "a", "b"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        # The recurrence and the basis exponent use |gamma|; restricting to
        # gamma >= 0 removes the sign ambiguity without losing any model.
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma} (use |gamma|)")
