"""Gaussian moments shared by overlap and Hamiltonian assembly.

M(p) = integral_0^inf xi^p exp(-xi^2) dxi = Gamma((p+1)/2) / 2

Only two seeds are needed, M(0) = sqrt(pi)/2 and M(1) = 1/2; the rest follow
from M(p+2) = M(p) (p+1)/2. Matrix assembly for non-integer 2*gamma uses the
same recurrence started from Gamma-function seeds at offset p = 2*gamma.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from mpmath import mp, mpf


@dataclass(frozen=True)
class MomentTable:
    """M(p) for integer p = 0..p_max."""

    p_max: int
    values: np.ndarray = field(repr=False)

    def __getitem__(self, p):
        if not 0 <= p <= self.p_max:
            raise IndexError(f"moment index {p} outside 0..{self.p_max}")
        return float(self.values[p])

    def __len__(self):
        return self.p_max + 1


def moments(p_max):
    """Tabulate M(p) for 0 <= p <= p_max via the two seeds and the recurrence.

    Raises OverflowError once M(p) leaves double range (p_max around 340);
    large-basis assembly is done in log/extended scale elsewhere, not here.
    """
    if p_max < 1:
        raise ValueError(f"p_max must be >= 1, got {p_max}")
    values = np.empty(p_max + 1)
    values[0] = math.sqrt(math.pi) / 2.0
    values[1] = 0.5
    for p in range(p_max - 1):
        values[p + 2] = values[p] * (p + 1) / 2.0
        if math.isinf(values[p + 2]):
            raise OverflowError(
                f"M({p + 2}) overflows double precision; "
                "use log-scaled assembly for bases this large"
            )
    return MomentTable(p_max=p_max, values=values)


def shifted_moments(offset, count):
    """M(offset + k) for k = 0..count-1, offset = 2*gamma >= 0 real, as floats."""
    return np.array([float(x) for x in shifted_moments_mp(offset, count)])


def shifted_moments_mp(offset, count):
    """Exact-precision (current mp.dps) version of `shifted_moments`.

    Seeds M(offset) and M(offset+1) come from the Gamma function; the rest
    use the stable upward recurrence M(p+2) = M(p)(p+1)/2.
    """
    off = mpf(offset)
    out = [mp.gamma((off + 1) / 2) / 2, mp.gamma((off + 2) / 2) / 2]
    while len(out) < count:
        p = off + len(out) - 2
        out.append(out[-2] * (p + 1) / 2)
    return out[:count]
