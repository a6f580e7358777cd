"""Even (cosine) and odd (sine) fundamental trigonometric splines.

Three families are provided, each tied to its own grid on [0, pi]:

========  ==============  ==========  ================
family    grid            period P    alias weighting
========  ==============  ==========  ================
even      Even2, I=0      N - 1       none
odd0      Odd3,  I=0      N + 1       none
odd1      Odd3,  I=1      N           (-1)**m
========  ==============  ==========  ================

With these choices the aliased kernels collapse to ``H(j) cos(j x)`` or
``H(j) sin(j x)`` at the grid nodes, which is what makes the splines
cardinal.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .grid import GridFamily, GridSpec, make_grid
from .kernels import DEFAULT_EPS_TAIL, DEFAULT_M_CAP, SeriesParams, h_factor, kernel_matrix

__all__ = ["Family", "BasisSpec", "basis_matrix", "stc", "sts0", "sts1", "fundamental"]


class Family(str, Enum):
    EVEN = "even"
    ODD0 = "odd0"
    ODD1 = "odd1"


_GRID = {
    Family.EVEN: (GridFamily.EVEN2, 0),
    Family.ODD0: (GridFamily.ODD3, 0),
    Family.ODD1: (GridFamily.ODD3, 1),
}


@dataclass(frozen=True)
class BasisSpec:
    """Family, node count and order of a fundamental-spline basis."""

    family: Family
    n: int
    r: int
    eps_tail: float = DEFAULT_EPS_TAIL
    m_cap: int = DEFAULT_M_CAP

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        # validates n for the family and r, eps_tail, m_cap
        GridSpec(*_GRID[self.family], self.n)
        SeriesParams(self.r, 0, self.eps_tail, self.m_cap)

    @cached_property
    def grid(self):
        return make_grid(GridSpec(*_GRID[self.family], self.n))

    @property
    def nodes(self):
        return self.grid.nodes

    @property
    def period(self):
        return {Family.EVEN: self.n - 1, Family.ODD0: self.n + 1, Family.ODD1: self.n}[self.family]

    @property
    def alternating(self):
        return self.family is Family.ODD1

    @property
    def weights(self):
        """Weights on the node values in the interpolating/solution sums."""
        w = np.ones(self.n)
        if self.family is Family.EVEN:
            w[0] = w[-1] = 0.5
        return w

    def series(self, q=0):
        return SeriesParams(self.r, q, self.eps_tail, self.m_cap)

    @cached_property
    def _h(self):
        return h_factor(self.series(0), self.period, np.arange(1, self._jmax + 1))

    @property
    def _jmax(self):
        return self.n - 1 if self.family is Family.EVEN else self.n

    @cached_property
    def _coef(self):
        # (j, k) entries trig(j x_k) / H(j), halved on the last frequency where required
        j = np.arange(1, self._jmax + 1, dtype=float)
        arg = np.outer(j, self.nodes)
        trig = np.cos(arg) if self.family is Family.EVEN else np.sin(arg)
        w = np.ones(len(j))
        if self.family in (Family.EVEN, Family.ODD1):
            w[-1] = 0.5
        return (w / self._h)[:, None] * trig


def basis_matrix(spec, q, points):
    """Values of all N fundamental splines (q-th derivative) at `points`.

    Returns an array of shape ``(len(points), N)``; column ``k - 1`` holds
    the k-th spline.  The kernel series are evaluated once per
    ``(frequency, point)`` pair and shared across all columns.
    """
    params = spec.series(q)
    pts = np.atleast_1d(np.asarray(points, dtype=float))
    if pts.size == 0:
        return np.zeros((0, spec.n))
    j = np.arange(1, spec._jmax + 1)
    if spec.family is Family.EVEN:
        kern = kernel_matrix(params, spec.period, j, pts, "c")
    else:
        kern = kernel_matrix(params, spec.period, j, pts, "s", spec.alternating)
    values = kern.T @ spec._coef
    if spec.family is Family.EVEN and q == 0:
        values += 0.5
    return (2.0 / spec.period) * values


def fundamental(spec, q, k, t):
    """The k-th fundamental spline (1-based) of `spec`, q-th derivative, at `t`."""
    if not 1 <= k <= spec.n:
        raise ValueError(f"node index k must lie in [1, {spec.n}], got {k}")
    out = basis_matrix(spec, q, t)[:, k - 1]
    return float(out[0]) if np.ndim(t) == 0 else out


def _require(spec, family):
    if spec.family is not family:
        raise ValueError(f"expected a {family.value} basis, got {spec.family.value}")


def stc(spec, q, k, t):
    """Even fundamental spline on the Even2 (I=0) grid."""
    _require(spec, Family.EVEN)
    return fundamental(spec, q, k, t)


def sts0(spec, q, k, t):
    """Odd fundamental spline on the Odd3 (I=0) grid."""
    _require(spec, Family.ODD0)
    return fundamental(spec, q, k, t)


def sts1(spec, q, k, t):
    """Odd fundamental spline on the Odd3 (I=1) grid."""
    _require(spec, Family.ODD1)
    return fundamental(spec, q, k, t)
