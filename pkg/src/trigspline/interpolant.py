"""Interpolating splines built from samples at the grid nodes."""

from dataclasses import dataclass, field

import numpy as np

from .basis import BasisSpec, Family, basis_matrix

__all__ = ["Interpolant", "interpolate", "interp_even", "interp_odd0", "interp_odd1"]


@dataclass(frozen=True)
class Interpolant:
    """``sum_k w_k f(x_k) phi_k(t)`` for a basis `spec` and node samples.

    The even family uses half weights on its two end nodes (whose
    fundamental splines equal 2 at their own node); all other weights are 1.
    """

    spec: BasisSpec
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.array(self.samples, dtype=float)
        if s.shape != (self.spec.n,):
            raise ValueError(f"expected {self.spec.n} samples, got shape {s.shape}")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    def __call__(self, t, q=0):
        out = basis_matrix(self.spec, q, t) @ (self.spec.weights * self.samples)
        return float(out[0]) if np.ndim(t) == 0 else out


def interpolate(spec, f):
    """Sample the callable `f` at the nodes of `spec` and build the interpolant."""
    return Interpolant(spec, np.asarray(f(spec.nodes), dtype=float))


def _interp(family, spec, samples, q, t):
    if spec.family is not family:
        raise ValueError(f"expected a {family.value} basis, got {spec.family.value}")
    return Interpolant(spec, samples)(t, q)


def interp_even(spec, samples, q, t):
    return _interp(Family.EVEN, spec, samples, q, t)


def interp_odd0(spec, samples, q, t):
    return _interp(Family.ODD0, spec, samples, q, t)


def interp_odd1(spec, samples, q, t):
    return _interp(Family.ODD1, spec, samples, q, t)
