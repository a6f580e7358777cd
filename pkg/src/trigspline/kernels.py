"""Convergence factor and the aliased series behind the fundamental splines.

Every fundamental spline is a finite cosine/sine sum whose coefficients are
themselves infinite series over the alias frequencies ``2*m*P +/- j``.  The
series are truncated adaptively: summation stops at the first ``m`` whose
integral-test tail bound drops below ``eps_tail`` (or at ``m_cap``).

All series are accumulated chunk by chunk in increasing ``m``; chunk partial
sums are combined with Neumaier compensation.
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np

__all__ = [
    "SeriesParams",
    "TailNotConvergedWarning",
    "sigma1",
    "tail_bound",
    "truncation_index",
    "h_factor",
    "c_kernel",
    "s_kernel",
    "kernel_matrix",
]

DEFAULT_EPS_TAIL = 1e-10
PLOT_EPS_TAIL = 1e-6
DEFAULT_M_CAP = 10**6

# complex entries per chunk array
_CHUNK_BUDGET = 1 << 20


class TailNotConvergedWarning(RuntimeWarning):
    """The term cap was reached before the tail bound fell below tolerance."""


@dataclass(frozen=True)
class SeriesParams:
    r: int
    q: int = 0
    eps_tail: float = DEFAULT_EPS_TAIL
    m_cap: int = DEFAULT_M_CAP

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"spline order r must be >= 1, got {self.r}")
        if not 0 <= self.q <= self.r - 1:
            raise ValueError(f"derivative order q must lie in [0, r-1] = [0, {self.r - 1}], got {self.q}")
        if not self.eps_tail > 0:
            raise ValueError(f"eps_tail must be positive, got {self.eps_tail}")
        if self.m_cap < 1:
            raise ValueError(f"m_cap must be >= 1, got {self.m_cap}")

    def with_q(self, q):
        return SeriesParams(self.r, q, self.eps_tail, self.m_cap)


def sigma1(r, j):
    """Convergence factor ``j**-(1 + r)``."""
    if np.ndim(j):
        return np.asarray(j, dtype=float) ** -(1.0 + r)
    return float(j) ** -(1.0 + r)


def tail_bound(r, q, p, m):
    """Upper bound on the summed magnitude of all alias terms beyond index `m`.

    Each alias term is at most ``(2*P*m' - P)**(q - r - 1)``, two per index,
    so the tail is bounded by ``integral_m^inf 2 (2 P s - P)**(q-r-1) ds``.
    """
    d = r - q
    return (2.0 * p * m - p) ** (-d) / (p * d)


def truncation_index(params, p):
    """Return ``(M, converged)`` for the adaptive truncation rule."""
    d = params.r - params.q
    # smallest m with (2pm - p)**d > 1 / (p d eps)
    x = (1.0 / (p * d * params.eps_tail)) ** (1.0 / d)
    m = int(min(params.m_cap, max(1.0, math.floor((x / p + 1.0) / 2.0) + 1)))
    while m > 1 and tail_bound(params.r, params.q, p, m - 1) < params.eps_tail:
        m -= 1
    while m < params.m_cap and tail_bound(params.r, params.q, p, m) >= params.eps_tail:
        m += 1
    m = min(m, params.m_cap)
    return m, tail_bound(params.r, params.q, p, m) < params.eps_tail


def _check_truncation(params, p, what):
    m, ok = truncation_index(params, p)
    if not ok:
        warnings.warn(
            f"{what}: tail bound {tail_bound(params.r, params.q, p, m):.3g} >= "
            f"eps_tail={params.eps_tail:.3g} at m_cap={m} (r={params.r}, q={params.q}, P={p})",
            TailNotConvergedWarning,
            stacklevel=3,
        )
    return m


def _check_j(j, p):
    j = np.atleast_1d(np.asarray(j))
    if j.ndim != 1 or np.any(j != np.round(j)) or np.any((j < 1) | (j > p)):
        raise ValueError(f"alias index must be an integer in [1, {p}], got {j}")
    return j.astype(float)


def _check_t(t):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if t.ndim != 1 or np.any((t < -1e-12) | (t > math.pi + 1e-12)):
        raise ValueError("evaluation points must lie in [0, pi]")
    return t


def _inv_pow(n, k):
    inv = 1.0 / n
    out = inv
    for _ in range(k - 1):
        out = out * inv
    return out


class _Neumaier:
    """Elementwise compensated accumulator for numpy arrays."""

    def __init__(self, shape):
        self.s = np.zeros(shape)
        self.c = np.zeros(shape)

    def add(self, x):
        t = self.s + x
        big = np.abs(self.s) >= np.abs(x)
        self.c += np.where(big, (self.s - t) + x, (x - t) + self.s)
        self.s = t

    @property
    def value(self):
        return self.s + self.c


def h_factor(params, p, k):
    """Aliased normaliser ``sigma1(k) + sum_m [sigma1(2mP+k) + sigma1(2mP-k)]``.

    Only the order ``r`` of `params` enters (the derivative order is zero by
    construction).  `k` may be a scalar or a 1-d array of indices in [1, P].
    """
    scalar = np.ndim(k) == 0
    kk = _check_j(k, p)
    base = params.with_q(0)
    m_stop = _check_truncation(base, p, "h_factor")
    e = params.r + 1
    acc = _Neumaier(kk.shape)
    acc.add(_inv_pow(kk, e))
    step = max(1, _CHUNK_BUDGET // len(kk))
    for start in range(1, m_stop + 1, step):
        m = np.arange(start, min(start + step, m_stop + 1), dtype=float)
        two_mp = 2.0 * p * m[None, :]
        terms = _inv_pow(two_mp + kk[:, None], e) + _inv_pow(two_mp - kk[:, None], e)
        acc.add(terms.sum(axis=1))
    out = acc.value
    return float(out[0]) if scalar else out


def kernel_matrix(params, p, j, t, kind, alternating=False):
    """Truncated ``c`` (``kind='c'``) or ``s`` (``kind='s'``) series on a grid.

    Returns an array of shape ``(len(j), len(t))``.  The alias sums are
    written as ``sum_m g(2mP +/- j) * w_m(t)`` with ``w_m = exp(2i m P t)``
    (times ``(-1)**m`` when `alternating`).  Within a chunk starting at
    ``m0`` the phases factor as ``w_m0 * w_i``, so one fixed phase block
    serves every chunk and each chunk costs two real matrix products.
    """
    if kind not in ("c", "s"):
        raise ValueError(f"kind must be 'c' or 's', got {kind!r}")
    jj = _check_j(j, p)
    tt = _check_t(t)
    r, q = params.r, params.q
    e = r + 1 - q
    m_stop = _check_truncation(params, p, f"{kind}_kernel")

    theta = q * math.pi / 2.0
    lead_phase = np.outer(jj, tt) + theta
    lead = _inv_pow(jj, e)[:, None] * (np.cos(lead_phase) if kind == "c" else np.sin(lead_phase))
    acc = _Neumaier(lead.shape)
    acc.add(lead)

    # e^{i theta} e^{+-i j t}; the minus branch of s enters with a negative sign
    rot_plus = np.exp(1j * lead_phase)
    rot_minus = np.exp(1j * (theta - np.outer(jj, tt)))
    if kind == "s":
        rot_minus = -rot_minus

    phi = 2.0 * p * tt
    step = int(min(m_stop, max(1024, _CHUNK_BUDGET // max(len(tt), 1))))
    offsets = np.arange(step, dtype=float)
    block = np.outer(offsets, phi)
    block_cos, block_sin = np.cos(block), np.sin(block)
    if alternating:
        flip = np.where(offsets % 2 == 1, -1.0, 1.0)[:, None]
        block_cos *= flip
        block_sin *= flip
    for start in range(1, m_stop + 1, step):
        size = min(step, m_stop + 1 - start)
        m = start + offsets[:size]
        two_mp = 2.0 * p * m[None, :]
        g_plus = _inv_pow(two_mp + jj[:, None], e)
        g_minus = _inv_pow(two_mp - jj[:, None], e)
        bc, bs = block_cos[:size], block_sin[:size]
        shift = np.exp(1j * start * phi)
        if alternating and start % 2 == 1:
            shift = -shift
        sum_plus = (g_plus @ bc + 1j * (g_plus @ bs)) * shift
        sum_minus = (g_minus @ bc + 1j * (g_minus @ bs)) * shift
        z = rot_plus * sum_plus + rot_minus * sum_minus
        acc.add(z.real if kind == "c" else z.imag)
    return acc.value


def _scalarise(out, j, t):
    if np.ndim(j) == 0 and np.ndim(t) == 0:
        return float(out[0, 0])
    if np.ndim(j) == 0:
        return out[0]
    if np.ndim(t) == 0:
        return out[:, 0]
    return out


def c_kernel(params, p, j, t):
    """Aliased cosine series

    ``sum_n sigma1(r, n) n**q cos(n t + q pi/2)`` over ``n in {j} U {2mP +/- j}``.
    """
    return _scalarise(kernel_matrix(params, p, j, t, "c"), j, t)


def s_kernel(params, p, j, t, alternating):
    """Aliased sine series; the ``2mP - j`` branch is subtracted.

    With `alternating` each alias pair is weighted by ``(-1)**m``.
    """
    return _scalarise(kernel_matrix(params, p, j, t, "s", alternating), j, t)
