"""First boundary value problem by collocation with fundamental splines.

The problem ``u'' + p1(x) u' + p2(x) u = f(x)``, ``u(a) = u_a``,
``u(b) = u_b`` is moved to ``[0, pi]`` by ``t = lam (x - a)`` with
``lam = pi / (b - a)``, which turns it into

    lam**2 v'' + lam p1(x(t)) v' + p2(x(t)) v = f(x(t)).

The unknowns are the solution values at the grid nodes.  For the even basis
the two end values are the boundary data and the interior nodes are
collocated; for the odd bases (which vanish at both ends) all N nodes are
collocated and the boundary data must be zero.
"""

from dataclasses import dataclass, field
import math
from typing import Callable, NamedTuple, Optional
import warnings

import numpy as np

from .basis import BasisSpec, Family, basis_matrix
from .linalg import lu_solve

__all__ = [
    "BvpProblem",
    "DomainMap",
    "MappedProblem",
    "CollocationSolution",
    "ErrorReport",
    "DomainError",
    "map_problem",
    "assemble_even",
    "assemble_odd",
    "assemble",
    "solve",
    "evaluate",
    "error_report",
    "collocation_residual",
]


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class BvpProblem:
    """``u'' + p1 u' + p2 u = f`` on ``[a, b]`` with Dirichlet data.

    The coefficient functions take a float or an array of x values.
    """

    p1: Callable
    p2: Callable
    f: Callable
    a: float
    b: float
    u_a: float
    u_b: float
    exact: Optional[Callable] = None

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"need a < b, got [{self.a}, {self.b}]")


@dataclass(frozen=True)
class DomainMap:
    a: float
    b: float

    @property
    def lam(self):
        return math.pi / (self.b - self.a)

    def to_t(self, x):
        t = self.lam * (np.asarray(x, dtype=float) - self.a)
        # the endpoint images may miss 0 and pi by an ulp
        return np.clip(t, 0.0, math.pi)

    def to_x(self, t):
        return self.a + np.asarray(t, dtype=float) / self.lam

    @classmethod
    def of(cls, problem):
        return cls(problem.a, problem.b)


class MappedProblem(NamedTuple):
    """Coefficients of ``q2 v'' + q1 v' + q0 v = rhs`` as functions of t."""

    q2: Callable
    q1: Callable
    q0: Callable
    rhs: Callable


def map_problem(problem, dmap=None):
    dmap = dmap or DomainMap.of(problem)
    lam = dmap.lam

    def q2(t):
        return np.full(np.shape(t), lam * lam)

    def q1(t):
        return lam * _as_array(problem.p1(dmap.to_x(t)), t)

    def q0(t):
        return _as_array(problem.p2(dmap.to_x(t)), t)

    def rhs(t):
        return _as_array(problem.f(dmap.to_x(t)), t)

    return MappedProblem(q2, q1, q0, rhs)


def _as_array(values, t):
    return np.broadcast_to(np.asarray(values, dtype=float), np.shape(t)).copy()


def _operator_matrix(mapped, spec, t):
    """Rows ``q2 B'' + q1 B' + q0 B`` at the points `t`, one column per node."""
    b0 = basis_matrix(spec, 0, t)
    b1 = basis_matrix(spec, 1, t)
    b2 = basis_matrix(spec, 2, t)
    return mapped.q2(t)[:, None] * b2 + mapped.q1(t)[:, None] * b1 + mapped.q0(t)[:, None] * b0


def _check_order(spec):
    if spec.r < 3:
        raise ValueError(f"collocation needs second derivatives, so r >= 3; got r={spec.r}")


def assemble_even(problem, spec, dmap=None):
    """Collocation system for the interior node values of an even-basis solution.

    Returns ``(A, rhs)`` of sizes ``(N-2, N-2)`` and ``N-2``.  The end
    values are the boundary data; their (half-weighted) columns are moved to
    the right-hand side.
    """
    if spec.family is not Family.EVEN:
        raise ValueError(f"assemble_even needs the even basis, got {spec.family.value}")
    if spec.n < 4:
        raise ValueError(f"the even basis needs N >= 4 for collocation, got {spec.n}")
    _check_order(spec)
    mapped = map_problem(problem, dmap)
    t = spec.nodes[1:-1]
    full = _operator_matrix(mapped, spec, t)
    rhs = mapped.rhs(t) - 0.5 * problem.u_a * full[:, 0] - 0.5 * problem.u_b * full[:, -1]
    return full[:, 1:-1], rhs


def assemble_odd(problem, spec, dmap=None):
    """Collocation system at all N nodes of an odd-basis grid."""
    if spec.family is Family.EVEN:
        raise ValueError("assemble_odd needs an odd basis")
    if problem.u_a != 0 or problem.u_b != 0:
        raise ValueError(
            f"odd bases vanish at both ends; boundary values must be zero, got ({problem.u_a}, {problem.u_b})"
        )
    _check_order(spec)
    mapped = map_problem(problem, dmap)
    t = spec.nodes
    return _operator_matrix(mapped, spec, t), mapped.rhs(t)


def assemble(problem, spec, dmap=None):
    if spec.family is Family.EVEN:
        return assemble_even(problem, spec, dmap)
    return assemble_odd(problem, spec, dmap)


@dataclass(frozen=True)
class CollocationSolution:
    """Node values `alpha` of an approximate solution, with its basis and map.

    Calling the solution evaluates it (or a derivative) at x in ``[a, b]``.
    """

    spec: BasisSpec
    map: DomainMap
    alpha: np.ndarray = field(repr=False)
    warnings: tuple = ()

    def __call__(self, x, q=0):
        return evaluate(self, x, q)

    @property
    def nodes_x(self):
        return self.map.to_x(self.spec.nodes)


def solve(problem, spec, dmap=None):
    """Assemble and solve the collocation system.

    Kernel truncation warnings raised while assembling are re-emitted and
    kept on the returned solution.
    """
    dmap = dmap or DomainMap.of(problem)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        a, rhs = assemble(problem, spec, dmap)
    alpha = lu_solve(a, rhs)
    if spec.family is Family.EVEN:
        alpha = np.concatenate([[problem.u_a], alpha, [problem.u_b]])
    messages = tuple(dict.fromkeys(str(w.message) for w in caught))
    for w in caught:
        warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
    alpha.setflags(write=False)
    return CollocationSolution(spec, dmap, alpha, messages)


def evaluate(solution, x, q=0):
    """Value (``q = 0``) or q-th x-derivative of the solution at `x`."""
    dmap = solution.map
    xa = np.asarray(x, dtype=float)
    span = dmap.b - dmap.a
    if np.any((xa < dmap.a - 1e-12 * span) | (xa > dmap.b + 1e-12 * span)):
        raise DomainError(f"x outside [{dmap.a}, {dmap.b}]")
    t = dmap.to_t(np.atleast_1d(xa))
    coeff = solution.spec.weights * solution.alpha
    out = basis_matrix(solution.spec, q, t) @ coeff * dmap.lam**q
    return float(out[0]) if xa.ndim == 0 else out


def collocation_residual(problem, solution):
    """Operator residual and right-hand side at the collocation nodes (t-domain)."""
    spec = solution.spec
    mapped = map_problem(problem, solution.map)
    t = spec.nodes[1:-1] if spec.family is Family.EVEN else spec.nodes
    coeff = spec.weights * solution.alpha
    lhs = _operator_matrix(mapped, spec, t) @ coeff
    rhs = mapped.rhs(t)
    return lhs - rhs, rhs


@dataclass(frozen=True)
class ErrorReport:
    max_abs_err: float
    argmax: float
    table: np.ndarray = field(repr=False)  # columns: x, approx, exact, abs_err


def error_report(solution, exact, n_probe=400):
    """Deviation from `exact` on ``n_probe + 1`` uniform points of ``[a, b]``."""
    x = np.linspace(solution.map.a, solution.map.b, n_probe + 1)
    approx = evaluate(solution, x)
    ref = np.asarray(exact(x), dtype=float)
    err = np.abs(approx - ref)
    i = int(np.argmax(err))
    return ErrorReport(float(err[i]), float(x[i]), np.column_stack([x, approx, ref, err]))
