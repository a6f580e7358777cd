"""Incomplete (even and odd) trigonometric fundamental splines and collocation
solvers for the first boundary value problem of linear second-order ODEs."""

from .basis import BasisSpec, Family, basis_matrix, fundamental, stc, sts0, sts1
from .bvp import (
    BvpProblem,
    CollocationSolution,
    DomainMap,
    assemble,
    assemble_even,
    assemble_odd,
    error_report,
    evaluate,
    map_problem,
    solve,
)
from .grid import GridFamily, GridSpec, make_grid
from .interpolant import Interpolant, interpolate
from .kernels import SeriesParams, TailNotConvergedWarning, c_kernel, h_factor, s_kernel, sigma1
from .linalg import SingularMatrixError, lu_solve

__version__ = "0.1.0"
