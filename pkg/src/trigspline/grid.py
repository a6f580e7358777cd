"""Uniform node families on [0, pi].

Two families are used. ``Even2`` grids carry the even (cosine) splines and
``Odd3`` grids the odd (sine) splines; the indicator selects between nodes
that include/approach the endpoints (0) and half-integer nodes (1).
"""

from dataclasses import dataclass, field
from enum import Enum
import math

import numpy as np

__all__ = ["GridFamily", "GridSpec", "Grid", "InvalidGridError", "make_grid"]


class InvalidGridError(ValueError):
    pass


class GridFamily(str, Enum):
    EVEN2 = "even2"
    ODD3 = "odd3"


_MIN_NODES = {GridFamily.EVEN2: 3, GridFamily.ODD3: 1}


@dataclass(frozen=True)
class GridSpec:
    family: GridFamily
    indicator: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "family", GridFamily(self.family))
        if self.indicator not in (0, 1):
            raise InvalidGridError(f"grid indicator must be 0 or 1, got {self.indicator!r}")
        if int(self.n) != self.n or self.n < _MIN_NODES[self.family]:
            raise InvalidGridError(
                f"{self.family.value} grid needs n >= {_MIN_NODES[self.family]}, got {self.n!r}"
            )
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class Grid:
    spec: GridSpec
    nodes: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.nodes)

    def node(self, k):
        """Node ``k`` using 1-based indexing."""
        return float(self.nodes[k - 1])


def make_grid(spec):
    """Build the node set described by `spec`.

    Each node is formed as ``(multiple * pi) / divisor`` in a single
    expression so that no rounding is accumulated along the grid.

    Examples
    --------
    >>> make_grid(GridSpec("odd3", 1, 3)).nodes / math.pi
    array([0.16666667, 0.5       , 0.83333333])
    """
    n = spec.n
    j = np.arange(1, n + 1, dtype=float)
    if spec.indicator == 1:
        nodes = (2.0 * j - 1.0) * math.pi / (2.0 * n)
    elif spec.family is GridFamily.EVEN2:
        nodes = (j - 1.0) * math.pi / (n - 1.0)
        nodes[-1] = math.pi
    else:
        nodes = j * math.pi / (n + 1.0)
    nodes.setflags(write=False)
    return Grid(spec, nodes)
