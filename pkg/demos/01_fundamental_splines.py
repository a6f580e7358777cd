"""
Fundamental splines on the three grids
======================================

A fundamental spline is one at its own node and zero at every other node.
This script builds the basis for each family, checks that property and
tabulates one spline and its derivatives.
"""

import warnings

import numpy as np

from trigspline import BasisSpec, basis_matrix
from trigspline.kernels import TailNotConvergedWarning

# Low orders hit the truncation cap; the warning is expected here.
warnings.simplefilter("ignore", TailNotConvergedWarning)

# %%
# Three families share the interface.  ``even`` uses cosines and includes
# both ends of [0, pi]; ``odd0`` and ``odd1`` use sines and stay inside.
for family in ("even", "odd0", "odd1"):
    spec = BasisSpec(family, 9, 3)
    print(f"{family:5s} nodes:", np.round(spec.nodes, 4))

# %%
# Evaluated at its own nodes the basis matrix is the identity.  The two end
# splines of the even family peak at 2, which is why they carry a weight of
# one half wherever the basis is combined.
for family in ("even", "odd0", "odd1"):
    spec = BasisSpec(family, 9, 3)
    m = basis_matrix(spec, 0, spec.nodes)
    print(f"{family:5s} diag: {np.round(np.diag(m), 12)}")
    print(f"      off-diagonal max: {np.abs(m - np.diag(np.diag(m))).max():.1e}")

# %%
# Derivatives up to order r - 1 are available directly.
spec = BasisSpec("odd1", 9, 4)
t = np.linspace(0, np.pi, 9)
k = 4
print("\n t       phi     phi'      phi''     phi'''")
cols = [basis_matrix(spec, q, t)[:, k] for q in range(4)]
for row in zip(t, *cols):
    print("  ".join(f"{v:8.4f}" for v in row))
