"""
Interpolating a smooth function
===============================

Samples at the nodes fix an interpolant that can be evaluated, and
differentiated, anywhere in [0, pi].
"""

import warnings

import numpy as np

from trigspline import BasisSpec, interpolate
from trigspline.kernels import TailNotConvergedWarning

# Low orders hit the truncation cap; the warning is expected here.
warnings.simplefilter("ignore", TailNotConvergedWarning)

# %%
# An even function of t suits the cosine family; an odd one suits the sines.
targets = {
    "even": (lambda t: np.cos(t) ** 2, lambda t: -np.sin(2 * t)),
    "odd1": (lambda t: np.sin(t) * np.exp(np.cos(t)), None),
}

t = np.linspace(0, np.pi, 801)
for family, (f, df) in targets.items():
    print(f"\n{family}: max |f - s| as N grows")
    for n in (5, 9, 17, 33):
        s = interpolate(BasisSpec(family, n, 3), f)
        line = f"  N={n:3d}  {np.abs(s(t) - f(t)).max():.2e}"
        if df is not None:
            line += f"   derivative {np.abs(s(t, 1) - df(t)).max():.2e}"
        print(line)

# %%
# Raising the order r smooths the interpolant and, for this target,
# improves accuracy at a fixed N.
f = targets["odd1"][0]
for r in (1, 2, 3, 4, 5):
    s = interpolate(BasisSpec("odd1", 9, r), f)
    print(f"r={r}: {np.abs(s(t) - f(t)).max():.2e}")
