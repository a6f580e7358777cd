"""
Collocation for two-point boundary value problems
=================================================

``u'' + p1 u' + p2 u = f`` on [a, b] with prescribed end values.  The
even family handles general boundary values; the odd families need
homogeneous ones.
"""

import warnings

import numpy as np

from trigspline import BasisSpec, error_report, solve
from trigspline.kernels import TailNotConvergedWarning
from trigspline.problems import example1, example2, example3

warnings.simplefilter("ignore", TailNotConvergedWarning)

# %%
# A problem with a known solution; error against N for each order.
problem = example3().build()
for family in ("odd0", "odd1"):
    print(f"\n{family}: max error, u'' + u = x on [0, 1]")
    print("  N    r=3        r=4        r=5")
    for n in (5, 9, 17):
        errs = [error_report(solve(problem, BasisSpec(family, n, r)), problem.exact).max_abs_err for r in (3, 4, 5)]
        print(f"  {n:2d}  " + "  ".join(f"{e:.2e}" for e in errs))

# %%
# Non-homogeneous ends with the cosine family.  The basis has zero slope at
# both ends, so accuracy is limited when the true solution does not.
for c in (0, 1, 10):
    problem = example1(c).build()
    sol = solve(problem, BasisSpec("even", 9, 3))
    rep = error_report(sol, problem.exact)
    print(f"C={c:2d}: max error {rep.max_abs_err:.4f} at x={rep.argmax:.3f}")

# %%
# The solution object evaluates derivatives in the original variable.
problem = example2().build()
sol = solve(problem, BasisSpec("even", 9, 4))
x = np.linspace(problem.a, problem.b, 5)
print("\n x        u*        u*'       exact")
for row in zip(x, sol(x), sol(x, 1), problem.exact(x)):
    print("  ".join(f"{v:8.4f}" for v in row))
