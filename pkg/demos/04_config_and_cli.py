"""
Driving a solve from a config file
==================================

The ``trigspline`` command reads a small key = value file.  This script
writes one, runs it through the same entry point the shell uses and reads
back the CSV.  ``samples`` counts intervals, so 10 gives 11 rows.
"""

import csv
import tempfile
from pathlib import Path

from trigspline.cli import main

CONFIG = """\
# u'' + u = -x on [0, 1], u(0) = u(1) = 0
family = odd1
r = 4
n = 9
a = 0
b = 1
u_a = 0
u_b = 0
p1 = 0
p2 = 1
f = -x
exact = sin(x)/sin(1) - x
samples = 10
"""

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "problem.cfg"
    path.write_text(CONFIG)
    status = main(["solve", str(path)])
    print("exit status", status)
    with open(path.with_suffix(".csv")) as fh:
        rows = list(csv.DictReader(fh))
    print(f"{len(rows)} rows, columns {list(rows[0])}")
    for row in rows[::5]:
        print(f"  x={float(row['x']):.2f}  u={float(row['u_approx']):+.6f}  err={float(row['abs_err']):.1e}")

# %%
# The shell equivalents:
#
#   trigspline solve problem.cfg
#   trigspline examples --out-dir results
#   trigspline basis --family even --r 3 --n 9 --k 5 --q 1 --out phi.csv
#   trigspline interp --data samples.csv --family odd1 --r 3 --out s.csv
