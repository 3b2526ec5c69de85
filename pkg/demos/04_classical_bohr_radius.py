"""
The classical Bohr radius 1/3
=============================

The disc automorphisms (a - z)/(1 - a z) have sup norm 1, and the sum of the
moduli of their Taylor terms at radius r is a + (1-a^2) r / (1 - a r). Scanning
a shows the inequality holding at r = 1/3 and failing slightly beyond it.
"""

import numpy as np

from bohrradius import check_bohr_sample, moebius_family

grid = np.arange(1, 1001) / 1001
for r in (0.30, 1 / 3, 0.34, 0.35, 0.40):
    verdicts = [check_bohr_sample(moebius_family(a, 60), r, 1.0, ("declared", 1.0)) for a in grid]
    bad = [a for a, v in zip(grid, verdicts) if v.kind == "violated"]
    print(f"r={r:.4f}: {len(bad):4d} violations" + (f", first at a={bad[0]:.3f}" if bad else ""))
