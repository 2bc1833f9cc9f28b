"""
==========================
Growth of arc coefficients
==========================

Mahler coefficients of each class arc against the guaranteed growth
ceil(k/2), for the interleaved factorial recurrence. Odd classes carry
genuinely analytic arcs; even classes vanish to working precision.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from holozeros import fixture, validate
from holozeros.padic import PadicContext, TOP
from holozeros.companion import build_companion, find_period, class_system
from holozeros.arc import lift

M = 12
spec = validate(fixture("interleaved"))
sys = build_companion(spec, PadicContext(5, M + 2))
b = find_period(sys).b
print("b =", b)

K = 2 * M
vals = np.full((b, K + 1), np.nan)
for c in range(b):
    f1 = lift(class_system(sys, c, b), M)[0]
    for k, x in enumerate(f1.beta):
        v = sys.ctx.val(x)
        vals[c, k] = np.nan if v is TOP else v

k = np.arange(K + 1)
fig, ax = plt.subplots()
ax.plot(k, np.nanmin(vals[:, :], axis=0), "o-", label="smallest valuation over classes")
ax.plot(k, np.ceil(k / 2), "--", label="ceil(k/2)")
ax.set_xlabel("k")
ax.set_ylabel("5-adic valuation")
ax.legend()
fig.savefig("arc_valuations.png", dpi=120)
print("lowest valuations:", np.nanmin(vals, axis=0)[:8])
