"""
==============================
Fibonacci, one step at a time
==============================

Walk through the whole construction on the Fibonacci numbers at p = 5:
the companion matrix, the period b, one analytic arc and its Strassman bound.
"""

# %%
# The recurrence and the exact oracle
# -----------------------------------

import numpy as np

from holozeros import fixture, validate, eval_upto, zeros_upto
from holozeros.padic import PadicContext
from holozeros.companion import build_companion, find_period, class_system
from holozeros.arc import lift, eval_arc
from holozeros.strassman import RigidSeries, to_power_coeffs, strassman_bound

spec = validate(fixture("fibonacci"))
print(eval_upto(spec, 12))
print("zeros up to 2000:", zeros_upto(spec, 2000))

# %%
# Companion matrix and period
# ---------------------------
# Products of p consecutive companion matrices are all the same mod p,
# so b is p times the first repeat in their powers. For Fibonacci this is
# the Pisano period of 5.

M = 10
ctx = PadicContext(5, M + 2)
sys = build_companion(spec, ctx)
print(np.array(sys.matrix_at(0)))
period = find_period(sys)
print(period)

# %%
# One residue class
# -----------------
# Class c = 5 never vanishes on the integers, but its arc has a zero in Z_5.

b = period.b
cls = class_system(sys, 5, b)
arcs = lift(cls, M)
f1 = arcs[0]
print("valuations of beta:", [ctx.val(x) for x in f1.beta])

exact = eval_upto(spec, 5 + b * 6)
q = 5 ** (M + 1)
for n in range(6):
    print(n, eval_arc(f1, n).residue % q == exact[5 + b * n] % q)

# %%
# Strassman
# ---------

pc = to_power_coeffs(RigidSeries.from_arc(f1))
print(pc.vals[:6], "tau =", pc.tau)
print(strassman_bound(pc.vals, pc.tau, pc.precision))
