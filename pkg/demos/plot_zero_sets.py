"""
=====================
Zero sets of a corpus
=====================

Run the full analysis on each stored recurrence and print the decomposition
next to the class statistics.
"""

# %%

import numpy as np

from holozeros import AnalysisOptions, analyze, fixture, verify_report
from holozeros.fixtures import CORPUS

rows = []
for name in CORPUS:
    rep = analyze(fixture(name), AnalysisOptions(horizon=1000))
    ok, _ = verify_report(rep, fixture(name), 1000)
    s = rep.summary()
    rows.append([rep.b, s["ALL_ZERO"], s["COMPLETE"], s["BOUNDED_PARTIAL"], s["INCONCLUSIVE"]])
    progs = [(p.modulus, p.residue, p.start) for p in rep.progressions]
    print(f"{name:16s} progressions {progs} exceptional {list(rep.exceptional)} verified {ok}")

table = np.array(rows)
print(table)
print("classes per status:", table[:, 1:].sum(axis=0))

# %%
# Extension mode
# --------------
# A non-constant trailing coefficient is fine when it has no roots mod p.

ext = analyze(fixture("extension"), AnalysisOptions(extension_mode=True, horizon=1000))
print(ext.prime, ext.b, ext.summary(), list(ext.exceptional))
