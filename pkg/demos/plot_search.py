"""
Searching every IIA rule
========================

IIA makes a rule a triple of per-pair truth tables, so the whole space can be
scanned.  Only dictatorships survive Pareto plus transitivity.
"""

import time

from arrowcat.search import SearchConfig, verify_arrow

for n, m in [(3, 1), (3, 2), (3, 3), (2, 2)]:
    t0 = time.perf_counter()
    report = verify_arrow(SearchConfig(n, m))
    print(report.summary(), f"({time.perf_counter() - t0:.2f}s)")

# the full report for two voters
print("\n".join(verify_arrow(SearchConfig(3, 2)).lines()))

# ties allowed in ballots and outcome: every survivor still has a dictator
weak = verify_arrow(SearchConfig(3, 2, kind="weak"))
print(weak.summary())
