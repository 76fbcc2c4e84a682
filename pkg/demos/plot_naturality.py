"""
Rules on every subset at once
=============================

An IIA rule induces a rule on every subset of alternatives, and these fit
together under restriction.  Natural transformations X^k -> X on small sets
are counted the same way.
"""

from arrowcat.naturality import (
    IllDefined,
    check_CP,
    check_naturality_inclusions,
    check_naturality_injections,
    enumerate_natural_transformations,
    extend_from_top,
)
from arrowcat.profiles import full_linear
from arrowcat.swf import borda, dictatorship, reversal_swf

lin = full_linear(3, 2)
fam = extend_from_top(dictatorship(0, lin))
print(bool(check_naturality_inclusions(fam)), bool(check_naturality_injections(fam)), bool(check_CP(fam)))

# reversal is natural for inclusions but does not fix unanimous ballots
rev = extend_from_top(reversal_swf(lin))
print(bool(check_naturality_inclusions(rev)), bool(check_CP(rev)))

# Borda has no consistent subset family
try:
    extend_from_top(borda(lin))
except IllDefined as exc:
    print(exc)

for k in (1, 2, 3):
    ts = enumerate_natural_transformations(k, 3)
    print(k, len(ts), [t.projection_index() for t in ts])
