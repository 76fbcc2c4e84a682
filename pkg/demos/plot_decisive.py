"""
Decisive coalitions form an ultrafilter
=======================================

For an IIA and Pareto rule the coalitions that get their way form a
principal ultrafilter, and its generator is the dictator.
"""

from arrowcat.base import format_coalition
from arrowcat.decisive import check_ultrafilter, decisive_family
from arrowcat.profiles import full_linear
from arrowcat.swf import dictatorship, pairwise_majority

s = dictatorship(1, full_linear(3, 3))
fam = decisive_family(s)
print(sorted(format_coalition(U) for U in fam))

rep = check_ultrafilter(fam, 3)
print("\n".join(rep.lines()))

# two-voter majority is IIA and Pareto, yet only the grand coalition decides
maj = decisive_family(pairwise_majority(full_linear(3, 2)))
print(sorted(format_coalition(U) for U in maj))
print(check_ultrafilter(maj, 2).lines())
