"""
IIA and Pareto on small instruments
===================================

Dictatorship, Borda and pairwise majority checked against the usual axioms.
"""

from arrowcat.profiles import full_linear
from arrowcat.swf import (
    borda,
    check_IIA,
    check_pareto,
    check_weak_pareto,
    dictatorship,
    find_dictator,
    pairwise_majority,
)

lin = full_linear(3, 2)
for name, s in [("dictator 0", dictatorship(0, lin)), ("borda", borda(lin)),
                ("majority", pairwise_majority(lin))]:
    print(f"{name:12s} IIA={bool(check_IIA(s))} P={bool(check_pareto(s))} "
          f"WP={bool(check_weak_pareto(s))} dictator={find_dictator(s)}")

# Borda breaks IIA: two profiles agree on a pair but the outcome on it differs
print(check_IIA(borda(lin)).witness)

# with three voters majority has no transitive outcome everywhere
maj = pairwise_majority(full_linear(3, 3))
print(maj.transitive_outputs)
