"""
Weak and linear orders on a few alternatives
=============================================

Rankings with ties are weak orders; rankings without ties are linear orders.
"""

from arrowcat.orders import (
    alternatives,
    enumerate_linear_orders,
    enumerate_weak_orders,
    format_chain,
    indifference_part,
    parse_chain,
    restrict,
    strict_part,
)

# the counts grow like the ordered Bell numbers
for n in range(1, 5):
    print(n, len(enumerate_weak_orders(n)), len(enumerate_linear_orders(n)))

# every weak order on three alternatives, in canonical order
print([format_chain(r) for r in enumerate_weak_orders(3)])

# a relation splits into strict preference and indifference
r = parse_chain("b>a~c")
print(sorted(strict_part(r).pairs()))
print(sorted(indifference_part(r).pairs()))

# restricting to a subset keeps the order class
abc = alternatives(3)
print(format_chain(restrict(r, abc.subset(["a", "c"]))))
