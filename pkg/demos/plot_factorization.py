"""
Factoring an Arrow rule through a Boolean function
==================================================

Each pair outcome is a Boolean function of who prefers which side.  For the
surviving rules that function is a homomorphism, i.e. a projection.
"""

import numpy as np

from arrowcat.factorization import check_factorization, enumerate_homomorphisms, phi, psi
from arrowcat.profiles import full_linear, parse_profile
from arrowcat.swf import dictatorship

# the homomorphisms 2^m -> 2 are the m projections
for m in (1, 2, 3):
    print(m, [str(h) for h in enumerate_homomorphisms(m)])

s = dictatorship(0, full_linear(3, 2))
rep = check_factorization(s)
print("\n".join(rep.lines()))

# the square by hand on one profile
p = parse_profile("b>a>c ; c>b>a")
print(psi(p))
print(np.array_equal(phi(s(p)), rep.h.apply(psi(p))))
