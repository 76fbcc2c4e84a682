"""Boolean functions on coalitions and the factorization of an SWF through one.

A :class:`BoolFn` is a truth table ``2^I -> 2`` indexed by coalition bitmask.
``phi`` encodes a ranking as its strict-preference bit matrix, ``psi``
encodes a profile as the matrix of coalitions strictly preferring ``a`` to
``a'``; an Arrow SWF satisfies ``phi(sigma_A(p)) == h(psi(p))`` pointwise
with ``h`` the characteristic function of its decisive ultrafilter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import Verdict, format_coalition, full_coalition
from .decisive import decisive_family, require
from .naturality import extend_from_top
from .orders import AlternativeSet, Relation, _strict_mask, is_weak_order
from .profiles import Profile, format_profile
from .swf import Swf


@dataclass(frozen=True)
class BoolFn:
    """Truth table of ``h : 2^m -> 2``; bit ``U`` of ``table`` is ``h(U)``."""

    m: int
    table: int

    def __post_init__(self):
        if not 0 <= self.m <= 4:
            raise ValueError(f"BoolFn supports 0 <= m <= 4 voters, got {self.m}")
        if not 0 <= self.table < 1 << (1 << self.m):
            raise ValueError("truth table out of range")

    def __call__(self, U: int) -> int:
        return self.table >> U & 1

    def apply(self, masks) -> np.ndarray:
        """Evaluate pointwise on an integer array of coalitions."""
        return (np.right_shift(self.table, np.asarray(masks, dtype=np.int64)) & 1).astype(bool)

    def to_hex(self) -> str:
        width = max(1, (1 << self.m) // 4)
        return format(self.table, f"0{width}x")

    @classmethod
    def from_hex(cls, m: int, text: str) -> "BoolFn":
        return cls(m, int(text, 16))

    def projection_index(self) -> int | None:
        for i in range(self.m):
            if self == projection(i, self.m):
                return i
        return None

    def __str__(self) -> str:
        return "0x" + self.to_hex()


def projection(i: int, m: int) -> BoolFn:
    """``h(U) = 1`` iff voter ``i`` is in ``U``."""
    if not 0 <= i < m:
        raise ValueError(f"voter {i} out of range for m={m}")
    return BoolFn(m, sum(1 << U for U in range(1 << m) if U >> i & 1))


def family_to_boolfn(fam, m: int) -> BoolFn:
    table = 0
    for U in fam:
        if not 0 <= U < 1 << m:
            raise ValueError(f"coalition {U} outside {m} voters")
        table |= 1 << U
    return BoolFn(m, table)


def boolfn_to_family(h: BoolFn) -> frozenset[int]:
    return frozenset(U for U in range(1 << h.m) if h(U))


def is_bool_homomorphism(h: BoolFn) -> Verdict:
    """Check top, bottom, meet, join and complement laws; witness names the first broken law."""
    full = full_coalition(h.m)
    fc = format_coalition
    if h(full) != 1:
        return Verdict(False, f"h({fc(full)})=0")
    if h(0) != 0:
        return Verdict(False, "h({})=1")
    universe = range(1 << h.m)
    for U in universe:
        for V in universe:
            if h(U & V) != h(U) & h(V):
                return Verdict(False, f"meet U={fc(U)} V={fc(V)}: h(U&V)={h(U & V)} h(U)&h(V)={h(U) & h(V)}")
    for U in universe:
        for V in universe:
            if h(U | V) != h(U) | h(V):
                return Verdict(False, f"join U={fc(U)} V={fc(V)}: h(U|V)={h(U | V)} h(U)|h(V)={h(U) | h(V)}")
    for U in universe:
        if h(full & ~U) != 1 - h(U):
            return Verdict(False, f"complement U={fc(U)}: h(U)={h(U)} h(~U)={h(full & ~U)}")
    return Verdict(True)


def enumerate_homomorphisms(m: int) -> list[BoolFn]:
    """Boolean-algebra homomorphisms ``2^m -> 2``.

    Brute force over all ``2^(2^m)`` truth tables for ``m <= 3``; at ``m = 4``
    the candidates are the projections, each verified to be a homomorphism.
    """
    if not 1 <= m <= 4:
        raise ValueError(f"homomorphism enumeration supports 1 <= m <= 4, got {m}")
    if m == 4:
        cands = [projection(i, m) for i in range(m)]
        return [h for h in cands if is_bool_homomorphism(h)]
    return [h for t in range(1 << (1 << m)) if is_bool_homomorphism(h := BoolFn(m, t))]


def phi(r: Relation) -> np.ndarray:
    """Strict-preference bit matrix ``phi(r)[a, a'] = a r> a'``."""
    if not is_weak_order(r):
        raise ValueError(f"phi is defined on weak orders, got {r}")
    n = r.carrier.n
    sm = _strict_mask(n, r.mask)
    return np.array([sm >> k & 1 for k in range(n * n)], dtype=bool).reshape(n, n)


def psi(p: Profile) -> np.ndarray:
    """Coalition matrix: ``psi(p)[a, a']`` is the mask of voters strictly preferring a to a'."""
    n = p.carrier.n
    out = np.zeros((n, n), dtype=np.int64)
    for i, r in enumerate(p.entries):
        sm = _strict_mask(n, r.mask)
        for k in range(n * n):
            if sm >> k & 1:
                out[k // n, k % n] |= 1 << i
    return out


@dataclass(frozen=True)
class FactorizationWitness:
    subset: AlternativeSet
    p: Profile
    social: Relation
    via_h: np.ndarray

    def __str__(self) -> str:
        labs = self.subset.labels
        pairs = ",".join(f"{labs[a]}{labs[b]}" for a, b in zip(*np.nonzero(self.via_h)))
        return (f"A={self.subset} p={format_profile(self.p)} sigma={self.social} "
                f"h(psi)={{{pairs}}}")


@dataclass
class FactorizationReport:
    h: BoolFn
    homomorphism: bool
    projection: int | None
    square_commutes: bool
    witness: FactorizationWitness | None = None
    squares_checked: int = 0

    def lines(self) -> list[str]:
        square = "OK" if self.square_commutes else f"FAIL({self.witness})"
        return [
            f"h: {self.h}",
            f"homomorphism: {'yes' if self.homomorphism else 'no'}",
            f"projection: {self.projection if self.projection is not None else 'none'}",
            f"square: {square}",
        ]


def check_factorization(s: Swf) -> FactorizationReport:
    """Check ``phi o sigma_A == h^(A^2) o psi`` on linear profiles of every subset ``A``."""
    require(s, "|A|>=3", "UD", "IIA", "P")
    h = family_to_boolfn(decisive_family(s), s.m)
    fam = extend_from_top(s)
    report = FactorizationReport(h, bool(is_bool_homomorphism(h)), h.projection_index(), True)
    for A in fam.subsets:
        comp = fam.components[A]
        for p in comp.domain.linear_profiles():
            social = comp(p)
            via_h = h.apply(psi(p))
            report.squares_checked += 1
            if not is_weak_order(social) or not np.array_equal(phi(social), via_h):
                report.square_commutes = False
                report.witness = FactorizationWitness(A, p, social, via_h)
                return report
    return report
