"""Profiles (one weak order per voter), admissible domains, and the UD/CUD checks."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .base import Verdict, members
from .orders import (
    Alt,
    AlternativeSet,
    Relation,
    _pull_mask,
    alternatives,
    enumerate_linear_orders,
    enumerate_weak_orders,
    format_chain,
    is_linear_order,
    is_weak_order,
    parse_chain,
    restrict,
)

FULL_WEAK = "full-weak"
FULL_LINEAR = "full-linear"
EXPLICIT = "explicit"
KINDS = (FULL_WEAK, FULL_LINEAR, EXPLICIT)


class Profile:
    """A ballot: ``entries[i]`` is voter ``i``'s weak order over ``carrier``."""

    __slots__ = ("carrier", "entries", "_key")

    def __init__(self, entries: Sequence[Relation]):
        entries = tuple(entries)
        if not entries:
            raise ValueError("a profile needs at least one voter")
        carrier = entries[0].carrier
        for i, r in enumerate(entries):
            if r.carrier != carrier:
                raise ValueError(f"voter {i} ranks {r.carrier}, expected {carrier}")
            if not is_weak_order(r):
                raise ValueError(f"voter {i}'s ballot is not a weak order: {r.pairs()}")
        self._init(carrier, entries)

    def _init(self, carrier, entries):
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_key", None)

    @classmethod
    def _trusted(cls, carrier: AlternativeSet, entries: tuple[Relation, ...]) -> "Profile":
        p = object.__new__(cls)
        p._init(carrier, entries)
        return p

    def __setattr__(self, key, value):
        raise AttributeError("Profile is immutable")

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(r.mask for r in self.entries)

    def __getitem__(self, i: int) -> Relation:
        return self.entries[i]

    def __iter__(self) -> Iterator[Relation]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def sort_key(self) -> tuple[int, ...]:
        if self._key is None:
            object.__setattr__(self, "_key", tuple(r.sort_key() for r in self.entries))
        return self._key

    def is_linear(self) -> bool:
        return all(is_linear_order(r) for r in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Profile):
            return NotImplemented
        if self.carrier != other.carrier:
            raise ValueError(f"cannot compare profiles over {self.carrier} and {other.carrier}")
        return self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.carrier.labels, self.masks))

    def __reduce__(self):
        return (Profile, (self.entries,))

    def __str__(self) -> str:
        return format_profile(self)

    def __repr__(self) -> str:
        return f"Profile({format_profile(self)!r})"


def format_profile(p: Profile) -> str:
    return " ; ".join(format_chain(r) for r in p.entries)


def parse_profile(text: str, carrier: AlternativeSet | None = None) -> Profile:
    parts = [s.strip() for s in text.split(";")]
    if carrier is None:
        carrier = parse_chain(parts[0]).carrier
    return Profile([parse_chain(s, carrier) for s in parts])


def restrict_profile(p: Profile, subset: AlternativeSet) -> Profile:
    """Pointwise restriction ``(p|A)_i = p_i|A``."""
    return Profile._trusted(subset, tuple(restrict(r, subset) for r in p.entries))


def coalition_strict(p: Profile, U: int, a: Alt, b: Alt) -> bool:
    """Every voter in ``U`` ranks ``a`` strictly above ``b`` (vacuous for ``U = 0``)."""
    ia, ib = p.carrier.index(a), p.carrier.index(b)
    if ia == ib:
        raise ValueError("coalition_strict needs two distinct alternatives")
    n = p.carrier.n
    for i in members(U):
        if i >= p.m:
            raise ValueError(f"voter {i} not in a profile of {p.m} voters")
        mask = p.entries[i].mask
        if not (mask >> (ia * n + ib) & 1) or mask >> (ib * n + ia) & 1:
            return False
    return True


class Domain:
    """A finite set of admissible profiles in canonical (lexicographic) order."""

    def __init__(self, carrier: AlternativeSet, m: int, profiles: Iterable[Profile], kind: str = EXPLICIT):
        if m < 1:
            raise ValueError("need at least one voter")
        if kind not in KINDS:
            raise ValueError(f"unknown domain kind {kind!r}")
        profs = sorted(set(profiles), key=Profile.sort_key)
        if not profs:
            raise ValueError("a domain must contain at least one profile")
        for p in profs:
            if p.carrier != carrier or p.m != m:
                raise ValueError(f"profile {p} does not live over {carrier} with {m} voters")
        self.carrier = carrier
        self.m = m
        self.profiles: tuple[Profile, ...] = tuple(profs)
        self.kind = kind
        self._members = frozenset(profs)

    def __len__(self) -> int:
        return len(self.profiles)

    def __iter__(self) -> Iterator[Profile]:
        return iter(self.profiles)

    def __contains__(self, p) -> bool:
        return isinstance(p, Profile) and p.carrier == self.carrier and p in self._members

    @property
    def is_linear(self) -> bool:
        """True when every ballot in every profile is a linear order."""
        return self.kind == FULL_LINEAR or all(p.is_linear() for p in self.profiles)

    def linear_profiles(self) -> list[Profile]:
        return [p for p in self.profiles if p.is_linear()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Domain):
            return NotImplemented
        return self.carrier == other.carrier and self.m == other.m and self._members == other._members

    def __hash__(self) -> int:
        return hash((self.carrier, self.m, len(self.profiles)))

    def __repr__(self) -> str:
        return f"Domain({self.carrier}, m={self.m}, kind={self.kind}, size={len(self)})"


def _carrier(n: int | AlternativeSet) -> AlternativeSet:
    return n if isinstance(n, AlternativeSet) else alternatives(n)


def _product_domain(carrier, m, orders, kind) -> Domain:
    if m < 1:
        raise ValueError("need at least one voter")
    profs = [Profile._trusted(carrier, combo) for combo in itertools.product(orders, repeat=m)]
    # product of sorted lists is already lexicographic
    d = Domain.__new__(Domain)
    d.carrier, d.m, d.profiles, d.kind = carrier, m, tuple(profs), kind
    d._members = frozenset(profs)
    return d


def full_weak(n: int | AlternativeSet, m: int) -> Domain:
    carrier = _carrier(n)
    return _product_domain(carrier, m, enumerate_weak_orders(carrier), FULL_WEAK)


def full_linear(n: int | AlternativeSet, m: int) -> Domain:
    carrier = _carrier(n)
    return _product_domain(carrier, m, enumerate_linear_orders(carrier), FULL_LINEAR)


def explicit(carrier: AlternativeSet, m: int, profiles: Iterable[Profile]) -> Domain:
    return Domain(carrier, m, profiles, EXPLICIT)


def _infer_kind(carrier: AlternativeSet, m: int, profiles: Sequence[Profile]) -> str:
    n = carrier.n
    if n <= 4 and len(profiles) == len(enumerate_weak_orders(n)) ** m:
        return FULL_WEAK
    if len(profiles) == math.factorial(n) ** m and all(p.is_linear() for p in profiles):
        return FULL_LINEAR
    return EXPLICIT


def restriction_image(d: Domain, subset: AlternativeSet) -> Domain:
    """``{p|A : p in d}`` as a domain over ``subset``."""
    if not subset.is_subset_of(d.carrier):
        raise ValueError(f"{subset} is not a subset of {d.carrier}")
    if subset == d.carrier:
        return d
    image = {restrict_profile(p, subset) for p in d.profiles}
    profs = sorted(image, key=Profile.sort_key)
    return Domain(subset, d.m, profs, _infer_kind(subset, d.m, profs))


def domain_family(d: Domain) -> dict[AlternativeSet, Domain]:
    """Restriction images of ``d`` on every nonempty subset of its carrier."""
    return {A: restriction_image(d, A) for A in d.carrier.subsets()}


def _restricted_masks(d: Domain, subset: AlternativeSet) -> set[tuple[int, ...]]:
    n = d.carrier.n
    idx = tuple(d.carrier.index(x) for x in subset.labels)
    return {tuple(_pull_mask(n, idx, r.mask) for r in p.entries) for p in d.profiles}


def check_UD(d: Domain, relative_to: str = "weak") -> Verdict:
    """Unrestricted domain: every profile on every 3-subset lifts to ``d``.

    ``relative_to="linear"`` asks the same question for linear target
    profiles only, the variant that applies to linear-ballot domains.
    On failure the witness is ``(subset, target_profile)``, least first.
    """
    if d.carrier.n < 3:
        raise ValueError(f"UD needs at least 3 alternatives, carrier is {d.carrier}")
    if relative_to not in ("weak", "linear"):
        raise ValueError("relative_to must be 'weak' or 'linear'")
    enum = enumerate_weak_orders if relative_to == "weak" else enumerate_linear_orders
    for A in d.carrier.subsets(3, 3):
        seen = _restricted_masks(d, A)
        for combo in itertools.product(enum(A), repeat=d.m):
            if tuple(r.mask for r in combo) not in seen:
                return Verdict(False, (A, Profile._trusted(A, tuple(combo))))
    return Verdict(True)


def check_UD_for(d: Domain) -> Verdict:
    """UD relative to the domain's own ballot type (linear domains use linear UD)."""
    return check_UD(d, "linear" if d.is_linear else "weak")


@dataclass
class CUDReport:
    small_sets_full: bool
    epis_preserved: bool
    restrictions_closed: bool = True
    witnesses: dict[str, object] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.small_sets_full and self.epis_preserved


def check_CUD(family: dict[AlternativeSet, Domain]) -> CUDReport:
    """Check the functorial UD condition on a domain per nonempty subset.

    ``small_sets_full``: every domain on at most 3 alternatives is the full
    weak product.  ``epis_preserved``: each restriction map between nested
    subsets is onto.  ``restrictions_closed`` additionally records whether
    restriction lands inside the smaller domain (the subfunctor property).
    """
    if not family:
        raise ValueError("empty domain family")
    top = max(family, key=len)
    if top.n > 4:
        raise ValueError("CUD checks are capped at 4 alternatives")
    for A in top.subsets():
        if A not in family:
            raise ValueError(f"domain family is missing subset {A}")
    m = family[top].m
    report = CUDReport(True, True)

    for A in top.subsets(1, 3):
        want = len(enumerate_weak_orders(A.n)) ** m
        dom = family[A]
        if len(dom) != want or not all(is_weak_order(r) for p in dom for r in p):
            report.small_sets_full = False
            report.witnesses.setdefault("small_sets_full", A)

    subsets = top.subsets()
    for B in subsets:
        for A in subsets:
            if A == B or not A.is_subset_of(B):
                continue
            image = _restricted_masks(family[B], A)
            target = {p.masks for p in family[A]}
            if not target <= image:
                report.epis_preserved = False
                report.witnesses.setdefault("epis_preserved", (A, B))
            if not image <= target:
                report.restrictions_closed = False
                report.witnesses.setdefault("restrictions_closed", (A, B))
    return report
