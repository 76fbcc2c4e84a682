"""Binary relations on small alternative sets, weak and linear orders.

A :class:`Relation` is stored as an ``n*n`` bitmask, bit ``a*n + b`` set iff
``a R b``.  All values are immutable.  Weak orders have the text syntax
``a>b~c`` (``>`` strictly above, ``~`` tied); :func:`parse_chain` and
:func:`format_chain` round-trip it exactly.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

_LABEL_RE = re.compile(r"^[A-Za-z0-9_]+$")

PROPERTIES = (
    "reflexive",
    "irreflexive",
    "symmetric",
    "antisymmetric",
    "transitive",
    "connected",
)

MAX_WEAK_N = 4
MAX_LINEAR_N = 6

Alt = Union[str, int]


@dataclass(frozen=True)
class AlternativeSet:
    """Ordered set of distinct alternative labels, addressed by index."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("an alternative set needs at least one label")
        for lab in labels:
            if not isinstance(lab, str) or not _LABEL_RE.match(lab):
                raise ValueError(f"invalid alternative label {lab!r}")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in {labels}")

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        return label in self.labels

    def index(self, x: Alt) -> int:
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            if not 0 <= x < self.n:
                raise IndexError(f"alternative index {x} out of range for {self}")
            return int(x)
        try:
            return self.labels.index(x)
        except ValueError:
            raise KeyError(f"unknown alternative {x!r} in {self}") from None

    def is_subset_of(self, other: "AlternativeSet") -> bool:
        return set(self.labels) <= set(other.labels)

    def subset(self, labels: Iterable[Alt]) -> "AlternativeSet":
        """Sub-carrier keeping this set's label order."""
        idx = sorted({self.index(x) for x in labels})
        return AlternativeSet(tuple(self.labels[i] for i in idx))

    def subsets(self, min_size: int = 1, max_size: int | None = None) -> list["AlternativeSet"]:
        """All sub-carriers, ordered by size then index combination."""
        top = self.n if max_size is None else min(max_size, self.n)
        out = []
        for k in range(max(min_size, 1), top + 1):
            for combo in itertools.combinations(range(self.n), k):
                out.append(AlternativeSet(tuple(self.labels[i] for i in combo)))
        return out

    def __str__(self) -> str:
        return "{" + ",".join(self.labels) + "}"


def alternatives(n: int) -> AlternativeSet:
    """The standard carrier ``{a, b, c, ...}`` of size ``n``."""
    if not 1 <= n <= 26:
        raise ValueError(f"n must be in 1..26, got {n}")
    return AlternativeSet(tuple("abcdefghijklmnopqrstuvwxyz"[:n]))


@lru_cache(maxsize=None)
def _lex_key(n: int, mask: int) -> int:
    # Row-major bit tuple compared lexicographically == integer with bit 0 as MSB.
    nn = n * n
    return int(format(mask, f"0{nn}b")[::-1], 2) if nn else 0


class Relation:
    """A binary relation on ``carrier``, stored as a row-major bitmask."""

    __slots__ = ("carrier", "mask")

    def __init__(self, carrier: AlternativeSet, mask: int):
        n = carrier.n
        if not 0 <= mask < 1 << (n * n):
            raise ValueError(f"mask {mask} out of range for n={n}")
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "mask", int(mask))

    def __setattr__(self, key, value):
        raise AttributeError("Relation is immutable")

    @classmethod
    def from_pairs(cls, carrier: AlternativeSet, pairs: Iterable[tuple[Alt, Alt]]) -> "Relation":
        n = carrier.n
        mask = 0
        for a, b in pairs:
            mask |= 1 << (carrier.index(a) * n + carrier.index(b))
        return cls(carrier, mask)

    @classmethod
    def from_matrix(cls, carrier: AlternativeSet, matrix) -> "Relation":
        arr = np.asarray(matrix, dtype=bool)
        n = carrier.n
        if arr.shape != (n, n):
            raise ValueError(f"matrix shape {arr.shape} does not match n={n}")
        mask = 0
        for k, bit in enumerate(arr.ravel()):
            if bit:
                mask |= 1 << k
        return cls(carrier, mask)

    @property
    def n(self) -> int:
        return self.carrier.n

    def holds(self, a: Alt, b: Alt) -> bool:
        n = self.carrier.n
        return bool(self.mask >> (self.carrier.index(a) * n + self.carrier.index(b)) & 1)

    @property
    def matrix(self) -> np.ndarray:
        n = self.carrier.n
        bits = [(self.mask >> k) & 1 for k in range(n * n)]
        return np.array(bits, dtype=bool).reshape(n, n)

    def pairs(self) -> list[tuple[str, str]]:
        labs = self.carrier.labels
        n = len(labs)
        return [(labs[k // n], labs[k % n]) for k in range(n * n) if self.mask >> k & 1]

    def sort_key(self) -> int:
        return _lex_key(self.carrier.n, self.mask)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        if self.carrier != other.carrier:
            raise ValueError(
                f"cannot compare relations over different carriers {self.carrier} and {other.carrier}"
            )
        return self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.carrier.labels, self.mask))

    def __reduce__(self):
        return (Relation, (self.carrier, self.mask))

    def __str__(self) -> str:
        if is_weak_order(self):
            return format_chain(self)
        return "{" + ", ".join(f"{a}{b}" for a, b in self.pairs()) + "}"

    def __repr__(self) -> str:
        return f"Relation({self.carrier}, {str(self)!r})"


# -- properties -------------------------------------------------------------

@lru_cache(maxsize=None)
def _properties(n: int, mask: int) -> frozenset[str]:
    def r(a, b):
        return mask >> (a * n + b) & 1

    rng = range(n)
    found = set()
    if all(r(a, a) for a in rng):
        found.add("reflexive")
    if not any(r(a, a) for a in rng):
        found.add("irreflexive")
    if all(r(b, a) for a in rng for b in rng if r(a, b)):
        found.add("symmetric")
    if all(a == b for a in rng for b in rng if r(a, b) and r(b, a)):
        found.add("antisymmetric")
    if all(r(a, c) for a in rng for b in rng if r(a, b) for c in rng if r(b, c)):
        found.add("transitive")
    # includes a == b, so connected implies reflexive
    if all(r(a, b) or r(b, a) for a in rng for b in rng):
        found.add("connected")
    return frozenset(found)


def check_property(rel: Relation, prop: str) -> bool:
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    return prop in _properties(rel.carrier.n, rel.mask)


def is_weak_order(rel: Relation) -> bool:
    props = _properties(rel.carrier.n, rel.mask)
    return "transitive" in props and "connected" in props


def is_linear_order(rel: Relation) -> bool:
    props = _properties(rel.carrier.n, rel.mask)
    return "transitive" in props and "connected" in props and "antisymmetric" in props


def _transpose(n: int, mask: int) -> int:
    out = 0
    for a in range(n):
        for b in range(n):
            if mask >> (a * n + b) & 1:
                out |= 1 << (b * n + a)
    return out


@lru_cache(maxsize=None)
def _strict_mask(n: int, mask: int) -> int:
    return mask & ~_transpose(n, mask)


def strict_part(rel: Relation) -> Relation:
    return Relation(rel.carrier, rel.mask & ~_transpose(rel.carrier.n, rel.mask))


def indifference_part(rel: Relation) -> Relation:
    return Relation(rel.carrier, rel.mask & _transpose(rel.carrier.n, rel.mask))


def converse(rel: Relation) -> Relation:
    return Relation(rel.carrier, _transpose(rel.carrier.n, rel.mask))


def identity_relation(carrier: AlternativeSet) -> Relation:
    n = carrier.n
    return Relation(carrier, sum(1 << (a * n + a) for a in range(n)))


def full_relation(carrier: AlternativeSet) -> Relation:
    return Relation(carrier, (1 << (carrier.n ** 2)) - 1)


def empty_relation(carrier: AlternativeSet) -> Relation:
    return Relation(carrier, 0)


def pair_code(rel: Relation, a: Alt, b: Alt) -> str:
    """Compare two alternatives: ``'>'``, ``'<'``, ``'~'`` or ``''`` if incomparable."""
    ab, ba = rel.holds(a, b), rel.holds(b, a)
    if ab and ba:
        return "~"
    if ab:
        return ">"
    if ba:
        return "<"
    return ""


# -- restriction and pushforward ---------------------------------------------

@lru_cache(maxsize=None)
def _pull_mask(n: int, index_map: tuple[int, ...], mask: int) -> int:
    k = len(index_map)
    out = 0
    for i, x in enumerate(index_map):
        row = x * n
        for j, y in enumerate(index_map):
            if mask >> (row + y) & 1:
                out |= 1 << (i * k + j)
    return out


def restrict(rel: Relation, subset: AlternativeSet) -> Relation:
    """``R | A``: keep only the pairs inside ``subset``."""
    try:
        idx = tuple(rel.carrier.index(lab) for lab in subset.labels)
    except KeyError as exc:
        raise ValueError(f"invalid restriction of {rel.carrier} to {subset}: {exc}") from None
    return Relation(subset, _pull_mask(rel.carrier.n, idx, rel.mask))


@dataclass(frozen=True)
class Injection:
    """Injective map ``source -> target`` given by target indices."""

    source: AlternativeSet
    target: AlternativeSet
    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        object.__setattr__(self, "map", m)
        if len(m) != self.source.n:
            raise ValueError("injection map must have one image per source element")
        if any(not 0 <= x < self.target.n for x in m):
            raise ValueError(f"image index out of range in {m}")
        if len(set(m)) != len(m):
            raise ValueError(f"map {m} is not injective")

    @classmethod
    def from_labels(cls, source: AlternativeSet, target: AlternativeSet, images: Sequence[str]) -> "Injection":
        return cls(source, target, tuple(target.index(x) for x in images))

    def __call__(self, x: Alt) -> int:
        return self.map[self.source.index(x)]

    def after(self, f: "Injection") -> "Injection":
        """Composite ``self o f``."""
        if f.target != self.source:
            raise ValueError("cannot compose: codomain/domain mismatch")
        return Injection(f.source, self.target, tuple(self.map[i] for i in f.map))

    @property
    def is_inclusion(self) -> bool:
        return all(self.target.labels[j] == lab for lab, j in zip(self.source.labels, self.map))

    def __str__(self) -> str:
        return "[" + ",".join(self.target.labels[j] for j in self.map) + "]"


def inclusion(source: AlternativeSet, target: AlternativeSet) -> Injection:
    return Injection(source, target, tuple(target.index(lab) for lab in source.labels))


def identity_injection(carrier: AlternativeSet) -> Injection:
    return Injection(carrier, carrier, tuple(range(carrier.n)))


def all_injections(source: AlternativeSet, target: AlternativeSet) -> list[Injection]:
    return [Injection(source, target, p) for p in itertools.permutations(range(target.n), source.n)]


def pushforward(rel: Relation, f: Injection) -> Relation:
    """Relation on ``f.source`` with ``x R' y`` iff ``f(x) R f(y)``."""
    if rel.carrier != f.target:
        raise ValueError(f"carrier mismatch: relation on {rel.carrier}, injection into {f.target}")
    return Relation(f.source, _pull_mask(rel.carrier.n, f.map, rel.mask))


# -- enumeration -------------------------------------------------------------

def _ordered_partitions(items: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
    if not items:
        yield []
        return
    for k in range(1, len(items) + 1):
        for head in itertools.combinations(items, k):
            rest = tuple(x for x in items if x not in head)
            for tail in _ordered_partitions(rest):
                yield [head, *tail]


def _mask_from_ranks(n: int, rank: Sequence[int]) -> int:
    mask = 0
    for a in range(n):
        for b in range(n):
            if rank[a] <= rank[b]:
                mask |= 1 << (a * n + b)
    return mask


def enumerate_weak_orders(n: int | AlternativeSet) -> list[Relation]:
    """All weak orders (ordered set partitions) on ``n`` alternatives, lexicographic."""
    carrier = n if isinstance(n, AlternativeSet) else None
    size = carrier.n if carrier else n
    if not 1 <= size <= MAX_WEAK_N:
        raise ValueError(f"weak-order enumeration supports 1 <= n <= {MAX_WEAK_N}, got {size}")
    carrier = carrier or alternatives(size)
    out = []
    for blocks in _ordered_partitions(tuple(range(size))):
        rank = [0] * size
        for r, block in enumerate(blocks):
            for x in block:
                rank[x] = r
        out.append(Relation(carrier, _mask_from_ranks(size, rank)))
    out.sort(key=Relation.sort_key)
    return out


def enumerate_linear_orders(n: int | AlternativeSet) -> list[Relation]:
    """All ``n!`` linear orders, generated from permutations, lexicographic."""
    carrier = n if isinstance(n, AlternativeSet) else None
    size = carrier.n if carrier else n
    if not 1 <= size <= MAX_LINEAR_N:
        raise ValueError(f"linear-order enumeration supports 1 <= n <= {MAX_LINEAR_N}, got {size}")
    carrier = carrier or alternatives(size)
    out = []
    for perm in itertools.permutations(range(size)):
        rank = [0] * size
        for r, x in enumerate(perm):
            rank[x] = r
        out.append(Relation(carrier, _mask_from_ranks(size, rank)))
    out.sort(key=Relation.sort_key)
    return out


# -- text syntax -------------------------------------------------------------

def format_chain(rel: Relation) -> str:
    if not is_weak_order(rel):
        raise ValueError(f"only weak orders have chain syntax: {rel.pairs()}")
    n = rel.carrier.n
    labs = rel.carrier.labels
    above = [
        sum(1 for y in range(n) if rel.mask >> (y * n + x) & 1 and not rel.mask >> (x * n + y) & 1)
        for x in range(n)
    ]
    groups: dict[int, list[str]] = {}
    for x in range(n):
        groups.setdefault(above[x], []).append(labs[x])
    return ">".join("~".join(groups[k]) for k in sorted(groups))


def parse_chain(text: str, carrier: AlternativeSet | None = None) -> Relation:
    """Parse ``a>b~c``.  Without ``carrier`` the labels are taken in sorted order."""
    groups = [[tok.strip() for tok in grp.split("~")] for grp in text.strip().split(">")]
    seen = [lab for grp in groups for lab in grp]
    if any(not lab for lab in seen):
        raise ValueError(f"empty label in chain {text!r}")
    if len(set(seen)) != len(seen):
        raise ValueError(f"label repeated in chain {text!r}")
    if carrier is None:
        carrier = AlternativeSet(tuple(sorted(seen)))
    if set(seen) != set(carrier.labels):
        missing = sorted(set(carrier.labels) - set(seen))
        extra = sorted(set(seen) - set(carrier.labels))
        raise ValueError(f"chain {text!r} does not cover {carrier}: missing={missing} unknown={extra}")
    rank = [0] * carrier.n
    for r, grp in enumerate(groups):
        for lab in grp:
            rank[carrier.index(lab)] = r
    return Relation(carrier, _mask_from_ranks(carrier.n, rank))
