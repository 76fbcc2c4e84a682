"""Social welfare functions as explicit tables, and the IIA / P / WP / D checks.

Witnesses are always the first counterexample in canonical scan order:
ordered pairs of alternatives by index, then profiles in domain order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping

from .base import Verdict
from .orders import (
    AlternativeSet,
    Relation,
    _strict_mask,
    check_property,
    converse,
    format_chain,
    full_relation,
    is_weak_order,
    restrict,
)
from .profiles import FULL_LINEAR, FULL_WEAK, Domain, Profile, format_profile

WEAK_CODES = (">", "<", "~")
LINEAR_CODES = (">", "<")


class NonTransitiveOutcome(ValueError):
    """Assembled pairwise outcomes do not form a weak order at ``profile``."""

    def __init__(self, profile: Profile, relation: Relation):
        self.profile = profile
        self.relation = relation
        super().__init__(f"pairwise outcomes are not transitive at profile {format_profile(profile)}: {relation}")


class IIAViolation(ValueError):
    def __init__(self, witness: "IIAWitness"):
        self.witness = witness
        super().__init__(f"IIA fails: {witness}")


def _code(n: int, mask: int, i: int, j: int) -> str:
    ij = mask >> (i * n + j) & 1
    ji = mask >> (j * n + i) & 1
    if ij and ji:
        return "~"
    if ij:
        return ">"
    if ji:
        return "<"
    return ""


class Swf:
    """A social welfare function: total table from the domain's profiles to relations.

    Outputs must be weak orders.  ``allow_intransitive=True`` relaxes this to
    complete (reflexive, connected) outputs; that is only meant for test
    instruments such as pairwise majority, whose outcomes can cycle.
    """

    def __init__(self, domain: Domain, table: Mapping[Profile, Relation], *, allow_intransitive: bool = False):
        if len(table) != len(domain) or any(p not in table for p in domain.profiles):
            raise ValueError("SWF table must be defined on exactly the domain's profiles")
        outputs = []
        for p in domain.profiles:
            r = table[p]
            if r.carrier != domain.carrier:
                raise ValueError(f"output {r} for {p} is not over {domain.carrier}")
            if allow_intransitive:
                if not check_property(r, "connected"):
                    raise ValueError(f"output for {format_profile(p)} is not complete: {r}")
            elif not is_weak_order(r):
                raise ValueError(f"output for {format_profile(p)} is not a weak order: {r}")
            outputs.append(r)
        self.domain = domain
        self.outputs: tuple[Relation, ...] = tuple(outputs)
        self.table = dict(zip(domain.profiles, outputs))
        self.transitive_outputs = all(is_weak_order(r) for r in outputs)

    @classmethod
    def from_rule(cls, domain: Domain, rule: Callable[[Profile], Relation], **kw) -> "Swf":
        return cls(domain, {p: rule(p) for p in domain.profiles}, **kw)

    @property
    def carrier(self) -> AlternativeSet:
        return self.domain.carrier

    @property
    def m(self) -> int:
        return self.domain.m

    def __call__(self, p: Profile) -> Relation:
        return self.table[p]

    def items(self):
        return zip(self.domain.profiles, self.outputs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Swf):
            return NotImplemented
        return self.domain == other.domain and all(other.table.get(p) == r for p, r in self.items())

    def __hash__(self) -> int:
        return hash((self.domain, tuple(r.mask for r in self.outputs)))

    def __repr__(self) -> str:
        return f"Swf({self.domain!r})"


# -- axiom checks ------------------------------------------------------------

@dataclass(frozen=True)
class IIAWitness:
    pair: tuple[str, str]
    p: Profile
    q: Profile
    outcome_p: str
    outcome_q: str

    def __str__(self) -> str:
        a, b = self.pair
        return (
            f"pair={{{a},{b}}} p={format_profile(self.p)} q={format_profile(self.q)} "
            f"sigma(p)|{a}{b}={_chain2(a, b, self.outcome_p)} sigma(q)|{a}{b}={_chain2(a, b, self.outcome_q)}"
        )


def _chain2(a: str, b: str, code: str) -> str:
    return {">": f"{a}>{b}", "<": f"{b}>{a}", "~": f"{a}~{b}", "": f"{a}?{b}"}[code]


def _pairs(n: int):
    return itertools.combinations(range(n), 2)


def _ordered_pairs(n: int):
    return ((a, b) for a in range(n) for b in range(n) if a != b)


def check_IIA(s: Swf) -> Verdict:
    """Independence of irrelevant alternatives, by grouping profiles per pair restriction."""
    n = s.carrier.n
    labs = s.carrier.labels
    profs = s.domain.profiles
    for i, j in _pairs(n):
        first: dict[tuple[str, ...], tuple[Profile, str]] = {}
        for p, out in zip(profs, s.outputs):
            key = tuple(_code(n, r.mask, i, j) for r in p.entries)
            code = _code(n, out.mask, i, j)
            seen = first.setdefault(key, (p, code))
            if seen[1] != code:
                return Verdict(False, IIAWitness((labs[i], labs[j]), seen[0], p, seen[1], code))
    return Verdict(True)


def _pareto(s: Swf, strict_conclusion: bool) -> Verdict:
    n = s.carrier.n
    labs = s.carrier.labels
    masks = [[_strict_mask(n, r.mask) for r in p.entries] for p in s.domain.profiles]
    for a, b in _ordered_pairs(n):
        ab = 1 << (a * n + b)
        for p, strict, out in zip(s.domain.profiles, masks, s.outputs):
            if all(sm & ab for sm in strict):
                target = _strict_mask(n, out.mask) if strict_conclusion else out.mask
                if not target & ab:
                    return Verdict(False, (labs[a], labs[b], p))
    return Verdict(True)


def check_pareto(s: Swf) -> Verdict:
    """Unanimous strict preference is reproduced strictly."""
    return _pareto(s, True)


def check_weak_pareto(s: Swf) -> Verdict:
    """Unanimous strict preference is reproduced at least weakly."""
    return _pareto(s, False)


def dictator_witness(s: Swf, i: int):
    """First ``(a, b, p)`` where voter ``i`` strictly prefers ``a`` but society does not; else None."""
    n = s.carrier.n
    labs = s.carrier.labels
    for p, out in s.items():
        voter = _strict_mask(n, p.entries[i].mask)
        social = _strict_mask(n, out.mask)
        miss = voter & ~social
        if miss:
            k = (miss & -miss).bit_length() - 1
            return labs[k // n], labs[k % n], p
    return None


def find_dictator(s: Swf) -> int | None:
    """Least voter whose strict preferences society always adopts."""
    for i in range(s.m):
        if dictator_witness(s, i) is None:
            return i
    return None


# -- constructors (projections and reference rules used as test instruments) --

def dictatorship(i: int, d: Domain) -> Swf:
    if not 0 <= i < d.m:
        raise ValueError(f"voter {i} out of range for {d.m} voters")
    return Swf(d, {p: p.entries[i] for p in d.profiles})


def constant_swf(d: Domain, relation: Relation | None = None) -> Swf:
    """Always returns ``relation`` (total indifference by default)."""
    r = relation if relation is not None else full_relation(d.carrier)
    return Swf(d, {p: r for p in d.profiles})


def reversal_swf(d: Domain) -> Swf:
    """Society adopts voter 0's ranking turned upside down."""
    return Swf(d, {p: converse(p.entries[0]) for p in d.profiles})


def _scores_relation(carrier: AlternativeSet, score: list[int]) -> Relation:
    n = carrier.n
    mask = 0
    for a in range(n):
        for b in range(n):
            if score[a] >= score[b]:
                mask |= 1 << (a * n + b)
    return Relation(carrier, mask)


def borda(d: Domain) -> Swf:
    """Rank-sum rule: each ballot scores (#strictly below - #strictly above); ties are indifference."""
    n = d.carrier.n

    def rule(p: Profile) -> Relation:
        score = [0] * n
        for r in p.entries:
            sm = _strict_mask(n, r.mask)
            for a in range(n):
                for b in range(n):
                    if sm >> (a * n + b) & 1:
                        score[a] += 1
                        score[b] -= 1
        return _scores_relation(d.carrier, score)

    return Swf.from_rule(d, rule)


def pairwise_majority(d: Domain) -> Swf:
    """``a R b`` iff at least as many voters strictly prefer a to b as the reverse.

    Outputs may be cyclic, so the result is built with ``allow_intransitive``.
    """
    n = d.carrier.n

    def rule(p: Profile) -> Relation:
        strict = [_strict_mask(n, r.mask) for r in p.entries]
        mask = 0
        for a in range(n):
            for b in range(n):
                pro = sum(sm >> (a * n + b) & 1 for sm in strict)
                con = sum(sm >> (b * n + a) & 1 for sm in strict)
                if pro >= con:
                    mask |= 1 << (a * n + b)
        return Relation(d.carrier, mask)

    return Swf.from_rule(d, rule, allow_intransitive=True)


# -- pairwise (IIA) normal form ------------------------------------------------

@dataclass(frozen=True)
class PairwiseTables:
    """Per-pair aggregation maps.

    ``tables[(i, j)]`` (``i < j`` carrier indices) maps the tuple of voters'
    codes on the pair (``'>'`` = i above j, ``'<'``, ``'~'``) to the social code.
    """

    carrier: AlternativeSet
    m: int
    ballot_kind: str
    tables: Mapping[tuple[int, int], Mapping[tuple[str, ...], str]]

    def __post_init__(self):
        if self.ballot_kind not in ("weak", "linear"):
            raise ValueError("ballot_kind must be 'weak' or 'linear'")
        codes = WEAK_CODES if self.ballot_kind == "weak" else LINEAR_CODES
        space = set(itertools.product(codes, repeat=self.m))
        for pair in _pairs(self.carrier.n):
            if pair not in self.tables:
                raise ValueError(f"missing table for pair {pair}")
            tab = self.tables[pair]
            if set(tab) != space:
                raise ValueError(f"table for pair {pair} is not total over the restricted profiles")
            if any(v not in WEAK_CODES for v in tab.values()):
                raise ValueError(f"table for pair {pair} has an invalid outcome")

    def outcome(self, p: Profile) -> Relation:
        """Assemble the social relation at ``p`` (may fail to be transitive)."""
        n = self.carrier.n
        mask = sum(1 << (a * n + a) for a in range(n))
        for (i, j), tab in self.tables.items():
            key = tuple(_code(n, r.mask, i, j) for r in p.entries)
            code = tab[key]
            if code in (">", "~"):
                mask |= 1 << (i * n + j)
            if code in ("<", "~"):
                mask |= 1 << (j * n + i)
        return Relation(self.carrier, mask)


def to_pairwise(s: Swf) -> PairwiseTables:
    if s.domain.kind not in (FULL_WEAK, FULL_LINEAR):
        raise ValueError(f"pairwise decomposition needs a full domain, got {s.domain.kind}")
    verdict = check_IIA(s)
    if not verdict:
        raise IIAViolation(verdict.witness)
    n = s.carrier.n
    tables = {}
    for i, j in _pairs(n):
        tab = {}
        for p, out in s.items():
            tab[tuple(_code(n, r.mask, i, j) for r in p.entries)] = _code(n, out.mask, i, j)
        tables[(i, j)] = tab
    kind = "weak" if s.domain.kind == FULL_WEAK else "linear"
    return PairwiseTables(s.carrier, s.m, kind, tables)


def from_pairwise(t: PairwiseTables, d: Domain, *, allow_intransitive: bool = False) -> Swf:
    """Assemble an SWF from per-pair tables; raises at the first non-transitive outcome
    unless ``allow_intransitive`` (used to rebuild majority-style instruments)."""
    if d.carrier != t.carrier or d.m != t.m:
        raise ValueError("pairwise tables and domain disagree on carrier or voters")
    table = {}
    for p in d.profiles:
        r = t.outcome(p)
        if not allow_intransitive and not is_weak_order(r):
            raise NonTransitiveOutcome(p, r)
        table[p] = r
    return Swf(d, table, allow_intransitive=allow_intransitive)


def pair_outcome(s: Swf, p: Profile, a, b) -> str:
    """Social chain on ``{a, b}`` at ``p``, e.g. ``'a>b'``."""
    sub = s.carrier.subset([a, b])
    return format_chain(restrict(s(p), sub))
