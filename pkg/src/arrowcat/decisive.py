"""Decisive coalitions, the ultrafilter they form, and the Arrow conclusion.

Coalitions are int bitmasks.  All scans go through a per-SWF cache of, for
every ordered pair ``(a, b)`` and profile, the coalition strictly preferring
``a`` to ``b``, the coalition strictly preferring ``b`` to ``a`` and whether
society strictly prefers ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .base import (
    HypothesesNotMet,
    InternalContradiction,
    Verdict,
    format_coalition,
    full_coalition,
)
from .orders import Alt, Relation, _strict_mask, check_property
from .profiles import Domain, Profile, check_UD_for
from .swf import Swf, check_IIA, check_pareto, check_weak_pareto, find_dictator


def _ordered_pairs(n: int):
    return [(a, b) for a in range(n) for b in range(n) if a != b]


def _pair_data(s: Swf) -> dict[tuple[int, int], list[tuple[int, int, bool]]]:
    cache = s.__dict__.get("_pair_cache")
    if cache is not None:
        return cache
    n = s.carrier.n
    data: dict[tuple[int, int], list[tuple[int, int, bool]]] = {pr: [] for pr in _ordered_pairs(n)}
    for p, out in s.items():
        strict = [_strict_mask(n, r.mask) for r in p.entries]
        social = _strict_mask(n, out.mask)
        for (a, b), rows in data.items():
            bit_ab = 1 << (a * n + b)
            bit_ba = 1 << (b * n + a)
            pro = con = 0
            for i, sm in enumerate(strict):
                if sm & bit_ab:
                    pro |= 1 << i
                elif sm & bit_ba:
                    con |= 1 << i
            rows.append((pro, con, bool(social & bit_ab)))
    s.__dict__["_pair_cache"] = data
    return data


def _pair_index(s: Swf, a: Alt, b: Alt) -> tuple[int, int]:
    ia, ib = s.carrier.index(a), s.carrier.index(b)
    if ia == ib:
        raise ValueError("decisiveness is defined for distinct alternatives")
    return ia, ib


def profiles_Uab(d: Domain, U: int, a: Alt, b: Alt) -> list[Profile]:
    """Profiles where ``U`` strictly prefers a to b and everyone else strictly prefers b to a."""
    n = d.carrier.n
    ia, ib = d.carrier.index(a), d.carrier.index(b)
    if ia == ib:
        raise ValueError("U_ab needs distinct alternatives")
    full = full_coalition(d.m)
    out = []
    for p in d.profiles:
        pro = con = 0
        for i, r in enumerate(p.entries):
            sm = _strict_mask(n, r.mask)
            if sm >> (ia * n + ib) & 1:
                pro |= 1 << i
            elif sm >> (ib * n + ia) & 1:
                con |= 1 << i
        if pro == U and con == full & ~U:
            out.append(p)
    return out


@dataclass(frozen=True)
class Decisiveness:
    holds: bool
    vacuous: bool
    witness: Profile | None = None

    def __bool__(self) -> bool:
        return self.holds


def decisiveness(s: Swf, U: int, a: Alt, b: Alt) -> Decisiveness:
    """``a D_U b`` with a flag for the case where no profile realises ``U_ab``."""
    ia, ib = _pair_index(s, a, b)
    comp = full_coalition(s.m) & ~U
    seen = False
    for p, (pro, con, soc) in zip(s.domain.profiles, _pair_data(s)[(ia, ib)]):
        if pro == U and con == comp:
            seen = True
            if not soc:
                return Decisiveness(False, False, p)
    return Decisiveness(True, not seen)


def is_decisive(s: Swf, U: int, a: Alt, b: Alt) -> bool:
    return decisiveness(s, U, a, b).holds


def is_strongly_decisive(s: Swf, U: int, a: Alt, b: Alt) -> bool:
    """``a E_U b``: whenever all of ``U`` strictly prefer a to b, so does society."""
    ia, ib = _pair_index(s, a, b)
    return all(soc for pro, _, soc in _pair_data(s)[(ia, ib)] if pro & U == U)


def decisive_pairs(s: Swf, U: int, *, strong: bool = False, include_vacuous: bool = True) -> list[tuple[str, str]]:
    """The relation ``D_U`` (or ``E_U``) on labels, in index order."""
    labs = s.carrier.labels
    out = []
    for a, b in _ordered_pairs(s.carrier.n):
        if strong:
            ok = is_strongly_decisive(s, U, a, b)
        else:
            dec = decisiveness(s, U, a, b)
            ok = dec.holds and (include_vacuous or not dec.vacuous)
        if ok:
            out.append((labs[a], labs[b]))
    return out


# -- standing assumptions ------------------------------------------------------

def _hypothesis_status(s: Swf) -> dict[str, bool]:
    cache = s.__dict__.setdefault("_hyp_cache", {})
    if not cache:
        cache["|A|>=3"] = s.carrier.n >= 3
        cache["UD"] = cache["|A|>=3"] and bool(check_UD_for(s.domain))
        cache["IIA"] = bool(check_IIA(s))
        cache["WP"] = bool(check_weak_pareto(s))
        cache["P"] = bool(check_pareto(s))
        cache["weak-order outputs"] = s.transitive_outputs
    return cache


def require(s: Swf, *names: str) -> None:
    """Raise :class:`HypothesesNotMet` unless every named assumption holds.

    UD is taken relative to the domain's ballot type, so a full linear
    domain counts as unrestricted among linear ballots.
    """
    status = _hypothesis_status(s)
    failed = [nm for nm in names if not status[nm]]
    if failed:
        raise HypothesesNotMet(failed)


# -- Props 2-5 -----------------------------------------------------------------

@dataclass(frozen=True)
class LemmaReport:
    hypothesis_1: bool
    hypothesis_2: bool
    conclusion: bool

    @property
    def hypotheses_hold(self) -> bool:
        return self.hypothesis_1 and self.hypothesis_2

    @property
    def holds(self) -> bool:
        return not self.hypotheses_hold or self.conclusion


def check_relational_lemma(R: Relation) -> LemmaReport:
    """Irreflexive R with both transfer properties is empty or all distinct pairs."""
    n = R.carrier.n
    if n < 3:
        raise ValueError("the relational lemma needs at least 3 elements")
    if not check_property(R, "irreflexive"):
        raise ValueError("the relational lemma is stated for irreflexive relations")

    def r(a, b):
        return R.mask >> (a * n + b) & 1

    rng = range(n)
    h1 = all(r(a, x) for a in rng for b in rng if r(a, b) for x in rng if x != a)
    h2 = all(r(x, b) for a in rng for b in rng if r(a, b) for x in rng if x != b)
    nonempty = any(r(a, b) for a in rng for b in rng)
    concl = not nonempty or all(r(x, y) for x in rng for y in rng if x != y)
    return LemmaReport(h1, h2, concl)


def check_local_neutrality(s: Swf) -> Verdict:
    """Each coalition is decisive for every pair or for none (needs UD, IIA, WP)."""
    require(s, "|A|>=3", "UD", "IIA", "WP")
    pairs = _ordered_pairs(s.carrier.n)
    labs = s.carrier.labels
    for U in range(1 << s.m):
        dec = [pr for pr in pairs if is_decisive(s, U, *pr)]
        if dec and len(dec) != len(pairs):
            a, b = dec[0]
            x, y = next(pr for pr in pairs if pr not in dec)
            return Verdict(False, (U, (labs[a], labs[b]), (labs[x], labs[y])))
    return Verdict(True)


def check_monotonicity(s: Swf) -> Verdict:
    """``D_U == E_U`` for every coalition (needs UD, IIA, WP)."""
    require(s, "|A|>=3", "UD", "IIA", "WP")
    labs = s.carrier.labels
    for U in range(1 << s.m):
        for a, b in _ordered_pairs(s.carrier.n):
            if is_decisive(s, U, a, b) != is_strongly_decisive(s, U, a, b):
                return Verdict(False, (U, (labs[a], labs[b])))
    return Verdict(True)


# -- ultrafilter of decisive sets ---------------------------------------------

def decisive_family(s: Swf) -> frozenset[int]:
    """Coalitions decisive (non-vacuously) for at least one ordered pair."""
    fam = set()
    for U in range(1 << s.m):
        for a, b in _ordered_pairs(s.carrier.n):
            dec = decisiveness(s, U, a, b)
            if dec.holds and not dec.vacuous:
                fam.add(U)
                break
    return frozenset(fam)


AXIOMS = ("F1", "F2", "F3", "F4", "F5", "F6", "F7")


@dataclass
class UltrafilterReport:
    m: int
    results: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, str] = field(default_factory=dict)
    generator: int | None = None

    @property
    def ok(self) -> bool:
        return all(self.results[ax] for ax in AXIOMS)

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> list[str]:
        out = []
        for ax in AXIOMS:
            if self.results[ax]:
                out.append(f"{ax}: ok")
            else:
                out.append(f"{ax}: FAIL witness={self.witnesses[ax]}")
        if self.generator is not None:
            out.append(f"generator: {format_coalition(1 << self.generator)}")
        else:
            out.append("generator: none")
        return out


def check_ultrafilter(fam, m: int) -> UltrafilterReport:
    """Check F1-F7 on a family of coalitions over ``m`` voters.

    When all hold, ``generator`` is the single voter in the intersection of
    all members (every ultrafilter on a finite set is principal).
    """
    if not 1 <= m <= 4:
        raise ValueError(f"ultrafilter checks support 1 <= m <= 4, got {m}")
    fam = frozenset(fam)
    full = full_coalition(m)
    if any(U & ~full for U in fam):
        raise ValueError("family contains a coalition outside the voter set")
    universe = range(1 << m)
    members_sorted = sorted(fam)
    rep = UltrafilterReport(m)
    fc = format_coalition

    def record(ax, witness):
        rep.results[ax] = witness is None
        if witness is not None:
            rep.witnesses[ax] = witness

    record("F1", None if full in fam else fc(full))
    record("F2", next((f"{fc(U)}<={fc(V)}" for U in members_sorted for V in universe
                       if V & U == U and V not in fam), None))
    record("F3", next((f"{fc(U)}&{fc(V)}" for U in members_sorted for V in members_sorted
                       if U & V == 0), None))
    record("F4", next((f"{fc(U)}={fc(V)}+{fc(U & ~V)}" for U in members_sorted for V in universe
                       if V & U == V and V not in fam and (U & ~V) not in fam), None))
    record("F5", None if 0 not in fam else fc(0))
    record("F6", next((f"{fc(U)}&{fc(V)}" for U in members_sorted for V in members_sorted
                       if U & V not in fam), None))
    record("F7", next((fc(U) for U in universe if U not in fam and full & ~U not in fam), None))

    if rep.ok:
        core = full
        for U in fam:
            core &= U
        if core == 0 or core & (core - 1):
            raise InternalContradiction(f"ultrafilter with non-singleton core {fc(core)}")
        rep.generator = core.bit_length() - 1
    return rep


def principal_family(i: int, m: int) -> frozenset[int]:
    return frozenset(U for U in range(1 << m) if U >> i & 1)


def _ultrafilter_or_refuse(s: Swf) -> frozenset[int]:
    fam = decisive_family(s)
    if not check_ultrafilter(fam, s.m):
        raise HypothesesNotMet(["ultrafilter"], "decisive family fails F1-F7")
    return fam


def check_linear_determination(s: Swf) -> Verdict:
    """On profiles linear on {a,b}: society prefers a to b iff the a-over-b voters are decisive."""
    require(s, "|A|>=3", "UD", "IIA", "P")
    fam = _ultrafilter_or_refuse(s)
    labs = s.carrier.labels
    full = full_coalition(s.m)
    data = _pair_data(s)
    for a, b in _ordered_pairs(s.carrier.n):
        for p, (pro, con, soc) in zip(s.domain.profiles, data[(a, b)]):
            if pro | con == full and soc != (pro in fam):
                return Verdict(False, (labs[a], labs[b], p))
    return Verdict(True)


def check_linear_strictness(s: Swf) -> Verdict:
    """Profiles linear on {a,b} get a strict social verdict on {a,b}."""
    require(s, "|A|>=3", "UD", "IIA", "P")
    _ultrafilter_or_refuse(s)
    labs = s.carrier.labels
    full = full_coalition(s.m)
    data = _pair_data(s)
    for a, b in _ordered_pairs(s.carrier.n):
        for p, (pro, con, soc), (_, _, rev) in zip(s.domain.profiles, data[(a, b)], data[(b, a)]):
            if pro | con == full and soc == rev:
                return Verdict(False, (labs[a], labs[b], p))
    return Verdict(True)


def arrow_conclusion(s: Swf) -> int:
    """Return the dictator guaranteed by Arrow's theorem, checking every step."""
    require(s, "|A|>=3", "UD", "IIA", "P", "weak-order outputs")
    fam = decisive_family(s)
    rep = check_ultrafilter(fam, s.m)
    if not rep:
        raise InternalContradiction("decisive family of an Arrow SWF is not an ultrafilter: " + "; ".join(rep.lines()))
    i = rep.generator
    if find_dictator(s) != i:
        raise InternalContradiction(f"generator {i} of the decisive ultrafilter is not a dictator")
    return i
