"""SWFs as families indexed by subsets, and their naturality squares.

A :class:`SwfFamily` stores one SWF per nonempty subset of a carrier.  The
components are kept extensionally, so every naturality check compares
independently stored tables.  Inclusion squares express IIA, injection
squares express neutrality on linear ballots, and :func:`check_CP` is the
diagonal form of Pareto.

:func:`enumerate_natural_transformations` is separate: it searches all
families ``t_X : X^k -> X`` on small canonical sets that are natural for
*every* function between them, not only injections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .base import Verdict
from .decisive import require
from .orders import (
    AlternativeSet,
    Injection,
    Relation,
    all_injections,
    enumerate_linear_orders,
    format_chain,
    inclusion,
    is_weak_order,
    pushforward,
    restrict,
)
from .profiles import Domain, Profile, domain_family, format_profile, restrict_profile
from .swf import Swf, check_pareto


class IllDefined(ValueError):
    """Two lifts of the same restricted profile disagree after restriction (IIA fails)."""

    def __init__(self, subset: AlternativeSet, p: Profile, q1: Profile, q2: Profile):
        self.subset, self.p, self.q1, self.q2 = subset, p, q1, q2
        super().__init__(
            f"sigma_{subset} ill-defined at {format_profile(p)}: lifts "
            f"{format_profile(q1)} and {format_profile(q2)} disagree"
        )


class NoLift(ValueError):
    def __init__(self, subset: AlternativeSet, p: Profile):
        self.subset, self.p = subset, p
        super().__init__(f"profile {format_profile(p)} on {subset} has no lift to the top domain")


class SwfFamily:
    """One SWF per nonempty subset of ``carrier``."""

    def __init__(self, carrier: AlternativeSet, components: Mapping[AlternativeSet, Swf]):
        if carrier.n > 4:
            raise ValueError("SWF families are capped at 4 alternatives")
        self.carrier = carrier
        self.subsets = carrier.subsets()
        missing = [A for A in self.subsets if A not in components]
        if missing:
            raise ValueError(f"family is missing components for {', '.join(map(str, missing))}")
        for A in self.subsets:
            if components[A].carrier != A:
                raise ValueError(f"component for {A} lives over {components[A].carrier}")
        self.components = {A: components[A] for A in self.subsets}

    @property
    def top(self) -> Swf:
        return self.components[self.carrier]

    def __getitem__(self, A) -> Swf:
        if not isinstance(A, AlternativeSet):
            A = self.carrier.subset(A)
        return self.components[A]

    def replace(self, A: AlternativeSet, component: Swf) -> "SwfFamily":
        comps = dict(self.components)
        comps[A] = component
        return SwfFamily(self.carrier, comps)


def extend_from_top(s_top: Swf, family: Mapping[AlternativeSet, Domain] | None = None) -> SwfFamily:
    """Define ``sigma_A(p) = sigma(q)|A`` for any lift ``q`` of ``p``, checking lift-independence."""
    carrier = s_top.carrier
    if family is None:
        family = domain_family(s_top.domain)
    comps = {}
    for A in carrier.subsets():
        if A == carrier:
            comps[A] = s_top
            continue
        lifts: dict[tuple[int, ...], list[tuple[Profile, Relation]]] = {}
        for q, out in s_top.items():
            lifts.setdefault(restrict_profile(q, A).masks, []).append((q, restrict(out, A)))
        table = {}
        for p in family[A].profiles:
            cand = lifts.get(p.masks)
            if not cand:
                raise NoLift(A, p)
            q0, r0 = cand[0]
            for q, r in cand[1:]:
                if r != r0:
                    raise IllDefined(A, p, q0, q)
            table[p] = r0
        comps[A] = Swf(family[A], table, allow_intransitive=not s_top.transitive_outputs)
    return SwfFamily(carrier, comps)


@dataclass(frozen=True)
class NaturalitySquare:
    """A failed square: ``lhs = sigma_A(D(alpha) p)`` versus ``rhs = P(alpha) sigma_B(p)``."""

    A: AlternativeSet
    B: AlternativeSet
    alpha: Injection
    p: Profile
    lhs: Relation | None
    rhs: Relation

    def __str__(self) -> str:
        lhs = "undefined" if self.lhs is None else _show(self.lhs)
        return (
            f"A={self.A} B={self.B} alpha={self.alpha} p={format_profile(self.p)} "
            f"lhs={lhs} rhs={_show(self.rhs)}"
        )


def _show(r: Relation) -> str:
    return format_chain(r) if is_weak_order(r) else str(r)


def _push_profile(p: Profile, alpha: Injection) -> Profile:
    return Profile._trusted(alpha.source, tuple(pushforward(r, alpha) for r in p.entries))


def _square(f: SwfFamily, alpha: Injection, p: Profile) -> NaturalitySquare | None:
    A, B = alpha.source, alpha.target
    pulled = _push_profile(p, alpha)
    comp_A = f.components[A]
    rhs = pushforward(f.components[B](p), alpha)
    lhs = comp_A.table.get(pulled)
    if lhs is None or lhs != rhs:
        return NaturalitySquare(A, B, alpha, p, lhs, rhs)
    return None


def naturality_failures(f: SwfFamily, *, injections: bool = False, limit: int | None = None) -> list[NaturalitySquare]:
    """All failing squares in canonical order (inclusions, or all injections on linear ballots)."""
    out = []
    for B in f.subsets:
        comp_B = f.components[B]
        profs = comp_B.domain.linear_profiles() if injections else comp_B.domain.profiles
        for A in f.subsets:
            if injections:
                if A.n > B.n:
                    continue
                maps = all_injections(A, B)
            else:
                if not A.is_subset_of(B):
                    continue
                maps = [inclusion(A, B)]
            for alpha in maps:
                for p in profs:
                    sq = _square(f, alpha, p)
                    if sq is not None:
                        out.append(sq)
                        if limit is not None and len(out) >= limit:
                            return out
    return out


def check_naturality_inclusions(f: SwfFamily) -> Verdict:
    """``sigma_A(p|A) == sigma_B(p)|A`` for all ``A <= B`` and profiles over B."""
    fails = naturality_failures(f, limit=1)
    return Verdict(not fails, fails[0] if fails else None)


def check_naturality_injections(f: SwfFamily, *, check_hypotheses: bool = True) -> Verdict:
    """Naturality of the linear-ballot parts under every injection ``A -> B``.

    By default the top SWF must satisfy UD, IIA and P (the setting in which
    the squares are guaranteed to commute); ``check_hypotheses=False`` runs
    the squares on any family, e.g. deliberately broken instruments.
    """
    if check_hypotheses:
        require(f.top, "|A|>=3", "UD", "IIA", "P")
    fails = naturality_failures(f, injections=True, limit=1)
    return Verdict(not fails, fails[0] if fails else None)


def _unanimous(A: AlternativeSet, r: Relation, m: int) -> Profile:
    return Profile._trusted(A, (r,) * m)


def check_CP(f: SwfFamily) -> Verdict:
    """Diagonal preservation on 2-element subsets: unanimous linear ballot ``r`` maps to ``r``."""
    m = f.top.m
    for A in f.carrier.subsets(2, 2):
        comp = f.components[A]
        for r in enumerate_linear_orders(A):
            out = comp.table.get(_unanimous(A, r, m))
            if out is None or out != r:
                return Verdict(False, (A, r, out))
    return Verdict(True)


@dataclass(frozen=True)
class CPEquivalence:
    cp: bool
    pareto_everywhere: bool

    @property
    def holds(self) -> bool:
        return self.cp == self.pareto_everywhere

    def __bool__(self) -> bool:
        return self.holds


def check_CP_equiv_P(s_top: Swf, family: Mapping[AlternativeSet, Domain] | None = None) -> CPEquivalence:
    """Compare CP of the extended family with Pareto of each component."""
    fam = extend_from_top(s_top, family)
    cp = bool(check_CP(fam))
    pareto = all(bool(check_pareto(fam.components[A])) for A in fam.subsets)
    return CPEquivalence(cp, pareto)


# -- natural transformations X^k -> X on finite sets ---------------------------

@dataclass(frozen=True)
class NatCandidate:
    """Components ``t_j : j^k -> j`` on canonical sets ``{0..j-1}``, ``j = 1..s``.

    ``components[j-1][idx]`` is the value at the tuple with row-major index ``idx``.
    """

    arity: int
    components: tuple[tuple[int, ...], ...]

    @property
    def max_size(self) -> int:
        return len(self.components)

    def projection_index(self) -> int | None:
        for i in range(self.arity):
            if all(
                comp[idx] == x[i]
                for j, comp in enumerate(self.components, 1)
                for idx, x in enumerate(itertools.product(range(j), repeat=self.arity))
            ):
                return i
        return None

    def preserves_constants(self) -> bool:
        return all(
            comp[_tuple_index((c,) * self.arity, j)] == c
            for j, comp in enumerate(self.components, 1)
            for c in range(j)
        )


def _tuple_index(xs, j: int) -> int:
    idx = 0
    for x in xs:
        idx = idx * j + x
    return idx


def _functions(i: int, j: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(j), repeat=i))


def _square_ok(k: int, comps: dict[int, tuple[int, ...]], g: tuple[int, ...], i: int, j: int) -> bool:
    """Naturality square for ``g : i -> j``: ``g(t_i(x)) == t_j(g o x)``."""
    ti, tj = comps[i], comps[j]
    for idx, x in enumerate(itertools.product(range(i), repeat=k)):
        if g[ti[idx]] != tj[_tuple_index([g[v] for v in x], j)]:
            return False
    return True


def enumerate_natural_transformations(k: int, s: int) -> list[NatCandidate]:
    """All families ``t_j : j^k -> j`` (``j <= s``) natural for every function between the sets.

    Size by size: at ``j`` each tuple's admissible values are those compatible
    with every map into a smaller set (no constraint when ``j = 2``, so the
    2-element component is searched by brute force over all ``2^(2^k)``
    tables); every combination is then checked against all squares among
    sets of size ``<= j``.  The pruning discards only values that already
    violate a square, so the search is exhaustive.
    """
    if not 1 <= k <= 3 or not 1 <= s <= 3:
        raise ValueError(f"natural-transformation search supports arity and size 1..3, got k={k}, s={s}")
    partial: list[dict[int, tuple[int, ...]]] = [{}]
    for j in range(1, s + 1):
        tuples = list(itertools.product(range(j), repeat=k))
        down = [(i, g) for i in range(1, j) for g in _functions(j, i)]
        squares = [(i, jj, g) for i in range(1, j + 1) for jj in range(1, j + 1)
                   if j in (i, jj) for g in _functions(i, jj)]
        grown = []
        for comps in partial:
            domains = []
            for x in tuples:
                allowed = [
                    v for v in range(j)
                    if all(g[v] == comps[i][_tuple_index([g[y] for y in x], i)] for i, g in down)
                ]
                domains.append(allowed)
            for values in itertools.product(*domains):
                trial = dict(comps)
                trial[j] = tuple(values)
                if all(_square_ok(k, trial, g, i, jj) for i, jj, g in squares):
                    grown.append(trial)
        partial = grown
    out = [NatCandidate(k, tuple(c[j] for j in range(1, s + 1))) for c in partial]
    out.sort(key=lambda t: t.components)
    return out
