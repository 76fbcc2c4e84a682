import itertools

import pytest

from arrowcat.base import HypothesesNotMet
from arrowcat.naturality import (
    IllDefined,
    NoLift,
    SwfFamily,
    check_CP,
    check_CP_equiv_P,
    check_naturality_inclusions,
    check_naturality_injections,
    enumerate_natural_transformations,
    extend_from_top,
    naturality_failures,
)
from arrowcat.orders import Injection, alternatives, parse_chain, pushforward, restrict
from arrowcat.profiles import (
    Profile,
    domain_family,
    explicit,
    full_linear,
    full_weak,
    parse_profile,
    restrict_profile,
)
from arrowcat.search import SearchConfig, enumerate_arrow_swfs
from arrowcat.swf import (
    Swf,
    borda,
    check_IIA,
    check_pareto,
    constant_swf,
    dictatorship,
    pairwise_majority,
    reversal_swf,
)

ABC = alternatives(3)
LIN32 = full_linear(3, 2)
WEAK32 = full_weak(3, 2)


def instruments():
    out = {}
    for name, d in (("lin", LIN32), ("weak", WEAK32)):
        out[f"dict0-{name}"] = dictatorship(0, d)
        out[f"dict1-{name}"] = dictatorship(1, d)
        out[f"borda-{name}"] = borda(d)
        out[f"majority-{name}"] = pairwise_majority(d)
        out[f"constant-{name}"] = constant_swf(d)
        out[f"fixed-{name}"] = constant_swf(d, parse_chain("c>a>b"))
        out[f"reversal-{name}"] = reversal_swf(d)
    for k, s in enumerate(enumerate_arrow_swfs(SearchConfig(3, 2))):
        out[f"survivor{k}"] = s
    return out


INSTR = instruments()


def _push(p, alpha):
    return Profile(tuple(pushforward(r, alpha) for r in p))


# -- extension from the top -------------------------------------------------------------

def test_extension_of_dictatorship():
    fam = extend_from_top(dictatorship(0, WEAK32))
    for A in ABC.subsets():
        assert fam[A] == dictatorship(0, full_weak(A, 2))
    assert fam.top is fam[ABC]
    assert fam[["a", "b"]] == fam[ABC.subset(["a", "b"])]


def test_extension_of_borda_is_ill_defined():
    with pytest.raises(IllDefined) as err:
        extend_from_top(borda(LIN32))
    e = err.value
    s = borda(LIN32)
    assert restrict_profile(e.q1, e.subset) == restrict_profile(e.q2, e.subset) == e.p
    assert restrict(s(e.q1), e.subset) != restrict(s(e.q2), e.subset)


def test_missing_lift():
    p = parse_profile("a>b>c", ABC)
    s = Swf(explicit(ABC, 1, [p]), {p: p[0]})
    fam = domain_family(full_weak(3, 1))
    with pytest.raises(NoLift):
        extend_from_top(s, fam)


@pytest.mark.parametrize("name", list(INSTR))
def test_iia_iff_family_is_natural(name):
    s = INSTR[name]
    try:
        fam = extend_from_top(s)
    except IllDefined:
        natural = False
    else:
        natural = bool(check_naturality_inclusions(fam))
        assert all(check_IIA(fam[A]) for A in fam.subsets)
    assert bool(check_IIA(s)) == natural


def test_hand_edited_component_breaks_an_inclusion_square():
    fam = extend_from_top(dictatorship(0, LIN32))
    ab = ABC.subset(["a", "b"])
    comp = fam[ab]
    p = comp.domain.profiles[0]
    table = dict(comp.items())
    table[p] = parse_chain("b>a" if format(table[p]) == "a>b" else "a>b", ab)
    edited = fam.replace(ab, Swf(comp.domain, table))
    v = check_naturality_inclusions(edited)
    assert not v
    assert v.witness.A == ab
    assert restrict_profile(v.witness.p, ab) == p
    # the top component on its own is still IIA: the broken square lives in the family
    assert check_IIA(edited.top)


def test_every_failing_square_is_real():
    fam = extend_from_top(dictatorship(0, LIN32))
    ab = ABC.subset(["a", "b"])
    comp = fam[ab]
    table = {p: parse_chain("a>b", ab) for p in comp.domain}
    broken = fam.replace(ab, Swf(comp.domain, table))
    for sq in naturality_failures(broken):
        lhs = broken[sq.A](restrict_profile(sq.p, sq.A))
        assert lhs != restrict(broken[sq.B](sq.p), sq.A)


# -- injections ---------------------------------------------------------------------

def _injection_oracle(fam):
    for A in fam.subsets:
        for B in fam.subsets:
            if A.n > B.n:
                continue
            for images in itertools.permutations(range(B.n), A.n):
                alpha = Injection(A, B, images)
                for p in fam[B].domain.linear_profiles():
                    if fam[A](_push(p, alpha)) != pushforward(fam[B](p), alpha):
                        return False
    return True


@pytest.mark.parametrize("i", [0, 1])
@pytest.mark.parametrize("d", [LIN32, WEAK32], ids=["lin", "weak"])
def test_dictatorships_are_natural_for_injections(i, d):
    fam = extend_from_top(dictatorship(i, d))
    assert check_naturality_injections(fam)
    assert _injection_oracle(fam)


def test_swap_square_example():
    fam = extend_from_top(dictatorship(0, LIN32))
    ab = ABC.subset(["a", "b"])
    swap = Injection.from_labels(ab, ab, ["b", "a"])
    into = Injection.from_labels(ab, ABC, ["b", "a"])
    for p in LIN32:
        assert fam[ab](_push(p, into)) == pushforward(fam[ABC](p), into)
    for p in fam[ab].domain:
        assert fam[ab](_push(p, swap)) == pushforward(fam[ab](p), swap)


def test_fixed_order_family_is_inclusion_natural_but_not_neutral():
    fam = extend_from_top(constant_swf(LIN32, parse_chain("a>b>c")))
    assert check_naturality_inclusions(fam)
    with pytest.raises(HypothesesNotMet):
        check_naturality_injections(fam)
    v = check_naturality_injections(fam, check_hypotheses=False)
    assert not v and not v.witness.alpha.is_inclusion
    assert not _injection_oracle(fam)
    assert "alpha=[" in str(v.witness)


@pytest.mark.parametrize("name", [n for n in INSTR if n.startswith("survivor")
                                  or (n.endswith("-lin") and not n.startswith("borda"))])
def test_injection_checker_matches_oracle(name):
    fam = extend_from_top(INSTR[name])
    v = check_naturality_injections(fam, check_hypotheses=False)
    assert bool(v) == _injection_oracle(fam)
    if v:
        assert check_naturality_inclusions(fam)


# -- diagonal preservation ---------------------------------------------------------------

def test_cp_examples():
    assert check_CP(extend_from_top(dictatorship(0, WEAK32)))
    v = check_CP(extend_from_top(constant_swf(WEAK32)))
    assert not v
    A, r, out = v.witness
    assert A.n == 2 and out != r
    assert not check_CP(extend_from_top(reversal_swf(LIN32)))


@pytest.mark.parametrize("name", [n for n in INSTR if not n.startswith("borda")])
def test_cp_iff_componentwise_pareto(name):
    eq = check_CP_equiv_P(INSTR[name])
    assert eq.holds
    assert eq.pareto_everywhere == bool(check_pareto(INSTR[name]))


def test_cp_equivalence_sides():
    assert check_CP_equiv_P(dictatorship(0, WEAK32)).cp
    eq = check_CP_equiv_P(constant_swf(WEAK32))
    assert not eq.cp and not eq.pareto_everywhere


def test_family_validation():
    with pytest.raises(ValueError):
        SwfFamily(ABC, {ABC: dictatorship(0, LIN32)})
    fam = extend_from_top(dictatorship(0, LIN32))
    with pytest.raises(ValueError):
        fam.replace(ABC.subset(["a"]), dictatorship(0, LIN32))


# -- natural transformations X^k -> X ------------------------------------------------

def _tuple_index(xs, j):
    idx = 0
    for x in xs:
        idx = idx * j + x
    return idx


def _natural(k, comps):
    """Check every square for every function between the canonical sets."""
    sizes = range(1, len(comps) + 1)
    for i, j in itertools.product(sizes, repeat=2):
        for g in itertools.product(range(j), repeat=i):
            for x in itertools.product(range(i), repeat=k):
                if g[comps[i - 1][_tuple_index(x, i)]] != comps[j - 1][_tuple_index([g[v] for v in x], j)]:
                    return False
    return True


@pytest.mark.parametrize("k", [1, 2, 3])
def test_nat_trans_brute_force_on_two_sets(k):
    brute = []
    for t2 in itertools.product(range(2), repeat=2 ** k):
        comps = ((0,), t2)
        if _natural(k, comps):
            brute.append(comps)
    got = [t.components for t in enumerate_natural_transformations(k, 2)]
    assert got == sorted(brute)


@pytest.mark.parametrize("k,s,count", [(1, 1, 1), (1, 3, 1), (2, 1, 1), (2, 2, 2), (2, 3, 2), (3, 3, 3)])
def test_nat_trans_counts(k, s, count):
    got = enumerate_natural_transformations(k, s)
    assert len(got) == count
    if s >= 2:
        assert sorted(t.projection_index() for t in got) == list(range(k))


def test_nat_trans_arity_three_on_two_sets_admits_more_than_projections():
    # on sets of size <= 2 the ternary majority (and relatives) still commute
    got = enumerate_natural_transformations(3, 2)
    assert len(got) == 8
    assert sum(t.projection_index() is not None for t in got) == 3
    majority = tuple(int(sum(x) >= 2) for x in itertools.product(range(2), repeat=3))
    assert any(t.components[1] == majority for t in got)


@pytest.mark.parametrize("k,s", [(2, 3), (3, 3), (3, 2)])
def test_nat_trans_survivors_are_natural_and_fix_constants(k, s):
    for t in enumerate_natural_transformations(k, s):
        assert _natural(k, t.components)
        assert t.preserves_constants()


def test_nat_trans_bounds():
    with pytest.raises(ValueError):
        enumerate_natural_transformations(4, 2)
    with pytest.raises(ValueError):
        enumerate_natural_transformations(2, 4)
