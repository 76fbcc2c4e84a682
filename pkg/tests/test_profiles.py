import itertools

import pytest

from arrowcat.orders import alternatives, enumerate_weak_orders, parse_chain, restrict
from arrowcat.profiles import (
    Domain,
    Profile,
    check_CUD,
    check_UD,
    check_UD_for,
    coalition_strict,
    domain_family,
    explicit,
    format_profile,
    full_linear,
    full_weak,
    parse_profile,
    restrict_profile,
)

ABC = alternatives(3)


def test_restrict_profile_example():
    p = parse_profile("a>b>c ; c>b>a", ABC)
    assert format_profile(restrict_profile(p, ABC.subset(["a", "b"]))) == "a>b ; b>a"
    assert restrict_profile(p, ABC) == p


def test_restriction_commutes_with_entries():
    d = full_weak(3, 2)
    for A in ABC.subsets():
        for p in d:
            q = restrict_profile(p, A)
            assert all(q[i] == restrict(p[i], A) for i in range(p.m))


@pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (3, 1), (3, 2), (2, 3)])
def test_domain_sizes(n, m):
    w = len(enumerate_weak_orders(n))
    assert len(full_weak(n, m)) == w ** m
    assert len(full_linear(n, m)) == [1, 1, 2, 6][n] ** m


def test_profile_requires_weak_orders_on_one_carrier():
    with pytest.raises(ValueError):
        Profile([parse_chain("a>b"), parse_chain("a>b>c")])
    with pytest.raises(ValueError):
        Profile([])


def test_profile_text_round_trip():
    for p in full_weak(3, 2):
        assert parse_profile(format_profile(p), ABC) == p


def test_ud_examples():
    assert check_UD(full_weak(3, 2))
    v = check_UD(full_linear(3, 2))
    assert not v
    A, q = v.witness
    assert not q.is_linear()
    assert check_UD(full_linear(3, 2), relative_to="linear")
    assert check_UD_for(full_linear(3, 2))
    with pytest.raises(ValueError):
        check_UD(full_weak(2, 2))


@pytest.mark.parametrize("n,m", [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2)])
def test_ud_holds_on_full_weak(n, m):
    assert check_UD(full_weak(n, m))


def test_ud_fails_after_any_single_removal():
    full = full_weak(3, 2)
    for q in full.profiles:
        d = explicit(ABC, 2, [p for p in full.profiles if p != q])
        v = check_UD(d)
        assert not v
        assert v.witness == (ABC, q)


def test_ud_on_four_alternatives_survives_one_removal():
    # with |A| = 4 every 3-subset profile has many lifts
    full = full_weak(4, 1)
    q = full.profiles[0]
    assert check_UD(explicit(alternatives(4), 1, [p for p in full.profiles if p != q]))


def test_cud_examples():
    assert check_CUD(domain_family(full_weak(3, 2)))
    fam = domain_family(full_weak(3, 1))
    ab = ABC.subset(["a", "b"])
    fam[ab] = explicit(ab, 1, fam[ab].profiles[:2])
    rep = check_CUD(fam)
    assert not rep.small_sets_full
    assert rep.witnesses["small_sets_full"] == ab

    lin = check_CUD(domain_family(full_linear(3, 2)))
    assert not lin.small_sets_full
    assert lin.epis_preserved and lin.restrictions_closed


def test_cud_missing_subset():
    fam = domain_family(full_weak(3, 1))
    del fam[ABC.subset(["a"])]
    with pytest.raises(ValueError):
        check_CUD(fam)


@pytest.mark.parametrize("make", [full_weak, full_linear])
def test_restrictions_of_full_domains_are_onto(make):
    for n in (3, 4):
        d = make(n, 2 if n == 3 else 1)
        fam = {A: make(A, d.m) for A in d.carrier.subsets()}
        assert check_CUD(fam).epis_preserved


def test_coalition_strict_examples():
    p = parse_profile("a>b>c ; a>c>b", ABC)
    assert coalition_strict(p, 0b11, "a", "b")
    assert not coalition_strict(p, 0b11, "b", "a")
    assert coalition_strict(p, 0, "b", "a")
    with pytest.raises(ValueError):
        coalition_strict(p, 0b1, "a", "a")


def test_domain_canonical_order_and_equality():
    d = full_weak(3, 2)
    shuffled = explicit(ABC, 2, list(reversed(d.profiles)))
    assert shuffled.profiles == d.profiles
    assert shuffled == d
    assert list(d) == sorted(d, key=Profile.sort_key)


def test_explicit_domain_validation():
    with pytest.raises(ValueError):
        explicit(ABC, 2, [])
    with pytest.raises(ValueError):
        explicit(ABC, 1, [parse_profile("a>b>c ; c>b>a", ABC)])


def test_domain_family_is_restriction_image():
    d = explicit(ABC, 1, [parse_profile("a>b>c", ABC)])
    fam = domain_family(d)
    assert [format_profile(p) for p in fam[ABC.subset(["b", "c"])]] == ["b>c"]
    assert len(fam) == 7


def test_product_enumeration_matches_itertools():
    orders = enumerate_weak_orders(2)
    expect = {tuple(r.mask for r in combo) for combo in itertools.product(orders, repeat=3)}
    assert {p.masks for p in full_weak(2, 3)} == expect
