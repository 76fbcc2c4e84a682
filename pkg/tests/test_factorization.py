import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from arrowcat.base import HypothesesNotMet
from arrowcat.decisive import check_ultrafilter, principal_family
from arrowcat.factorization import (
    BoolFn,
    boolfn_to_family,
    check_factorization,
    enumerate_homomorphisms,
    family_to_boolfn,
    is_bool_homomorphism,
    phi,
    projection,
    psi,
)
from arrowcat.orders import alternatives, empty_relation, enumerate_linear_orders, full_relation, parse_chain
from arrowcat.profiles import full_linear, full_weak, parse_profile, restrict_profile
from arrowcat.swf import borda, dictatorship, pairwise_majority

ABC = alternatives(3)


def test_family_boolfn_examples():
    assert family_to_boolfn({0}, 2).table == 1
    h = family_to_boolfn(principal_family(1, 3), 3)
    assert all(h(U) == (U >> 1 & 1) for U in range(8))
    assert h == projection(1, 3)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_family_round_trip(m):
    for bits in range(1 << (1 << m)):
        fam = boolfn_to_family(BoolFn(m, bits))
        assert family_to_boolfn(fam, m).table == bits


def test_homomorphism_examples():
    for m in (1, 2, 3, 4):
        for i in range(m):
            assert is_bool_homomorphism(projection(i, m))
    ones = BoolFn(2, 0xF)
    v = is_bool_homomorphism(ones)
    assert not v and v.witness == "h({})=1"
    maj = family_to_boolfn({0b011, 0b101, 0b110, 0b111}, 3)
    v = is_bool_homomorphism(maj)
    assert not v and v.witness.startswith("meet ")


def _hom_oracle(h, m):
    """Independent homomorphism test: meets and complements (top, bottom and
    joins follow from these two on a Boolean algebra)."""
    full = (1 << m) - 1
    return all(h(U & V) == (h(U) and h(V)) for U in range(1 << m) for V in range(1 << m)) and all(
        h(full & ~U) == 1 - h(U) for U in range(1 << m))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_homomorphisms_are_exactly_the_projections(m):
    homs = enumerate_homomorphisms(m)
    assert len(homs) == m
    assert sorted(h.projection_index() for h in homs) == list(range(m))
    brute = [t for t in range(1 << (1 << m)) if _hom_oracle(BoolFn(m, t), m)]
    assert [h.table for h in homs] == brute


def test_homomorphisms_four_voters():
    assert [h.projection_index() for h in enumerate_homomorphisms(4)] == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        enumerate_homomorphisms(5)


@pytest.mark.parametrize("m", [2, 3])
def test_ultrafilter_iff_homomorphism(m):
    for bits in range(1 << (1 << m)):
        h = BoolFn(m, bits)
        assert bool(check_ultrafilter(boolfn_to_family(h), m)) == bool(is_bool_homomorphism(h))


def test_hex_round_trip():
    for m in (1, 2, 3, 4):
        for i in range(m):
            h = projection(i, m)
            assert BoolFn.from_hex(m, h.to_hex()) == h
    assert projection(0, 3).to_hex() == "aa"
    assert str(projection(2, 3)) == "0xf0"
    with pytest.raises(ValueError):
        BoolFn(2, 1 << 4)


def test_phi_examples():
    v = phi(parse_chain("a>b>c"))
    assert {(int(a), int(b)) for a, b in zip(*np.nonzero(v))} == {(0, 1), (0, 2), (1, 2)}
    assert not phi(full_relation(ABC)).any()
    vecs = {phi(r).tobytes() for r in enumerate_linear_orders(3)}
    assert len(vecs) == 6
    with pytest.raises(ValueError):
        phi(empty_relation(ABC))


def test_phi_is_antisymmetric_with_zero_diagonal():
    from arrowcat.orders import enumerate_weak_orders
    for r in enumerate_weak_orders(3):
        v = phi(r)
        assert not np.diag(v).any()
        assert not (v & v.T).any()


def test_psi_examples():
    u = psi(parse_profile("a>b>c ; a>b>c", ABC))
    assert u[0, 1] == u[0, 2] == u[1, 2] == 0b11
    assert u[1, 0] == 0
    two = psi(parse_profile("a>b ; b>a"))
    assert two[0, 1] == 0b01 and two[1, 0] == 0b10


def test_psi_commutes_with_restriction():
    for p in full_linear(3, 2):
        full = psi(p)
        for A in ABC.subsets(2, 3):
            idx = [ABC.index(x) for x in A.labels]
            assert np.array_equal(psi(restrict_profile(p, A)), full[np.ix_(idx, idx)])


@pytest.mark.parametrize("i,m", [(0, 2), (1, 2), (1, 3)])
def test_factorization_of_dictatorships(i, m):
    rep = check_factorization(dictatorship(i, full_linear(3, m)))
    assert rep.h == projection(i, m)
    assert rep.homomorphism and rep.projection == i and rep.square_commutes
    assert rep.lines() == [f"h: {projection(i, m)}", "homomorphism: yes", f"projection: {i}", "square: OK"]


def test_factorization_counts_every_linear_square():
    rep = check_factorization(dictatorship(1, full_linear(3, 3)))
    # 3 singletons, 3 pairs with 2^3 linear profiles each, 6^3 top profiles
    assert rep.squares_checked == 3 + 3 * 8 + 216


def test_factorization_on_weak_domain_uses_linear_profiles():
    rep = check_factorization(dictatorship(0, full_weak(3, 2)))
    assert rep.square_commutes and rep.squares_checked == 3 + 3 * 4 + 36


def test_factorization_fails_for_cyclic_majority():
    rep = check_factorization(pairwise_majority(full_linear(3, 3)))
    assert not rep.homomorphism and rep.projection is None
    assert not rep.square_commutes
    assert rep.lines()[-1].startswith("square: FAIL(")


def test_factorization_refuses_without_iia():
    with pytest.raises(HypothesesNotMet):
        check_factorization(borda(full_linear(3, 2)))


@given(st.integers(1, 4).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, (1 << (1 << m)) - 1))),
       st.lists(st.integers(0, 15), min_size=1, max_size=9))
def test_apply_matches_scalar_evaluation(args, masks):
    m, table = args
    h = BoolFn(m, table)
    masks = [U & ((1 << m) - 1) for U in masks]
    assert list(h.apply(masks)) == [bool(h(U)) for U in masks]


def test_projection_bounds():
    with pytest.raises(ValueError):
        projection(3, 3)
    assert list(itertools.islice((h.to_hex() for h in enumerate_homomorphisms(2)), 2)) == ["a", "c"]
