import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_kernel, convolve, element_order_profile, kernel_profile, orbit_count
from twistk.errors import CharacterDomainMismatch, IllFormedHom, ModulusMismatch, NotASubgroup
from twistk.exactalg import IntMatrix
from twistk.repring import (
    Character,
    FiniteAbelianGroup,
    GroupRingElement,
    char_action_matrix,
    characters,
    cyclic_gcd,
    image_order,
    invariant_submodule,
    kernel_of_hom,
    kernel_with_generators,
    mul,
    quotient_by_one_minus,
    restriction_ring_map,
    translation_matrix,
)
from twistk.sweep import invariant_factor_groups


def elem(d, coeffs):
    return GroupRingElement(d, tuple(coeffs))


@st.composite
def ring_elements(draw, count=2, max_d=24):
    d = draw(st.integers(1, max_d))
    return [elem(d, draw(st.lists(st.integers(-5, 5), min_size=d, max_size=d))) for _ in range(count)]


# -- group ring -------------------------------------------------------------


def test_unit_law():
    x = elem(5, [3, -1, 0, 2, 7])
    assert mul(x, GroupRingElement.one(5)) == x


def test_mul_examples():
    assert mul(elem(4, [1, 1, 0, 0]), elem(4, [1, 0, 0, 1])) == elem(4, [2, 1, 0, 1])
    assert mul(elem(2, [1, 1]), elem(2, [1, -1])) == GroupRingElement.zero(2)


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        mul(GroupRingElement.one(2), GroupRingElement.one(3))


def test_serialization():
    assert elem(3, [1, 0, 2]).to_dict() == {"modulus": 3, "coeffs": [1, 0, 2]}


@settings(max_examples=200, deadline=None)
@given(ring_elements(count=3))
def test_ring_axioms(xs):
    x, y, z = xs
    assert mul(x, y) == mul(y, x)
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert mul(x, y + z) == mul(x, y) + mul(x, z)
    assert list(mul(x, y).coeffs) == convolve(list(x.coeffs), list(y.coeffs), x.modulus)


# -- character action -------------------------------------------------------


def test_char_action_examples():
    assert char_action_matrix(5, 0) == IntMatrix.identity(5)
    p = char_action_matrix(4, 2)
    for i in range(4):
        e = [0] * 4
        e[i] = 1
        image = p.apply(e)
        assert image[(i + 2) % 4] == 1 and sum(image) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 30), st.integers(0, 60))
def test_char_action_is_permutation_of_expected_order(d, a):
    p = char_action_matrix(d, a)
    for r in p.to_rows():
        assert sorted(r) == [0] * (d - 1) + [1]
    for c in p.columns():
        assert sorted(c) == [0] * (d - 1) + [1]
    order = d // cyclic_gcd(d, a % d) if a % d else 1
    # brute force: first power returning to the identity
    t, q = 1, p
    while q != IntMatrix.identity(d):
        q = q @ p
        t += 1
    assert t == order


# -- invariants and quotients -----------------------------------------------


def test_invariant_examples():
    assert invariant_submodule(5, 0).module.rank == 5
    inv = invariant_submodule(2, 1)
    assert inv.basis.columns() == [(1, 1)]
    inv = invariant_submodule(4, 2)
    assert inv.basis.columns() == [(1, 0, 1, 0), (0, 1, 0, 1)]


def test_quotient_examples():
    assert quotient_by_one_minus(5, 0).invariant_factors == (0,) * 5
    assert quotient_by_one_minus(2, 1).invariant_factors == (0,)
    assert quotient_by_one_minus(6, 4).invariant_factors == (0, 0)


@pytest.mark.parametrize("d", range(1, 61))
def test_invariant_and_quotient_ranks(d):
    for a in range(d):
        g = orbit_count(d, a)
        assert g == cyclic_gcd(d, a)
        inv = invariant_submodule(d, a)
        assert inv.module.rank == g
        assert (char_action_matrix(d, a) @ inv.basis) == inv.basis
        q = quotient_by_one_minus(d, a)
        assert q.is_torsion_free and q.rank == g


# -- restriction ------------------------------------------------------------


def test_restriction_examples():
    assert restriction_ring_map(6, 6) == IntMatrix.identity(6)
    r = restriction_ring_map(4, 2)
    assert r.apply([1, 1, 1, 0]) == (2, 1)
    assert restriction_ring_map(7, 1) == IntMatrix.from_rows([[1] * 7])
    with pytest.raises(NotASubgroup):
        restriction_ring_map(6, 4)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 24), st.data())
def test_restriction_is_ring_hom(d, data):
    ds = data.draw(st.sampled_from([x for x in range(1, d + 1) if d % x == 0]))
    x = elem(d, data.draw(st.lists(st.integers(-4, 4), min_size=d, max_size=d)))
    y = elem(d, data.draw(st.lists(st.integers(-4, 4), min_size=d, max_size=d)))
    r = restriction_ring_map(d, ds)
    image = lambda v: elem(ds, r.apply(v.coeffs))
    assert image(mul(x, y)) == mul(image(x), image(y))


def test_restriction_composes_along_chains():
    for d in range(1, 37):
        divs = [x for x in range(1, d + 1) if d % x == 0]
        for d1 in divs:
            for d2 in (x for x in divs if d1 % x == 0):
                assert restriction_ring_map(d1, d2) @ restriction_ring_map(d, d1) == restriction_ring_map(d, d2)


# -- finite abelian groups --------------------------------------------------


def test_kernel_examples():
    z = FiniteAbelianGroup((2, 4))
    assert kernel_of_hom(z, (0, 0), 1).order == 8
    assert kernel_of_hom(z, (0, 1), 4).cyclic_factors == (2,)
    assert kernel_of_hom(FiniteAbelianGroup((6,)), (3,), 6).cyclic_factors == (3,)


def test_trivial_hom_keeps_group():
    g = FiniteAbelianGroup((2, 6))
    assert element_order_profile(kernel_of_hom(g, (0, 0), 5).cyclic_factors) == element_order_profile((2, 6))


def test_ill_formed_hom():
    with pytest.raises(IllFormedHom):
        kernel_of_hom(FiniteAbelianGroup((3,)), (1,), 2)


def _homs(factors, n):
    choices = [[c for c in range(n) if (c * m) % n == 0] for m in factors]
    return itertools.product(*choices)


@pytest.mark.parametrize("factors", invariant_factor_groups(64)[1:], ids=str)
def test_kernel_order_and_structure(factors):
    g = FiniteAbelianGroup(factors)
    for n in (2, 3, 4, 6):
        for phi in list(_homs(factors, n))[:6]:
            data = kernel_with_generators(g, phi, n)
            k = data.group
            assert k.order * image_order(g, phi, n) == g.order
            assert element_order_profile(k.cyclic_factors) == kernel_profile(factors, phi, n)
            members = set(brute_kernel(factors, phi, n))
            for col in data.generators.columns():
                assert tuple(col) in members


def test_characters():
    g = FiniteAbelianGroup((2, 3))
    chars = characters(g)
    assert len(chars) == 6
    chi = Character(g, (1, 2))
    assert chi.order == 6
    assert (chi * chi).exponents == (0, 1)
    assert chi.to_dict() == {"factors": [2, 3], "exponents": [1, 2]}
    with pytest.raises(CharacterDomainMismatch):
        chi * Character.trivial(FiniteAbelianGroup((6,)))


def test_translation_matrix_orbits():
    g = FiniteAbelianGroup((2, 4))
    for chi in characters(g):
        t = translation_matrix(chi)
        fixed_cols = sum(1 for j, c in enumerate(t.columns()) if c[j] == 1)
        assert fixed_cols == (g.order if chi.order == 1 else 0)
