from __future__ import annotations

import random
from fractions import Fraction as Q

import pytest

from oracles import partition_count_gf
from zvertex.fock import (FockElement, components, coords, from_coords, heis_act,
                          heis_budget, monomial_basis, render, term_weight)
from zvertex.lattice import inner


def vac(lat):
    return FockElement.group(lat.zero())


def test_mode_zero_scales_by_pairing(a1):
    gamma = (Q(1, 2),)
    v = FockElement.group(gamma)
    out = heis_act(a1, (1,), 0, v)
    assert out == v.scaled(inner(a1, (1,), gamma))
    assert out == v.scaled(1)


def test_annihilation_bracket_value(a1):
    v = heis_act(a1, (1,), -1, vac(a1))
    assert heis_act(a1, (1,), 1, v) == vac(a1).scaled(2)


def test_annihilator_kills_lowest_weight(a1):
    assert heis_act(a1, (1,), 5, FockElement.group((Q(1, 2),))).is_zero()


def test_commutator_property(a1, ii11):
    rng = random.Random(13)
    for lat in (a1, ii11):
        vectors = []
        for w in range(5):
            vectors.extend(FockElement({(m, lat.zero()): Q(1)})
                           for m in monomial_basis(lat, lat.zero(), w))
        for _ in range(40):
            h = [rng.randint(-2, 2) for _ in range(lat.rank)]
            hp = [rng.randint(-2, 2) for _ in range(lat.rank)]
            m = rng.randint(-4, 4)
            n = rng.randint(-4, 4)
            v = rng.choice(vectors)
            lhs = heis_act(lat, h, m, heis_act(lat, hp, n, v)) \
                - heis_act(lat, hp, n, heis_act(lat, h, m, v))
            expect = v.scaled(m * inner(lat, h, hp)) if m + n == 0 else FockElement.zero()
            assert (lhs - expect).is_zero()


def test_double_homogeneity(ii11):
    gamma = (Q(1), Q(-1))
    v = FockElement({(((0, 2), (1, 1)), gamma): Q(3)})
    for mode in (-3, -1, 1, 2):
        img = heis_act(ii11, (1, 1), mode, v)
        for key in img.terms:
            assert key[1] == gamma
            assert term_weight(ii11, key) == term_weight(ii11, (((0, 2), (1, 1)), gamma)) - mode


def test_monomial_basis_order_rank1(a1):
    basis = monomial_basis(a1, (0,), 2)
    assert basis == [((0, 2),), ((0, 1), (0, 1))]


def test_monomial_basis_edge_cases(a1, ii11):
    assert monomial_basis(ii11, (0, 0), 0) == [()]
    # weight of the alpha sector starts at <a,a>/2 = 1 with an empty monomial
    assert monomial_basis(a1, (1,), 1) == [()]


def test_monomial_basis_counts_match_oracle(a1, ii11, e8):
    for lat, gamma, tops in ((a1, (0,), 6), (ii11, (0, 0), 5), (e8, (0,) * 8, 3)):
        for n in range(tops + 1):
            got = len(monomial_basis(lat, gamma, n))
            assert got == partition_count_gf(n, lat.rank)


def test_monomial_basis_rejects_bad_bidegree(a1):
    with pytest.raises(ValueError):
        monomial_basis(a1, (0,), Q(1, 2))
    with pytest.raises(ValueError):
        monomial_basis(a1, (1,), 0)      # below the sector floor
    assert heis_budget(a1, (Q(1),), Q(1, 2)) is None


def test_coords_roundtrip(a1):
    gamma = (Q(0),)
    v = heis_act(a1, (1,), -2, vac(a1)) + heis_act(a1, (1,), -1, heis_act(a1, (1,), -1, vac(a1))).scaled(Q(1, 2))
    vec = coords(a1, v, gamma, 2)
    assert vec == [Q(1), Q(1, 2)]
    assert from_coords(a1, gamma, 2, vec) == v
    assert coords(a1, FockElement.zero(), gamma, 2) == [Q(0), Q(0)]
    assert coords(a1, FockElement.group(gamma), gamma, 0) == [Q(1)]


def test_components_split(a1):
    v = vac(a1) + heis_act(a1, (1,), -1, vac(a1))
    comp = components(a1, v)
    assert len(comp) == 2
    assert set(comp) == {((Q(0),), Q(0)), ((Q(0),), Q(1))}


def test_render_is_canonical(a1):
    v = heis_act(a1, (1,), -2, vac(a1)).scaled(Q(1, 2)) \
        + heis_act(a1, (1,), -1, heis_act(a1, (1,), -1, vac(a1))).scaled(Q(1, 2))
    assert render(v) == "1/2 a1(-1)^2*e(0)  +  1/2 a1(-2)*e(0)"
    assert render(FockElement.zero()) == "0"
