from __future__ import annotations

import random
from fractions import Fraction as Q

import pytest

from zvertex import lattice
from zvertex.errors import ParseError
from zvertex.lattice import Lattice, dual_basis, inner, is_even, is_self_dual, parse_lattice
from zvertex.linalg import mat_mul


def test_inner_diagonal_readoff(a1):
    assert inner(a1, (1,), (1,)) == 2


def test_inner_off_diagonal_readoff(ii11):
    assert inner(ii11, (1, 0), (0, 1)) == 1


def test_inner_dual_coordinates(a1):
    # rational matrix product oracle: (1) * [2] * (1/2) = 1
    assert inner(a1, (1,), (Q(1, 2),)) == 1


def test_inner_dimension_mismatch(a1):
    with pytest.raises(ValueError):
        inner(a1, (1, 0), (1,))


def test_dual_basis_a1(a1):
    assert dual_basis(a1) == [[Q(1, 2)]]


def test_dual_basis_self_inverse(ii11):
    assert dual_basis(ii11) == [[Q(0), Q(1)], [Q(1), Q(0)]]


def test_dual_basis_identity_gram():
    lat = Lattice(((1, 0), (0, 1)))
    assert dual_basis(lat) == [[Q(1), Q(0)], [Q(0), Q(1)]]


def test_gram_times_dual_is_identity(a1, a2, ii11, e8):
    for lat in (a1, a2, ii11, e8):
        product = mat_mul(lat.gram, dual_basis(lat))
        n = lat.rank
        assert product == [[Q(int(i == j)) for j in range(n)] for i in range(n)]


def test_self_duality(a1, ii11, e8):
    assert not is_self_dual(a1)          # det 2
    assert is_self_dual(ii11)            # det -1
    assert is_self_dual(e8)


def test_self_dual_iff_integral_dual(a1, a2, ii11, e8):
    for lat in (a1, a2, ii11, e8):
        integral = all(x.denominator == 1 for row in dual_basis(lat) for x in row)
        assert is_self_dual(lat) == integral


def test_evenness_against_random_vectors(a2, ii11, e8):
    rng = random.Random(11)
    odd = Lattice(((1, 0), (0, 2)))
    for lat in (a2, ii11, e8, odd):
        predicted = is_even(lat)
        agree = True
        for _ in range(100):
            v = [rng.randint(-5, 5) for _ in range(lat.rank)]
            if inner(lat, v, v) % 2 != 0:
                agree = False
                break
        # even lattice: every norm even; odd lattice: some random norm is odd
        assert predicted == agree


def test_rejects_bad_gram():
    with pytest.raises(ValueError):
        Lattice(((0, 1), (2, 0)))          # not symmetric
    with pytest.raises(ValueError):
        Lattice(((1, 1), (1, 1)))          # singular
    with pytest.raises(ValueError):
        Lattice(((Q(1, 2),),))             # non-integer


def test_scale_vector_validation():
    Lattice(((2,),), scale_vector=(2,))
    with pytest.raises(ValueError):
        Lattice(((2,),), scale_vector=(3,))       # product != |det|
    with pytest.raises(ValueError):
        Lattice(((2, -1), (-1, 2)), scale_vector=(1, 3))   # 3 does not divide row


def test_parse_lattice_roundtrip():
    text = """
    # hyperbolic plane
    rank 2
    gram 0 1
    gram 1 0
    scale 1 1
    """
    lat = parse_lattice(text)
    assert lat.gram == ((0, 1), (1, 0))
    assert lat.scale_vector == (1, 1)


@pytest.mark.parametrize("text", [
    "gram 2",                               # missing rank
    "rank 2\ngram 0 1\n",                   # wrong row count
    "rank 1\ngram x\n",                     # non-integer
    "rank 1\ngram 2\nwhat 1\n",             # unknown key
    "rank 2\ngram 0 1\ngram 2 0\n",         # asymmetric
])
def test_parse_lattice_errors(text):
    with pytest.raises(ParseError):
        parse_lattice(text)


def test_e8_is_even_unimodular(e8):
    assert e8.rank == 8
    assert is_even(e8)
    assert lattice.determinant(e8) == 1
