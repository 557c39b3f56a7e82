import pytest
from hypothesis import given, strategies as st

from massgrowth.laurent import (
    LaurentMatrix,
    LaurentPoly,
    degree_range,
    is_nilpotent,
    mat_mul,
    mat_pow,
    monomial_matrix,
    poly_eval,
    random_laurent_matrix,
)

from conftest import matrices, polys

Z = LaurentPoly.monomial(1)
ZI = LaurentPoly.monomial(-1)


def test_poly_arithmetic():
    p = Z + ZI
    assert (p * p).coeffs == {-2: 1, 0: 2, 2: 1}
    assert p.shift(2) == LaurentPoly({1: 1, 3: 1})
    assert p * 3 == LaurentPoly({-1: 3, 1: 3})
    assert (p.min_degree(), p.max_degree()) == (-1, 1)
    assert LaurentPoly.zero().is_zero()
    assert LaurentPoly({0: 0}).is_zero()


def test_poly_rejects_negative_and_nonintegers():
    with pytest.raises(ValueError):
        LaurentPoly({0: -1})
    with pytest.raises(TypeError):
        LaurentPoly({0.5: 1})


def test_poly_eval():
    assert poly_eval(Z + ZI, 2.0) == pytest.approx(2.5)
    with pytest.raises(ValueError):
        poly_eval(Z, 0.0)


@given(polys, polys, polys)
def test_poly_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(polys)
def test_poly_pairs_roundtrip(p):
    assert LaurentPoly.from_pairs(p.to_pairs()) == p
    assert p.to_pairs() == sorted(p.to_pairs())


def test_matrix_basics():
    m = LaurentMatrix([[Z + ZI]])
    assert m.size == 1
    assert m[0, 0] == Z + ZI
    assert LaurentMatrix.identity(2) @ LaurentMatrix.identity(2) == LaurentMatrix.identity(2)
    assert LaurentMatrix.zeros(2).is_zero()
    with pytest.raises(ValueError):
        LaurentMatrix([[1, 0]])
    with pytest.raises(ValueError):
        mat_mul(LaurentMatrix.identity(2), LaurentMatrix.identity(3))


def test_evaluate_and_support():
    m = LaurentMatrix([[Z, 0], [2, ZI]])
    a = m.evaluate(2.0)
    assert a.tolist() == [[2.0, 0.0], [2.0, 0.5]]
    assert m.support().tolist() == [[True, False], [True, True]]


def test_mat_pow_of_sum():
    m = LaurentMatrix([[Z + ZI]])
    assert mat_pow(m, 3)[0, 0].coeffs == {-3: 1, -1: 3, 1: 3, 3: 1}
    assert mat_pow(m, 0) == LaurentMatrix.identity(1)


@given(matrices(), st.integers(0, 5))
def test_mat_pow_matches_repeated_product(m, n):
    acc = LaurentMatrix.identity(m.size)
    for _ in range(n):
        acc = acc @ m
    assert mat_pow(m, n) == acc


@given(matrices())
def test_matrix_lists_roundtrip(m):
    assert LaurentMatrix.from_lists(m.to_lists()) == m


def test_nilpotent():
    assert is_nilpotent(LaurentMatrix([[0, Z], [0, 0]]))
    assert is_nilpotent(LaurentMatrix.zeros(3))
    assert not is_nilpotent(LaurentMatrix([[0, Z], [ZI, 0]]))


def test_degree_range():
    assert degree_range(LaurentMatrix([[Z + ZI, 0], [LaurentPoly.monomial(4), 0]])) == (-1, 4)
    with pytest.raises(ValueError):
        degree_range(LaurentMatrix.zeros(2))


def test_monomial_matrix_places_entries_at_image_rows():
    m = monomial_matrix((1, 0, 2), (1, 0, 2))
    assert m[1, 0] == Z
    assert m[0, 1] == LaurentPoly.one()
    assert m[2, 2] == LaurentPoly.monomial(2)
    assert mat_pow(m, 2) == LaurentMatrix([[Z, 0, 0], [0, Z, 0], [0, 0, LaurentPoly.monomial(4)]])


def test_random_matrix_is_seeded_and_in_range():
    import numpy as np

    a = random_laurent_matrix(np.random.default_rng(3), 4)
    b = random_laurent_matrix(np.random.default_rng(3), 4)
    assert a == b
    assert not is_nilpotent(a)
    lo, hi = degree_range(a)
    assert -5 <= lo <= hi <= 5
