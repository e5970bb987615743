from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from leflab.exactla import Q, identity, is_zero, mat_equal, matmul, matrix, rank, vector
from leflab.graded import (
    GradedAlgebra,
    GradedMap,
    GradedSpace,
    PolynomialQuotient,
    cup_operator,
    exterior_algebra,
    h_of,
    identity_map,
    infinitesimal_invariance,
    point_algebra,
    poincare_form,
    tensor_algebra,
    truncated_polynomial,
    wedge_sign,
)

SPACE = GradedSpace.from_dims({-2: 1, -1: 2, 0: 2, 1: 2, 2: 1})


def random_map(draw_ints, space, degree):
    vals = iter(draw_ints)
    blocks = {}
    for k in space.degrees:
        if k + degree in space.dims:
            r, c = space.dims[k + degree], space.dims[k]
            blocks[k] = matrix([[next(vals) for _ in range(c)] for _ in range(r)])
    return GradedMap(space, degree, blocks)


ints = st.lists(st.integers(-3, 3), min_size=40, max_size=40)
degrees = st.integers(-2, 2)


def test_h_of_examples():
    assert list(h_of(GradedSpace.from_dims({-2: 1, 0: 1, 2: 1})).to_dense().diagonal()) == [-2, 0, 2]
    assert is_zero(h_of(GradedSpace.from_dims({0: 5})).to_dense())
    assert list(h_of(GradedSpace.from_dims({-1: 2, 1: 2})).to_dense().diagonal()) == [-1, -1, 1, 1]


@given(ints, ints, degrees, degrees)
def test_bracket_matches_dense_commutator(a_vals, b_vals, da, db):
    a, b = random_map(a_vals, SPACE, da), random_map(b_vals, SPACE, db)
    dense = matmul(a.to_dense(), b.to_dense()) - matmul(b.to_dense(), a.to_dense())
    c = a.bracket(b)
    assert c.degree == da + db
    assert mat_equal(c.to_dense(), dense)


@given(ints, ints, ints, degrees, degrees, degrees)
def test_jacobi(a_vals, b_vals, c_vals, da, db, dc):
    a, b, c = (random_map(v, SPACE, d) for v, d in ((a_vals, da), (b_vals, db), (c_vals, dc)))
    total = a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))
    assert total.is_zero()


@given(ints, degrees)
def test_h_grades_every_map(vals, d):
    a = random_map(vals, SPACE, d)
    assert h_of(SPACE).bracket(a) == a * d


@given(ints, degrees)
def test_flat_and_dense_round_trips(vals, d):
    a = random_map(vals, SPACE, d)
    assert GradedMap.from_flat(SPACE, d, a.flat()) == a
    assert GradedMap.from_dense(SPACE, a.to_dense(), d) == a


def test_from_dense_rejects_mixed_degrees():
    m = identity(SPACE.total_dim)
    m[0, SPACE.total_dim - 1] = Q(1)
    with pytest.raises(ValueError):
        GradedMap.from_dense(SPACE, m)


def test_identity_commutes():
    a = random_map(list(range(40)), SPACE, 1)
    assert identity_map(SPACE).bracket(a).is_zero()


@pytest.mark.parametrize("n", range(0, 5))
def test_exterior_algebra_dims_and_axioms(n):
    alg = exterior_algebra(n)
    assert alg.dims == [comb(n, k) for k in range(n + 1)]
    assert alg.check_unit() and alg.check_associative() and alg.check_graded_commutative()


def test_wedge_sign():
    assert wedge_sign((0,), (1,)) == 1
    assert wedge_sign((1,), (0,)) == -1
    assert wedge_sign((1, 2), (0,)) == 1


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2)])
def test_tensor_product_dims_are_convolution(a, b):
    alg = tensor_algebra(truncated_polynomial(a), truncated_polynomial(b))
    want = np.convolve([1] * (a + 1), [1] * (b + 1)).tolist()
    assert [x for x in alg.dims if x] == want
    assert alg.check_associative() and alg.check_graded_commutative()


def test_tensor_with_odd_classes_has_koszul_sign():
    alg = tensor_algebra(exterior_algebra(1), exterior_algebra(1))
    assert alg.check_graded_commutative()
    assert alg.dims == [1, 2, 1]


def test_poincare_form_projective_plane():
    form = poincare_form(truncated_polynomial(2))
    g = form.gram()
    assert form.symmetry_sign() == 1
    assert g[1, 1] == 1 and g[0, 2] == -1
    assert form.is_nondegenerate()


def test_poincare_form_line_is_skew_and_point_is_unit():
    assert poincare_form(truncated_polynomial(1)).symmetry_sign() == -1
    assert mat_equal(poincare_form(point_algebra()).gram(), matrix([[1]]))


def test_cup_operator_examples():
    p2 = truncated_polynomial(2)
    assert cup_operator(p2, vector([0])).is_zero()
    shift = cup_operator(p2, vector([1])).to_dense()
    assert mat_equal(shift, matrix([[0, 0, 0], [1, 0, 0], [0, 1, 0]]))
    lines = tensor_algebra(truncated_polynomial(1), truncated_polynomial(1))
    e = cup_operator(lines, vector([1, 1]))
    assert [rank(e.block(k)) for k in (-2, 0)] == [1, 1]
    assert [e.block(k).shape for k in (-2, 0)] == [(2, 1), (1, 2)]


def test_infinitesimal_invariance_examples():
    p2 = truncated_polynomial(2)
    form = poincare_form(p2)
    assert infinitesimal_invariance(cup_operator(p2, vector([1])), form)
    assert infinitesimal_invariance(GradedMap.zero(form.space, 2), form)
    assert not infinitesimal_invariance(identity_map(form.space), form)


@given(st.integers(1, 4), st.integers(1, 4))
def test_polynomial_quotient_dims(a, b):
    # K[x, y]/(x^(a+1), y^(b+1)) has the product Hilbert function
    q = PolynomialQuotient(2, [{(a + 1, 0): 1}, {(0, b + 1): 1}])
    assert q.dims == np.convolve([1] * (a + 1), [1] * (b + 1)).tolist()


def test_polynomial_quotient_normal_form():
    q = PolynomialQuotient(2, [{(2, 0): 1, (0, 2): -1}, {(1, 1): 1}])
    assert q.dims == [1, 2, 1]
    d, x2 = q.normal_form({(2, 0): 1})
    _, y2 = q.normal_form({(0, 2): 1})
    assert d == 2 and mat_equal(x2.reshape(1, -1), y2.reshape(1, -1))
    assert q.normal_form({(0, 3): 1})[1].shape == (0,)
    alg = q.algebra()
    assert alg.check_associative() and alg.check_graded_commutative()


def test_json_round_trip():
    alg = tensor_algebra(truncated_polynomial(1), truncated_polynomial(2))
    back = GradedAlgebra.from_json(alg.to_json())
    assert back.dims == alg.dims
    for key, t in alg.mult.items():
        assert (t == back.mult[key]).all()


def test_from_json_rejects_products_leaving_the_algebra():
    with pytest.raises(ValueError):
        GradedAlgebra.from_json({"pieces": {"0": 1, "2": 1}, "mult": [[2, 0, 2, 0, ["1"]]]})
