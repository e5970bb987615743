import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leflab.exactla import Q, identity, matmul, matrix, trace, zeros
from leflab.graded import GradedMap, GradedSpace, cup_operator, h_of, tensor_algebra, truncated_polynomial, vector
from leflab.lefmod import irreducible_module, nonreductive_example
from leflab.liegen import (
    adh_grading,
    aut_dimension,
    center,
    centroid,
    derived_dim,
    fingerprint,
    is_abelian,
    is_ideal,
    is_simple,
    killing_form,
    killing_semisimple,
    lie_closure,
    minimal_ideal,
    span_algebra,
)
from leflab.sl2kit import jm_dual


def flat_space(n):
    return GradedSpace.from_dims({0: n})


def unit(n, i, j):
    m = zeros(n, n)
    m[i, j] = Q(1)
    return m


def op(n, m):
    return GradedMap.from_dense(flat_space(n), m, 0)


def kron(a, b):
    out = zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    for (i, j), x in zip(itertools.product(range(a.shape[0]), range(a.shape[1])), a.reshape(-1)):
        out[i * b.shape[0] : (i + 1) * b.shape[0], j * b.shape[1] : (j + 1) * b.shape[1]] = b * x
    return out


def sl_n(n):
    gens = [op(n, unit(n, i, i + 1)) for i in range(n - 1)] + [op(n, unit(n, i + 1, i)) for i in range(n - 1)]
    return lie_closure(gens, flat_space(n))


def sl2_on(k):
    e = irreducible_module(k).a_basis[0]
    return lie_closure([e, jm_dual(e)], e.space)


def test_closure_examples():
    assert sl2_on(2).dim == 3
    # two Lefschetz elements on the product of two lines give two commuting sl2's
    lines = tensor_algebra(truncated_polynomial(1), truncated_polynomial(1))
    ex = cup_operator(lines, vector([1, 0]))
    ey = cup_operator(lines, vector([0, 1]))
    duals = [jm_dual(cup_operator(lines, vector(c))) for c in ([1, 1], [1, -1])]
    assert lie_closure([ex, ey, *duals], ex.space).dim == 6


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sl_n_from_simple_root_vectors(n):
    g = sl_n(n)
    assert g.dim == n * n - 1
    assert killing_semisimple(g).semisimple
    assert is_simple(g)


@pytest.mark.parametrize("n", [2, 3])
def test_killing_form_is_2n_trace_form(n):
    g = sl_n(n)
    k = killing_form(g)
    for i, j in itertools.product(range(g.dim), repeat=2):
        a, b = g.basis[i].to_dense(), g.basis[j].to_dense()
        assert k[i, j] == 2 * n * trace(matmul(a, b))


def test_killing_examples():
    data = killing_semisimple(sl2_on(2))
    assert data.semisimple and data.signature == (2, 1, 0)
    line = lie_closure([op(1, matrix([[1]]))], flat_space(1))
    assert line.dim == 1 and not killing_semisimple(line).semisimple


def test_nonreductive_example_has_degenerate_killing_form():
    ex = nonreductive_example()
    assert not ex.semisimple
    assert not killing_semisimple(ex.g).semisimple
    assert not ex.line_has_invariant_complement


def test_fingerprint_of_sl2():
    fp = fingerprint(sl2_on(4))
    assert (fp.dim, fp.degrees, fp.dim_g0, fp.killing_signature, fp.center_dim) == (3, {-2: 1, 0: 1, 2: 1}, 1, (2, 1, 0), 0)
    assert adh_grading(sl2_on(3)) == {-2: 1, 0: 1, 2: 1}


def test_gl2_has_one_dimensional_center():
    gens = [op(2, unit(2, i, j)) for i in range(2) for j in range(2)]
    g = lie_closure(gens, flat_space(2))
    assert g.dim == 4 and center(g).dim == 1 and derived_dim(g) == 3
    assert not is_simple(g)


def test_abelian_and_ideal_helpers():
    g = lie_closure([op(2, unit(2, 0, 0)), op(2, unit(2, 1, 1))], flat_space(2))
    assert is_abelian(g) and not is_simple(g)
    s = sl2_on(2)
    x = zeros(3)
    x[0] = Q(1)
    assert minimal_ideal(s, x).dim == 3
    assert is_ideal(s, minimal_ideal(s, x))


def test_product_of_two_sl2_is_not_simple():
    e, f = unit(2, 0, 1), unit(2, 1, 0)
    one = identity(2)
    gens = [op(4, kron(e, one)), op(4, kron(f, one)), op(4, kron(one, e)), op(4, kron(one, f))]
    g = lie_closure(gens, flat_space(4))
    assert g.dim == 6 and killing_semisimple(g).semisimple and not is_simple(g)


def test_complex_sl2_is_simple_over_q_with_a_field_centroid():
    # sl2(Q(i)) realized on Q^4 = Q^2 ⊗ Q(i)
    e, f = unit(2, 0, 1), unit(2, 1, 0)
    j = matrix([[0, -1], [1, 0]])
    one = identity(2)
    gens = [op(4, kron(e, one)), op(4, kron(f, one)), op(4, kron(e, j)), op(4, kron(f, j))]
    g = lie_closure(gens, flat_space(4))
    assert g.dim == 6
    assert len(centroid(g)) == 2
    assert is_simple(g)


traceless = st.lists(st.integers(-2, 2), min_size=8, max_size=8).map(
    lambda v: matrix([[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], -v[0] - v[4]]])
)


@given(st.lists(traceless, min_size=1, max_size=3))
def test_closure_is_closed_and_contains_generators(mats):
    gens = [op(3, m) for m in mats]
    g = lie_closure(gens, flat_space(3))
    assert g.dim <= 8
    assert all(g.contains(x) for x in gens)
    for a, b in itertools.combinations(g.basis, 2):
        assert g.contains(a.bracket(b))
    again = span_algebra(flat_space(3), g.basis)
    assert again.same_as(g)


def test_graded_closure_records_degrees():
    g = sl2_on(3)
    h = h_of(g.ambient)
    assert g.contains(h)
    assert sorted(g.degrees) == [-2, 0, 2]
    assert [len(g.piece(d)) for d in (-2, 0, 2)] == [1, 1, 1]


def test_aut_dimension():
    assert aut_dimension(8, True) == 28
    assert aut_dimension(6, False) == 21
