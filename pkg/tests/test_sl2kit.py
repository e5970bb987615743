from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from leflab.exactla import Q, Subspace, identity, inverse, matmul, matrix, zeros
from leflab.graded import GradedMap, GradedSpace, h_of
from leflab.sl2kit import (
    LefschetzViolation,
    graded_dims_step2,
    isotypic_components,
    jm_dual,
    jm_dual_by_solve,
    lefschetz_check,
    lefschetz_report,
    primitive_decomposition,
    progression_check,
    sl2_type,
)


def strings_module(ks):
    """Direct sum of Jordan strings V(k) (basis e^j p), e moving each string up by one."""
    dims = Counter()
    for k in ks:
        for j in range(k + 1):
            dims[-k + 2 * j] += 1
    space = GradedSpace.from_dims(dict(dims))
    pos, cursor, index = {}, Counter(), []
    for s, k in enumerate(ks):
        for j in range(k + 1):
            d = -k + 2 * j
            pos[(s, j)] = space.offsets[d] + cursor[d]
            cursor[d] += 1
    dense = zeros(space.total_dim, space.total_dim)
    for s, k in enumerate(ks):
        for j in range(k):
            dense[pos[(s, j + 1)], pos[(s, j)]] = Q(1)
    return space, GradedMap.from_dense(space, dense, 2)


def conjugate(space, e, seed_vals):
    """Conjugate by a degree-preserving unitriangular change of basis built from seed_vals."""
    vals = iter(seed_vals * 50)
    p = identity(space.total_dim)
    for d in space.degrees:
        sl = space.slice(d)
        n = space.dims[d]
        for i in range(n):
            for j in range(i + 1, n):
                p[sl.start + i, sl.start + j] = Q(next(vals))
    pi = inverse(p)
    return GradedMap.from_dense(space, matmul(matmul(p, e.to_dense()), pi), 2)


string_lists = st.lists(st.integers(0, 4), min_size=1, max_size=4)
coeffs = st.lists(st.integers(-3, 3), min_size=1, max_size=6)


def test_examples_from_small_modules():
    space, e = strings_module([2])
    assert lefschetz_check(e)
    assert not lefschetz_check(GradedMap.zero(GradedSpace.from_dims({-2: 1, 2: 1}), 2))
    f = jm_dual(e)
    # f(v1) = 2 v0, f(v2) = 2 v1, f(v0) = 0
    assert f.to_dense().tolist() == matrix([[0, 2, 0], [0, 0, 2], [0, 0, 0]]).tolist()
    assert sl2_type(e) == {2: 1}
    assert sl2_type(strings_module([3])[1]) == {3: 1}
    assert sl2_type(strings_module([2, 0])[1]) == {0: 1, 2: 1}


@given(string_lists, coeffs)
def test_jm_dual_agrees_with_linear_solve(ks, vals):
    space, e0 = strings_module(ks)
    e = conjugate(space, e0, vals)
    assert lefschetz_check(e)
    f = jm_dual(e)
    assert f.degree == -2
    assert e.bracket(f) == h_of(space)
    assert h_of(space).bracket(f) == f * -2
    g, free = jm_dual_by_solve(e)
    assert free == 0 and g == f


@given(string_lists, coeffs)
def test_sl2_type_recovers_string_lengths(ks, vals):
    space, e0 = strings_module(ks)
    e = conjugate(space, e0, vals)
    assert sl2_type(e) == dict(sorted(Counter(ks).items()))
    dec = primitive_decomposition(e)
    assert dec.total_dim() == space.total_dim
    iso = isotypic_components(e)
    assert sum(s.dim for s in iso.values()) == space.total_dim
    assert Subspace.span([v for s in iso.values() for v in s.basis], space.total_dim).dim == space.total_dim


@given(string_lists)
def test_breaking_a_string_breaks_lefschetz(ks):
    space, e = strings_module([k for k in ks if k > 0] or [1])
    dense = e.to_dense()
    i, j = np.argwhere(dense != 0)[0]
    dense[i, j] = Q(0)
    broken = GradedMap.from_dense(space, dense, 2)
    assert not lefschetz_check(broken)
    assert lefschetz_report(broken)
    with pytest.raises(LefschetzViolation):
        jm_dual(broken)


def test_wrong_degree_is_rejected():
    space = GradedSpace.from_dims({-1: 1, 1: 1})
    assert not lefschetz_check(GradedMap.zero(space, 0))


@pytest.mark.parametrize(
    "dims,expected",
    [
        ((1, 2, 2, 2, 1), (True, 1)),
        ((2, 1, 2), (False, None)),
        ((1, 1, 2, 1, 1), (False, None)),
        ((1, 2, 3, 2, 1), (True, 2)),
        ((3,), (True, 0)),
        ((2, 2), (True, 0)),
    ],
)
def test_progression_examples(dims, expected):
    assert progression_check(dims) == expected


@given(st.lists(st.integers(1, 6), min_size=1, max_size=5))
def test_progression_accepts_every_strict_then_flat_shape(steps):
    rising = list(np.cumsum(steps))
    plateau = [rising[-1]] * 3
    dims = rising[:-1] + plateau + rising[:-1][::-1]
    ok, r = progression_check(dims)
    assert ok and r == len(rising) - 1


def test_graded_dims_step2():
    assert graded_dims_step2(GradedSpace.from_dims({-2: 1, 0: 3, 2: 1})) == [1, 3, 1]
