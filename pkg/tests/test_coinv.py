from math import factorial

import pytest

from leflab.coinv import (
    a2_flag_bundle,
    algebra_lie,
    bundle_cohomology,
    coinvariant_algebra,
    flag_lie,
    leray_split,
    weyl_poincare,
)
from leflab.exactla import vector
from leflab.graded import point_algebra, tensor_algebra, truncated_polynomial
from leflab.lefmod import LefschetzModule, generate_g, jordan_check
from leflab.liegen import aut_dimension
from leflab.rootcomb import build_roots

WEYL_ORDER = {
    "A": lambda r: factorial(r + 1),
    "B": lambda r: 2**r * factorial(r),
    "C": lambda r: 2**r * factorial(r),
    "D": lambda r: 2 ** (r - 1) * factorial(r),
}

TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 4)]


def even(dims):
    return [x for i, x in enumerate(dims) if i % 2 == 0]


@pytest.mark.parametrize("kind,rank", TYPES)
def test_poincare_polynomial_against_root_data(kind, rank):
    p = weyl_poincare(kind, rank)
    assert sum(p) == WEYL_ORDER[kind](rank)
    assert p == p[::-1]
    assert len(p) - 1 == len(build_roots(kind, rank).positive)


@pytest.mark.parametrize("kind,rank", [("A", 1), ("A", 2), ("B", 2), ("C", 2)])
def test_coinvariant_algebra_axioms(kind, rank):
    c = coinvariant_algebra(kind, rank)
    assert c.algebra.check_associative() and c.algebra.check_graded_commutative()


@pytest.mark.parametrize("kind,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 3), ("D", 4)])
def test_coinvariant_dims(kind, rank):
    assert coinvariant_algebra(kind, rank).dims == weyl_poincare(kind, rank)


def test_coinvariant_examples():
    assert coinvariant_algebra("A", 2).dims == [1, 2, 2, 1]
    assert coinvariant_algebra("B", 2).dims == [1, 2, 2, 2, 1]
    assert coinvariant_algebra("A", 1).dims == [1, 1]
    assert sum(coinvariant_algebra("G", 2).dims) == 12


def test_unsupported_types_are_rejected():
    with pytest.raises(ValueError):
        coinvariant_algebra("E", 6)
    with pytest.raises(ValueError):
        coinvariant_algebra("G", 3)


@pytest.mark.parametrize("kind,rank,dim", [("A", 1, 3), ("A", 2, 21), ("B", 2, 28)])
def test_flag_closures_are_maximal(kind, rank, dim):
    f = flag_lie(kind, rank)
    total = sum(coinvariant_algebra(kind, rank).dims)
    assert f.g.dim == dim == aut_dimension(total, f.symmetric)
    assert f.maximal and f.inside_aut


def test_a2_flag_is_not_jordan():
    L = LefschetzModule.from_algebra(coinvariant_algebra("A", 2).algebra)
    v = jordan_check(generate_g(L))
    assert not v.degrees_only_202 and not v.f_commute


def test_bundle_examples():
    line = bundle_cohomology(truncated_polynomial(1), 1)
    assert even(line.algebra.dims) == [1, 2, 1]
    flag = a2_flag_bundle()
    assert even(flag.algebra.dims) == [1, 2, 2, 1]
    assert flag.algebra.check_associative() and flag.algebra.check_graded_commutative()
    plane = bundle_cohomology(point_algebra(), 2)
    assert even(plane.algebra.dims) == [1, 1, 1]


def test_a2_flag_bundle_matches_coinvariants():
    flag = algebra_lie(a2_flag_bundle().algebra)
    assert flag.g.dim == 21 and flag.maximal


def test_trivial_bundle_is_a_product():
    b = bundle_cohomology(truncated_polynomial(1), 1)
    prod = tensor_algebra(truncated_polynomial(1), truncated_polynomial(1))
    assert even(b.algebra.dims) == even(prod.dims)
    assert b.bigrading[0] == (-1, -1)


def test_chern_classes_must_fit_the_base():
    with pytest.raises(ValueError):
        bundle_cohomology(truncated_polynomial(1), 1, [vector([1])])
    with pytest.raises(ValueError):
        bundle_cohomology(truncated_polynomial(1), 0)


def test_leray_split_product_of_lines():
    split = leray_split(bundle_cohomology(truncated_polynomial(1), 1))
    assert split.g.dim == 6
    assert split.in_g and split.commute and split.splits_filtration
    assert split.product_embedded and split.product_is_everything
    assert split.h_hor + split.h_ver == split.g.basis[split.g.h_index]


def test_leray_split_a2_flag_is_strict():
    split = leray_split(a2_flag_bundle())
    assert split.in_g and split.commute and split.product_embedded
    assert split.product_dim == 6 < split.g.dim == 21


def test_leray_split_plane_bundle_over_line():
    split = leray_split(bundle_cohomology(truncated_polynomial(1), 2))
    assert split.g.dim == 6
    assert split.g_hor.dim == 3 and split.g_ver.dim == 3
    assert split.product_is_everything
