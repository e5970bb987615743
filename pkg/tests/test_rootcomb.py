import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leflab.rootcomb import (
    WeightedDynkin,
    adjacency_check,
    b2_from_dims,
    build_roots,
    cartan_matrix,
    classical_pair_list,
    classical_types,
    dims_from_b2,
    dims_sweep,
    direct_b2,
    full_dims,
    jordan_pair_enumerate,
    round_trip,
    sum_free,
    valid_dims,
)

COXETER = {"A": lambda l: l + 1, "B": lambda l: 2 * l, "C": lambda l: 2 * l, "D": lambda l: 2 * l - 2}


def e8_roots():
    half = Fraction(1, 2)
    out = set()
    for i, j in itertools.combinations(range(8), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = [Fraction(0)] * 8
            v[i], v[j] = Fraction(si), Fraction(sj)
            out.add(tuple(v))
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            out.add(tuple(half * s for s in signs))
    return out


def test_root_counts_against_standard_coordinates():
    e8 = e8_roots()
    assert len(e8) == 240
    theta = (0, 0, 0, 0, 0, 0, 1, 1)
    e7 = [r for r in e8 if sum(a * b for a, b in zip(r, theta)) == 0]
    assert len(build_roots("E", 7).roots) == len(e7) == 126
    assert len(build_roots("A", 2).roots) == 6
    assert len(build_roots("D", 4).roots) == 24


@pytest.mark.parametrize("kind,rank", classical_types(6) + [("E", 6), ("E", 7)])
def test_root_system_axioms(kind, rank):
    rs = build_roots(kind, rank)
    if kind in COXETER:
        assert len(rs.roots) == rank * COXETER[kind](rank)
    a = cartan_matrix(kind, rank)
    roots = set(rs.roots)
    for r in rs.roots:
        for i in range(rank):
            pairing = sum(r[j] * a[i][j] for j in range(rank))
            image = tuple(r[j] - (pairing if j == i else 0) for j in range(rank))
            assert image in roots
    hr = rs.highest_root
    assert all(all(x >= y for x, y in zip(hr, r)) for r in rs.positive)


def test_highest_root_coefficients():
    assert build_roots("E", 7).highest_root == (2, 2, 3, 4, 3, 2, 1)
    assert build_roots("D", 5).highest_root == (1, 2, 2, 1, 1)


def test_b2_examples():
    p = b2_from_dims("A", (1, 2), "odd")
    # the rank is dim V − 1 = 5; this keeps B₂ symmetric under the diagram flip i ↦ 6 − i
    assert (p.rank, p.b2) == (5, (1, 3, 5))
    assert round_trip(p)
    p = b2_from_dims("B", (1, 3), "even")
    assert (p.rank, p.b2) == (2, (1,))
    p = b2_from_dims("D", (1, 2, 2), "even")
    assert (p.rank, p.b2) == (4, (1, 3, 4))


def test_a_case_symmetry_fixes_the_rank():
    p = b2_from_dims("A", (1, 2), "odd")
    assert {p.rank + 1 - i for i in p.b2} == set(p.b2)
    assert sum(full_dims(p.dims, p.parity)) == p.rank + 1


def test_adjacency_examples():
    a6, a3 = build_roots("A", 6), build_roots("A", 3)
    assert adjacency_check(WeightedDynkin.from_b2(a6, {1, 3, 5}))
    assert not adjacency_check(WeightedDynkin.from_b2(a3, {1, 2}))
    with pytest.raises(ValueError):
        WeightedDynkin(a3, {1: 1, 2: 0, 3: 0})


def test_valid_dims():
    assert valid_dims((1, 2, 2), "even")
    assert not valid_dims((2, 1), "odd")
    assert not valid_dims((1, 1), "odd")
    assert valid_dims((3,), "odd")


@pytest.mark.parametrize("kind", ["A", "B", "C", "D"])
def test_sweep_placements_round_trip_and_avoid_adjacent_twos(kind):
    sweep = dims_sweep(kind, 8)
    assert sweep
    for p in sweep:
        assert round_trip(p)
        assert set(p.b2) == direct_b2(kind, p.dims, p.parity)
        assert adjacency_check(WeightedDynkin.from_b2(build_roots(kind, p.rank), p.b2))


@given(st.sampled_from(["A", "B", "C", "D"]), st.data())
def test_dims_from_b2_inverts_placement(kind, data):
    sweep = dims_sweep(kind, 7)
    p = data.draw(st.sampled_from(sweep))
    assert dims_from_b2(kind, p.rank, p.b2) == full_dims(p.dims, p.parity)


def test_pair_examples():
    a3 = {v.beta: v for v in jordan_pair_enumerate("A", 3)}
    assert a3[2].admissible and a3[2].label == "(A3,A1+A1)"
    d5 = {v.beta: v for v in jordan_pair_enumerate("D", 5)}
    assert d5[5].highest_coefficient_one and not d5[5].h_simple and not d5[5].admissible
    e7 = {v.beta: v for v in jordan_pair_enumerate("E", 7)}
    assert e7[7].admissible and e7[7].label == "(E7,E6)"


def test_sum_free_agrees_with_highest_root_coefficient():
    for kind, rank in classical_types(7) + [("E", 6), ("E", 7)]:
        rs = build_roots(kind, rank)
        for beta in rs.simple_basis:
            assert sum_free(rs, beta) == (rs.highest_root[beta - 1] == 1)


def test_classical_enumeration_matches_the_classified_list():
    found = {v.label for kind, rank in classical_types(8) for v in jordan_pair_enumerate(kind, rank) if v.admissible}
    assert found == classical_pair_list(8)
