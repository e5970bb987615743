import os
import subprocess
import sys
from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from leflab.exactla import (
    Q,
    EchelonBuilder,
    Subspace,
    det,
    diag,
    fmt,
    identity,
    inverse,
    is_zero,
    kernel,
    mat_equal,
    matmul,
    matrix,
    rank,
    rref,
    signature,
    solve,
    zeros,
)

small = st.integers(-4, 4)


def int_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


shapes = st.tuples(st.integers(1, 5), st.integers(1, 5))
matrices = shapes.flatmap(lambda s: int_matrix(*s))
square = st.integers(1, 4).flatmap(lambda n: int_matrix(n, n))


def permutation_det(rows):
    """Leibniz expansion in Fractions, independent of the elimination code."""
    n = len(rows)
    total = Fraction(0)
    for p in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


def test_q_accepts_exact_inputs_only():
    assert Q("3/4") == Fraction(3, 4)
    assert Q(Fraction(-2, 6)) == Fraction(-1, 3)
    assert fmt(Q("6/4")) == "3/2"
    assert fmt(Q(5)) == "5"
    with pytest.raises(TypeError):
        Q(0.5)


def test_rref_examples():
    r, piv = rref(identity(3))
    assert mat_equal(r, identity(3)) and piv == [0, 1, 2]
    r, piv = rref(matrix([[2, 4], [1, 2]]))
    assert piv == [0] and rank(matrix([[2, 4], [1, 2]])) == 1
    assert mat_equal(r, matrix([[1, 2], [0, 0]]))


def test_kernel_examples():
    assert kernel(identity(2)).dim == 0
    assert kernel(zeros(2, 3)).dim == 3
    m = matrix([[1, 1, 0]])
    k = kernel(m)
    assert k.dim == 2
    assert all(is_zero(matmul(m, v.reshape(-1, 1))) for v in k.basis)


def test_signature_examples():
    assert signature(identity(3)) == (3, 0, 0)
    assert signature(diag([1, -1, 0])) == (1, 1, 1)
    assert signature(matrix([[0, 0, 4], [0, 8, 0], [4, 0, 0]])) == (2, 1, 0)


@given(matrices)
def test_rank_agrees_with_sympy(rows):
    assert rank(matrix(rows)) == sympy.Matrix(rows).rank()


@given(matrices)
def test_rref_is_reduced_and_row_equivalent(rows):
    m = matrix(rows)
    r, piv = rref(m)
    for i, p in enumerate(piv):
        assert r[i, p] == 1
        assert all(r[j, p] == 0 for j in range(r.shape[0]) if j != i)
    assert rank(r) == len(piv) == rank(m)
    # row spaces agree
    assert Subspace.span(list(m), m.shape[1]) == Subspace.span(list(r[: len(piv)]), m.shape[1])


@given(matrices)
def test_rank_nullity_and_multiply_back(rows):
    m = matrix(rows)
    k = kernel(m)
    assert k.dim + rank(m) == m.shape[1]
    for v in k.basis:
        assert is_zero(matmul(m, v.reshape(-1, 1)))


@given(square)
def test_det_against_leibniz(rows):
    assert det(matrix(rows)) == permutation_det(rows)


@given(square)
def test_inverse_and_solve(rows):
    m = matrix(rows)
    if det(m) == 0:
        assert rank(m) < m.shape[0]
        return
    inv = inverse(m)
    assert mat_equal(matmul(m, inv), identity(m.shape[0]))
    b = matrix([[i + 1] for i in range(m.shape[0])])
    x = solve(m, b)
    assert mat_equal(matmul(m, x.reshape(m.shape[0], -1)), b)


def test_solve_inconsistent_returns_none():
    assert solve(matrix([[1, 0], [1, 0]]), matrix([[1], [2]])) is None


@given(square)
def test_signature_is_congruence_invariant(rows):
    m = matrix(rows)
    sym = m + m.T
    p = matrix([[1, 2], [0, 1]]) if m.shape[0] == 2 else identity(m.shape[0])
    moved = matmul(matmul(p.T, sym), p)
    s = signature(sym)
    assert signature(moved) == s
    assert s[0] + s[1] == rank(sym)


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=6))
def test_subspace_operations(rows):
    a = Subspace.span([matrix([r])[0] for r in rows], 4)
    b = Subspace.span([matrix([[1, 0, 0, 0]])[0], matrix([[0, 1, 1, 0]])[0]], 4)
    s, i = a + b, a.intersect(b)
    assert s.dim + i.dim == a.dim + b.dim
    assert i <= a and i <= b and a <= s and b <= s
    for v in a.basis:
        assert a.contains(v)
        c = a.coordinates(v)
        assert mat_equal(sum((x * w for x, w in zip(c, a.basis)), zeros(4)).reshape(1, -1), v.reshape(1, -1))
    assert a.dim + len(a.complement_basis()) == 4


def test_echelon_builder_tracks_span():
    b = EchelonBuilder(3)
    assert b.insert(matrix([[1, 1, 0]])[0])
    assert not b.insert(matrix([[2, 2, 0]])[0])
    assert b.insert(matrix([[0, 0, 1]])[0])
    assert b.dim == 2 and b.contains(matrix([[3, 3, 5]])[0])


def test_fraction_backend_matches():
    code = (
        "from leflab.exactla import Q, rank, det, matrix, Rational;"
        "from fractions import Fraction;"
        "assert Rational is Fraction;"
        "m = matrix([[1, 2, 3], [4, 5, 6], [7, 8, 10]]);"
        "print(rank(m), det(m))"
    )
    env = dict(os.environ, LEFLAB_RATIONAL="fraction")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["3", "-3"]
