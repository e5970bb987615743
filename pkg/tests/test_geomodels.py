import pytest
from hypothesis import given
from hypothesis import strategies as st

from leflab.exactla import Q, identity, mat_equal, matmul, matrix, vector
from leflab.geomodels import (
    ALGEBRAS,
    ExteriorCalculus,
    InvolutiveAlgebra,
    QuaternionAlgebraSpec,
    albert_sku,
    anticommutator_identity,
    double_contraction_identity,
    hk_model,
    j_invariant_forms,
    psi_image_algebra,
    rosati_check,
    standard_complex_structure,
    standard_symplectic,
    torus_kahler,
    torus_total,
    verify_psi,
)
from leflab.lefmod import jordan_check, primitive_summands
from leflab.liegen import adh_grading, killing_semisimple
from leflab.sl2kit import progression_check


@pytest.mark.parametrize("dim", [2, 4])
def test_exterior_identities(dim):
    calc = ExteriorCalculus(dim)
    assert anticommutator_identity(calc)
    assert double_contraction_identity(calc)


@pytest.mark.parametrize("n", [1, 2])
def test_psi_is_a_homomorphism(n):
    assert verify_psi(n)


def test_star_squares_to_the_parity_sign_and_reverses_degrees():
    calc = ExteriorCalculus(4)
    star = calc.star()
    sp = calc.space
    for d in sp.degrees:
        k = d + 2
        for idx in range(sp.dims[d]):
            v = sp.basis_vector(d, idx)
            image = star.apply(v)
            assert all(x == 0 for x in image[: sp.slice(-d).start]) and all(x == 0 for x in image[sp.slice(-d).stop :])
            assert star.apply(image).tolist() == (v * (-1) ** k).tolist()


def test_torus_of_complex_dimension_one_gives_sl2():
    # a real 2-torus has a single 2-form, so the closure is the sl2 of that class
    model = torus_total(1)
    assert model.g.dim == 3
    assert adh_grading(model.g) == {-2: 1, 0: 1, 2: 1}
    assert killing_semisimple(model.g).semisimple
    image = psi_image_algebra(model.calculus)
    assert image.dim == 6
    assert all(image.contains(x) for x in model.g.basis) and not image.same_as(model.g)
    assert model.f_formula_ok


def test_torus_of_complex_dimension_two():
    model = torus_total(2)
    assert model.g.dim == 28
    assert psi_image_algebra(model.calculus).same_as(model.g)
    v = jordan_check(model.generated)
    assert v.degrees_only_202 and v.f_commute
    assert model.f_formula_ok
    for s in primitive_summands(model.g):
        assert progression_check(s.step2())[0]
    even = [s for s in primitive_summands(model.g) if s.lowest == -2]
    assert [s.step2() for s in even] == [[1, 6, 1]]


@pytest.mark.parametrize("n,dim", [(1, 3), (2, 15)])
def test_kahler_closure(n, dim):
    model = torus_kahler(n)
    assert model.g.dim == dim
    assert len(j_invariant_forms(standard_complex_structure(n))) == n * n


def test_kahler_rejects_a_bad_complex_structure():
    with pytest.raises(ValueError):
        torus_kahler(1, matrix([[1, 0], [0, 1]]))


def test_rosati_examples():
    k1 = standard_symplectic(1)
    rec = rosati_check(1, k1, k1)
    assert mat_equal(rec.sigma, identity(2)) and rec.ok and rec.sign == 1
    assert rosati_check(1, k1, k1 * Q(3)).ok
    k2 = standard_symplectic(2)
    forms = j_invariant_forms(standard_complex_structure(2))
    lam = forms[0] * Q(2) + forms[1] * Q(-1) + forms[3] * Q("1/3")
    rec = rosati_check(2, k2, lam)
    assert rec.ok and rec.sign == 1


@given(st.integers(-5, 5).filter(bool), st.integers(-5, 5).filter(bool))
def test_quaternion_norm_is_multiplicative(a, b):
    spec = QuaternionAlgebraSpec(a, b)
    assert spec.norm_multiplicative()
    InvolutiveAlgebra.quaternion(a, b)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_quaternion_conjugation_reverses_products(x, y):
    H = InvolutiveAlgebra.quaternion()
    x, y = vector(x), vector(y)
    lhs = matmul(H.dagger, H.multiply(x, y))
    rhs = H.multiply(matmul(H.dagger, y), matmul(H.dagger, x))
    assert lhs.tolist() == rhs.tolist()


def test_involution_must_reverse_products():
    t = QuaternionAlgebraSpec(-1, -1).structure()
    with pytest.raises(ValueError):
        InvolutiveAlgebra(t, identity(4))


@pytest.mark.parametrize("F,dims", [("q", (3, 3, 0)), ("qi", (4, 3, 1)), ("h", (6, 3, 3))])
def test_albert_dims(F, dims):
    rec = albert_sku(ALGEBRAS[F](), 1)
    assert rec.dims == dims
    assert rec.decomposition_ok and rec.jordan


def test_albert_rank_two_over_q():
    rec = albert_sku(ALGEBRAS["q"](), 2)
    assert rec.dims == (10, 10, 0)


def test_quaternionic_model():
    hk = hk_model()
    assert hk.g.dim == 10
    assert adh_grading(hk.g) == {-2: 3, 0: 4, 2: 3}
    assert hk.f_star_ok and hk.bracket_identity_ok and hk.commutes_with_quaternions
    assert hk.m_dims == [1, 3, 1] and hk.m_star_invariant and hk.m_g_invariant
    assert hk.kills_antiselfdual
    v = jordan_check(hk.generated)
    assert v.degrees_only_202 and v.f_commute


def test_zero_is_not_a_valid_quaternion_parameter():
    with pytest.raises(ValueError):
        QuaternionAlgebraSpec(0, -1)
