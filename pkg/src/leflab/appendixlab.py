"""Closure experiments on classical automorphism algebras and the semispinor counterexample."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import gmpy2
import numpy as np

from .exactla import (
    ONE,
    Q,
    Subspace,
    identity,
    inverse,
    is_zero,
    kernel,
    mat_equal,
    matmul,
    matrix,
    rank,
    solve,
    trace,
    zeros,
)
from .graded import GradedMap, GradedSpace, kron
from .lefmod import FrobeniusRecord, LefschetzModule, frobenius_order
from .liegen import GradedLieAlgebra, adh_grading, is_simple, lie_closure

# ---------------------------------------------------------------------------
# small dense helpers


def _bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return matmul(x, y) - matmul(y, x)


def _flat(x: np.ndarray) -> np.ndarray:
    return x.reshape(-1).copy()


def _unflat(v: np.ndarray, n: int) -> np.ndarray:
    return v.reshape(n, n).copy()


def _unit(n: int, i: int, j: int) -> np.ndarray:
    m = zeros(n, n)
    m[i, j] = ONE
    return m


def _solution_space(n: int, constraint) -> Subspace:
    """Kernel of the linear map X ↦ constraint(X) on n×n matrices, as flattened vectors."""
    cols = [_flat(constraint(_unit(n, i, j))) for i in range(n) for j in range(n)]
    return kernel(np.column_stack(cols))


def _adjoint_defect(form: np.ndarray, sign: int):
    """X ↦ XᵀB − sign·BX; its kernel is {X : ⟨Xu, u'⟩ = sign·⟨u, Xu'⟩}."""
    return lambda x: matmul(x.T, form) - matmul(form, x) * sign


def aut_subspace(form: np.ndarray) -> Subspace:
    """Infinitesimal automorphisms of a bilinear form, as flattened matrices."""
    return _solution_space(form.shape[0], _adjoint_defect(form, -1))


def _ungraded(n: int) -> GradedSpace:
    return GradedSpace.from_dims({0: n})


def _as_map(space: GradedSpace, x: np.ndarray) -> GradedMap:
    return GradedMap.from_dense(space, x, degree=0)


# ---------------------------------------------------------------------------
# the irreducible sl2-module of dimension d+1


@dataclass(frozen=True)
class BinaryForms:
    """V(d) as binary forms of degree d; basis index k stands for x^k y^(d−k), of weight 2k − d."""

    d: int

    @property
    def size(self) -> int:
        return self.d + 1

    @property
    def e(self) -> np.ndarray:
        """x ∂/∂y."""
        m = zeros(self.size, self.size)
        for k in range(self.d):
            m[k + 1, k] = Q(self.d - k)
        return m

    @property
    def f(self) -> np.ndarray:
        """y ∂/∂x."""
        m = zeros(self.size, self.size)
        for k in range(1, self.size):
            m[k - 1, k] = Q(k)
        return m

    @property
    def h(self) -> np.ndarray:
        return _bracket(self.e, self.f)

    def canonical_form(self) -> np.ndarray:
        """The sl2-invariant bilinear form, normalized so that ⟨y^d, x^d⟩ = 1."""
        n = self.size
        e, f = self.e, self.f
        sols = _solution_space(n, lambda b: np.vstack([matmul(e.T, b) + matmul(b, e), matmul(f.T, b) + matmul(b, f)]))
        if sols.dim != 1:
            raise ArithmeticError("invariant form is not unique")
        b = _unflat(sols.basis[0], n)
        return b * (ONE / b[0, self.d])

    def aut(self) -> Subspace:
        return aut_subspace(self.canonical_form())


@dataclass
class GlDecomposition:
    d: int
    pieces: list[list[np.ndarray]]
    dims: list[int]
    direct_sum: bool
    odd_is_aut: bool
    sl2_invariant: bool

    @property
    def total(self) -> int:
        return sum(self.dims)

    @property
    def odd_dim(self) -> int:
        return sum(n for i, n in enumerate(self.dims) if i % 2)


def gl_piece(v: BinaryForms, i: int) -> list[np.ndarray]:
    """ad_f-string through e^i: a basis of the sl2-submodule of gl(V(d)) it generates."""
    f = v.f
    x = np.linalg.matrix_power(v.e, i) if i else identity(v.size)
    out = []
    while not is_zero(x):
        out.append(x)
        x = _bracket(f, x)
    return out


def gl_decomposition(d: int) -> GlDecomposition:
    """Split gl(V(d)) into the submodules generated by e^i, i = 0..d."""
    if d < 1:
        raise ValueError("d must be positive")
    v = BinaryForms(d)
    pieces = [gl_piece(v, i) for i in range(d + 1)]
    dims = [Subspace.span([_flat(x) for x in p], v.size**2).dim for p in pieces]
    allvecs = [_flat(x) for p in pieces for x in p]
    direct = Subspace.span(allvecs, v.size**2).dim == v.size**2 == sum(dims)
    odd = Subspace.span([_flat(x) for i, p in enumerate(pieces) if i % 2 for x in p], v.size**2)
    sl2 = [v.e, v.h, v.f]
    invariant = all(
        Subspace.span([_flat(x) for x in p], v.size**2).contains(_flat(_bracket(s, y))) for p in pieces for y in p for s in sl2
    )
    return GlDecomposition(d, pieces, dims, direct, odd == v.aut(), invariant)


@dataclass
class G2Configuration:
    algebra: GradedLieAlgebra
    span_dim: int
    closed: bool
    simple: bool
    degrees: dict[int, int]
    g_plus_dim: int
    g_plus_highest_dim: int

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def g_plus_irreducible(self) -> bool:
        return self.g_plus_highest_dim == 1


def g2_configuration() -> G2Configuration:
    """gl^(1) + gl^(5) inside gl(V(6)): bracket closure, simplicity and the symmetric-traceless module."""
    v = BinaryForms(6)
    gens = gl_piece(v, 1) + gl_piece(v, 5)
    space = GradedSpace.from_dims({2 * k - 6: 1 for k in range(7)})
    maps = [GradedMap.from_dense(space, x) for x in gens]
    span_dim = Subspace.span([_flat(x) for x in gens], 49).dim
    g = lie_closure(maps, space)
    # highest weight vectors of the traceless self-adjoint part under the positive-degree part of g
    split = glpm_split(FormedSpace(v.canonical_form()))
    plus = split.g_plus
    positive = [b.to_dense() for b in g.basis if b.degree > 0]
    cols = [_flat(_unflat(w, 7)) for w in plus.basis]
    coeff_maps = []
    for x in positive:
        coeff_maps.append(np.column_stack([_flat(_bracket(x, _unflat(w, 7))) for w in plus.basis]))
    highest = kernel(np.vstack(coeff_maps)).dim if coeff_maps else len(cols)
    return G2Configuration(
        algebra=g,
        span_dim=span_dim,
        closed=g.dim == span_dim,
        simple=is_simple(g),
        degrees=adh_grading(g),
        g_plus_dim=plus.dim,
        g_plus_highest_dim=highest,
    )


def eigen_formula(d: int, i: int, k: int) -> int:
    """Eigenvalue of [e^i, f^i] on x^k y^(d−k) from falling and rising factorials."""
    l = d - k

    def falling(a: int) -> int:
        return int(np.prod([a - t for t in range(i)], dtype=object)) if i else 1

    def rising(a: int) -> int:
        return int(np.prod([a + t for t in range(1, i + 1)], dtype=object)) if i else 1

    return falling(k) * rising(l) - rising(k) * falling(l)


@dataclass
class HiRecord:
    d: int
    i: int
    eigenvalues: list  # ordered x^d, x^(d−1)y, …, y^d
    diagonal: bool
    formula_agrees: bool
    antisymmetric: bool
    in_aut: bool
    commutes_with_h: bool
    outside_sl2: bool
    u_commutes_with_h: bool
    f_power_in_piece: bool

    @property
    def h_i(self) -> list:
        return self.eigenvalues


def hi_check(d: int, i: int) -> HiRecord:
    """h_i = [e^i, f^i] and u_i = ad_f^i e^i on binary forms of degree d."""
    if not 1 <= i <= d:
        raise ValueError("need 1 ≤ i ≤ d")
    v = BinaryForms(d)
    ei = np.linalg.matrix_power(v.e, i)
    fi = np.linalg.matrix_power(v.f, i)
    hi = _bracket(ei, fi)
    diagonal = mat_equal(hi, np.diag(np.diag(hi)))
    by_k = [hi[k, k] for k in range(v.size)]
    formula = all(by_k[k] == eigen_formula(d, i, k) for k in range(v.size))
    antisym = all(by_k[k] == -by_k[d - k] for k in range(v.size))
    u = ei
    for _ in range(i):
        u = _bracket(v.f, u)
    sl2 = Subspace.span([_flat(v.e), _flat(v.h), _flat(v.f)], v.size**2)
    piece = Subspace.span([_flat(x) for x in gl_piece(v, i)], v.size**2)
    return HiRecord(
        d=d,
        i=i,
        eigenvalues=list(reversed(by_k)),
        diagonal=diagonal,
        formula_agrees=formula,
        antisymmetric=antisym,
        in_aut=v.aut().contains(_flat(hi)),
        commutes_with_h=is_zero(_bracket(v.h, hi)),
        outside_sl2=not sl2.contains(_flat(hi)),
        u_commutes_with_h=is_zero(_bracket(v.h, u)),
        f_power_in_piece=piece.contains(_flat(fi)),
    )


# ---------------------------------------------------------------------------
# spaces with a nondegenerate (skew-)symmetric form


@dataclass(frozen=True, eq=False)
class FormedSpace:
    form: np.ndarray

    def __post_init__(self):
        f = self.form
        if f.shape[0] != f.shape[1] or rank(f) != f.shape[0]:
            raise ValueError("form must be square and nondegenerate")
        if not (mat_equal(f, f.T) or mat_equal(f, -f.T)):
            raise ValueError("form must be symmetric or skew")

    @property
    def dim(self) -> int:
        return self.form.shape[0]

    @property
    def symmetric(self) -> bool:
        return mat_equal(self.form, self.form.T)

    @property
    def inner_product_plane(self) -> bool:
        return self.symmetric and self.dim == 2

    @classmethod
    def symplectic(cls, n: int) -> "FormedSpace":
        if n % 2:
            raise ValueError("symplectic spaces have even dimension")
        m = zeros(n, n)
        for i in range(n // 2):
            m[i, n // 2 + i] = ONE
            m[n // 2 + i, i] = -ONE
        return cls(m)

    @classmethod
    def orthogonal(cls, n: int) -> "FormedSpace":
        return cls(identity(n))

    def describe(self) -> str:
        return f"{'orthogonal' if self.symmetric else 'symplectic'}({self.dim})"


@dataclass
class GlpmSplit:
    g_minus: Subspace
    g_zero: Subspace
    g_plus: Subspace
    minus_is_aut: bool
    direct_sum: bool
    bracket_spans_minus: bool | None
    witnesses: dict[int, np.ndarray | None] = field(default_factory=dict)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.g_minus.dim, self.g_zero.dim, self.g_plus.dim)


def _square_witness(basis: list[np.ndarray], n: int) -> np.ndarray | None:
    """Y in the span with Y² not scalar and tr(Y²) ≠ 0; basis vectors first, then pairwise sums."""
    mats = [_unflat(b, n) for b in basis]
    candidates = itertools.chain(mats, (x + y for x, y in itertools.combinations(mats, 2)))
    for y in candidates:
        sq = matmul(y, y)
        if trace(sq) != 0 and not mat_equal(sq, identity(n) * (trace(sq) / n)):
            return y
    return None


def glpm_split(u: FormedSpace) -> GlpmSplit:
    """gl(U) = g_− ⊕ g_0 ⊕ g_+ by self-adjointness sign, with the bracket and square checks."""
    n = u.dim
    if n < 2:
        raise ValueError("dim U must be at least 2")
    trace_row = lambda x: matrix([[trace(x)]])  # noqa: E731
    minus = _solution_space(n, lambda x: np.vstack([_adjoint_defect(u.form, -1)(x), trace_row(x).repeat(n, 1)]))
    plus = _solution_space(n, lambda x: np.vstack([_adjoint_defect(u.form, 1)(x), trace_row(x).repeat(n, 1)]))
    scalars = Subspace.span([_flat(identity(n))], n * n)
    direct = (minus + scalars + plus).dim == n * n == minus.dim + 1 + plus.dim
    bracket = None
    if n > 2:
        brackets = [_flat(_bracket(_unflat(x, n), _unflat(y, n))) for x, y in itertools.combinations(plus.basis, 2)]
        bracket = Subspace.span(brackets, n * n) == minus
    witnesses = {
        -1: _square_witness(list(minus.basis), n),
        1: _square_witness(list(plus.basis), n),
    }
    return GlpmSplit(minus, scalars, plus, minus == aut_subspace(u.form), direct, bracket, witnesses)


# ---------------------------------------------------------------------------
# closures inside aut(U_1 ⊗ … ⊗ U_k)


@dataclass
class TensorClosureVerdict:
    factors: list[str]
    seed: int
    product_dim: int
    aut_dim: int
    extra_zero: bool
    closure: GradedLieAlgebra
    preserves_form: bool
    simple: bool

    @property
    def closure_dim(self) -> int:
        return self.closure.dim

    @property
    def equals_aut(self) -> bool:
        return self.closure.dim == self.aut_dim

    def to_json(self) -> dict:
        return {
            "factors": self.factors,
            "seed": self.seed,
            "product_dim": self.product_dim,
            "aut_dim": self.aut_dim,
            "extra_zero": self.extra_zero,
            "closure_dim": self.closure_dim,
            "equals_aut": self.equals_aut,
            "preserves_form": self.preserves_form,
            "simple": self.simple,
        }


def product_form(spaces: list[FormedSpace]) -> np.ndarray:
    out = matrix([[1]])
    for u in spaces:
        out = kron(out, u.form)
    return out


def factor_embedding(spaces: list[FormedSpace], idx: int, x: np.ndarray) -> np.ndarray:
    """1 ⊗ … ⊗ x ⊗ … ⊗ 1 with x in slot idx."""
    out = matrix([[1]])
    for j, u in enumerate(spaces):
        out = kron(out, x if j == idx else identity(u.dim))
    return out


def _project_off(x: np.ndarray, sub: list[np.ndarray]) -> np.ndarray:
    """Remove the trace-form projection of x onto span(sub)."""
    if not sub:
        return x
    gram = matrix([[trace(matmul(p, q)) for q in sub] for p in sub])
    rhs = matrix([[trace(matmul(x, p))] for p in sub])
    c = solve(gram, rhs)
    if c is None:
        raise ArithmeticError("trace form degenerate on the product subalgebra")
    out = x.copy()
    for ci, p in zip(c.reshape(-1), sub):
        out = out - p * ci
    return out


def tensor_closure_experiment(spaces: list[FormedSpace], extra="generic", seed: int = 0) -> TensorClosureVerdict:
    """Close the embedded factor algebras together with one extra form-preserving generator.

    ``extra`` is ``"generic"`` (seeded integer combination of an automorphism basis, projected off
    the product subalgebra) or an explicit matrix.
    """
    if len(spaces) < 2:
        raise ValueError("need at least two factors")
    if any(u.inner_product_plane for u in spaces):
        raise ValueError("inner-product planes are excluded")
    form = product_form(spaces)
    n = form.shape[0]
    space = _ungraded(n)
    aut = aut_subspace(form)
    product = [
        factor_embedding(spaces, i, _unflat(b, u.dim)) for i, u in enumerate(spaces) for b in aut_subspace(u.form).basis
    ]
    product = [_unflat(b, n) for b in Subspace.span([_flat(p) for p in product], n * n).basis]
    if isinstance(extra, str):
        if extra != "generic":
            raise ValueError(f"unknown extra generator spec {extra!r}")
        rng = random.Random(seed)
        x = zeros(n, n)
        for b in aut.basis:
            x = x + _unflat(b, n) * Q(rng.randint(-3, 3))
    else:
        x = matrix(extra)
        if not aut.contains(_flat(x)):
            raise ValueError("extra generator does not preserve the product form")
    x = _project_off(x, product)
    gens = [_as_map(space, p) for p in product] + [_as_map(space, x)]
    g = lie_closure(gens, space)
    return TensorClosureVerdict(
        factors=[u.describe() for u in spaces],
        seed=seed,
        product_dim=len(product),
        aut_dim=aut.dim,
        extra_zero=is_zero(x),
        closure=g,
        preserves_form=all(aut.contains(b.flat()) for b in g.basis),
        simple=is_simple(g),
    )


# ---------------------------------------------------------------------------
# the orthogonal module V(2k) ⊕ V(2k−2) and its semispinor


def _rational_sqrt(x) -> Q:
    x = Q(x)
    if x < 0 or not (gmpy2.is_square(x.numerator) and gmpy2.is_square(x.denominator)):
        raise ValueError(f"{x} is not a rational square")
    return Q(gmpy2.isqrt(x.numerator)) / Q(gmpy2.isqrt(x.denominator))


class SpinorSetup:
    """V = V(2k) ⊕ V(2k−2) with basis v_0..v_2k, w_0..w_(2k−2); e shifts each string up.

    On V(2l) the form pairs e^p with e^(2l−p) by (−1)^(l+p).  The second summand carries the
    negated form so that the degree-0 plane is split over Q.
    """

    def __init__(self, k: int):
        if k < 2:
            raise ValueError("k must be at least 2")
        self.k = k
        self.size = 4 * k
        self.degrees = [2 * p - 2 * k for p in range(2 * k + 1)] + [2 * p - 2 * k + 2 for p in range(2 * k - 1)]
        b = zeros(self.size, self.size)
        for p in range(2 * k + 1):
            b[self.v(p), self.v(2 * k - p)] = Q((-1) ** (k + p))
        for p in range(2 * k - 1):
            b[self.w(p), self.w(2 * k - 2 - p)] = Q(-((-1) ** (k - 1 + p)))
        self.form = b

    def v(self, p: int) -> int:
        return p

    def w(self, p: int) -> int:
        return 2 * self.k + 1 + p

    @property
    def e(self) -> np.ndarray:
        m = zeros(self.size, self.size)
        for p in range(2 * self.k):
            m[self.v(p + 1), self.v(p)] = ONE
        for p in range(2 * self.k - 2):
            m[self.w(p + 1), self.w(p)] = ONE
        return m

    def skew_defect(self, x: np.ndarray) -> np.ndarray:
        return _adjoint_defect(self.form, -1)(x)

    def in_so(self, x: np.ndarray) -> bool:
        return is_zero(self.skew_defect(x))

    def degree_two_centralizer(self) -> Subspace:
        """{x ∈ so(V) of degree 2 : [x, e] = 0}, as flattened matrices."""
        n = self.size
        slots = [(r, c) for r in range(n) for c in range(n) if self.degrees[r] == self.degrees[c] + 2]
        e = self.e
        cols = []
        for r, c in slots:
            x = _unit(n, r, c)
            cols.append(np.concatenate([_flat(self.skew_defect(x)), _flat(_bracket(x, e))]))
        ker = kernel(np.column_stack(cols))
        vecs = []
        for kv in ker.basis:
            x = zeros(n, n)
            for (r, c), val in zip(slots, kv):
                x[r, c] = val
            vecs.append(_flat(x))
        return Subspace.span(vecs, n * n)

    def e_prime(self, a) -> tuple[np.ndarray, Q]:
        """e′ = [[a·e, β·e²], [1, −a·e]] with β forced by skewness; returns (e′, β)."""
        k, n = self.k, self.size
        diag = zeros(n, n)
        for p in range(2 * k):
            diag[self.v(p + 1), self.v(p)] = ONE
        for p in range(2 * k - 2):
            diag[self.w(p + 1), self.w(p)] = -ONE
        lower = zeros(n, n)
        for p in range(2 * k - 1):
            lower[self.w(p), self.v(p)] = ONE
        upper = zeros(n, n)
        for p in range(2 * k - 1):
            upper[self.v(p + 2), self.w(p)] = ONE
        if not self.in_so(diag):
            raise ArithmeticError("diagonal part is not skew")
        du, dl = _flat(self.skew_defect(upper)), _flat(self.skew_defect(lower))
        j = int(np.flatnonzero(du != 0)[0])
        beta = -dl[j] / du[j]
        x = diag * Q(a) + lower + upper * beta
        if not self.in_so(x):
            raise ArithmeticError("no skew normalization of e′")
        return x, beta


@dataclass
class SpinorRecord:
    k: int
    a: Q
    beta: Q
    s: Q
    centralizer_dim: int
    relations: dict[str, bool]
    w_dim: int | None = None
    frobenius: FrobeniusRecord | None = None
    grading_ok: bool | None = None
    clifford_formula_agrees: bool | None = None
    abar_square_zero: bool | None = None
    abar_is_wedge: bool | None = None
    f_prime_ratio: Q | None = None

    @property
    def relations_ok(self) -> bool:
        return all(self.relations.values())

    @property
    def order(self) -> int | None:
        return None if self.frobenius is None else self.frobenius.order

    def to_json(self) -> dict:
        from .exactla import fmt

        out = {
            "k": self.k,
            "a": fmt(self.a),
            "beta": fmt(self.beta),
            "s": fmt(self.s),
            "centralizer_dim": self.centralizer_dim,
            "relations": self.relations,
        }
        if self.frobenius is not None:
            out.update(
                {
                    "w_dim": self.w_dim,
                    "frobenius_order": self.frobenius.order,
                    "depth": self.frobenius.depth,
                    "grading_ok": self.grading_ok,
                    "clifford_formula_agrees": self.clifford_formula_agrees,
                    "abar_square_zero": self.abar_square_zero,
                    "abar_is_wedge": self.abar_is_wedge,
                    "f_prime_ratio": fmt(self.f_prime_ratio) if self.f_prime_ratio is not None else None,
                }
            )
        return out


class _Spin:
    """Spin action of so(V) on ∧F for a split V = F ⊕ F′; c(u)c(v) + c(v)c(u) = ⟨u, v⟩."""

    def __init__(self, form: np.ndarray, f_basis: list[np.ndarray], f_prime: list[np.ndarray]):
        m = len(f_basis)
        gram = matrix([[row @ form @ col for col in f_prime] for row in f_basis])
        cmat = inverse(gram)
        dual = [sum((f_prime[l] * cmat[l, j] for l in range(m)), zeros(len(f_prime[0]))) for j in range(m)]
        self.form = form
        self.m = m
        self.basis = f_basis + dual
        self.change = inverse(np.column_stack(self.basis))
        self.subsets = sorted(
            (s for r in range(m + 1) for s in itertools.combinations(range(m), r)), key=lambda s: (len(s), s)
        )
        self.index = {s: i for i, s in enumerate(self.subsets)}
        n = len(self.subsets)
        self.wedges, self.contractions = [], []
        for j in range(m):
            wj, cj = zeros(n, n), zeros(n, n)
            for s in self.subsets:
                if j in s:
                    pos = s.index(j)
                    cj[self.index[s[:pos] + s[pos + 1 :]], self.index[s]] = Q(-1 if pos % 2 else 1)
                else:
                    t = tuple(sorted(s + (j,)))
                    wj[self.index[t], self.index[s]] = Q((-1) ** sum(1 for i in s if i < j))
            self.wedges.append(wj)
            self.contractions.append(cj)
        full_gram = matrix([[x @ form @ y for y in self.basis] for x in self.basis])
        inv = inverse(full_gram)
        self.dual_basis = [sum((self.basis[i] * inv[i, j] for i in range(2 * m)), zeros(len(form))) for j in range(2 * m)]

    def wedge(self, vec: np.ndarray) -> np.ndarray:
        """Exterior product by a vector of F, given in V coordinates."""
        c = matmul(self.change, vec.reshape(-1, 1)).reshape(-1)
        if not is_zero(c[self.m :]):
            raise ValueError("vector is not in F")
        return sum((self.wedges[j] * c[j] for j in range(self.m)), zeros(len(self.subsets), len(self.subsets)))

    def clifford(self, vec: np.ndarray) -> np.ndarray:
        c = matmul(self.change, vec.reshape(-1, 1)).reshape(-1)
        n = len(self.subsets)
        out = zeros(n, n)
        for j in range(self.m):
            out = out + self.wedges[j] * c[j] + self.contractions[j] * c[self.m + j]
        return out

    def rho(self, x: np.ndarray) -> np.ndarray:
        """½ Σ_i c(x b_i) c(b^i) over a basis and its form-dual."""
        n = len(self.subsets)
        out = zeros(n, n)
        for b, bd in zip(self.basis, self.dual_basis):
            out = out + matmul(self.clifford(matmul(x, b.reshape(-1, 1)).reshape(-1)), self.clifford(bd))
        return out * Q("1/2")

    def derivation(self, x: np.ndarray) -> np.ndarray:
        """Derivation of ∧F extending x|F (x must preserve F)."""
        n = len(self.subsets)
        out = zeros(n, n)
        for j in range(self.m):
            out = out + matmul(self.wedge(matmul(x, self.basis[j].reshape(-1, 1)).reshape(-1)), self.contractions[j])
        return out


def spinor_example(k: int, a="5/4", semispinor: bool | None = None) -> SpinorRecord:
    """Centralizer, the a_± relations and (for k ≥ 3) the Frobenius order of the semispinor."""
    setup = SpinorSetup(k)
    a = Q(a)
    cent = setup.degree_two_centralizer()
    e = setup.e
    ep, beta = setup.e_prime(a)
    s = _rational_sqrt(a * a + beta)
    a_plus, a_minus = ep + e * s, ep - e * s
    power = lambda x, r: np.linalg.matrix_power(x, r)  # noqa: E731
    relations = {
        "e_prime_in_centralizer": cent.contains(_flat(ep)),
        "e_prime_square": mat_equal(matmul(ep, ep), matmul(e, e) * (a * a + beta)),
        "e_power_kills": is_zero(matmul(power(e, 2 * k - 1), ep - e * a)),
        "a_plus_a_minus": is_zero(matmul(a_plus, a_minus)),
        "a_plus_power": is_zero(power(a_plus, 2 * k + 1)),
        "a_minus_power": is_zero(power(a_minus, 2 * k + 1)),
    }
    rec = SpinorRecord(k, a, beta, s, cent.dim, relations)
    if semispinor is None:
        semispinor = k >= 3
    if not semispinor:
        return rec

    n = setup.size
    unit = lambda i: _flat(_unit(n, i, 0)[:, :1])  # noqa: E731
    f = unit(setup.v(k)) + unit(setup.w(k - 1))
    f_prime = (unit(setup.v(k)) - unit(setup.w(k - 1))) * Q("1/2")
    positive = [setup.v(p) for p in range(k + 1, 2 * k + 1)] + [setup.w(p) for p in range(k, 2 * k - 1)]
    negative = [setup.v(p) for p in range(k)] + [setup.w(p) for p in range(k - 1)]
    f_basis = [f] + [unit(i) for i in positive]
    fp_basis = [f_prime] + [unit(i) for i in negative]
    spin = _Spin(setup.form, f_basis, fp_basis)
    f_degrees = [0] + [setup.degrees[i] for i in positive]
    depth = k * k
    even = [s_ for s_ in spin.subsets if len(s_) % 2 == 0]
    even.sort(key=lambda s_: sum(f_degrees[j] for j in s_))
    rows = [spin.index[s_] for s_ in even]
    wdims: dict[int, int] = {}
    for s_ in even:
        d = sum(f_degrees[j] for j in s_) - depth
        wdims[d] = wdims.get(d, 0) + 1
    wspace = GradedSpace.from_dims(wdims)

    def on_w(x: np.ndarray) -> np.ndarray:
        return x[np.ix_(rows, rows)]

    h_v = np.diag(np.array([Q(d) for d in setup.degrees], dtype=object))
    grading_ok = mat_equal(on_w(spin.rho(h_v)), GradedMap(wspace, 0, {d: identity(m) * Q(d) for d, m in wdims.items()}).to_dense())
    rho_plus, rho_minus = spin.rho(a_plus), spin.rho(a_minus)

    def printed_action(x: np.ndarray) -> np.ndarray:
        xf = matmul(x, f_prime.reshape(-1, 1)).reshape(-1)
        return -matmul(spin.wedge(f), spin.wedge(xf)) + spin.derivation(x)

    agrees = all(mat_equal(on_w(spin.rho(x)), on_w(printed_action(x))) for x in (e, ep))
    module = LefschetzModule(wspace, [GradedMap.from_dense(wspace, on_w(r), degree=2) for r in (rho_plus, rho_minus)])
    frob = frobenius_order(module, dmax=depth)

    # ā: maps u ↦ ⟨v, u⟩f − ⟨f, u⟩v for v ∈ V_2, identified with f ∧ v
    abar = []
    wedge_ok = True
    for i in [idx for idx in range(n) if setup.degrees[idx] == 2]:
        vv = unit(i)
        x = np.outer(f, matmul(vv.reshape(1, -1), setup.form).reshape(-1)) - np.outer(vv, matmul(f.reshape(1, -1), setup.form).reshape(-1))
        x = matrix(x)
        if not setup.in_so(x):
            wedge_ok = False
        r = on_w(spin.rho(x))
        wedge_ok = wedge_ok and mat_equal(r, on_w(matmul(spin.wedge(f), spin.wedge(vv))))
        abar.append(r)
    square_zero = all(is_zero(matmul(x, y)) for x in abar for y in abar)

    ratio = None
    pf, pfp = matmul(a_plus, f.reshape(-1, 1)).reshape(-1), matmul(a_plus, f_prime.reshape(-1, 1)).reshape(-1)
    mf, mfp = matmul(a_minus, f.reshape(-1, 1)).reshape(-1), matmul(a_minus, f_prime.reshape(-1, 1)).reshape(-1)
    j = int(np.flatnonzero(pf != 0)[0])
    c = pfp[j] / pf[j]
    if c != 0 and mat_equal(pfp, pf * c) and mat_equal(mfp, mf * (-c)):
        ratio = c

    rec.w_dim = wspace.total_dim
    rec.frobenius = frob
    rec.grading_ok = grading_ok
    rec.clifford_formula_agrees = agrees
    rec.abar_square_zero = square_zero and bool(abar)
    rec.abar_is_wedge = wedge_ok
    rec.f_prime_ratio = ratio
    return rec
