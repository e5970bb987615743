"""Geometric models: complex tori, Albert-type matrix algebras, the quaternionic hyperkähler model."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

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
    solve,
    trace,
    vector,
    zeros,
)
from .graded import GradedAlgebra, GradedMap, GradedSpace, exterior_algebra, h_of, identity_map, wedge_sign
from .lefmod import GeneratedAlgebra, LefschetzModule, generate_g
from .liegen import GradedLieAlgebra, is_ideal, lie_closure, span_algebra
from .sl2kit import LefschetzViolation, jm_dual, lefschetz_report

# ---------------------------------------------------------------------------
# exterior calculus on ∧V*


class ExteriorCalculus:
    """Operators on ∧V* for V of even dimension N, graded by (form degree − N/2).

    Forms use the basis α_S (S an increasing index tuple, lex order inside each degree);
    a_0, …, a_{N−1} is the dual basis of V.
    """

    def __init__(self, dim: int):
        if dim % 2:
            raise ValueError("dimension must be even")
        self.dim = dim
        self.algebra: GradedAlgebra = exterior_algebra(dim)
        self.space: GradedSpace = self.algebra.lefschetz_space()
        self.subsets = [s for k in range(dim + 1) for s in itertools.combinations(range(dim), k)]
        self.index = {s: i for i, s in enumerate(self.subsets)}
        self.total = len(self.subsets)

    def _map(self, dense: np.ndarray) -> GradedMap:
        return GradedMap.from_dense(self.space, dense)

    def wedge(self, j: int) -> GradedMap:
        """e_{α_j}: left exterior product."""
        m = zeros(self.total, self.total)
        for s in self.subsets:
            if j in s:
                continue
            t = tuple(sorted(s + (j,)))
            m[self.index[t], self.index[s]] = Q(wedge_sign((j,), s))
        return GradedMap(self.space, 1, _blocks_of(self.space, m, 1))

    def contract(self, j: int) -> GradedMap:
        """i_{a_j}: contraction, an odd derivation."""
        m = zeros(self.total, self.total)
        for s in self.subsets:
            if j not in s:
                continue
            pos = s.index(j)
            t = s[:pos] + s[pos + 1 :]
            m[self.index[t], self.index[s]] = Q(-1 if pos % 2 else 1)
        return GradedMap(self.space, -1, _blocks_of(self.space, m, -1))

    @cached_property
    def e(self) -> list[GradedMap]:
        return [self.wedge(j) for j in range(self.dim)]

    @cached_property
    def i(self) -> list[GradedMap]:
        return [self.contract(j) for j in range(self.dim)]

    def derivation(self, s: np.ndarray) -> GradedMap:
        """Degree-0 derivation extending σ ∈ gl(V*), σ(α_j) = Σ_i s[i, j] α_i."""
        out = GradedMap.zero(self.space, 0)
        for a, b in zip(*np.nonzero(s != 0)):
            out = out + (self.e[a] @ self.i[b]) * s[a, b]
        return out

    def two_form(self, mat: np.ndarray) -> np.ndarray:
        """Degree-2 algebra coordinates of the 2-form with antisymmetric matrix ``mat``."""
        pairs = list(itertools.combinations(range(self.dim), 2))
        return vector([mat[i, j] for i, j in pairs])

    def e_form(self, mat: np.ndarray) -> GradedMap:
        """Wedge with the 2-form λ = Σ_{i<j} mat[i, j] α_i ∧ α_j."""
        out = GradedMap.zero(self.space, 2)
        for i, j in itertools.combinations(range(self.dim), 2):
            if mat[i, j] != 0:
                out = out + (self.e[i] @ self.e[j]) * mat[i, j]
        return out

    def i_bivector(self, mat: np.ndarray) -> GradedMap:
        """Σ_{i<j} mat[i, j] i_{a_i} i_{a_j}."""
        out = GradedMap.zero(self.space, -2)
        for i, j in itertools.combinations(range(self.dim), 2):
            if mat[i, j] != 0:
                out = out + (self.i[i] @ self.i[j]) * mat[i, j]
        return out

    def star(self) -> GradedMap:
        """Hodge star for the orthonormal basis: α_S ↦ sign(S, S^c) α_{S^c}; it reverses degrees."""
        m = zeros(self.total, self.total)
        full = set(range(self.dim))
        for s in self.subsets:
            c = tuple(sorted(full - set(s)))
            m[self.index[c], self.index[s]] = Q(wedge_sign(s, c))
        return _DenseOperator(self.space, m)

    def restrict(self, op: GradedMap, form_degree: int) -> np.ndarray:
        """Block of a degree-0 operator on ∧^k V*."""
        return op.block(form_degree - self.dim // 2)


@dataclass
class _DenseOperator:
    """A linear operator on a graded space that does not preserve the grading (e.g. the star)."""

    space: GradedSpace
    matrix: np.ndarray

    def conjugate(self, op: GradedMap, inv: "_DenseOperator") -> GradedMap:
        dense = matmul(matmul(self.matrix, op.to_dense()), inv.matrix)
        return GradedMap.from_dense(self.space, dense, -op.degree)

    def inverse(self) -> "_DenseOperator":
        return _DenseOperator(self.space, inverse(self.matrix))

    def apply(self, v: np.ndarray) -> np.ndarray:
        return matmul(self.matrix, v)


def _blocks_of(space: GradedSpace, dense: np.ndarray, degree: int) -> dict[int, np.ndarray]:
    out = {}
    for k in space.degrees:
        if k + degree in space.dims:
            out[k] = dense[space.slice(k + degree), space.slice(k)]
    return out


def _sum(maps: Sequence[GradedMap], space: GradedSpace, degree: int) -> GradedMap:
    out = GradedMap.zero(space, degree)
    for m in maps:
        out = out + m
    return out


# ---------------------------------------------------------------------------
# complex tori: total Lie algebra


@dataclass
class TorusModel:
    n: int
    calculus: ExteriorCalculus = field(repr=False)
    module: LefschetzModule = field(repr=False)
    generated: GeneratedAlgebra = field(repr=False)
    f_formula_ok: bool
    J: np.ndarray | None = None

    @property
    def g(self) -> GradedLieAlgebra:
        return self.generated.g


def standard_symplectic(n: int) -> np.ndarray:
    """κ = Σ_k α_k ∧ α_{−k}, with α_k ↦ index k − 1 and α_{−k} ↦ index n + k − 1."""
    m = zeros(2 * n, 2 * n)
    for k in range(n):
        m[k, n + k] = ONE
        m[n + k, k] = -ONE
    return m


def standard_complex_structure(n: int) -> np.ndarray:
    """J on V: a_k ↦ a_{−k}, a_{−k} ↦ −a_k (same index convention as standard_symplectic)."""
    j = zeros(2 * n, 2 * n)
    for k in range(n):
        j[n + k, k] = ONE
        j[k, n + k] = -ONE
    return j


def f_kappa_formula(calc: ExteriorCalculus, n: int) -> GradedMap:
    """Σ_k i_{a_{−k}} i_{a_k}."""
    return _sum([calc.i[n + k] @ calc.i[k] for k in range(n)], calc.space, -2)


def torus_total(n: int, box: int | None = None) -> TorusModel:
    if n < 1:
        raise ValueError("n must be at least 1")
    calc = ExteriorCalculus(2 * n)
    module = LefschetzModule.from_algebra(calc.algebra, name=f"torus({n})")
    gen = generate_g(module, box)
    e_k = calc.e_form(standard_symplectic(n))
    ok = jm_dual(e_k) == f_kappa_formula(calc, n)
    return TorusModel(n, calc, module, gen, ok)


def anticommutator_identity(calc: ExteriorCalculus) -> bool:
    """i_a e_α + e_α i_a = α(a)·1 on all basis pairs."""
    one = identity_map(calc.space)
    for a in range(calc.dim):
        for al in range(calc.dim):
            lhs = calc.i[a] @ calc.e[al] + calc.e[al] @ calc.i[a]
            if lhs != one * Q(1 if a == al else 0):
                return False
    return True


def _sigma(dim: int, a: int, b: int, al: int, be: int) -> np.ndarray:
    """σ(a∧b, α∧β): ξ ↦ −α(b)ξ(a)β + α(a)ξ(b)β + β(b)ξ(a)α − β(a)ξ(b)α, as a matrix on V* coordinates."""
    d = lambda x, y: Q(1 if x == y else 0)  # noqa: E731
    s = zeros(dim, dim)
    # ξ(a) = ξ_a picks column a; the image is a multiple of β or α
    s[be, a] += -d(al, b)
    s[be, b] += d(al, a)
    s[al, a] += d(be, b)
    s[al, b] += -d(be, a)
    return s


def double_contraction_identity(calc: ExteriorCalculus) -> bool:
    """[i_a i_b, e_α e_β] = σ̃(a∧b, α∧β) − ½Tr σ(a∧b, α∧β) for all basis 4-tuples."""
    one = identity_map(calc.space)
    n = calc.dim
    for a, b, al, be in itertools.product(range(n), repeat=4):
        lhs = (calc.i[a] @ calc.i[b]).bracket(calc.e[al] @ calc.e[be])
        s = _sigma(n, a, b, al, be)
        rhs = calc.derivation(s) - one * (trace(s) / 2)
        if lhs != rhs:
            return False
    return True


# so(V ⊕ V*) acting on (x, ξ) with x ∈ V (first N coordinates) and ξ ∈ V*


def _psi_basis(dim: int):
    """Basis of so(V ⊕ V*) as 2N×2N matrices, tagged with their operator images on ∧V*."""
    out = []
    for al, be in itertools.combinations(range(dim), 2):
        m = zeros(2 * dim, 2 * dim)
        # ξ-part gains α(x)β − β(x)α
        m[dim + be, al] += 1
        m[dim + al, be] -= 1
        out.append(("e", (al, be), m))
    for a, b in itertools.combinations(range(dim), 2):
        m = zeros(2 * dim, 2 * dim)
        # x-part gains ξ(a)b − ξ(b)a
        m[b, dim + a] += 1
        m[a, dim + b] -= 1
        out.append(("i", (a, b), m))
    for r, c in itertools.product(range(dim), repeat=2):
        s = zeros(dim, dim)
        s[r, c] = ONE
        m = zeros(2 * dim, 2 * dim)
        m[:dim, :dim] = -s.T
        m[dim:, dim:] = s
        out.append(("s", s, m))
    return out


def psi_images(calc: ExteriorCalculus) -> tuple[list[np.ndarray], list[GradedMap]]:
    one = identity_map(calc.space)
    mats, ops = [], []
    for kind, data, m in _psi_basis(calc.dim):
        if kind == "e":
            op = calc.e[data[0]] @ calc.e[data[1]]
        elif kind == "i":
            op = calc.i[data[0]] @ calc.i[data[1]]
        else:
            op = calc.derivation(data) - one * (trace(data) / 2)
        mats.append(m)
        ops.append(op)
    return mats, ops


def verify_psi(n: int) -> bool:
    """ψ is a Lie algebra homomorphism so(V ⊕ V*) → gl(∧V*), checked on all basis pairs."""
    calc = ExteriorCalculus(2 * n)
    mats, ops = psi_images(calc)
    flat = np.column_stack([m.reshape(-1) for m in mats])
    dense = [op.to_dense() for op in ops]
    for (x, ox), (y, oy) in itertools.combinations(zip(mats, ops), 2):
        c = solve(flat, (matmul(x, y) - matmul(y, x)).reshape(-1))
        if c is None:
            return False
        image = zeros(calc.total, calc.total)
        for coef, op in zip(c, dense):
            if coef != 0:
                image = image + op * coef
        if not mat_equal(image, ox.bracket(oy).to_dense()):
            return False
    return True


def psi_image_algebra(calc: ExteriorCalculus) -> GradedLieAlgebra:
    return span_algebra(calc.space, psi_images(calc)[1])


# ---------------------------------------------------------------------------
# complex tori: Kähler Lie algebra and the Rosati check


def _check_j(J: np.ndarray) -> np.ndarray:
    J = matrix(J)
    if not mat_equal(matmul(J, J), -identity(J.shape[0])):
        raise ValueError("J must satisfy J² = −1")
    return J


def j_invariant_forms(J: np.ndarray) -> list[np.ndarray]:
    """Basis of antisymmetric matrices λ with Jᵀ λ J = λ."""
    n = J.shape[0]
    pairs = list(itertools.combinations(range(n), 2))
    basis = []
    for i, j in pairs:
        m = zeros(n, n)
        m[i, j], m[j, i] = ONE, -ONE
        basis.append(m)
    cols = np.column_stack([(matmul(matmul(J.T, b), J) - b).reshape(-1) for b in basis])
    out = []
    for c in kernel(cols).basis:
        m = zeros(n, n)
        for coef, b in zip(c, basis):
            m = m + b * coef
        out.append(m)
    return out


def torus_kahler(n: int, J: np.ndarray | None = None, box: int | None = None) -> TorusModel:
    J = standard_complex_structure(n) if J is None else _check_j(J)
    if J.shape != (2 * n, 2 * n):
        raise ValueError("J has the wrong size")
    calc = ExteriorCalculus(2 * n)
    forms = j_invariant_forms(J)
    module = LefschetzModule.from_algebra(calc.algebra, [calc.two_form(f) for f in forms], f"torus-kahler({n})")
    gen = generate_g(module, box)
    e_k = calc.e_form(standard_symplectic(n))
    ok = jm_dual(e_k) == f_kappa_formula(calc, n)
    return TorusModel(n, calc, module, gen, ok, J)


@dataclass
class RosatiRecord:
    sigma: np.ndarray
    sign: int | None
    scalar: object
    dagger_symmetric: bool
    symmetric_form_dagger_symmetric: bool

    @property
    def ok(self) -> bool:
        return self.sign is not None and self.dagger_symmetric and not self.symmetric_form_dagger_symmetric


def _dagger(kappa: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Adjoint for κ: κ(σv, w) = κ(v, σ†w)."""
    return matmul(matmul(inverse(kappa), s.T), kappa)


def _sigma_of(kappa: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """σ with λ(a, b) = κ(σa, b): σᵀ κ = λ."""
    return matmul(lam, inverse(kappa)).T


def rosati_check(n: int, kappa: np.ndarray, lam: np.ndarray) -> RosatiRecord:
    """[e_λ, f_κ] on V* equals ±σ*_λ plus a scalar; σ_λ is †-symmetric exactly for skew λ."""
    kappa, lam = matrix(kappa), matrix(lam)
    calc = ExteriorCalculus(2 * n)
    e_k = calc.e_form(kappa)
    report = lefschetz_report(e_k)
    if report:
        raise LefschetzViolation(report)
    f_k = jm_dual(e_k)
    restricted = calc.restrict(calc.e_form(lam).bracket(f_k), 1)
    sigma = _sigma_of(kappa, lam)
    # σ* on V* in the α basis is σᵀ
    sign, scalar = None, None
    for s in (1, -1):
        diff = restricted - sigma.T * s
        c = diff[0, 0]
        if mat_equal(diff, identity(2 * n) * c):
            sign, scalar = s, c
            break
    sym = mat_equal(_dagger(kappa, sigma), sigma)
    # a symmetric bilinear form gives a †-antisymmetric σ instead
    sym_form = lam + lam.T if not is_zero(lam + lam.T) else identity(2 * n)
    sigma_sym = _sigma_of(kappa, sym_form)
    sym_form_sym = mat_equal(_dagger(kappa, sigma_sym), sigma_sym)
    return RosatiRecord(sigma, sign, scalar, sym, sym_form_sym)


# ---------------------------------------------------------------------------
# algebras with involution and the Albert-type Lie algebras


@dataclass(frozen=True)
class QuaternionAlgebraSpec:
    """(a, b)_Q with basis 1, i, j, k: i² = a, j² = b, ij = −ji = k."""

    a: object
    b: object

    def __post_init__(self):
        if Q(self.a) == 0 or Q(self.b) == 0:
            raise ValueError("a and b must be nonzero")

    def structure(self) -> np.ndarray:
        a, b = Q(self.a), Q(self.b)
        t = zeros(4, 4, 4)
        table = {
            (0, 0): (0, ONE), (0, 1): (1, ONE), (0, 2): (2, ONE), (0, 3): (3, ONE),
            (1, 0): (1, ONE), (2, 0): (2, ONE), (3, 0): (3, ONE),
            (1, 1): (0, a), (2, 2): (0, b), (3, 3): (0, -a * b),
            (1, 2): (3, ONE), (2, 1): (3, -ONE),
            (1, 3): (2, a), (3, 1): (2, -a),
            (2, 3): (1, -b), (3, 2): (1, b),
        }  # fmt: skip
        for (p, r), (s, c) in table.items():
            t[s, p, r] = c
        return t

    def norm(self, x: Sequence) -> object:
        a, b = Q(self.a), Q(self.b)
        x = [Q(v) for v in x]
        return x[0] ** 2 - a * x[1] ** 2 - b * x[2] ** 2 + a * b * x[3] ** 2

    def conjugation(self) -> np.ndarray:
        return matrix([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])

    def norm_multiplicative(self) -> bool:
        t = self.structure()
        basis = identity(4)
        for p, r in itertools.product(range(4), repeat=2):
            prod = t[:, p, r]
            if self.norm(prod) != self.norm(basis[p]) * self.norm(basis[r]):
                return False
        return True


class InvolutiveAlgebra:
    """A finite-dimensional Q-algebra by structure constants t[s, p, r] (e_p e_r = Σ t[s] e_s) with an anti-involution."""

    def __init__(self, structure: np.ndarray, dagger: np.ndarray, name: str = ""):
        self.t = structure
        self.dagger = matrix(dagger)
        self.dim = structure.shape[0]
        self.name = name
        if not self._is_anti_involution():
            raise ValueError("dagger is not an anti-automorphism of order at most 2")

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = zeros(self.dim)
        for p in range(self.dim):
            if x[p] == 0:
                continue
            for r in range(self.dim):
                if y[r] != 0:
                    out = out + self.t[:, p, r] * (x[p] * y[r])
        return out

    def left(self, x: np.ndarray) -> np.ndarray:
        """Matrix of left multiplication by x."""
        return np.column_stack([self.multiply(x, e) for e in identity(self.dim)])

    def _is_anti_involution(self) -> bool:
        d = self.dagger
        if not mat_equal(matmul(d, d), identity(self.dim)):
            return False
        basis = identity(self.dim)
        for x, y in itertools.product(basis, repeat=2):
            if not is_zero(matmul(d, self.multiply(x, y)) - self.multiply(matmul(d, y), matmul(d, x))):
                return False
        return True

    def fixed(self, sign: int = 1) -> list[np.ndarray]:
        return kernel(self.dagger - identity(self.dim) * sign).basis

    @classmethod
    def rational(cls) -> "InvolutiveAlgebra":
        t = zeros(1, 1, 1)
        t[0, 0, 0] = ONE
        return cls(t, matrix([[1]]), "Q")

    @classmethod
    def imaginary_quadratic(cls, d: int = -1) -> "InvolutiveAlgebra":
        """Q(√d) with complex conjugation; basis 1, √d."""
        if d >= 0:
            raise ValueError("d must be negative")
        t = zeros(2, 2, 2)
        t[0, 0, 0] = t[1, 0, 1] = t[1, 1, 0] = ONE
        t[0, 1, 1] = Q(d)
        return cls(t, matrix([[1, 0], [0, -1]]), f"Q(sqrt({d}))")

    @classmethod
    def quaternion(cls, a=-1, b=-1) -> "InvolutiveAlgebra":
        spec = QuaternionAlgebraSpec(a, b)
        return cls(spec.structure(), spec.conjugation(), f"({a},{b})")


ALGEBRAS = {
    "q": InvolutiveAlgebra.rational,
    "qi": InvolutiveAlgebra.imaginary_quadratic,
    "h": InvolutiveAlgebra.quaternion,
}


@dataclass
class AlbertRecord:
    F: str
    m: int
    sku: GradedLieAlgebra = field(repr=False)
    g: GradedLieAlgebra = field(repr=False)
    u: GradedLieAlgebra = field(repr=False)
    decomposition_ok: bool
    jordan: bool

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.sku.dim, self.g.dim, self.u.dim


def _entry(F: InvolutiveAlgebra, size: int, r: int, c: int, x: np.ndarray) -> np.ndarray:
    """size×size block matrix over F with x at (r, c), realized through left multiplication."""
    d = F.dim
    m = zeros(size * d, size * d)
    m[r * d : (r + 1) * d, c * d : (c + 1) * d] = F.left(x)
    return m


def sku_basis(F: InvolutiveAlgebra, m: int) -> list[np.ndarray]:
    """Q-basis of {[[A, B], [C, −ᵗA†]] : B = ᵗB†, C = ᵗC†} ⊂ End(2m, F)."""
    basis = identity(F.dim)
    dag = lambda x: matmul(F.dagger, x)  # noqa: E731
    out = []
    for r, c in itertools.product(range(m), repeat=2):
        for x in basis:
            out.append(_entry(F, 2 * m, r, c, x) - _entry(F, 2 * m, m + c, m + r, dag(x)))
    herm_diag = F.fixed(1)
    for off in (m, 0):
        # off = m: B block (rows 0..m−1, columns m..2m−1); off = 0: C block
        ro, co = (0, m) if off == m else (m, 0)
        for r in range(m):
            for x in herm_diag:
                out.append(_entry(F, 2 * m, ro + r, co + r, x))
            for c in range(r + 1, m):
                for x in basis:
                    out.append(_entry(F, 2 * m, ro + r, co + c, x) + _entry(F, 2 * m, ro + c, co + r, dag(x)))
    return out


def albert_sku(F: InvolutiveAlgebra, m: int) -> AlbertRecord:
    """sku(2m, F, †) graded by diag(−1, 1), its subalgebra g generated in degrees ±2, and the complement u."""
    if m < 1:
        raise ValueError("m must be at least 1")
    half = m * F.dim
    space = GradedSpace(((-1, half), (1, half)))
    ops = [GradedMap.from_dense(space, x) for x in sku_basis(F, m)]
    sku = span_algebra(space, ops)
    g = lie_closure([x for x in ops if x.degree != 0], space)
    # u: the degree-0 elements commuting with the degree ±2 parts
    zero_part = sku.piece(0)
    outer = [x for x in sku.basis if x.degree != 0]
    if zero_part:
        cols = np.column_stack([np.concatenate([x.bracket(y).flat() for y in outer]) if outer else zeros(0) for x in zero_part])
        coeffs = kernel(cols).basis if outer else identity(len(zero_part))
    else:
        coeffs = []
    u_elems = [_sum([x * c for x, c in zip(zero_part, v) if c != 0], space, 0) for v in coeffs]
    u = span_algebra(space, u_elems)
    sku_sub = _lie_subspace(sku, sku)
    g_sub = _lie_subspace(sku, g)
    u_sub = _lie_subspace(sku, u)
    inter = g_sub.intersect(u_sub).dim
    decomposition = (
        is_ideal(sku, g_sub)
        and is_ideal(sku, u_sub)
        and inter == 0
        and g.dim + u.dim == sku_sub.dim
        and all(sku.contains(x) for x in g.basis + u.basis)
    )
    jordan = set(g.degrees) <= {-2, 0, 2} and g.h_index is not None
    return AlbertRecord(F.name, m, sku, g, u, decomposition, jordan)


def _lie_subspace(host: GradedLieAlgebra, sub: GradedLieAlgebra) -> Subspace:
    return Subspace.span([host.coordinates(x) for x in sub.basis], host.dim)


# ---------------------------------------------------------------------------
# the quaternionic hyperkähler model


@dataclass
class HKModel:
    calculus: ExteriorCalculus = field(repr=False)
    generated: GeneratedAlgebra = field(repr=False)
    e_ops: dict[str, GradedMap] = field(repr=False)
    f_ops: dict[str, GradedMap] = field(repr=False)
    f_star_ok: bool
    bracket_identity_ok: bool
    commutes_with_quaternions: bool
    m_dims: list[int]
    m_star_invariant: bool
    m_g_invariant: bool
    kills_antiselfdual: bool

    @property
    def g(self) -> GradedLieAlgebra:
        return self.generated.g


class _Hamilton:
    """Hamilton quaternions (−1, −1) acting on T = H with the orthonormal basis 1, i, j, k."""

    def __init__(self):
        self.spec = QuaternionAlgebraSpec(-1, -1)
        self.t = self.spec.structure()
        self.alg = InvolutiveAlgebra(self.t, self.spec.conjugation(), "H")

    def left(self, x) -> np.ndarray:
        return self.alg.left(vector(x))

    def right(self, x) -> np.ndarray:
        x = vector(x)
        return np.column_stack([self.alg.multiply(e, x) for e in identity(4)])

    def inverse(self, x) -> np.ndarray:
        x = vector(x)
        return matmul(self.alg.dagger, x) / self.spec.norm(x)

    def multiply(self, x, y) -> np.ndarray:
        return self.alg.multiply(vector(x), vector(y))


UNITS = {"i": [0, 1, 0, 0], "j": [0, 0, 1, 0], "k": [0, 0, 0, 1]}


def kappa_matrix(H: _Hamilton, a) -> np.ndarray:
    """κ_a(x, y) = ⟨a x, y⟩ on T, in the orthonormal basis (a pure, so κ_a is skew)."""
    return H.left(a).T


def hk_model(box: int | None = None) -> HKModel:
    H = _Hamilton()
    calc = ExteriorCalculus(4)
    star = calc.star()
    star_inv = star.inverse()
    e_ops = {name: calc.e_form(kappa_matrix(H, a)) for name, a in UNITS.items()}
    f_ops = {}
    f_ok = True
    for name, a in UNITS.items():
        f_dual = jm_dual(e_ops[name])
        f_star = star.conjugate(e_ops[name], star_inv) * (1 / H.spec.norm(a))
        f_ops[name] = f_dual
        f_ok = f_ok and f_dual == f_star
    # combinations: e_a with a = Σ c_u u, f_a = Nm(a)^{-1} ⋆ e_a ⋆^{-1}
    for c in ((1, 1, 0), (1, -2, 3), (2, 0, -1)):
        a = vector([0, *c])
        e_a = calc.e_form(kappa_matrix(H, a))
        f_ok = f_ok and jm_dual(e_a) == star.conjugate(e_a, star_inv) * (1 / H.spec.norm(a))
    module = LefschetzModule(calc.space, list(e_ops.values()), None, "hk")
    gen = generate_g(module, box)
    h = h_of(calc.space)

    def right_action(p) -> GradedMap:
        # ξ ↦ ξ ∘ L_p on V = T*, extended as a derivation of ∧V
        return calc.derivation(H.left(p).T)

    def e_of(a):
        return calc.e_form(kappa_matrix(H, a))

    def f_of(a):
        return star.conjugate(e_of(a), star_inv) * (1 / H.spec.norm(a))

    samples = [vector(v) for v in UNITS.values()] + [vector([0, 1, 1, 0]), vector([0, 1, -2, 3])]
    bracket_ok = True
    for a, b in itertools.product(samples, repeat=2):
        ab = H.multiply(a, H.inverse(b))
        real = ab[0]
        pure = vector([0, ab[1], ab[2], ab[3]])
        rhs = right_action(pure) * (-1) + h * real
        if e_of(a).bracket(f_of(b)) != rhs:
            bracket_ok = False
    # e_a, f_a commute with the quaternion action that preserves every κ_a (right multiplication on T)
    commute = True
    for p in UNITS.values():
        r = calc.derivation(H.right(p).T)
        for a in samples:
            if not (r.bracket(e_of(a)).is_zero() and r.bracket(f_of(a)).is_zero()):
                commute = False
    # M: subalgebra generated by the κ_J
    alg = calc.algebra
    kappas = [calc.two_form(kappa_matrix(H, a)) for a in UNITS.values()]
    m_vectors = _generated_subalgebra(alg, kappas)
    m_dims = [sub.dim for _, sub in sorted(m_vectors.items())]
    m_full = Subspace.span([_embed_alg(alg, d, v) for d, s in m_vectors.items() for v in s.basis], alg.space.total_dim)
    m_star = all(m_full.contains(star.apply(v)) for v in m_full.basis)
    m_g = all(m_full.contains(x.apply(v)) for x in gen.g.basis for v in m_full.basis)
    # (∧²V)⁻: the −1 eigenspace of the star on 2-forms
    two = calc.space.slice(0)
    star2 = star.matrix[two, two]
    minus = kernel(star2 + identity(star2.shape[0]))
    kills = all(is_zero(matmul(x.block(0), v)) for x in gen.g.basis for v in minus.basis)
    return HKModel(calc, gen, e_ops, f_ops, f_ok, bracket_ok, commute, m_dims, m_star, m_g, kills)


def _embed_alg(alg: GradedAlgebra, d: int, v: np.ndarray) -> np.ndarray:
    out = zeros(alg.space.total_dim)
    out[alg.space.slice(d)] = v
    return out


def _generated_subalgebra(alg: GradedAlgebra, gens: Sequence[np.ndarray]) -> dict[int, Subspace]:
    """Degreewise span of monomials in degree-2 generators (given in degree-2 coordinates)."""
    sp = alg.space
    out = {0: Subspace.full(1)}
    level = [alg.unit()]
    d = 0
    while d + 2 in sp.dims:
        vecs = [alg.multiply(_embed_alg(alg, 2, g), v) for g in gens for v in level]
        sub = Subspace.span([v[sp.slice(d + 2)] for v in vecs], sp.dims[d + 2])
        if sub.dim == 0:
            break
        out[d + 2] = sub
        level = [_embed_alg(alg, d + 2, v) for v in sub.basis]
        d += 2
    return out
