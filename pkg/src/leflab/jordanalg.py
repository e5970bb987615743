"""Jordan–Frobenius algebras: the four classical fundamental models, presentations, level-k algebras."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .exactla import ONE, Q, EchelonBuilder, identity, is_zero, kernel, matmul, rank, vector, zeros
from .graded import (
    GradedAlgebra,
    GradedSpace,
    PolynomialQuotient,
    algebra_from_products,
    exterior_algebra,
    subalgebra,
    tensor_algebra,
    tensor_cell,
)
from .liegen import GradedLieAlgebra

CASES = ("A", "C", "D", "BD")

Poly = dict[tuple[int, ...], object]


@dataclass
class FrobeniusModel:
    """A graded algebra generated by A_2, with its degree-2 presentation in the A_2 basis."""

    case: str
    params: dict
    algebra: GradedAlgebra
    generator_labels: list[str]
    relations: list[Poly] = field(repr=False)

    @property
    def generators(self) -> list[np.ndarray]:
        sp = self.algebra.space
        return [sp.basis_vector(2, i) for i in range(sp.dim(2))]

    @property
    def dims(self) -> list[int]:
        return self.algebra.dims


def _monomial(nvars: int, *idx: int) -> tuple[int, ...]:
    e = [0] * nvars
    for i in idx:
        e[i] += 1
    return tuple(e)


def _add(poly: Poly, e: tuple[int, ...], c) -> None:
    poly[e] = poly.get(e, Q(0)) + Q(c)


def _pure(a: GradedSpace, b: GradedSpace, total: GradedSpace, i: int, j: int) -> np.ndarray:
    d, k = tensor_cell(a, b, 1, i, 1, j)
    v = zeros(total.total_dim)
    v[total.offsets[d] + k] = ONE
    return v


def _model_a(m: int) -> FrobeniusModel:
    ext = exterior_algebra(m)
    amb = tensor_algebra(ext, ext)
    gens = [_pure(ext.space, ext.space, amb.space, i, j) for i in range(m) for j in range(m)]
    alg, _ = subalgebra(amb, gens, 2, f"A({m})")
    n = m * m
    x = lambda i, j: i * m + j  # noqa: E731
    rels = []
    for i, j, k, l in itertools.product(range(m), repeat=4):
        r: Poly = {}
        _add(r, _monomial(n, x(i, j), x(k, l)), 1)
        _add(r, _monomial(n, x(i, l), x(k, j)), 1)
        rels.append(r)
    labels = [f"x{i + 1}{j + 1}" for i in range(m) for j in range(m)]
    return FrobeniusModel("A", {"m": m}, alg, labels, rels)


def _model_c(m: int) -> FrobeniusModel:
    ext = exterior_algebra(m)
    amb = tensor_algebra(ext, ext)
    pairs = [(i, j) for i in range(m) for j in range(i, m)]
    gens = []
    for i, j in pairs:
        v = _pure(ext.space, ext.space, amb.space, i, j)
        if i != j:
            v = v + _pure(ext.space, ext.space, amb.space, j, i)
        gens.append(v)
    alg, _ = subalgebra(amb, gens, 2, f"C({m})")
    n = len(pairs)
    index = {p: k for k, p in enumerate(pairs)}
    u = lambda i, j: index[(min(i, j), max(i, j))]  # noqa: E731
    rels = []
    for i, j, k in itertools.product(range(m), repeat=3):
        r: Poly = {}
        if i == k and i != j:
            # the diagonal instance carries a factor 2 with u_ii = w_i ⊗ w_i
            _add(r, _monomial(n, u(i, j), u(i, j)), 1)
            _add(r, _monomial(n, u(i, i), u(j, j)), 2)
        else:
            _add(r, _monomial(n, u(i, j), u(j, k)), 1)
            _add(r, _monomial(n, u(j, j), u(i, k)), 1)
        rels.append(r)
    labels = [f"u{i + 1}{j + 1}" for i, j in pairs]
    return FrobeniusModel("C", {"m": m}, alg, labels, rels)


def _model_d(m: int) -> FrobeniusModel:
    dim_w = 2 * m
    ext = exterior_algebra(dim_w)
    pairs = list(itertools.combinations(range(dim_w), 2))
    gens = [ext.space.basis_vector(2, k) for k in range(len(pairs))]
    alg, _ = subalgebra(ext, gens, 2, f"D({m})")
    n = len(pairs)
    index = {p: k for k, p in enumerate(pairs)}

    def omega(i, j):
        """(variable, sign) with ω_ji = −ω_ij, or None when i = j."""
        if i == j:
            return None
        return (index[(i, j)], 1) if i < j else (index[(j, i)], -1)

    rels = []
    for i, j, k, l in itertools.product(range(dim_w), repeat=4):
        r: Poly = {}
        for (a, b), (c, d) in (((i, j), (k, l)), ((i, l), (k, j))):
            x, y = omega(a, b), omega(c, d)
            if x is not None and y is not None:
                _add(r, _monomial(n, x[0], y[0]), x[1] * y[1])
        if any(v != 0 for v in r.values()):
            rels.append(r)
    labels = [f"w{i + 1}w{j + 1}" for i, j in pairs]
    return FrobeniusModel("D", {"m": m}, alg, labels, rels)


def _check_form(q: Sequence) -> list:
    q = [Q(x) for x in q]
    if not q:
        raise ValueError("W must be nonzero")
    if any(x == 0 for x in q):
        raise ValueError("degenerate quadratic form")
    return q


def _model_bd(q: Sequence) -> FrobeniusModel:
    """K ⊕ W ⊕ Kμ with w_i w_j = δ_ij q_i μ, for the diagonal form q = Σ q_i x_i²."""
    q = _check_form(q)
    m = len(q)
    space = GradedSpace(((0, 1), (2, m), (4, 1)))

    def prod(p, i, r, j):
        if p == 0:
            return identity(space.dims[r])[:, j]
        if r == 0:
            return identity(space.dims[p])[:, i]
        if p == r == 2:
            return vector([q[i] if i == j else 0])
        return zeros(space.dims.get(p + r, 0))

    alg = algebra_from_products(space, prod, f"BD({m})")
    rels = []
    for i in range(m):
        for j in range(i + 1, m):
            rels.append({_monomial(m, i, j): ONE})
            rels.append({_monomial(m, i, i): 1 / q[i], _monomial(m, j, j): -1 / q[j]})
    return FrobeniusModel("BD", {"q": [str(x) for x in q]}, alg, [f"w{i + 1}" for i in range(m)], rels)


def frobenius_model(case: str, m: int | None = None, q: Sequence | None = None) -> FrobeniusModel:
    """Fundamental model of type A(m), C(m), D(m) or BD(W, q) with q a diagonal form."""
    case = case.upper()
    if case == "BD":
        if q is None:
            if m is None:
                raise ValueError("BD needs q or dim W")
            q = [1] * m
        return _model_bd(q)
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}; expected one of {CASES}")
    if m is None or m < 1:
        raise ValueError("m must be a positive integer")
    return {"A": _model_a, "C": _model_c, "D": _model_d}[case](m)


# ---------------------------------------------------------------------------
# presentations


def evaluate(alg: GradedAlgebra, gens: Sequence[np.ndarray], poly: Mapping[tuple[int, ...], object]) -> np.ndarray:
    """Value of a polynomial in the generators inside the algebra."""
    out = zeros(alg.space.total_dim)
    for e, c in poly.items():
        v = alg.unit()
        for i, k in enumerate(e):
            for _ in range(k):
                v = alg.multiply(v, gens[i])
        out = out + v * Q(c)
    return out


@dataclass
class PresentationReport:
    relations_vanish: bool
    model_dims: list[int]
    quotient_dims: list[int]
    first_failing_degree: int | None

    @property
    def ok(self) -> bool:
        return self.relations_vanish and self.first_failing_degree is None


def presentation_report(model: FrobeniusModel) -> PresentationReport:
    alg = model.algebra
    gens = model.generators
    vanish = all(is_zero(evaluate(alg, gens, r)) for r in model.relations)
    quotient = PolynomialQuotient(len(gens), model.relations, max_degree=alg.top_degree // 2 + 1)
    qd = list(quotient.dims)
    md = [alg.space.dim(2 * k) for k in range(alg.top_degree // 2 + 1)]
    failing = None
    for k in range(max(len(qd), len(md))):
        a = qd[k] if k < len(qd) else 0
        b = md[k] if k < len(md) else 0
        if a != b:
            failing = 2 * k
            break
    return PresentationReport(vanish, md, qd, failing)


def presentation_check(model: FrobeniusModel) -> bool:
    return presentation_report(model).ok


# ---------------------------------------------------------------------------
# level-k algebras


@dataclass
class LevelK:
    algebra: GradedAlgebra
    ambient: GradedAlgebra
    embeddings: dict[int, np.ndarray] = field(repr=False)


def level_k(model: FrobeniusModel, k: int) -> LevelK:
    """Subalgebra of the k-fold symmetric power generated by the diagonal copy of A_2."""
    if k < 1:
        raise ValueError("k must be at least 1")
    a = model.algebra
    amb = a
    # diagonal images of each generator, kept in step with the growing tensor power
    diag = list(model.generators)
    units = a.unit()
    for _ in range(k - 1):
        new = tensor_algebra(amb, a)
        sp = new.space
        diag_new = []
        for g_left, g_right in zip(diag, model.generators):
            diag_new.append(_tensor_vec(amb, a, new, g_left, units) + _tensor_vec(amb, a, new, amb.unit(), g_right))
        diag = diag_new
        amb = new
    alg, emb = subalgebra(amb, diag, 2, f"{a.name}(k={k})")
    return LevelK(alg, amb, emb)


def _tensor_vec(a: GradedAlgebra, b: GradedAlgebra, ab: GradedAlgebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """x ⊗ y in the tensor_algebra basis of ab = a ⊗ b."""
    out = zeros(ab.space.total_dim)
    for p in a.space.degrees:
        for i, cx in enumerate(x[a.space.slice(p)]):
            if cx == 0:
                continue
            for r in b.space.degrees:
                for j, cy in enumerate(y[b.space.slice(r)]):
                    if cy == 0:
                        continue
                    d, idx = tensor_cell(a.space, b.space, p, i, r, j)
                    out[ab.space.offsets[d] + idx] += cx * cy
    return out


# ---------------------------------------------------------------------------
# the BD level-k algebra as a quotient of Sym(W)


class NoIsotropicVector(ValueError):
    pass


def _qform(q: Sequence, x: Sequence):
    return sum((Q(a) * Q(b) * Q(b) for a, b in zip(q, x)), Q(0))


def _polar(q: Sequence, x: Sequence, y: Sequence):
    return sum((2 * Q(a) * Q(b) * Q(c) for a, b, c in zip(q, x, y)), Q(0))


def isotropic_vectors(q: Sequence, box: int = 6):
    """Rational points of the quadric q = 0: one found by search, the rest by projecting through it."""
    m = len(q)
    seed = None
    for b in range(1, box + 1):
        for x in itertools.product(range(-b, b + 1), repeat=m):
            if any(x) and _qform(q, x) == 0:
                seed = [Q(v) for v in x]
                break
        if seed is not None:
            break
    if seed is None:
        raise NoIsotropicVector(f"no rational isotropic vector for q = {list(q)} in box {box}")
    yield seed
    for b in itertools.count(1):
        for v in itertools.product(range(-b, b + 1), repeat=m):
            if max(abs(t) for t in v) != b:
                continue
            qv = _qform(q, v)
            if qv == 0:
                point = [Q(t) for t in v]
            else:
                s = _polar(q, seed, v)
                point = [qv * a - s * Q(t) for a, t in zip(seed, v)]
            if any(t != 0 for t in point):
                yield point


def linear_power(x: Sequence, d: int) -> Poly:
    """(Σ x_i X_i)^d expanded in monomials."""
    m = len(x)
    out: Poly = {}
    for e in _exponents(m, d):
        coeff = math.factorial(d)
        for t in e:
            coeff //= math.factorial(t)
        c = Q(coeff)
        for xi, t in zip(x, e):
            c *= Q(xi) ** t
        if c != 0:
            out[e] = c
    return out


def _exponents(m: int, d: int):
    if m == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _exponents(m - 1, d - a):
            yield (a,) + rest


def sym_dim(m: int, d: int) -> int:
    return math.comb(m + d - 1, d) if d >= 0 else 0


def bd_level_dims(m: int, k: int) -> list[int]:
    """Degreewise dims t^{k−i}Sym^i(W) for i ≤ k, then μ^{j}Sym^{k−j}(W) for j = 1..k."""
    return [sym_dim(m, i) for i in range(k + 1)] + [sym_dim(m, k - j) for j in range(1, k + 1)]


@dataclass
class BDLevelK:
    q: list
    k: int
    quotient: PolynomialQuotient = field(repr=False)
    algebra: GradedAlgebra = field(repr=False)
    isotropic_used: int
    invariant_dims: list[int]
    u: Poly
    soccle: list[tuple[object, object]]

    @property
    def soccle_ok(self) -> bool:
        return all(a == b for a, b in self.soccle)

    @property
    def invariant_total(self) -> int:
        return sum(self.invariant_dims)


def so_generators(q: Sequence) -> list[np.ndarray]:
    """Basis Q^{-1}(E_ij − E_ji) of so(W, q) for q diagonal."""
    m = len(q)
    out = []
    for i, j in itertools.combinations(range(m), 2):
        x = zeros(m, m)
        x[i, j] = 1 / Q(q[i])
        x[j, i] = -1 / Q(q[j])
        out.append(x)
    return out


def _derivation_block(quot: PolynomialQuotient, x: np.ndarray, d: int) -> np.ndarray:
    """Matrix on degree d of the quotient of the derivation extending x : W → W."""
    mons = quot.monomials[d]
    out = zeros(len(mons), len(mons))
    m = quot.nvars
    for col, e in enumerate(mons):
        poly: Poly = {}
        for i, t in enumerate(e):
            if t == 0:
                continue
            base = list(e)
            base[i] -= 1
            for l in range(m):
                if x[l, i] == 0:
                    continue
                f = list(base)
                f[l] += 1
                _add(poly, tuple(f), t * x[l, i])
        if poly:
            _, v = quot.normal_form(poly)
            out[:, col] = v
    return out


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for e, c in a.items():
        for f, d in b.items():
            _add(out, tuple(x + y for x, y in zip(e, f)), Q(c) * Q(d))
    return out


def _poly_pow(a: Poly, k: int, m: int) -> Poly:
    out: Poly = {tuple([0] * m): ONE}
    for _ in range(k):
        out = _poly_mul(out, a)
    return out


def bd_level_k_direct(q: Sequence, k: int) -> BDLevelK:
    """Sym(W)/I_k with I_k spanned by (k+1)-st powers of isotropic vectors, and its so(W, q)-invariants."""
    q = _check_form(q)
    if k < 1:
        raise ValueError("k must be at least 1")
    m = len(q)
    target = sym_dim(m, k + 1) - sym_dim(m, k - 1)
    builder = EchelonBuilder(sym_dim(m, k + 1))
    order = list(_exponents(m, k + 1))
    pos = {e: i for i, e in enumerate(order)}
    rels, used = [], 0
    for point in isotropic_vectors(q):
        used += 1
        p = linear_power(point, k + 1)
        v = zeros(len(order))
        for e, c in p.items():
            v[pos[e]] = c
        if builder.insert(v):
            rels.append(p)
        if builder.dim == target:
            break
        if used > 50 * target:
            raise ArithmeticError("isotropic powers do not reach the expected span")
    quot = PolynomialQuotient(m, rels, max_degree=2 * k + 1)
    expected = bd_level_dims(m, k)
    if quot.dims != expected:
        raise ArithmeticError(f"quotient dims {quot.dims} differ from {expected}")
    alg = quot.algebra(2, f"Sym(W)/I_{k}")
    gens = so_generators(q)
    inv = []
    for d in range(len(quot.monomials)):
        blocks = [_derivation_block(quot, x, d) for x in gens]
        inv.append(kernel(np.vstack(blocks)).dim if blocks else len(quot.monomials[d]))
    # u ∈ Sym²W represents the inverse form, normalized so that u ↦ 1 at level one
    u: Poly = {_monomial(m, i, i): 1 / (q[i] * m) for i in range(m)}
    _, uk = quot.normal_form(_poly_pow(u, k, m))
    soccle = []
    for i in range(m):
        lhs_poly = _poly_mul({_monomial(m, i, i): ONE}, _poly_pow(u, k - 1, m))
        _, lhs = quot.normal_form(lhs_poly)
        soccle.append((_ratio(lhs, uk), q[i]))
    return BDLevelK(list(q), k, quot, alg, used, inv, u, soccle)


def _ratio(v: np.ndarray, w: np.ndarray):
    """c with v = c·w, or None."""
    nz = np.flatnonzero(w != 0)
    if not len(nz):
        return None
    c = v[nz[0]] / w[nz[0]]
    return c if is_zero(v - w * c) else None


def level_k_matches_direct(q: Sequence, k: int) -> bool:
    """Compare the level-k BD algebra with Sym(W)/I_k through w_i ↦ diagonal w_i."""
    lk = level_k(frobenius_model("BD", q=q), k).algebra
    direct = bd_level_k_direct(q, k)
    quot = direct.quotient
    if lk.dims != direct.algebra.dims:
        return False
    gens = [lk.space.basis_vector(2, i) for i in range(len(q))]
    for d, mons in enumerate(quot.monomials):
        imgs = [evaluate(lk, gens, {e: ONE})[lk.space.slice(2 * d)] for e in mons]
        if rank(np.column_stack(imgs)) != len(mons):
            return False
    # the generator map kills the relation ideal and respects the normal forms
    for d, mons in enumerate(quot.monomials):
        if d == 0:
            continue
        basis_imgs = np.column_stack([evaluate(lk, gens, {e: ONE})[lk.space.slice(2 * d)] for e in mons])
        for e in _exponents(len(q), d):
            nf = quot.normal_form_monomial(e)
            if not is_zero(evaluate(lk, gens, {e: ONE})[lk.space.slice(2 * d)] - matmul(basis_imgs, nf)):
                return False
    top = len(quot.monomials)
    for e in _exponents(len(q), top):
        if not is_zero(evaluate(lk, gens, {e: ONE})):
            return False
    return True


# ---------------------------------------------------------------------------
# derivation property of the degree-0 part


def derivation_check(model: FrobeniusModel, g: GradedLieAlgebra) -> bool:
    """Elements of g_0 killing 1 ∈ A act on A by derivations."""
    alg = model.algebra
    n = alg.depth
    sp = g.ambient
    g0 = g.piece(0)
    if not g0:
        return True
    low = np.column_stack([x.block(-n)[:, 0] for x in g0])
    ann = kernel(low)
    ops = []
    for c in ann.basis:
        op = None
        for coef, x in zip(c, g0):
            if coef != 0:
                op = x * coef if op is None else op + x * coef
        if op is not None:
            ops.append(op)
    basis = [alg.basis(d, i) for d in alg.space.degrees for i in range(alg.space.dim(d))]

    for op in ops:
        for x in basis:
            for y in basis:
                lhs = op.apply(alg.multiply(x, y))
                rhs = alg.multiply(op.apply(x), y) + alg.multiply(x, op.apply(y))
                if not is_zero(lhs - rhs):
                    return False
    return True


EXPECTED_CLOSURE = {
    "A": lambda m: 4 * m * m - 1,
    "C": lambda m: m * (2 * m + 1),
    "D": lambda m: 2 * m * (4 * m - 1),
    "BD": lambda m: (m + 2) * (m + 1) // 2,
}
