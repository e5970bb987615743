"""Weyl coinvariant algebras and projective-bundle cohomology with the Leray bigrading."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exactla import ONE, Q, Subspace, identity, inverse, is_zero, kernel, mat_equal, matmul, solve, vector, zeros
from .graded import (
    GradedAlgebra,
    GradedMap,
    GradedSpace,
    PolynomialQuotient,
    algebra_from_products,
    h_of,
)
from .lefmod import LefschetzModule, find_lefschetz_element, generate_g
from .liegen import GradedLieAlgebra, aut_dimension, preserves_form, span_algebra

Poly = dict[tuple[int, ...], object]

# degrees of the basic invariants
INVARIANT_DEGREES = {
    "A": lambda r: list(range(2, r + 2)),
    "B": lambda r: [2 * i for i in range(1, r + 1)],
    "C": lambda r: [2 * i for i in range(1, r + 1)],
    "D": lambda r: sorted([2 * i for i in range(1, r)] + [r]),
    "G": lambda r: [2, 6],
}


def weyl_poincare(kind: str, rank: int) -> list[int]:
    """Coefficients of Π (1 + t + … + t^{d−1}) over the invariant degrees d."""
    poly = [1]
    for d in INVARIANT_DEGREES[kind](rank):
        new = [0] * (len(poly) + d - 1)
        for i, c in enumerate(poly):
            for j in range(d):
                new[i + j] += c
        poly = new
    return poly


def _elementary(nvars: int, k: int, power: int = 1) -> Poly:
    """e_k(x_1^p, …, x_n^p)."""
    out: Poly = {}
    for s in itertools.combinations(range(nvars), k):
        e = [0] * nvars
        for i in s:
            e[i] = power
        out[tuple(e)] = ONE
    return out


def _check_type(kind: str, rank: int) -> None:
    if kind == "G":
        if rank != 2:
            raise ValueError("G exists only in rank 2")
        return
    if kind not in "ABCD" or len(kind) != 1:
        raise ValueError(f"unsupported Weyl type {kind!r}")
    low = {"A": 1, "B": 2, "C": 2, "D": 3}[kind]
    if not low <= rank <= 4:
        raise ValueError(f"type {kind} supported for ranks {low}..4")


def invariant_generators(kind: str, rank: int) -> tuple[int, list[Poly]]:
    """(number of coordinates, basic invariants) in the standard coordinates of each type."""
    _check_type(kind, rank)
    if kind == "A":
        n = rank + 1
        return n, [_elementary(n, k) for k in range(1, n + 1)]
    if kind in "BC":
        return rank, [_elementary(rank, k, 2) for k in range(1, rank + 1)]
    if kind == "D":
        return rank, [_elementary(rank, k, 2) for k in range(1, rank)] + [_elementary(rank, rank)]
    # G2 on the plane x1 + x2 + x3 = 0: the linear form, Σx², (x1x2x3)²
    return 3, [_elementary(3, 1), {(2, 0, 0): ONE, (0, 2, 0): ONE, (0, 0, 2): ONE}, {(2, 2, 2): ONE}]


@dataclass
class CoinvariantAlgebra:
    weyl_type: str
    rank: int
    algebra: GradedAlgebra
    quotient: PolynomialQuotient = field(repr=False)

    @property
    def dims(self) -> list[int]:
        return list(self.quotient.dims)


def coinvariant_algebra(kind: str, rank: int) -> CoinvariantAlgebra:
    kind = kind.upper()
    n, invs = invariant_generators(kind, rank)
    quot = PolynomialQuotient(n, invs)
    alg = quot.algebra(2, f"flag({kind}{rank})")
    expected = weyl_poincare(kind, rank)
    if quot.dims != expected:
        raise ArithmeticError(f"coinvariant dims {quot.dims} differ from {expected}")
    return CoinvariantAlgebra(kind, rank, alg, quot)


@dataclass
class FlagLie:
    g: GradedLieAlgebra
    aut_dim: int
    symmetric: bool
    inside_aut: bool

    @property
    def maximal(self) -> bool:
        return self.inside_aut and self.g.dim == self.aut_dim


def algebra_lie(alg: GradedAlgebra, box: int | None = None) -> FlagLie:
    """Closure over the full degree-2 part, compared with the automorphisms of the Poincaré form."""
    L = LefschetzModule.from_algebra(alg)
    g = generate_g(L, box).g
    form = L.form
    symmetric = form.symmetry_sign() == 1
    return FlagLie(g, aut_dimension(alg.total_dim, symmetric), symmetric, preserves_form(g, form))


def flag_lie(kind: str, rank: int, box: int | None = None) -> FlagLie:
    return algebra_lie(coinvariant_algebra(kind, rank).algebra, box)


# ---------------------------------------------------------------------------
# projective bundles


@dataclass
class BundleAlgebra:
    base: GradedAlgebra = field(repr=False)
    d: int
    chern: list[np.ndarray] = field(repr=False)
    algebra: GradedAlgebra = field(repr=False)
    cells: list[tuple[int, int, int]] = field(repr=False)

    @property
    def bigrading(self) -> list[tuple[int, int]]:
        """(horizontal, vertical) degree of each basis vector b·ξ^j in flat order."""
        m = self.base.depth
        return [(deg - m, 2 * j - self.d) for deg, _, j in self.cells]

    def xi(self) -> np.ndarray:
        sp = self.algebra.space
        v = zeros(sp.total_dim)
        v[self._flat[(0, 0, 1)]] = ONE
        return v

    def base_class(self, vec: np.ndarray) -> np.ndarray:
        """Pull back a base element (full base coordinates)."""
        out = zeros(self.algebra.space.total_dim)
        for deg in self.base.space.degrees:
            for i, c in enumerate(vec[self.base.space.slice(deg)]):
                if c != 0:
                    out[self._flat[(deg, i, 0)]] = c
        return out

    @property
    def _flat(self) -> dict[tuple[int, int, int], int]:
        return {cell: k for k, cell in enumerate(self.cells)}

    def chern_vanish(self) -> bool:
        return all(is_zero(c) for c in self.chern)


def bundle_cohomology(base: GradedAlgebra, d: int, chern: Sequence | None = None) -> BundleAlgebra:
    """base[ξ]/(ξ^{d+1} + c_2 ξ^{d−1} + … + c_{d+1}) with ξ of degree 2.

    ``chern[i]`` holds c_{i+2} in the degree-2(i+2) coordinates of the base (absent or None means 0).
    """
    if d < 1:
        raise ValueError("fiber dimension must be positive")
    bsp = base.space
    chern = list(chern or [])
    if len(chern) > d:
        raise ValueError(f"expected at most {d} classes c_2..c_{d + 1}")
    classes = []
    for i in range(2, d + 2):
        c = chern[i - 2] if i - 2 < len(chern) else None
        full = zeros(bsp.total_dim)
        deg = 2 * i
        if c is not None:
            c = vector(c) if not isinstance(c, np.ndarray) else c
            if deg not in bsp.dims:
                if not is_zero(c):
                    raise ValueError(f"c_{i} must have degree {deg}, which the base lacks")
            else:
                if len(c) != bsp.dims[deg]:
                    raise ValueError(f"c_{i} needs {bsp.dims[deg]} coordinates")
                full[bsp.slice(deg)] = c
        classes.append(full)
    # basis b·ξ^j ordered by total degree, then j, then base index
    cells_by_deg: dict[int, list[tuple[int, int, int]]] = {}
    for deg, n in bsp.pieces:
        for i in range(n):
            for j in range(d + 1):
                cells_by_deg.setdefault(deg + 2 * j, []).append((deg, i, j))
    for v in cells_by_deg.values():
        v.sort(key=lambda c: (c[2], c[0], c[1]))
    space = GradedSpace(tuple((deg, len(v)) for deg, v in sorted(cells_by_deg.items())))
    index = {deg: {c: k for k, c in enumerate(v)} for deg, v in cells_by_deg.items()}

    def reduce(poly: dict[int, np.ndarray]) -> dict[int, np.ndarray]:
        """Rewrite ξ^s for s > d using ξ^{d+1} = −Σ c_i ξ^{d+1−i}."""
        poly = dict(poly)
        while max(poly) > d:
            s = max(poly)
            coeff = poly.pop(s)
            for i, c in enumerate(classes, start=2):
                if not is_zero(c):
                    poly[s - i] = poly.get(s - i, zeros(bsp.total_dim)) - base.multiply(coeff, c)
            if not poly:
                poly[0] = zeros(bsp.total_dim)
        return poly

    def prod(p, a, q, b):
        d1, i1, j1 = cells_by_deg[p][a]
        d2, i2, j2 = cells_by_deg[q][b]
        coeff = base.multiply(bsp.basis_vector(d1, i1), bsp.basis_vector(d2, i2))
        out = zeros(space.dims[p + q])
        for s, vec in reduce({j1 + j2: coeff}).items():
            for deg in bsp.degrees:
                for i, c in enumerate(vec[bsp.slice(deg)]):
                    if c != 0:
                        out[index[p + q][(deg, i, s)]] += c
        return out

    alg = algebra_from_products(space, prod, f"{base.name}[xi]/P")
    flat_cells = [c for deg in space.degrees for c in cells_by_deg[deg]]
    return BundleAlgebra(base, d, classes, alg, flat_cells)


def a2_flag_bundle() -> BundleAlgebra:
    """The A2 flag variety as a line bundle over the projective plane.

    With x the hyperplane class and ξ' = ξ + x/2 the relation ξ² + xξ + x² = 0 becomes ξ'² + (3/4)x² = 0.
    """
    from .graded import truncated_polynomial

    return bundle_cohomology(truncated_polynomial(2), 1, [vector([Q("3/4")])])


# ---------------------------------------------------------------------------
# Leray splitting


@dataclass
class LeraySplit:
    g: GradedLieAlgebra = field(repr=False)
    h_hor: GradedMap = field(repr=False)
    h_ver: GradedMap = field(repr=False)
    in_g: bool
    commute: bool
    splits_filtration: bool
    base_bidegree_ok: bool
    xi_vertical_ok: bool
    g_hor: GradedLieAlgebra | None = field(repr=False)
    g_ver: GradedLieAlgebra | None = field(repr=False)
    product_embedded: bool
    product_dim: int

    @property
    def product_is_everything(self) -> bool:
        return self.product_embedded and self.product_dim == self.g.dim


def _solve_in(g_part: list[GradedMap], fn, target: np.ndarray) -> np.ndarray | None:
    """Coefficients c with fn(Σ c_i x_i) = target, fn linear returning flat vectors."""
    cols = np.column_stack([fn(x) for x in g_part])
    return solve(cols, target)


def _combo(parts: list[GradedMap], coeffs, space: GradedSpace, degree: int) -> GradedMap:
    out = GradedMap.zero(space, degree)
    for c, x in zip(coeffs, parts):
        if c != 0:
            out = out + x * c
    return out


def horizontal_grading(g: GradedLieAlgebra, e: GradedMap) -> GradedMap:
    """Grading element h' = [e, f] of an sl2-triple (e, h', f) with f of degree −2 inside g."""
    sp = g.ambient
    neg = g.piece(-2)
    two_e = (e * 2).flat()
    z = _solve_in(neg, lambda x: e.bracket(e.bracket(x)).flat(), -two_e)
    if z is None:
        raise ArithmeticError("e is not in the image of ad(e)^2 on degree −2")
    h = e.bracket(_combo(neg, z, sp, -2))
    # f with [e, f] = h and [h, f] = −2f
    cols = np.column_stack([np.concatenate([e.bracket(x).flat(), (h.bracket(x) + x * 2).flat()]) for x in neg])
    target = np.concatenate([h.flat(), zeros(len((h.bracket(neg[0]) + neg[0] * 2).flat()))])
    f = solve(cols, target)
    if f is None:
        raise ArithmeticError("no sl2-triple through e in degree −2")
    return e.bracket(_combo(neg, f, sp, -2))


def _eigenbasis(h1: GradedMap, h2: GradedMap) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Joint eigenbasis (columns) of two commuting degree-0 diagonalizable maps with integer spectra."""
    sp = h1.space
    cols, labels = [], []
    n = sp.total_dim
    for deg in sp.degrees:
        a, b = h1.block(deg), h2.block(deg)
        size = a.shape[0]
        found = 0
        for lam in range(-2 * n - 2, 2 * n + 3):
            k1 = kernel(a - identity(size) * lam)
            if not k1.dim:
                continue
            for v in k1.basis:
                w = zeros(n)
                w[sp.slice(deg)] = v
                cols.append(w)
                labels.append((lam, deg - lam))
                found += 1
        if found != size:
            raise ArithmeticError("grading element is not diagonalizable over the integers")
    return np.column_stack(cols), labels


def _bicomponent(op: GradedMap, basis: np.ndarray, labels, bideg: tuple[int, int]) -> np.ndarray:
    """Dense (original coordinates) component of op of the given bidegree."""
    inv = inverse(basis)
    m = matmul(matmul(inv, op.to_dense()), basis)
    out = zeros(*m.shape)
    for r, (hr, vr) in enumerate(labels):
        for c, (hc, vc) in enumerate(labels):
            if m[r, c] != 0 and (hr - hc, vr - vc) == bideg:
                out[r, c] = m[r, c]
    return matmul(matmul(basis, out), inv)


def _regraded_module(ops: list[np.ndarray], basis: np.ndarray, labels, which: int):
    """Module on the eigenbasis graded by one coordinate of the bidegree; ops given densely."""
    order = sorted(range(len(labels)), key=lambda i: (labels[i][which], i))
    perm = basis[:, order]
    degs = [labels[i][which] for i in order]
    pieces = []
    for dgr in degs:
        if pieces and pieces[-1][0] == dgr:
            pieces[-1] = (dgr, pieces[-1][1] + 1)
        else:
            pieces.append((dgr, 1))
    space = GradedSpace(tuple(pieces))
    inv = inverse(perm)
    maps = [GradedMap.from_dense(space, matmul(matmul(inv, x), perm), 2) for x in ops if not is_zero(x)]
    return space, perm, maps


def _lift(sub: GradedLieAlgebra, perm: np.ndarray, total: GradedSpace) -> list[GradedMap]:
    inv = inverse(perm)
    out = []
    for x in sub.basis:
        dense = matmul(matmul(perm, x.to_dense()), inv)
        out.append(GradedMap.from_dense(total, dense))
    return out


def leray_split(bundle: BundleAlgebra, box: int | None = None) -> LeraySplit:
    alg = bundle.algebra
    L = LefschetzModule.from_algebra(alg)
    g = generate_g(L, box).g
    sp = L.space
    h = h_of(sp)
    m = bundle.base.depth
    base_classes = [bundle.base_class(bundle.base.basis(2, i)) for i in range(bundle.base.space.dim(2))]
    from .graded import cup_operator

    base_ops = [cup_operator(alg, c[alg.space.slice(2)]) for c in base_classes]
    xi_op = cup_operator(alg, bundle.xi()[alg.space.slice(2)])
    if m > 0:
        base_L = LefschetzModule.from_algebra(bundle.base)
        coeffs = find_lefschetz_element(base_L, box)
        e = _combo(base_ops, coeffs, sp, 2)
        h_hor = horizontal_grading(g, e)
    else:
        h_hor = GradedMap.zero(sp, 0)
    h_ver = h - h_hor
    in_g = g.contains(h_hor) and g.contains(h_ver)
    commute = h_hor.bracket(h_ver).is_zero()
    basis, labels = _eigenbasis(h_hor, h)
    labels = [(a, b) for a, b in labels]
    # Leray filtration: span of b·ξ^j with horizontal degree ≥ t equals the h_hor eigenspaces ≥ t
    naive = bundle.bigrading
    splits = True
    for t in sorted({x for x, _ in naive}):
        ler = Subspace.span([identity(sp.total_dim)[:, i] for i, (x, _) in enumerate(naive) if x >= t], sp.total_dim)
        eig = Subspace.span([basis[:, i] for i, (x, _) in enumerate(labels) if x >= t], sp.total_dim)
        splits = splits and ler == eig
    base_ok = all(
        mat_equal(_bicomponent(x, basis, labels, (2, 0)), x.to_dense()) for x in base_ops
    )
    xi_ver = _bicomponent(xi_op, basis, labels, (0, 2))
    xi_ok = not is_zero(xi_ver) and all(
        is_zero(_bicomponent(xi_op, basis, labels, (a, 2 - a))) for a in range(-2 * sp.top - 2, 0)
    )
    # horizontal and vertical Lie algebras lifted into g
    hor_ops = [_bicomponent(x, basis, labels, (2, 0)) for x in base_ops + [xi_op]]
    ver_ops = [_bicomponent(x, basis, labels, (0, 2)) for x in base_ops + [xi_op]]
    g_hor = g_ver = None
    lifted: list[GradedMap] = []
    dims = 0
    product = True
    for ops, which in ((hor_ops, 0), (ver_ops, 1)):
        ops = [x for x in ops if not is_zero(x)]
        if not ops:
            continue
        space, perm, maps = _regraded_module(ops, basis, labels, which)
        sub = generate_g(LefschetzModule(space, _independent(maps), None), box).g
        if which == 0:
            g_hor = sub
        else:
            g_ver = sub
        lifts = _lift(sub, perm, sp)
        product = product and all(g.contains(x) for x in lifts)
        lifted.append(lifts)
        dims += sub.dim
    if len(lifted) == 2:
        product = product and all(x.bracket(y).is_zero() for x in lifted[0] for y in lifted[1])
        both = span_algebra(sp, lifted[0] + lifted[1])
        product = product and both.dim == dims
    return LeraySplit(g, h_hor, h_ver, in_g, commute, splits, base_ok, xi_ok, g_hor, g_ver, product, dims)


def _independent(maps: list[GradedMap]) -> list[GradedMap]:
    out, flats = [], []
    for x in maps:
        cand = flats + [x.flat()]
        if Subspace.span(cand, len(cand[0])).dim == len(cand):
            out.append(x)
            flats = cand
    return out
