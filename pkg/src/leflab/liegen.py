"""Lie closures inside the graded endomorphism algebra, Killing forms and structure data."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .exactla import (
    ONE,
    EchelonBuilder,
    Q,
    Subspace,
    inverse,
    is_zero,
    kernel,
    matmul,
    rank,
    signature,
    trace,
    vector,
    zeros,
)
from .graded import GradedMap, GradedSpace, PairingForm, h_of, infinitesimal_invariance


@dataclass
class GradedLieAlgebra:
    """Bracket-closed span of homogeneous operators, with a basis grouped by degree.

    The basis is ordered by increasing degree.  When the grading operator lies in the
    algebra it replaces one canonical degree-0 basis vector and ``h_index`` records it.
    """

    ambient: GradedSpace
    basis: list[GradedMap]
    h_index: int | None = None
    _coord: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def degrees(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, b in enumerate(self.basis):
            out.setdefault(b.degree, []).append(i)
        return dict(sorted(out.items()))

    def piece(self, degree: int) -> list[GradedMap]:
        return [self.basis[i] for i in self.degrees.get(degree, [])]

    def _solver(self, degree: int):
        if degree not in self._coord:
            idx = self.degrees.get(degree, [])
            if not idx:
                self._coord[degree] = None
            else:
                rows = np.vstack([self.basis[i].flat().reshape(1, -1) for i in idx])
                piv = Subspace.span(list(rows)).pivots
                self._coord[degree] = (idx, piv, inverse(rows[:, piv]), rows)
        return self._coord[degree]

    def coordinates(self, x: GradedMap) -> np.ndarray:
        """Coordinates of x in the basis; raises ValueError if x is not in the algebra."""
        out = zeros(self.dim)
        if x.is_zero():
            return out
        s = self._solver(x.degree)
        if s is None:
            raise ValueError("element not in the Lie algebra")
        idx, piv, inv, rows = s
        v = x.flat()
        c = matmul(v[piv].reshape(1, -1), inv).reshape(-1)
        if not (matmul(c.reshape(1, -1), rows).reshape(-1) == v).all():
            raise ValueError("element not in the Lie algebra")
        out[idx] = c
        return out

    def contains(self, x: GradedMap) -> bool:
        try:
            self.coordinates(x)
            return True
        except ValueError:
            return False

    def element(self, coords: Sequence) -> GradedMap:
        """Linear combination of basis elements; must be homogeneous."""
        coords = vector(coords) if not isinstance(coords, np.ndarray) else coords
        degs = {self.basis[i].degree for i in np.flatnonzero(coords != 0)}
        if len(degs) > 1:
            raise ValueError("inhomogeneous combination")
        if not degs:
            return GradedMap.zero(self.ambient, 0)
        d = degs.pop()
        out = GradedMap.zero(self.ambient, d)
        for i in np.flatnonzero(coords != 0):
            out = out + self.basis[i] * coords[i]
        return out

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """c[i, j] = coordinates of [b_i, b_j]."""
        n = self.dim
        c = np.empty((n, n, n), dtype=object)
        c.fill(Q(0))
        for i in range(n):
            for j in range(i + 1, n):
                v = self.coordinates(self.basis[i].bracket(self.basis[j]))
                c[i, j] = v
                c[j, i] = -v
        return c

    def ad(self, i: int) -> np.ndarray:
        """Matrix of ad b_i in the basis (columns are images of basis vectors)."""
        return self.structure_constants[i].T.copy()

    @cached_property
    def ad_matrices(self) -> list[np.ndarray]:
        return [self.ad(i) for i in range(self.dim)]

    def __contains__(self, x: GradedMap) -> bool:
        return self.contains(x)

    def subspace_of(self, degree: int) -> Subspace:
        return Subspace.span([b.flat() for b in self.piece(degree)])

    def same_as(self, other: "GradedLieAlgebra") -> bool:
        return all(other.contains(b) for b in self.basis) and self.dim == other.dim

    def __repr__(self) -> str:
        dims = {d: len(v) for d, v in self.degrees.items()}
        return f"GradedLieAlgebra(dim={self.dim}, degrees={dims})"


def lie_closure(
    generators: Iterable[GradedMap], ambient: GradedSpace | None = None, max_dim: int | None = None
) -> GradedLieAlgebra:
    """Smallest bracket-closed span containing the generators."""
    gens = [g for g in generators if not g.is_zero()]
    if ambient is None:
        if not gens:
            raise ValueError("ambient space needed for an empty generator list")
        ambient = gens[0].space
    builders: dict[int, EchelonBuilder] = {}
    elements: list[GradedMap] = []

    def add(x: GradedMap) -> None:
        if x.is_zero():
            return
        flat = x.flat()
        b = builders.setdefault(x.degree, EchelonBuilder(len(flat)))
        if b.insert(flat):
            elements.append(x)
            if max_dim is not None and len(elements) > max_dim:
                raise RuntimeError(f"closure exceeded {max_dim} dimensions")

    for g in gens:
        if g.space != ambient:
            raise ValueError("generator acts on a different space")
        add(g)
    j = 0
    while j < len(elements):
        for i in range(j):
            add(elements[i].bracket(elements[j]))
        j += 1
    return _canonical(ambient, builders)


def _canonical(ambient: GradedSpace, builders: dict[int, EchelonBuilder]) -> GradedLieAlgebra:
    h = h_of(ambient)
    basis: list[GradedMap] = []
    h_index = None
    for d in sorted(builders):
        rows = [r.copy() for r in builders[d].rows]
        if d == 0 and rows:
            hv = h.flat()
            b = builders[0]
            if not is_zero(hv) and b.contains(hv):
                # replace the row whose pivot coordinate h uses first
                sub = Subspace(b.ambient_dim, np.vstack([r.reshape(1, -1) for r in rows]), list(b.pivots))
                coords = sub.coordinates(hv)
                pos = int(np.flatnonzero(coords != 0)[0])
                rows[pos] = hv
                h_index = len(basis) + pos
        basis.extend(GradedMap.from_flat(ambient, d, r) for r in rows)
    return GradedLieAlgebra(ambient, basis, h_index)


def span_algebra(ambient: GradedSpace, elements: Iterable[GradedMap]) -> GradedLieAlgebra:
    """Wrap a known bracket-closed spanning set without closing it again."""
    builders: dict[int, EchelonBuilder] = {}
    for x in elements:
        if x.is_zero():
            continue
        flat = x.flat()
        builders.setdefault(x.degree, EchelonBuilder(len(flat))).insert(flat)
    return _canonical(ambient, builders)


# ---------------------------------------------------------------------------
# structure


@dataclass(frozen=True)
class KillingData:
    killing: np.ndarray
    semisimple: bool
    signature: tuple[int, int, int]


def killing_form(g: GradedLieAlgebra) -> np.ndarray:
    ads = g.ad_matrices
    n = g.dim
    k = zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            v = trace(matmul(ads[i], ads[j]))
            k[i, j] = v
            k[j, i] = v
    return k


def killing_semisimple(g: GradedLieAlgebra) -> KillingData:
    k = killing_form(g)
    sig = signature(k)
    return KillingData(k, sig[2] == 0 and g.dim > 0, sig)


def adh_grading(g: GradedLieAlgebra) -> dict[int, int]:
    """Eigenspace dimensions of ad h, checked against the stored homogeneous basis."""
    if g.h_index is None:
        raise ValueError("the grading operator is not in the Lie algebra")
    h = g.basis[g.h_index]
    for b in g.basis:
        if not (h.bracket(b) - b * b.degree).is_zero():
            raise ArithmeticError("ad h is not diagonal on the basis")
    return {d: len(v) for d, v in g.degrees.items()}


def center(g: GradedLieAlgebra) -> Subspace:
    """Centre, in coordinates of the basis of g."""
    n = g.dim
    if n == 0:
        return Subspace.zero(0)
    c = g.structure_constants
    # row (j, k): Σ_i x_i c[i, j, k] = 0
    rows = c.transpose(1, 2, 0).reshape(n * n, n)
    return kernel(rows)


def minimal_ideal(g: GradedLieAlgebra, x: Sequence) -> Subspace:
    """Smallest ideal containing x (coordinates in the basis of g)."""
    x = vector(x) if not isinstance(x, np.ndarray) else x
    b = EchelonBuilder(g.dim)
    queue = [x] if b.insert(x) else []
    ads = g.ad_matrices
    while queue:
        v = queue.pop()
        for a in ads:
            w = matmul(a, v)
            if b.insert(w):
                queue.append(w)
    return b.subspace()


def derived_dim(g: GradedLieAlgebra) -> int:
    n = g.dim
    if n == 0:
        return 0
    c = g.structure_constants.reshape(n * n, n)
    return rank(c)


def is_abelian(g: GradedLieAlgebra) -> bool:
    return is_zero(g.structure_constants)


def _cyclic_words(g: GradedLieAlgebra, x: np.ndarray) -> tuple[list[np.ndarray], list[np.ndarray]] | None:
    """Basis vectors u_k = W_k x of the ideal generated by x together with the operators W_k."""
    n = g.dim
    ads = g.ad_matrices
    from .exactla import identity

    b = EchelonBuilder(n)
    vecs: list[np.ndarray] = []
    ops: list[np.ndarray] = []
    b.insert(x)
    vecs.append(x)
    ops.append(identity(n))
    pos = 0
    while pos < len(vecs):
        for a in ads:
            w = matmul(a, vecs[pos])
            if b.insert(w):
                vecs.append(w)
                ops.append(matmul(a, ops[pos]))
        pos += 1
    if len(vecs) != n:
        return None
    return vecs, ops


def centroid(g: GradedLieAlgebra) -> list[np.ndarray] | None:
    """Basis of the commutant of ad(g) in End(g), for g generated as an ideal by a basis vector.

    A commuting map T is determined by T(x) for such an x, so only dim g unknowns occur.
    Returns None if no basis vector generates g as an ideal.
    """
    n = g.dim
    words = None
    for i in range(n):
        e = zeros(n)
        e[i] = ONE
        words = _cyclic_words(g, e)
        if words is not None:
            break
    if words is None:
        return None
    vecs, ops = words
    basis_mat = np.column_stack(vecs)
    inv = inverse(basis_mat)
    ads = g.ad_matrices
    blocks = []
    for a in ads:
        # ad_a u_k expanded in the u-basis
        coeff = matmul(inv, matmul(a, basis_mat))
        for k in range(n):
            lhs = matmul(a, ops[k])
            rhs = zeros(n, n)
            for l in np.flatnonzero(coeff[:, k] != 0):
                rhs = rhs + ops[l] * coeff[l, k]
            blocks.append(lhs - rhs)
    system = np.vstack(blocks)
    sols = kernel(system)
    out = []
    for v in sols.basis:
        images = np.column_stack([matmul(ops[k], v) for k in range(n)])
        out.append(matmul(images, inv))
    return out


def _min_poly(t: np.ndarray) -> list:
    """Monic minimal polynomial coefficients (constant term first) via Krylov iteration on matrices."""
    from .exactla import identity, solve

    n = t.shape[0]
    powers = [identity(n).reshape(-1)]
    cur = identity(n)
    while True:
        cur = matmul(t, cur)
        flat = cur.reshape(-1)
        sol = solve(np.column_stack(powers), flat)
        if sol is not None:
            return [-c for c in sol] + [ONE]
        powers.append(flat)


def is_simple(g: GradedLieAlgebra) -> bool:
    """Simple over Q: nonabelian, every basis vector generates g as an ideal, centroid a field."""
    n = g.dim
    if n == 0 or is_abelian(g):
        return False
    for i in range(n):
        e = zeros(n)
        e[i] = ONE
        if minimal_ideal(g, e).dim != n:
            return False
    cen = centroid(g)
    if cen is None:
        return False
    if len(cen) == 1:
        return True
    # the centroid is a field iff a generic element has an irreducible minimal polynomial of full degree
    import sympy

    t = zeros(n, n)
    for j, c in enumerate(cen):
        t = t + c * Q(j * j + 3 * j + 1)
    coeffs = _min_poly(t)
    if len(coeffs) - 1 != len(cen):
        return False
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)], x)
    return poly.is_irreducible


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    degrees: dict[int, int]
    dim_g0: int
    killing_signature: tuple[int, int, int]
    center_dim: int

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "degrees": {str(k): v for k, v in sorted(self.degrees.items())},
            "dim_g0": self.dim_g0,
            "killing_signature": list(self.killing_signature),
            "center_dim": self.center_dim,
        }


def fingerprint(g: GradedLieAlgebra) -> Fingerprint:
    degs = {d: len(v) for d, v in g.degrees.items()}
    return Fingerprint(g.dim, degs, degs.get(0, 0), killing_semisimple(g).signature, center(g).dim)


def preserves_form(g: GradedLieAlgebra, form: PairingForm) -> bool:
    return all(infinitesimal_invariance(b, form) for b in g.basis)


def aut_dimension(total_dim: int, symmetric: bool) -> int:
    """dim so(N) or dim sp(N)."""
    n = total_dim
    return n * (n - 1) // 2 if symmetric else n * (n + 1) // 2


def is_ideal(g: GradedLieAlgebra, sub: Subspace) -> bool:
    ads = g.ad_matrices
    return all(sub.contains(matmul(a, v)) for a in ads for v in sub.basis)
