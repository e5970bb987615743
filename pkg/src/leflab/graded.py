"""Z-graded spaces, homogeneous operators, graded-commutative algebras and pairings."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .exactla import (
    ONE,
    inverse,
    rank,
    EchelonBuilder,
    Q,
    fmt,
    identity,
    is_zero,
    mat_equal,
    matmul,
    matrix,
    rref,
    vector,
    zeros,
)


@dataclass(frozen=True)
class GradedSpace:
    """Finite-dimensional graded space; the flat basis is ordered by increasing degree."""

    pieces: tuple[tuple[int, int], ...]
    labels: tuple[tuple[int, tuple[str, ...]], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        cleaned = tuple(sorted((int(d), int(n)) for d, n in self.pieces if int(n) > 0))
        if len({d for d, _ in cleaned}) != len(cleaned):
            raise ValueError("repeated degree in graded space")
        if not cleaned:
            raise ValueError("graded space must be nonzero")
        object.__setattr__(self, "pieces", cleaned)

    @classmethod
    def from_dims(cls, dims: Mapping[int, int], labels: Mapping[int, Sequence[str]] | None = None) -> "GradedSpace":
        lab = None if labels is None else tuple(sorted((int(d), tuple(v)) for d, v in labels.items()))
        return cls(tuple((int(d), int(n)) for d, n in dims.items()), lab)

    @cached_property
    def dims(self) -> dict[int, int]:
        return dict(self.pieces)

    @property
    def degrees(self) -> list[int]:
        return [d for d, _ in self.pieces]

    def dim(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    @cached_property
    def total_dim(self) -> int:
        return sum(n for _, n in self.pieces)

    @cached_property
    def offsets(self) -> dict[int, int]:
        out, acc = {}, 0
        for d, n in self.pieces:
            out[d] = acc
            acc += n
        return out

    def slice(self, degree: int) -> slice:
        o = self.offsets[degree]
        return slice(o, o + self.dims[degree])

    @property
    def top(self) -> int:
        return self.pieces[-1][0]

    @property
    def bottom(self) -> int:
        return self.pieces[0][0]

    def shifted(self, by: int) -> "GradedSpace":
        lab = None if self.labels is None else tuple((d + by, v) for d, v in self.labels)
        return GradedSpace(tuple((d + by, n) for d, n in self.pieces), lab)

    def degree_of_index(self, i: int) -> int:
        for d, n in self.pieces:
            o = self.offsets[d]
            if o <= i < o + n:
                return d
        raise IndexError(i)

    def basis_vector(self, degree: int, index: int) -> np.ndarray:
        v = zeros(self.total_dim)
        v[self.offsets[degree] + index] = ONE
        return v

    def component(self, v: np.ndarray, degree: int) -> np.ndarray:
        if degree not in self.dims:
            return zeros(0)
        return v[self.slice(degree)]

    def to_json(self) -> dict:
        return {"pieces": {str(d): n for d, n in self.pieces}}


class GradedMap:
    """Homogeneous operator of a fixed degree on a graded space, stored blockwise.

    ``blocks[k]`` maps the degree-k piece to the degree-(k + degree) piece.  Missing
    blocks are zero.
    """

    __slots__ = ("space", "degree", "blocks")

    def __init__(self, space: GradedSpace, degree: int, blocks: Mapping[int, np.ndarray] | None = None):
        self.space = space
        self.degree = int(degree)
        self.blocks: dict[int, np.ndarray] = {}
        for k, b in (blocks or {}).items():
            if k not in space.dims or k + self.degree not in space.dims:
                if not is_zero(b):
                    raise ValueError(f"nonzero block from degree {k} leaves the space")
                continue
            shape = (space.dims[k + self.degree], space.dims[k])
            if b.shape != shape:
                raise ValueError(f"block at degree {k} has shape {b.shape}, expected {shape}")
            self.blocks[k] = b

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, space: GradedSpace, degree: int) -> "GradedMap":
        return cls(space, degree, {})

    @classmethod
    def from_dense(cls, space: GradedSpace, mat: np.ndarray, degree: int | None = None) -> "GradedMap":
        """Split a dense matrix into blocks, checking it is homogeneous."""
        mat = mat if mat.dtype == object else matrix(mat)
        found: set[int] = set()
        for k in space.degrees:
            for l in space.degrees:
                if not is_zero(mat[space.slice(l), space.slice(k)]):
                    found.add(l - k)
        if degree is None:
            if len(found) > 1:
                raise ValueError(f"operator is not homogeneous (degrees {sorted(found)})")
            degree = found.pop() if found else 0
        elif found - {degree}:
            raise ValueError(f"operator has components outside degree {degree}")
        blocks = {}
        for k in space.degrees:
            if k + degree in space.dims:
                blocks[k] = mat[space.slice(k + degree), space.slice(k)].copy()
        return cls(space, degree, blocks)

    @classmethod
    def from_flat(cls, space: GradedSpace, degree: int, vec: np.ndarray) -> "GradedMap":
        blocks, pos = {}, 0
        for k, r, c in flat_layout(space, degree):
            blocks[k] = vec[pos : pos + r * c].reshape(r, c).copy()
            pos += r * c
        return cls(space, degree, blocks)

    def block(self, k: int) -> np.ndarray:
        if k in self.blocks:
            return self.blocks[k]
        rows = self.space.dim(k + self.degree)
        return zeros(rows, self.space.dim(k))

    def to_dense(self) -> np.ndarray:
        n = self.space.total_dim
        out = zeros(n, n)
        for k, b in self.blocks.items():
            out[self.space.slice(k + self.degree), self.space.slice(k)] = b
        return out

    def flat(self) -> np.ndarray:
        parts = [self.block(k).reshape(-1) for k, _, _ in flat_layout(self.space, self.degree)]
        if not parts:
            return zeros(0)
        return np.concatenate(parts)

    # algebra --------------------------------------------------------------
    def _same(self, other: "GradedMap") -> None:
        if self.space != other.space:
            raise ValueError("operators act on different spaces")

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._same(other)
        if self.degree != other.degree:
            raise ValueError("cannot add operators of different degree")
        keys = set(self.blocks) | set(other.blocks)
        return GradedMap(self.space, self.degree, {k: self.block(k) + other.block(k) for k in keys})

    def __neg__(self) -> "GradedMap":
        return GradedMap(self.space, self.degree, {k: -b for k, b in self.blocks.items()})

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + (-other)

    def __mul__(self, c) -> "GradedMap":
        c = Q(c)
        return GradedMap(self.space, self.degree, {k: b * c for k, b in self.blocks.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        """Composition self ∘ other."""
        self._same(other)
        blocks = {}
        for k, b in other.blocks.items():
            mid = k + other.degree
            if mid in self.blocks:
                blocks[k] = matmul(self.blocks[mid], b)
        return GradedMap(self.space, self.degree + other.degree, blocks)

    def bracket(self, other: "GradedMap") -> "GradedMap":
        return self @ other - other @ self

    def power(self, k: int) -> "GradedMap":
        out = identity_map(self.space)
        for _ in range(k):
            out = self @ out
        return out

    def apply(self, v: np.ndarray) -> np.ndarray:
        out = zeros(self.space.total_dim)
        for k, b in self.blocks.items():
            out[self.space.slice(k + self.degree)] = matmul(b, v[self.space.slice(k)])
        return out

    def is_zero(self) -> bool:
        return all(is_zero(b) for b in self.blocks.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        if self.space != other.space:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and (self - other).is_zero()

    __hash__ = None  # mutable-looking numpy payload

    def __repr__(self) -> str:
        return f"GradedMap(degree={self.degree}, dim={self.space.total_dim})"


_LAYOUT_CACHE: dict[tuple[GradedSpace, int], list[tuple[int, int, int]]] = {}


def flat_layout(space: GradedSpace, degree: int) -> list[tuple[int, int, int]]:
    """(source degree, rows, cols) of the blocks of a degree-``degree`` map, in flat order."""
    key = (space, degree)
    if key not in _LAYOUT_CACHE:
        _LAYOUT_CACHE[key] = [
            (k, space.dims[k + degree], space.dims[k]) for k in space.degrees if k + degree in space.dims
        ]
    return _LAYOUT_CACHE[key]


def identity_map(space: GradedSpace) -> GradedMap:
    return GradedMap(space, 0, {k: identity(n) for k, n in space.pieces})


def h_of(space: GradedSpace) -> GradedMap:
    """The grading operator: multiplication by k on the degree-k piece."""
    return GradedMap(space, 0, {k: identity(n) * Q(k) for k, n in space.pieces})


# ---------------------------------------------------------------------------
# graded-commutative algebras


class GradedAlgebra:
    """Graded-commutative algebra with non-negative degrees and A_0 spanned by the unit.

    ``mult[(p, q)]`` is an array of shape (dim A_{p+q}, dim A_p, dim A_q) holding the
    coordinates of products of basis vectors.
    """

    def __init__(self, space: GradedSpace, mult: Mapping[tuple[int, int], np.ndarray], name: str = ""):
        if space.bottom != 0 or space.dim(0) != 1:
            raise ValueError("algebra must start in degree 0 with a one-dimensional A_0")
        self.space = space
        self.name = name
        self.mult: dict[tuple[int, int], np.ndarray] = {}
        for p in space.degrees:
            for q in space.degrees:
                if p + q not in space.dims:
                    continue
                shape = (space.dims[p + q], space.dims[p], space.dims[q])
                t = mult.get((p, q))
                if t is None:
                    t = zeros(*shape)
                if t.shape != shape:
                    raise ValueError(f"multiplication tensor {(p, q)} has shape {t.shape}, expected {shape}")
                self.mult[(p, q)] = t

    @property
    def top_degree(self) -> int:
        return self.space.top

    @property
    def depth(self) -> int:
        if self.top_degree % 2:
            raise ValueError("top degree must be even for a Lefschetz algebra")
        return self.top_degree // 2

    @property
    def dims(self) -> list[int]:
        return [self.space.dim(d) for d in range(self.top_degree + 1)]

    @property
    def total_dim(self) -> int:
        return self.space.total_dim

    def unit(self) -> np.ndarray:
        return self.space.basis_vector(0, 0)

    def basis(self, degree: int, index: int) -> np.ndarray:
        return self.space.basis_vector(degree, index)

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = zeros(self.total_dim)
        sp = self.space
        for (p, q), t in self.mult.items():
            xp, yq = x[sp.slice(p)], y[sp.slice(q)]
            if is_zero(xp) or is_zero(yq):
                continue
            out[sp.slice(p + q)] += np.tensordot(np.tensordot(t, yq, axes=([2], [0])), xp, axes=([1], [0]))
        return out

    def left_block(self, x_deg: int, x: np.ndarray, src_deg: int) -> np.ndarray:
        """Matrix of y ↦ x·y from A_src to A_{src + x_deg}, for x homogeneous given in A_{x_deg} coordinates."""
        t = self.mult.get((x_deg, src_deg))
        if t is None:
            return zeros(self.space.dim(src_deg + x_deg), self.space.dim(src_deg))
        return np.tensordot(t, x, axes=([1], [0]))

    def power(self, x: np.ndarray, k: int) -> np.ndarray:
        out = self.unit()
        for _ in range(k):
            out = self.multiply(x, out)
        return out

    def lefschetz_space(self) -> GradedSpace:
        """The centered space A[n]: algebra degree d sits in module degree d − n."""
        return self.space.shifted(-self.depth)

    def check_unit(self) -> bool:
        u = self.unit()
        return all(
            mat_equal(self.multiply(u, self.basis(d, i)), self.basis(d, i))
            and mat_equal(self.multiply(self.basis(d, i), u), self.basis(d, i))
            for d, n in self.space.pieces
            for i in range(n)
        )

    def check_graded_commutative(self) -> bool:
        for (p, q), t in self.mult.items():
            sign = -1 if (p * q) % 2 else 1
            if not mat_equal(t, np.transpose(self.mult[(q, p)], (0, 2, 1)) * sign):
                return False
        return True

    def check_associative(self) -> bool:
        sp = self.space
        basis = [(d, self.basis(d, i)) for d, n in sp.pieces for i in range(n)]
        for (_, a), (_, b), (_, c) in itertools.product(basis, repeat=3):
            if not mat_equal(self.multiply(self.multiply(a, b), c), self.multiply(a, self.multiply(b, c))):
                return False
        return True

    def to_json(self) -> dict:
        sp = self.space
        entries = []
        for (p, q), t in sorted(self.mult.items()):
            for i in range(sp.dims[p]):
                for j in range(sp.dims[q]):
                    col = t[:, i, j]
                    if not is_zero(col):
                        entries.append([p, i, q, j, [fmt(x) for x in col]])
        return {"pieces": {str(d): n for d, n in sp.pieces}, "mult": entries}

    @classmethod
    def from_json(cls, doc: Mapping) -> "GradedAlgebra":
        """Load from {"pieces": {...}, "mult": [[deg_a, idx_a, deg_b, idx_b, [coeffs]], ...]}.

        Products of the unit are implied.  A product listed for (a, b) but not for
        (b, a) is completed by graded commutativity.
        """
        space = GradedSpace.from_dims({int(k): int(v) for k, v in doc["pieces"].items()})
        tensors = {
            (p, q): zeros(space.dims[p + q], space.dims[p], space.dims[q])
            for p in space.degrees
            for q in space.degrees
            if p + q in space.dims
        }
        listed = set()
        for p, i, q, j, coeffs in doc.get("mult", []):
            p, i, q, j = int(p), int(i), int(q), int(j)
            if (p, q) not in tensors:
                raise ValueError(f"product of degrees {p} and {q} leaves the algebra")
            col = vector(coeffs)
            if len(col) != space.dims[p + q]:
                raise ValueError("coefficient list has the wrong length")
            tensors[(p, q)][:, i, j] = col
            listed.add((p, i, q, j))
        for p, i, q, j in list(listed):
            if (q, j, p, i) not in listed:
                sign = -1 if (p * q) % 2 else 1
                tensors[(q, p)][:, j, i] = tensors[(p, q)][:, i, j] * sign
        for d, n in space.pieces:
            for i in range(n):
                if (0, 0, d, i) not in listed:
                    tensors[(0, d)][:, 0, i] = identity(n)[:, i]
                if (d, i, 0, 0) not in listed:
                    tensors[(d, 0)][:, i, 0] = identity(n)[:, i]
        return cls(space, tensors)

    def __repr__(self) -> str:
        return f"GradedAlgebra({self.name or 'unnamed'}, dims={self.dims})"


def algebra_from_products(
    space: GradedSpace, product: Callable[[int, int, int, int], np.ndarray], name: str = ""
) -> GradedAlgebra:
    """Build an algebra from a function (deg_a, i, deg_b, j) -> coordinates in A_{deg_a+deg_b}."""
    tensors = {}
    for p in space.degrees:
        for q in space.degrees:
            if p + q not in space.dims:
                continue
            t = zeros(space.dims[p + q], space.dims[p], space.dims[q])
            for i in range(space.dims[p]):
                for j in range(space.dims[q]):
                    t[:, i, j] = product(p, i, q, j)
            tensors[(p, q)] = t
    return GradedAlgebra(space, tensors, name)


def point_algebra() -> GradedAlgebra:
    space = GradedSpace(((0, 1),))
    return GradedAlgebra(space, {(0, 0): matrix([[1]]).reshape(1, 1, 1)}, "point")


def truncated_polynomial(n: int, gen_degree: int = 2) -> GradedAlgebra:
    """K[x]/(x^{n+1}) with x in degree ``gen_degree``: cohomology of projective n-space."""
    space = GradedSpace(tuple((gen_degree * i, 1) for i in range(n + 1)))

    def prod(p, i, q, j):
        return vector([1])

    return algebra_from_products(space, prod, f"P^{n}")


def wedge_sign(s: tuple[int, ...], t: tuple[int, ...]) -> int:
    """Sign of the shuffle sorting the concatenation of two disjoint increasing tuples."""
    inversions = sum(1 for a in s for b in t if a > b)
    return -1 if inversions % 2 else 1


def exterior_algebra(n: int, name: str = "") -> GradedAlgebra:
    """Exterior algebra on n generators of degree 1, basis = index subsets in lex order."""
    subsets = {k: list(itertools.combinations(range(n), k)) for k in range(n + 1)}
    index = {k: {s: i for i, s in enumerate(v)} for k, v in subsets.items()}
    space = GradedSpace(tuple((k, len(v)) for k, v in subsets.items()))

    def prod(p, i, q, j):
        s, t = subsets[p][i], subsets[q][j]
        out = zeros(space.dims[p + q])
        if set(s) & set(t):
            return out
        u = tuple(sorted(s + t))
        out[index[p + q][u]] = Q(wedge_sign(s, t))
        return out

    return algebra_from_products(space, prod, name or f"ext({n})")


def tensor_algebra(a: GradedAlgebra, b: GradedAlgebra, name: str = "") -> GradedAlgebra:
    """Graded tensor product with the Koszul sign; basis pairs ordered by (deg_a, i, deg_b, j)."""
    cells: dict[int, list[tuple[int, int, int, int]]] = {}
    for p, n in a.space.pieces:
        for q, m in b.space.pieces:
            for i in range(n):
                for j in range(m):
                    cells.setdefault(p + q, []).append((p, i, q, j))
    for d in cells:
        cells[d].sort()
    index = {d: {c: k for k, c in enumerate(v)} for d, v in cells.items()}
    space = GradedSpace(tuple((d, len(v)) for d, v in cells.items()))

    def prod(dx, ix, dy, iy):
        p1, i1, q1, j1 = cells[dx][ix]
        p2, i2, q2, j2 = cells[dy][iy]
        out = zeros(space.dims[dx + dy])
        if (p1, p2) not in a.mult or (q1, q2) not in b.mult:
            return out
        sign = -1 if (q1 * p2) % 2 else 1
        ca = a.mult[(p1, p2)][:, i1, i2]
        cb = b.mult[(q1, q2)][:, j1, j2]
        for r, x in enumerate(ca):
            if x == 0:
                continue
            for s, y in enumerate(cb):
                if y == 0:
                    continue
                out[index[dx + dy][(p1 + p2, r, q1 + q2, s)]] += x * y * sign
        return out

    return algebra_from_products(space, prod, name or f"{a.name}⊗{b.name}")


def subalgebra(
    ambient: GradedAlgebra,
    generators: Sequence[np.ndarray],
    gen_degree: int,
    name: str = "",
    keep_generators: bool = True,
):
    """Subalgebra generated by homogeneous elements of one degree, built degree by degree.

    Returns (algebra, embeddings) where ``embeddings[d]`` holds the ambient coordinates of the
    new degree-d basis as columns.  With ``keep_generators`` the generators themselves (which
    must be independent) form the basis in the generating degree; other degrees use the
    canonical echelon basis.
    """
    sp = ambient.space
    pieces: dict[int, np.ndarray] = {0: ambient.unit()[sp.slice(0)].reshape(-1, 1)}
    d = 0
    while d + gen_degree in sp.dims:
        nd = d + gen_degree
        builder = EchelonBuilder(sp.dims[nd])
        for g in generators:
            for col in pieces[d].T:
                x = zeros(sp.total_dim)
                x[sp.slice(d)] = col
                builder.insert(ambient.multiply(g, x)[sp.slice(nd)])
        if builder.dim == 0:
            break
        if nd == gen_degree and keep_generators:
            cols = np.column_stack([g[sp.slice(nd)] for g in generators])
            if rank(cols) != len(generators):
                raise ValueError("generators are linearly dependent")
            pieces[nd] = cols
        else:
            pieces[nd] = np.column_stack(builder.rows)
        d = nd
    space = GradedSpace(tuple((deg, m.shape[1]) for deg, m in pieces.items()))
    solvers = {}
    for deg, m in pieces.items():
        _, piv = rref(m.T)
        solvers[deg] = (piv, inverse(m[piv, :]))

    def full(deg: int, i: int) -> np.ndarray:
        v = zeros(sp.total_dim)
        v[sp.slice(deg)] = pieces[deg][:, i]
        return v

    def coords(deg: int, vec: np.ndarray) -> np.ndarray:
        piv, inv = solvers[deg]
        c = matmul(inv, vec[piv])
        if not mat_equal(matmul(pieces[deg], c), vec):
            raise ArithmeticError("product left the generated subalgebra")
        return c

    def prod(p, i, q, j):
        return coords(p + q, ambient.multiply(full(p, i), full(q, j))[sp.slice(p + q)])

    return algebra_from_products(space, prod, name), pieces


# ---------------------------------------------------------------------------
# polynomial quotients generated in a single degree


class PolynomialQuotient:
    """Sym(V)/I for an ideal generated by homogeneous relations, computed degree by degree.

    Degree d of the quotient is (V ⊗ Q_{d-1}) modulo the commutativity relations coming from
    Q_{d-2} and the relations of degree d.  Only multiplication-matrix ranks are used.
    Relations are dicts mapping exponent tuples to coefficients.
    """

    def __init__(self, nvars: int, relations: Iterable[Mapping[tuple[int, ...], object]], max_degree: int = 64):
        self.nvars = nvars
        rels_by_degree: dict[int, list[dict]] = {}
        for r in relations:
            r = {tuple(e): Q(c) for e, c in r.items() if Q(c) != 0}
            if not r:
                continue
            degs = {sum(e) for e in r}
            if len(degs) != 1:
                raise ValueError("relations must be homogeneous")
            d = degs.pop()
            if d < 1:
                raise ValueError("relations must have positive degree")
            rels_by_degree.setdefault(d, []).append(r)
        self.relations = rels_by_degree
        self.monomials: list[list[tuple[int, ...]]] = [[tuple([0] * nvars)]]
        # mult[d][i]: matrix of multiplication by x_i from Q_d to Q_{d+1}
        self.mult: list[list[np.ndarray]] = []
        self._nf_cache: dict[tuple[int, ...], np.ndarray] = {tuple([0] * nvars): vector([1])}
        d = 0
        while d < max_degree:
            if not self._extend():
                break
            d += 1
        self.dims = [len(m) for m in self.monomials]

    def _extend(self) -> bool:
        d = len(self.monomials)  # degree being built
        prev = len(self.monomials[d - 1])
        ncols = self.nvars * prev
        col = lambda i, b: i * prev + b  # noqa: E731
        rows = []
        if d >= 2:
            for m in range(len(self.monomials[d - 2])):
                for i in range(self.nvars):
                    for j in range(i + 1, self.nvars):
                        row = zeros(ncols)
                        xj_m = self.mult[d - 2][j][:, m]
                        xi_m = self.mult[d - 2][i][:, m]
                        for b in range(prev):
                            row[col(i, b)] += xj_m[b]
                            row[col(j, b)] -= xi_m[b]
                        rows.append(row)
        for rel in self.relations.get(d, []):
            row = zeros(ncols)
            for e, c in rel.items():
                i = next(k for k, v in enumerate(e) if v > 0)
                rest = list(e)
                rest[i] -= 1
                nf = self.normal_form_monomial(tuple(rest))
                for b in range(prev):
                    row[col(i, b)] += c * nf[b]
            rows.append(row)
        if rows:
            r, piv = rref(np.vstack([x.reshape(1, -1) for x in rows]))
            r = r[: len(piv)]
        else:
            r, piv = zeros(0, ncols), []
        free = [c for c in range(ncols) if c not in set(piv)]
        if not free:
            return False
        # quotient map V ⊗ Q_{d-1} → Q_d: reduce, then read the free coordinates
        proj = zeros(len(free), ncols)
        for k, c in enumerate(free):
            proj[k, c] = ONE
        for row_i, p in enumerate(piv):
            for k, c in enumerate(free):
                proj[k, p] = -r[row_i, c]
        self.mult.append([proj[:, i * prev : (i + 1) * prev] for i in range(self.nvars)])
        mons = []
        for c in free:
            i, b = divmod(c, prev)
            e = list(self.monomials[d - 1][b])
            e[i] += 1
            mons.append(tuple(e))
        self.monomials.append(mons)
        return True

    @property
    def top_degree(self) -> int:
        return len(self.monomials) - 1

    def normal_form_monomial(self, e: tuple[int, ...]) -> np.ndarray:
        e = tuple(e)
        if e in self._nf_cache:
            return self._nf_cache[e]
        d = sum(e)
        if d > self.top_degree:
            return zeros(0)
        i = next(k for k, v in enumerate(e) if v > 0)
        rest = list(e)
        rest[i] -= 1
        prev = self.normal_form_monomial(tuple(rest))
        out = matmul(self.mult[d - 1][i], prev) if prev.size else zeros(len(self.monomials[d]))
        self._nf_cache[e] = out
        return out

    def normal_form(self, poly: Mapping[tuple[int, ...], object]) -> tuple[int, np.ndarray]:
        """(degree, coordinates) of a homogeneous polynomial in the quotient."""
        degs = {sum(e) for e in poly}
        if len(degs) != 1:
            raise ValueError("normal_form needs a homogeneous polynomial")
        d = degs.pop()
        n = len(self.monomials[d]) if d <= self.top_degree else 0
        out = zeros(n)
        for e, c in poly.items():
            if n:
                out += self.normal_form_monomial(e) * Q(c)
        return d, out

    def algebra(self, gen_degree: int = 2, name: str = "") -> GradedAlgebra:
        space = GradedSpace(tuple((gen_degree * d, len(m)) for d, m in enumerate(self.monomials)))

        def prod(p, i, q, j):
            a = self.monomials[p // gen_degree][i]
            b = self.monomials[q // gen_degree][j]
            e = tuple(x + y for x, y in zip(a, b))
            return self.normal_form_monomial(e)

        return algebra_from_products(space, prod, name)


# ---------------------------------------------------------------------------
# cup operators and the Poincaré-type pairing


def cup_operator(alg: GradedAlgebra, a: np.ndarray, a_degree: int = 2) -> GradedMap:
    """Multiplication by a homogeneous class, as an operator on the centered space."""
    n = alg.depth
    space = alg.lefschetz_space()
    a = vector(a) if not isinstance(a, np.ndarray) else a
    blocks = {}
    for d in alg.space.degrees:
        if d + a_degree in alg.space.dims:
            blocks[d - n] = alg.left_block(a_degree, a, d)
    return GradedMap(space, a_degree, blocks)


class PairingForm:
    """Bilinear form on a graded space pairing degree k with degree −k.

    ``blocks[k][i, j]`` is the value on (i-th basis vector of degree k, j-th basis vector of degree −k).
    """

    def __init__(self, space: GradedSpace, blocks: Mapping[int, np.ndarray]):
        self.space = space
        self.blocks = dict(blocks)

    def gram(self) -> np.ndarray:
        n = self.space.total_dim
        g = zeros(n, n)
        for k, b in self.blocks.items():
            g[self.space.slice(k), self.space.slice(-k)] = b
        return g

    def value(self, x: np.ndarray, y: np.ndarray):
        return matmul(matmul(x.reshape(1, -1), self.gram()), y.reshape(-1, 1))[0, 0]

    def symmetry_sign(self) -> int | None:
        """+1 if symmetric, −1 if skew, None otherwise."""
        g = self.gram()
        if mat_equal(g, g.T):
            return 1
        if mat_equal(g, -g.T):
            return -1
        return None

    def is_nondegenerate(self) -> bool:
        from .exactla import rank

        return rank(self.gram()) == self.space.total_dim


def poincare_form(alg: GradedAlgebra, integral=None) -> PairingForm:
    """The pairing (−1)^q ∫(ab), where deg a = n + 2q or n + 2q + 1, on the centered space."""
    n = alg.depth
    top = alg.top_degree
    if integral is None:
        integral = [1] * alg.space.dim(top)
    integral = vector(integral)
    if len(integral) != alg.space.dim(top) or is_zero(integral):
        raise ValueError("integral must be a nonzero functional on the top piece")
    space = alg.lefschetz_space()
    blocks = {}
    for d in alg.space.degrees:
        e = top - d
        if e not in alg.space.dims:
            continue
        q = (d - n) // 2
        sign = -1 if q % 2 else 1
        t = alg.mult[(d, e)]
        blocks[d - n] = np.tensordot(integral, t, axes=([0], [0])) * sign
    form = PairingForm(space, blocks)
    expected = -1 if n % 2 else 1
    if form.symmetry_sign() not in (expected,) and not is_zero(form.gram()):
        raise ValueError(f"pairing is not (−1)^{n}-symmetric; the algebra does not conform")
    return form


def infinitesimal_invariance(op: GradedMap, form: PairingForm) -> bool:
    """True iff φ(op m, m') + φ(m, op m') = 0 for all basis pairs."""
    a = op.to_dense()
    g = form.gram()
    return is_zero(matmul(a.T, g) + matmul(g, a))


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


# ---------------------------------------------------------------------------
# direct sums and tensor products of graded spaces


def direct_sum_space(a: GradedSpace, b: GradedSpace) -> tuple[GradedSpace, np.ndarray]:
    """Direct sum; ``perm[new] = old`` where old indexes the concatenation a ⊕ b."""
    dims: dict[int, int] = {}
    for d, n in a.pieces + b.pieces:
        dims[d] = dims.get(d, 0) + n
    space = GradedSpace.from_dims(dims)
    perm = []
    for d in space.degrees:
        if d in a.dims:
            perm.extend(range(a.offsets[d], a.offsets[d] + a.dims[d]))
        if d in b.dims:
            perm.extend(a.total_dim + i for i in range(b.offsets[d], b.offsets[d] + b.dims[d]))
    return space, np.array(perm, dtype=int)


def tensor_space(a: GradedSpace, b: GradedSpace) -> tuple[GradedSpace, np.ndarray]:
    """Tensor product; ``perm[new] = i * dim b + j`` for the Kronecker index of (i, j)."""
    cells: dict[int, list[int]] = {}
    for i in range(a.total_dim):
        di = a.degree_of_index(i)
        for j in range(b.total_dim):
            cells.setdefault(di + b.degree_of_index(j), []).append(i * b.total_dim + j)
    space = GradedSpace.from_dims({d: len(v) for d, v in cells.items()})
    perm = [k for d in space.degrees for k in cells[d]]
    return space, np.array(perm, dtype=int)


def permuted_map(space: GradedSpace, dense: np.ndarray, perm: np.ndarray, degree: int) -> GradedMap:
    return GradedMap.from_dense(space, dense[np.ix_(perm, perm)], degree)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.empty((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=object)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i * b.shape[0] : (i + 1) * b.shape[0], j * b.shape[1] : (j + 1) * b.shape[1]] = b * a[i, j]
    return out


def tensor_cell(a: GradedSpace, b: GradedSpace, p: int, i: int, q: int, j: int) -> tuple[int, int]:
    """(degree, index) of the basis vector a_{p,i} ⊗ b_{q,j} in the ordering used by tensor_algebra."""
    cells = sorted(
        (pp, ii, qq, jj)
        for pp, n in a.pieces
        for qq, m in b.pieces
        if pp + qq == p + q
        for ii in range(n)
        for jj in range(m)
    )
    return p + q, cells.index((p, i, q, j))
