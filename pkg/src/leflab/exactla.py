"""Exact linear algebra over Q.

Matrices are numpy object arrays whose entries are exact rationals.  The
rational type is ``gmpy2.mpq`` when available; setting ``LEFLAB_RATIONAL=fraction``
forces the pure-Python ``fractions.Fraction`` backend.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

if os.environ.get("LEFLAB_RATIONAL", "").lower() == "fraction":
    Rational = Fraction
else:
    try:
        from gmpy2 import mpq as Rational
    except ImportError:  # pragma: no cover - exercised only without gmpy2
        Rational = Fraction

ZERO = Rational(0)
ONE = Rational(1)


def Q(x) -> Rational:
    """Convert an int, Fraction, rational or "p/q" string to the exact rational type."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/")
            return Rational(int(p), int(q))
        return Rational(int(s))
    if isinstance(x, (float, np.floating)):
        raise TypeError(f"refusing inexact value {x!r}; pass an int, Fraction or 'p/q' string")
    if isinstance(x, np.integer):
        return Rational(int(x))
    if isinstance(x, Fraction):
        return Rational(x.numerator, x.denominator)
    if isinstance(x, int):
        return Rational(x)
    # other exact rationals (e.g. mpq under the Fraction backend)
    return Rational(int(x.numerator), int(x.denominator))


def fmt(x) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is one."""
    return str(Q(x))


def matrix(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build a 2D object array of exact rationals from nested sequences."""
    if isinstance(rows, np.ndarray) and rows.dtype == object and rows.ndim == 2:
        out = np.empty(rows.shape, dtype=object)
        for idx, val in np.ndenumerate(rows):
            out[idx] = Q(val)
        return out
    data = [[Q(v) for v in row] for row in rows]
    if shape is None:
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
    else:
        nrows, ncols = shape
    out = np.empty((nrows, ncols), dtype=object)
    for i, row in enumerate(data):
        if len(row) != ncols:
            raise ValueError("ragged matrix rows")
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def vector(xs: Iterable) -> np.ndarray:
    vals = [Q(v) for v in xs]
    out = np.empty(len(vals), dtype=object)
    for i, v in enumerate(vals):
        out[i] = v
    return out


def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def diag(values: Sequence) -> np.ndarray:
    vals = [Q(v) for v in values]
    out = zeros(len(vals), len(vals))
    for i, v in enumerate(vals):
        out[i, i] = v
    return out


def is_zero(a: np.ndarray) -> bool:
    return a.size == 0 or not np.any(a != 0)


def mat_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and (a.size == 0 or bool(np.all(a == b)))


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product that stays exact when an inner dimension is zero."""
    if a.shape[-1] == 0:
        shape = a.shape[:-1] + b.shape[1:]
        return zeros(*shape) if len(shape) else ZERO
    return a @ b


def trace(a: np.ndarray):
    if a.shape[0] == 0:
        return ZERO
    return sum(a[i, i] for i in range(a.shape[0]))


def _exact(m) -> np.ndarray:
    """Pass object arrays through untouched; convert anything else."""
    if isinstance(m, np.ndarray) and m.dtype == object:
        return m
    return matrix(m) if np.ndim(m) == 2 else vector(m)


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns.  Zero rows are kept at the bottom."""
    a = matrix(m) if not (isinstance(m, np.ndarray) and m.dtype == object) else m.copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] * (ONE / a[r, c])
        others = np.flatnonzero(a[:, c] != 0)
        others = others[others != r]
        if others.size:
            a[others] -= np.outer(a[others, c], a[r])
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m) -> int:
    a = m if isinstance(m, np.ndarray) else matrix(m)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def det(m) -> Rational:
    """Determinant by exact Gaussian elimination."""
    a = matrix(m)
    n, ncols = a.shape
    if n != ncols:
        raise ValueError("determinant of a non-square matrix")
    result = ONE
    for c in range(n):
        nz = np.flatnonzero(a[c:, c] != 0)
        if nz.size == 0:
            return ZERO
        p = c + int(nz[0])
        if p != c:
            a[[c, p]] = a[[p, c]]
            result = -result
        piv = a[c, c]
        result *= piv
        below = np.arange(c + 1, n)
        if below.size:
            factors = a[below, c] * (ONE / piv)
            a[below] -= np.outer(factors, a[c])
    return result


def inverse(m) -> np.ndarray:
    a = _exact(m)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, piv = rref(np.hstack([a, identity(n)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r[:, n:]


def solve(a, b) -> np.ndarray | None:
    """A particular solution x of a @ x = b (b a vector or matrix), or None when inconsistent."""
    a = _exact(a)
    b = _exact(b) if isinstance(b, np.ndarray) else vector(b)
    nrows, ncols = a.shape
    rhs = b.reshape(nrows, -1)
    k = rhs.shape[1]
    r, piv = rref(np.hstack([a, rhs]))
    if any(c >= ncols for c in piv):
        return None
    x = zeros(ncols, k)
    for i, c in enumerate(piv):
        x[c] = r[i, ncols:]
    return x.reshape(-1) if b.ndim == 1 else x


def kernel(m) -> "Subspace":
    """The null space {x : m x = 0} in canonical form."""
    a = matrix(m) if not (isinstance(m, np.ndarray) and m.dtype == object) else m
    nrows, ncols = a.shape
    if nrows == 0:
        return Subspace.full(ncols)
    r, piv = rref(a)
    free = [c for c in range(ncols) if c not in set(piv)]
    vecs = []
    for f in free:
        x = zeros(ncols)
        x[f] = ONE
        for i, c in enumerate(piv):
            x[c] = -r[i, f]
        vecs.append(x)
    return Subspace.span(vecs, ncols)


def is_symmetric(m) -> bool:
    a = m if isinstance(m, np.ndarray) else matrix(m)
    return a.shape[0] == a.shape[1] and mat_equal(a, a.T)


def signature(m) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric form, by congruence diagonalization."""
    a = matrix(m)
    if not is_symmetric(a):
        raise ValueError("signature needs a symmetric matrix")
    n = a.shape[0]
    diagonal = []
    for i in range(n):
        if a[i, i] == 0:
            j = next((j for j in range(i + 1, n) if a[j, j] != 0), None)
            if j is not None:
                a[[i, j]] = a[[j, i]]
                a[:, [i, j]] = a[:, [j, i]]
            else:
                j = next((j for j in range(i + 1, n) if a[i, j] != 0), None)
                if j is None:
                    diagonal.append(ZERO)
                    continue
                # replace e_i by e_i + e_j; the new diagonal entry is 2 a_ij
                a[i] += a[j]
                a[:, i] += a[:, j]
        piv = a[i, i]
        for k in range(i + 1, n):
            if a[k, i] != 0:
                t = a[k, i] / piv
                a[k] -= t * a[i]
                a[:, k] -= t * a[:, i]
        diagonal.append(piv)
    pos = sum(1 for d in diagonal if d > 0)
    neg = sum(1 for d in diagonal if d < 0)
    return pos, neg, n - pos - neg


class Subspace:
    """A linear subspace of Q^n stored by its canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: np.ndarray, pivots: list[int]):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, vectors, ambient_dim: int | None = None) -> "Subspace":
        vecs = list(vectors) if not isinstance(vectors, np.ndarray) else list(vectors)
        if ambient_dim is None:
            if not vecs:
                raise ValueError("ambient dimension needed for an empty span")
            ambient_dim = len(vecs[0])
        if not vecs:
            return cls.zero(ambient_dim)
        stacked = np.vstack([np.asarray(v, dtype=object).reshape(1, ambient_dim) for v in vecs])
        r, piv = rref(matrix(stacked))
        return cls(ambient_dim, r[: len(piv)], piv)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, zeros(0, n), [])

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n), list(range(n)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def residual(self, v) -> np.ndarray:
        w = vector(v) if not isinstance(v, np.ndarray) else v.copy()
        for row, c in zip(self.basis, self.pivots):
            if w[c] != 0:
                w = w - w[c] * row
        return w

    def contains(self, v) -> bool:
        return is_zero(self.residual(v))

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of v in the canonical basis; raises if v is not in the span."""
        w = vector(v) if not isinstance(v, np.ndarray) else v
        coords = w[self.pivots] if self.pivots else zeros(0)
        if not mat_equal(matmul(coords.reshape(1, -1), self.basis).reshape(-1), w):
            raise ValueError("vector not in subspace")
        return coords

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        stacked = np.vstack([self.basis, -other.basis])
        ker = kernel(stacked.T)
        vecs = [matmul(k[: self.dim].reshape(1, -1), self.basis).reshape(-1) for k in ker.basis]
        return Subspace.span(vecs, self.ambient_dim)

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(row) for row in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubset(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and mat_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.pivots), tuple(str(x) for x in self.basis.flat)))

    def complement_basis(self) -> list[np.ndarray]:
        """Standard basis vectors spanning a complement (the non-pivot coordinates)."""
        out = []
        piv = set(self.pivots)
        for c in range(self.ambient_dim):
            if c not in piv:
                e = zeros(self.ambient_dim)
                e[c] = ONE
                out.append(e)
        return out

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("subspaces live in different ambient spaces")

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


class EchelonBuilder:
    """Incrementally maintained RREF basis; used by closure loops.

    ``insert`` returns True when the vector enlarged the span.
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def residual(self, v: np.ndarray) -> np.ndarray:
        w = v.copy()
        for row, c in zip(self.rows, self.pivots):
            if w[c] != 0:
                w = w - w[c] * row
        return w

    def contains(self, v: np.ndarray) -> bool:
        return is_zero(self.residual(v))

    def insert(self, v: np.ndarray) -> bool:
        w = self.residual(v)
        nz = np.flatnonzero(w != 0)
        if nz.size == 0:
            return False
        c = int(nz[0])
        w = w * (ONE / w[c])
        for i, row in enumerate(self.rows):
            if row[c] != 0:
                self.rows[i] = row - row[c] * w
        pos = int(np.searchsorted(np.array(self.pivots, dtype=int), c)) if self.pivots else 0
        self.rows.insert(pos, w)
        self.pivots.insert(pos, c)
        return True

    def subspace(self) -> Subspace:
        if not self.rows:
            return Subspace.zero(self.ambient_dim)
        return Subspace(self.ambient_dim, np.vstack([r.reshape(1, -1) for r in self.rows]), list(self.pivots))
