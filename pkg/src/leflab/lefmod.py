"""Lefschetz modules: the Lie algebra g(a, M), primitives, Jordan and Frobenius tests, forms."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .exactla import (
    EchelonBuilder,
    Q,
    Subspace,
    identity,
    is_zero,
    kernel,
    matmul,
    matrix,
    rank,
    solve,
    vector,
    zeros,
)
from .graded import (
    GradedAlgebra,
    GradedMap,
    GradedSpace,
    PairingForm,
    cup_operator,
    direct_sum_space,
    infinitesimal_invariance,
    kron,
    permuted_map,
    tensor_space,
)
from .liegen import GradedLieAlgebra, killing_semisimple, lie_closure
from .sl2kit import jm_dual, lefschetz_check

DEFAULT_BOX = 2


def search_box() -> int:
    """Search box size, overridable through LEFLAB_SEARCH_BOX."""
    raw = os.environ.get("LEFLAB_SEARCH_BOX")
    if raw is None:
        return DEFAULT_BOX
    value = int(raw)
    if value < 1:
        raise ValueError("LEFLAB_SEARCH_BOX must be a positive integer")
    return value


class NoLefschetzElement(RuntimeError):
    pass


@dataclass
class LefschetzModule:
    """A graded space with a commuting family of degree-2 operators."""

    space: GradedSpace
    a_basis: list[GradedMap]
    form: PairingForm | None = None
    name: str = ""

    def __post_init__(self):
        for x in self.a_basis:
            if x.space != self.space or x.degree != 2:
                raise ValueError("a-operators must be degree-2 maps on the module")
        for x, y in itertools.combinations(self.a_basis, 2):
            if not x.bracket(y).is_zero():
                raise ValueError("a-operators do not commute")

    @classmethod
    def from_algebra(cls, alg: GradedAlgebra, a_elements: Sequence | None = None, name: str = "") -> "LefschetzModule":
        """The centered algebra as a module over (a subspace of) its degree-2 piece, with its Poincaré form."""
        from .graded import poincare_form

        if a_elements is None:
            a_elements = list(identity(alg.space.dim(2)))
        ops = [cup_operator(alg, vector(a) if not isinstance(a, np.ndarray) else a) for a in a_elements]
        return cls(alg.lefschetz_space(), ops, poincare_form(alg), name or alg.name)

    @property
    def depth(self) -> int:
        return self.space.top

    @property
    def rank_a(self) -> int:
        return len(self.a_basis)

    def operator(self, coeffs: Sequence) -> GradedMap:
        out = GradedMap.zero(self.space, 2)
        for c, x in zip(coeffs, self.a_basis):
            if c != 0:
                out = out + x * c
        return out


def candidate_coefficients(n: int, box: int) -> Iterator[tuple[int, ...]]:
    """Deterministic search order: unit vectors, then ±1 combinations, then growing integer boxes."""
    seen: set[tuple[int, ...]] = set()
    for i in range(n):
        c = tuple(1 if j == i else 0 for j in range(n))
        seen.add(c)
        yield c
    for b in range(1, box + 1):
        values = sorted(range(-b, b + 1), key=lambda v: (abs(v), -v))
        batch = [c for c in itertools.product(values, repeat=n) if any(c) and c not in seen]
        batch.sort(key=lambda c: (sum(1 for v in c if v), sum(abs(v) for v in c)))
        for c in batch:
            seen.add(c)
            yield c


def lefschetz_elements(L: LefschetzModule, box: int | None = None) -> Iterator[tuple[int, ...]]:
    box = search_box() if box is None else box
    for c in candidate_coefficients(L.rank_a, box):
        if lefschetz_check(L.operator(c)):
            yield c


def find_lefschetz_element(L: LefschetzModule, box: int | None = None) -> tuple[int, ...]:
    for c in lefschetz_elements(L, box):
        return c
    raise NoLefschetzElement("no Lefschetz element found in search box")


@dataclass
class GeneratedAlgebra:
    """g(a, M) together with the Lefschetz elements used and those that certified saturation."""

    g: GradedLieAlgebra
    tested: list[tuple[int, ...]]
    certified: list[tuple[int, ...]]
    duals: dict[tuple[int, ...], GradedMap] = field(repr=False, default_factory=dict)


def generate_g(L: LefschetzModule, box: int | None = None, extra: int = 3) -> GeneratedAlgebra:
    """Close {e_a} ∪ {f_a} over a set of Lefschetz elements, then certify stability on further ones."""
    found = lefschetz_elements(L, box)
    want = L.rank_a + 1
    tested: list[tuple[int, ...]] = []
    duals: dict[tuple[int, ...], GradedMap] = {}
    for c in found:
        tested.append(c)
        duals[c] = jm_dual(L.operator(c))
        if len(tested) == want:
            break
    if not tested:
        raise NoLefschetzElement("no Lefschetz element found in search box")
    gens = list(L.a_basis) + [duals[c] for c in tested]
    g = lie_closure(gens, L.space)
    certified: list[tuple[int, ...]] = []
    for c in found:
        f = jm_dual(L.operator(c))
        duals[c] = f
        if not g.contains(f):
            tested.append(c)
            gens.append(f)
            g = lie_closure(gens, L.space)
            certified = []
            continue
        certified.append(c)
        if len(certified) == extra:
            break
    return GeneratedAlgebra(g, tested, certified, duals)


def primitive_subspace(g: GradedLieAlgebra) -> dict[int, Subspace]:
    """Joint kernel of the negative-degree part of g, per degree (coordinates of M_d)."""
    sp = g.ambient
    neg = [b for b in g.basis if b.degree < 0]
    out = {}
    for d in sp.degrees:
        blocks = [b.block(d) for b in neg if b.block(d).shape[0]]
        if not blocks:
            out[d] = Subspace.full(sp.dims[d])
            continue
        k = kernel(np.vstack(blocks))
        if k.dim:
            out[d] = k
    return out


@dataclass(frozen=True)
class Summand:
    lowest: int
    subspace: Subspace
    dims: dict[int, int]

    def step2(self) -> list[int]:
        return [self.dims.get(d, 0) for d in range(self.lowest, -self.lowest + 1, 2)]


def primitive_summands(g: GradedLieAlgebra) -> list[Summand]:
    """g-submodules generated by single primitive vectors, one per distinct submodule.

    Each is irreducible or a sum of pairwise non-isomorphic irreducibles sharing a lowest degree.
    """
    sp = g.ambient
    out: list[Summand] = []
    for d, prim in sorted(primitive_subspace(g).items()):
        for v in prim.basis:
            sub = generated_submodule(g.basis, [_embed(sp, d, v)], sp.total_dim)
            if any(s.subspace == sub for s in out):
                continue
            dims = {}
            for k in sp.degrees:
                piece = Subspace.span([w[sp.slice(k)] for w in sub.basis], sp.dims[k]).dim
                if piece:
                    dims[k] = piece
            out.append(Summand(d, sub, dims))
    return out


@dataclass(frozen=True)
class JordanVerdict:
    degrees_only_202: bool
    f_commute: bool

    @property
    def consistent(self) -> bool:
        return self.degrees_only_202 == self.f_commute


def jordan_check(gen: GeneratedAlgebra) -> JordanVerdict:
    degs = set(gen.g.degrees)
    only = degs <= {-2, 0, 2}
    fs = [gen.duals[c] for c in gen.tested + gen.certified]
    commute = all(x.bracket(y).is_zero() for x, y in itertools.combinations(fs, 2))
    return JordanVerdict(only, commute)


def generated_submodule(ops: Sequence[GradedMap], vectors: Sequence[np.ndarray], total_dim: int) -> Subspace:
    """Smallest subspace containing the vectors and stable under the operators."""
    b = EchelonBuilder(total_dim)
    queue = [v for v in vectors if b.insert(v)]
    while queue:
        v = queue.pop()
        for op in ops:
            w = op.apply(v)
            if b.insert(w):
                queue.append(w)
    return b.subspace()


@dataclass(frozen=True)
class FrobeniusRecord:
    dim_lowest: int
    map_iso: bool
    order: int
    depth: int

    @property
    def frobenius(self) -> bool:
        return self.dim_lowest == 1 and self.map_iso and self.order >= self.depth


def _polynomial_levels(L: LefschetzModule, upto: int) -> list[Subspace]:
    """S_k = span of degree-k monomials in a applied to M_{−n}, inside M_{−n+2k}."""
    sp = L.space
    n = L.depth
    levels = [Subspace.full(sp.dim(-n))]
    for k in range(1, upto + 1):
        src, dst = -n + 2 * (k - 1), -n + 2 * k
        if dst not in sp.dims:
            levels.append(Subspace.zero(0))
            continue
        vecs = [matmul(x.block(src), v) for x in L.a_basis for v in levels[-1].basis] if src in sp.dims else []
        levels.append(Subspace.span(vecs, sp.dims[dst]))
    return levels


def frobenius_order(L: LefschetzModule, dmax: int | None = None) -> FrobeniusRecord:
    sp = L.space
    n = L.depth
    dmax = n if dmax is None else dmax
    low = sp.dim(-n)
    if -n + 2 in sp.dims:
        lowest = [x.block(-n) for x in L.a_basis]
        stacked = np.hstack(lowest) if lowest else zeros(sp.dim(-n + 2), 0)
        map_iso = stacked.shape[0] == stacked.shape[1] and rank(stacked) == stacked.shape[0]
    else:
        map_iso = len(L.a_basis) == 0 or n == 0
    levels = _polynomial_levels(L, min(dmax, n))
    order = 0
    for k in range(1, len(levels)):
        if levels[k].dim == sp.dim(-n + 2 * k):
            order = k
        else:
            break
    return FrobeniusRecord(low, map_iso, order, n)


class DegenerateForm(ArithmeticError):
    pass


def invariant_form(L: LefschetzModule, unit: Sequence | None = None, integral: Sequence | None = None) -> PairingForm:
    """The pairing ⟨pu, qu⟩ = (−1)^k ∫(pqu) for p of polynomial degree k, with M_{−n} = K u."""
    sp = L.space
    n = L.depth
    if sp.dim(-n) != 1 or sp.dim(n) != 1:
        raise ValueError("the lowest and top pieces must be lines")
    u = vector(unit) if unit is not None else vector([1])
    integral = vector(integral) if integral is not None else vector([1])
    # monomial operators of each polynomial degree and their images of u
    words: list[list[tuple[tuple[int, ...], np.ndarray]]] = [[((), u)]]
    for k in range(1, n + 1):
        level = []
        b = EchelonBuilder(sp.dim(-n + 2 * k))
        for word, v in words[-1]:
            for i, x in enumerate(L.a_basis):
                if word and i < word[-1]:
                    continue
                w = matmul(x.block(-n + 2 * (k - 1)), v)
                if b.insert(w):
                    level.append((word + (i,), w))
        if b.dim != sp.dim(-n + 2 * k):
            raise ValueError("the module is not generated by its lowest piece")
        words.append(level)

    def act(word: tuple[int, ...], deg: int, y: np.ndarray) -> np.ndarray:
        for i in word:
            y = matmul(L.a_basis[i].block(deg), y)
            deg += 2
        return y

    blocks = {}
    for k in range(n + 1):
        d = -n + 2 * k
        basis_imgs = np.column_stack([w for _, w in words[k]])
        # M_d basis vector x_j = Σ c_{jm} (word_m u)
        coeff = solve(basis_imgs, identity(sp.dims[d]))
        sign = Q(-1 if k % 2 else 1)
        block = zeros(sp.dims[d], sp.dims[-d])
        for col in range(sp.dims[-d]):
            y = identity(sp.dims[-d])[:, col]
            vals = vector([matmul(integral, act(word, -d, y)) for word, _ in words[k]])
            block[:, col] = matmul(coeff.T, vals) * sign
        blocks[d] = block
    form = PairingForm(sp, blocks)
    if not form.is_nondegenerate():
        raise DegenerateForm("invariant form is degenerate; the module is not irreducible")
    return form


# ---------------------------------------------------------------------------
# exterior sums and products


def box_plus(L1: LefschetzModule, L2: LefschetzModule) -> LefschetzModule:
    space, perm = direct_sum_space(L1.space, L2.space)
    n1, n2 = L1.space.total_dim, L2.space.total_dim

    def embed(x: GradedMap, first: bool) -> GradedMap:
        dense = zeros(n1 + n2, n1 + n2)
        if first:
            dense[:n1, :n1] = x.to_dense()
        else:
            dense[n1:, n1:] = x.to_dense()
        return permuted_map(space, dense, perm, 2)

    ops = [embed(x, True) for x in L1.a_basis] + [embed(x, False) for x in L2.a_basis]
    return LefschetzModule(space, ops, None, f"{L1.name}⊞{L2.name}")


def box_times(L1: LefschetzModule, L2: LefschetzModule) -> LefschetzModule:
    space, perm = tensor_space(L1.space, L2.space)
    id1, id2 = identity(L1.space.total_dim), identity(L2.space.total_dim)
    ops = [permuted_map(space, kron(x.to_dense(), id2), perm, 2) for x in L1.a_basis]
    ops += [permuted_map(space, kron(id1, x.to_dense()), perm, 2) for x in L2.a_basis]
    return LefschetzModule(space, ops, None, f"{L1.name}⊠{L2.name}")


def irreducible_module(k: int) -> LefschetzModule:
    """V(k): a single string of length k + 1 with the shift operator."""
    space = GradedSpace(tuple((-k + 2 * j, 1) for j in range(k + 1)))
    blocks = {-k + 2 * j: matrix([[1]]) for j in range(k)}
    return LefschetzModule(space, [GradedMap(space, 2, blocks)], None, f"V({k})")


# ---------------------------------------------------------------------------
# the non-reductive example


@dataclass
class NonReductiveExample:
    module: LefschetzModule
    g: GradedLieAlgebra
    semisimple: bool
    form_preserved: bool
    killed_line: np.ndarray
    line_has_invariant_complement: bool


def nonreductive_example() -> NonReductiveExample:
    """sl2 (adjoint) ⊕ K² with K² in degree 0 and the extra operator (xe + yh + zf, u, v) ↦ (ve, z, 0).

    Basis: degree −2: f; degree 0: h, u, v; degree 2: e.
    """
    space = GradedSpace(((-2, 1), (0, 3), (2, 1)))
    # ad e: f ↦ h, h ↦ −2e
    ad_e = GradedMap(space, 2, {-2: matrix([[1], [0], [0]]), 0: matrix([[-2, 0, 0]])})
    # e': z f ↦ z u, v ↦ v e
    e_prime = GradedMap(space, 2, {-2: matrix([[0], [1], [0]]), 0: matrix([[0, 0, 1]])})
    # invariant quadratic form y² + xz − uv
    form = PairingForm(
        space,
        {
            -2: matrix([[Q("1/2")]]),
            0: matrix([[1, 0, 0], [0, 0, Q("-1/2")], [0, Q("-1/2"), 0]]),
            2: matrix([[Q("1/2")]]),
        },
    )
    L = LefschetzModule(space, [ad_e, e_prime], form, "sl2+K2")
    gen = generate_g(L)
    g = gen.g
    semisimple = killing_semisimple(g).semisimple
    preserved = all(infinitesimal_invariance(b, form) for b in g.basis)
    line = space.basis_vector(0, 1)
    return NonReductiveExample(L, g, semisimple, preserved, line, has_invariant_complement(g, line))


def has_invariant_complement(g: GradedLieAlgebra, v: np.ndarray) -> bool:
    """Whether the line K·v (v homogeneous, h ∈ g) has a g-stable complement.

    Such a complement is the kernel of a functional λ with λ(v) ≠ 0 spanning a g-stable line
    in M*.  Because h ∈ g, λ is supported on the degree of v, is killed by the nonzero-degree
    part of g and by [g, g] ∩ g_0, and must be a common eigenvector of the rest of g_0.
    """
    if g.h_index is None:
        raise ValueError("the grading operator must lie in g")
    sp = g.ambient
    d = sp.degree_of_index(int(np.flatnonzero(v != 0)[0]))
    vd = v[sp.slice(d)]
    if not is_zero(v - _embed(sp, d, vd)):
        raise ValueError("vector must be homogeneous")
    from .liegen import span_algebra

    derived0 = [
        x.bracket(y)
        for i, x in enumerate(g.basis)
        for y in g.basis[i + 1 :]
        if x.degree + y.degree == 0
    ]
    derived0_space = span_algebra(sp, derived0)
    # λ∘x = 0 on M_src for x: M_src → M_d, i.e. xᵀ λ = 0
    conditions = []
    for x in g.basis:
        src = d - x.degree
        if x.degree != 0 and src in sp.dims:
            conditions.append(x.block(src).T)
    conditions.extend(x.block(d).T for x in derived0_space.basis)
    cols = sp.dims[d]
    lam_space = kernel(np.vstack(conditions)) if conditions else Subspace.full(cols)
    candidates = [lam for lam in lam_space.basis if matmul(lam, vd) != 0]
    if not candidates:
        return False
    rest = [x for x in g.piece(0) if not derived0_space.contains(x)]
    if not rest:
        return True
    if lam_space.dim == 1:
        lam = lam_space.basis[0]
        return all(rank(np.vstack([lam, matmul(lam, x.block(d))])) == 1 for x in rest)
    raise NotImplementedError("degree-0 part outside [g, g] with several candidate functionals")


def _embed(sp: GradedSpace, d: int, vd: np.ndarray) -> np.ndarray:
    out = zeros(sp.total_dim)
    out[sp.slice(d)] = vd
    return out
