"""Root systems, weighted Dynkin diagrams with 0/2 labels, and Jordan–Lefschetz pair enumeration.

Roots are integer coefficient vectors over the simple roots.  Simple roots are labelled
1..l in Bourbaki order; the Cartan matrix entry A[i][j] is ⟨α_i^∨, α_j⟩.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

CLASSICAL = ("A", "B", "C", "D")

# E6/E7 nodes whose h = 2·(fundamental coweight) is the neutral element of an sl2-triple,
# from Dynkin's tables of weighted diagrams (labels 0/2 only).
EXCEPTIONAL_SIMPLE_H = {("E", 6): frozenset(), ("E", 7): frozenset({7})}


def cartan_matrix(kind: str, rank: int) -> list[list[int]]:
    kind = kind.upper()
    _check_rank(kind, rank)
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i: int, j: int) -> None:
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1

    if kind in ("A", "B", "C"):
        for i in range(1, rank):
            link(i, i + 1)
        if kind == "B" and rank >= 2:
            a[rank - 1][rank - 2] = -2
        if kind == "C" and rank >= 2:
            a[rank - 2][rank - 1] = -2
    elif kind == "D":
        for i in range(1, rank - 1):
            link(i, i + 1)
        link(rank - 2, rank)
    else:
        link(1, 3)
        for i in range(3, rank):
            link(i, i + 1)
        link(2, 4)
    return a


def _check_rank(kind: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7),
    }.get(kind)
    if not ok:
        raise ValueError(f"invalid rank {rank} for type {kind}")


def expected_root_count(kind: str, rank: int) -> int:
    l = rank
    return {"A": l * (l + 1), "B": 2 * l * l, "C": 2 * l * l, "D": 2 * l * (l - 1)}.get(
        kind, {6: 72, 7: 126}.get(l, 0)
    )


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive: tuple[tuple[int, ...], ...]

    @property
    def roots(self) -> list[tuple[int, ...]]:
        return list(self.positive) + [tuple(-c for c in r) for r in self.positive]

    @property
    def simple_basis(self) -> list[int]:
        return list(range(1, self.rank + 1))

    @property
    def highest_root(self) -> tuple[int, ...]:
        return max(self.positive, key=sum)

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    def edges(self) -> list[tuple[int, int]]:
        return [
            (i + 1, j + 1)
            for i in range(self.rank)
            for j in range(i + 1, self.rank)
            if self.cartan[i][j] != 0
        ]

    def is_root(self, v: tuple[int, ...]) -> bool:
        return v in self._rootset

    @property
    def _rootset(self) -> frozenset:
        return frozenset(self.roots)


def build_roots(kind: str, rank: int) -> RootSystem:
    """Enumerate positive roots by α-strings: β + α_i is a root iff p − ⟨β, α_i^∨⟩ > 0."""
    kind = kind.upper()
    a = cartan_matrix(kind, rank)
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(rank):
                pairing = sum(beta[j] * a[i][j] for j in range(rank))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    positive = tuple(sorted(found, key=lambda r: (sum(r), tuple(-x for x in r))))
    rs = RootSystem(kind, rank, tuple(tuple(r) for r in a), positive)
    if len(rs.roots) != expected_root_count(kind, rank):
        raise ArithmeticError("root enumeration disagrees with the classical count")
    return rs


@dataclass(frozen=True)
class WeightedDynkin:
    base: RootSystem
    labels: dict[int, int]

    def __post_init__(self):
        if set(self.labels.values()) - {0, 2}:
            raise ValueError("labels must be 0 or 2")

    @property
    def b2(self) -> set[int]:
        return {i for i, v in self.labels.items() if v == 2}

    @classmethod
    def from_b2(cls, base: RootSystem, b2) -> "WeightedDynkin":
        b2 = set(b2)
        return cls(base, {i: (2 if i in b2 else 0) for i in base.simple_basis})


def adjacency_check(wd: WeightedDynkin) -> bool:
    """True iff no Dynkin edge joins two nodes labelled 2."""
    b2 = wd.b2
    return not any(i in b2 and j in b2 for i, j in wd.base.edges())


# ---------------------------------------------------------------------------
# B_2 placement from the graded dimensions of the standard representation


@dataclass(frozen=True)
class B2Placement:
    kind: str
    dims: tuple[int, ...]
    parity: str
    rank: int
    b2: tuple[int, ...]


def valid_dims(dims, parity: str) -> bool:
    """1 ≤ d_0 < ... < d_r = ... = d_k, with r > 0 unless k = 0.

    A flat sequence of length > 1 is a sum of copies of one V(n), n > 1, which the
    progression property rules out for a standard representation of rank > 1.
    """
    d = list(dims)
    if not d or d[0] < 1 or parity not in ("even", "odd"):
        return False
    r = 0
    while r + 1 < len(d) and d[r] < d[r + 1]:
        r += 1
    if r == 0 and len(d) > 1:
        return False
    return all(x == d[r] for x in d[r:])


def _cumulative(d: list[int]) -> list[int]:
    return list(itertools.accumulate(d))


def full_dims(dims, parity: str) -> list[int]:
    """Dimensions of all graded pieces from degree −n upward."""
    d = list(dims)
    if parity == "odd":
        return d + d[::-1]
    return d + d[-2::-1]


def b2_from_dims(kind: str, dims, parity: str) -> B2Placement:
    kind = kind.upper()
    d = [int(x) for x in dims]
    if kind not in CLASSICAL:
        raise ValueError("B2 placement is defined for classical types")
    if not valid_dims(d, parity):
        raise ValueError(f"dims {d} violate 1 ≤ d_0 < ... < d_r = ... = d_k")
    k = len(d) - 1
    c = _cumulative(d)
    if kind == "A":
        total = sum(full_dims(d, parity))
        rank = total - 1
        b2 = _cumulative(full_dims(d, parity))[:-1]
    elif kind == "B":
        if parity != "even" or d[k] % 2 == 0:
            raise ValueError("type B needs even parity and odd middle dimension")
        rank = sum(d[:k]) + (d[k] - 1) // 2
        b2 = c[:k]
    elif kind == "C":
        if parity == "odd":
            rank = c[k]
            b2 = c[: k + 1]
        else:
            if any(x % 2 for x in d):
                raise ValueError("type C with even parity needs all dimensions even")
            rank = sum(d[:k]) + d[k] // 2
            b2 = c[:k]
    else:
        if parity == "odd":
            if any(x % 2 for x in d):
                raise ValueError("type D with odd parity needs all dimensions even")
            rank = c[k]
            b2 = c[: k + 1]
        else:
            if d[k] % 2:
                raise ValueError("type D with even parity needs an even middle dimension")
            rank = sum(d[:k]) + d[k] // 2
            if rank < 4:
                raise ValueError("type D needs rank at least 4")
            if d[k] >= 4:
                b2 = c[:k]
            else:
                # d_k = 2 forces d = (1, 2, ..., 2)
                b2 = list(range(1, 2 * k, 2)) + [2 * k]
        if rank < 4:
            raise ValueError("type D needs rank at least 4")
    if kind in ("B", "C") and rank < 2:
        raise ValueError(f"type {kind} needs rank at least 2")
    if kind == "A" and rank < 1:
        raise ValueError("type A needs rank at least 1")
    return B2Placement(kind, tuple(d), parity, rank, tuple(b2))


def _h_coordinates(kind: str, dims: list[int], parity: str) -> list[int]:
    """Eigenvalues λ_1 ≥ λ_2 ≥ ... on the Bourbaki-indexed basis of the standard representation."""
    full = full_dims(dims, parity)
    n = len(full) - 1
    values = []
    for t, m in enumerate(full):
        values.extend([n - 2 * t] * m)  # decreasing
    if kind == "A":
        return values
    half = [v for v in values if v > 0]
    zeros = [v for v in values if v == 0]
    if kind == "B":
        return half + [0] * ((len(zeros) - 1) // 2)
    return half + [0] * (len(zeros) // 2)


def simple_root_values(kind: str, lam: list[int]) -> list[int]:
    """α_i(h) for h with standard coordinates λ, using the Bourbaki linear forms."""
    if kind == "A":
        return [lam[i] - lam[i + 1] for i in range(len(lam) - 1)]
    l = len(lam)
    out = [lam[i] - lam[i + 1] for i in range(l - 1)]
    out.append({"B": lam[-1], "C": 2 * lam[-1], "D": lam[-2] + lam[-1]}[kind])
    return out


def direct_b2(kind: str, dims, parity: str) -> set[int]:
    vals = simple_root_values(kind, _h_coordinates(kind, list(dims), parity))
    if set(vals) - {0, 2}:
        raise ArithmeticError(f"h takes values {sorted(set(vals))} on simple roots")
    return {i + 1 for i, v in enumerate(vals) if v == 2}


def dims_from_b2(kind: str, rank: int, b2) -> list[int]:
    """Graded dimensions of the standard representation under h = 2·Σ_{β ∈ B2} ϖ_β^∨."""
    b2 = set(b2)
    target = [Fraction(2 if i + 1 in b2 else 0) for i in range(rank)]
    # solve for λ from the triangular system of Bourbaki forms
    if kind == "A":
        lam = [Fraction(0)] * (rank + 1)
        for i in range(rank - 1, -1, -1):
            lam[i] = lam[i + 1] + target[i]
        shift = sum(lam) / (rank + 1)
        values = [x - shift for x in lam]
    else:
        lam = [Fraction(0)] * rank
        last = target[-1]
        if kind == "B":
            lam[-1] = last
        elif kind == "C":
            lam[-1] = last / 2
        else:
            lam[-1] = (last - target[-2]) / 2
        for i in range(rank - 2, -1, -1):
            lam[i] = lam[i + 1] + target[i]
        values = lam + [-x for x in lam] + ([Fraction(0)] if kind == "B" else [])
    if any(v.denominator != 1 for v in values):
        raise ArithmeticError("h has non-integral eigenvalues on the standard representation")
    counts: dict[int, int] = {}
    for v in values:
        counts[int(v)] = counts.get(int(v), 0) + 1
    n = max(counts)
    return [counts.get(-n + 2 * t, 0) for t in range(n + 1)]


def round_trip(p: B2Placement) -> bool:
    full = dims_from_b2(p.kind, p.rank, p.b2)
    return full == full_dims(list(p.dims), p.parity)


@functools.lru_cache(maxsize=None)
def dims_sweep(kind: str, max_rank: int) -> tuple[B2Placement, ...]:
    """All admissible (dims, parity) for a classical type with rank ≤ max_rank."""
    out = []
    budget = 2 * max_rank + 2  # dim V ≤ 2l + 1 for every classical type
    for parity in ("even", "odd"):
        for d in _admissible_sequences(budget):
            if sum(full_dims(d, parity)) > budget:
                continue
            try:
                p = b2_from_dims(kind, d, parity)
            except ValueError:
                continue
            if p.rank <= max_rank:
                out.append(p)
    return tuple(out)


def _admissible_sequences(budget: int):
    """Sequences 1 ≤ d_0 < ... < d_r = ... = d_k with sum at most ``budget``."""

    def grow(seq: list[int], flat: bool):
        yield list(seq)
        last = seq[-1]
        if sum(seq) + last <= budget:
            yield from grow(seq + [last], True)
        if not flat:
            for nxt in range(last + 1, budget - sum(seq) + 1):
                yield from grow(seq + [nxt], False)

    for first in range(1, budget + 1):
        yield from grow([first], False)


# ---------------------------------------------------------------------------
# Jordan–Lefschetz pairs


def subdiagram_type(rs: RootSystem, removed: int) -> str:
    """Cartan type of the diagram with one node removed, components joined by '+'."""
    nodes = [i for i in rs.simple_basis if i != removed]
    adj = {i: set() for i in nodes}
    for i, j in rs.edges():
        if i in adj and j in adj:
            adj[i].add(j)
            adj[j].add(i)
    comps, seen = [], set()
    for i in nodes:
        if i in seen:
            continue
        stack, comp = [i], []
        seen.add(i)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    names = sorted((_component_type(rs, c, adj) for c in comps), key=lambda s: (s[0], int(s[1:])))
    return "+".join(names)


def _component_type(rs: RootSystem, comp: list[int], adj) -> str:
    s = len(comp)
    a = rs.cartan
    double = [(i, j) for i in comp for j in comp if a[i - 1][j - 1] == -2]
    if double:
        if s == 2:
            return "B2"
        short, long_ = double[0]
        # the short root's row carries the −2; B if the short root is the chain end
        return f"B{s}" if len(adj[short]) == 1 else f"C{s}"
    branch = [i for i in comp if len(adj[i]) == 3]
    if not branch:
        return f"A{s}"
    b = branch[0]
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [y for y in adj[cur] if y != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == arms[1] == 1:
        return f"D{s}"
    return f"E{s}"


@dataclass(frozen=True)
class PairVerdict:
    kind: str
    rank: int
    beta: int
    sum_free: bool
    highest_coefficient_one: bool
    h_simple: bool
    admissible: bool
    subtype: str

    @property
    def label(self) -> str:
        return f"({self.kind}{self.rank},{self.subtype})"


def sum_free(rs: RootSystem, beta: int) -> bool:
    """R(β) + R(β) contains no root, R(β) the positive roots with β-coefficient one."""
    r_beta = [r for r in rs.positive if r[beta - 1] == 1]
    roots = rs._rootset
    return not any(
        tuple(x + y for x, y in zip(r, s)) in roots for r, s in itertools.combinations_with_replacement(r_beta, 2)
    )


def _diagram_images(kind: str, rank: int, beta: int) -> set[int]:
    """β together with its images under the diagram symmetries realised in the standard representation."""
    out = {beta}
    if kind == "D" and beta in (rank - 1, rank):
        out.add(2 * rank - 1 - beta)
    return out


def h_simple(kind: str, rank: int, beta: int) -> bool:
    """Whether h = 2ϖ_β^∨ is the neutral element of an sl2-triple."""
    if kind == "E":
        return beta in EXCEPTIONAL_SIMPLE_H[(kind, rank)]
    targets = _diagram_images(kind, rank, beta)
    for p in dims_sweep(kind, rank):
        if p.rank == rank and len(p.b2) == 1 and p.b2[0] in targets and round_trip(p):
            return True
    return False


def jordan_pair_enumerate(kind: str, rank: int) -> list[PairVerdict]:
    kind = kind.upper()
    rs = build_roots(kind, rank)
    hr = rs.highest_root
    out = []
    for beta in rs.simple_basis:
        sf = sum_free(rs, beta)
        one = hr[beta - 1] == 1
        if sf != one:
            raise ArithmeticError(f"sum-free and highest-coefficient criteria disagree at {kind}{rank}, β={beta}")
        simple = h_simple(kind, rank, beta) if sf else False
        out.append(PairVerdict(kind, rank, beta, sf, one, simple, sf and simple, subdiagram_type(rs, beta)))
    return out


def classical_pair_list(max_rank: int) -> set[str]:
    """The classified Jordan–Lefschetz pairs of classical type with rank ≤ max_rank."""
    out = set()
    for m in range(1, max_rank + 1):
        if 2 * m - 1 <= max_rank:
            out.add(f"(A{2 * m - 1},{'+'.join([f'A{m - 1}'] * 2) if m > 1 else ''})")
        if 2 <= m <= max_rank:
            out.add(f"(B{m},{'A1' if m == 2 else f'B{m - 1}'})")
            out.add(f"(C{m},A{m - 1})")
        if 5 <= m <= max_rank:
            out.add(f"(D{m},D{m - 1})")
        if m >= 2 and 2 * m <= max_rank:
            out.add(f"(D{2 * m},A{2 * m - 1})")
    return out


def classical_types(max_rank: int) -> list[tuple[str, int]]:
    out = [("A", l) for l in range(1, max_rank + 1)]
    out += [("B", l) for l in range(2, max_rank + 1)]
    out += [("C", l) for l in range(2, max_rank + 1)]
    out += [("D", l) for l in range(4, max_rank + 1)]
    return out
