"""sl2 toolbox: Lefschetz test, primitive decomposition, Jacobson–Morozov dual, sl2-types."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactla import (
    Q,
    identity,
    Subspace,
    inverse,
    is_zero,
    kernel,
    matmul,
    rank,
    solve,
    zeros,
)
from .graded import GradedMap, GradedSpace, flat_layout, h_of


class LefschetzViolation(ValueError):
    """Raised when an operator lacks the Lefschetz property; ``report`` lists failing degrees."""

    def __init__(self, report: list[dict]):
        self.report = report
        bad = ", ".join(f"k={r['k']} (rank {r['rank']} of {r['expected']})" for r in report)
        super().__init__(f"operator is not Lefschetz: {bad}")


def _power_block(e: GradedMap, start: int, k: int) -> np.ndarray:
    """Matrix of e^k from M_start to M_{start + k·deg e}."""
    out = identity(e.space.dim(start))
    d = start
    for _ in range(k):
        out = matmul(e.block(d), out)
        d += e.degree
    return out


def lefschetz_report(e: GradedMap) -> list[dict]:
    """Degrees k ≥ 0 where e^k : M_{−k} → M_k fails to be an isomorphism."""
    if e.degree != 2:
        raise ValueError("Lefschetz operators have degree 2")
    sp = e.space
    failures = []
    for k in sorted({abs(d) for d in sp.degrees}):
        lo, hi = sp.dim(-k), sp.dim(k)
        r = rank(_power_block(e, -k, k)) if lo and hi else 0
        if lo != hi or r != lo:
            failures.append({"k": k, "rank": r, "expected": max(lo, hi)})
    return failures


def lefschetz_check(e: GradedMap, space: GradedSpace | None = None) -> bool:
    if space is not None and space != e.space:
        raise ValueError("operator acts on a different space")
    if e.degree != 2:
        return False
    return not lefschetz_report(e)


@dataclass
class PrimitiveDecomposition:
    """``primitives[k]`` is P_{−k} = Ker(e^{k+1}) ∩ M_{−k}, in coordinates of M_{−k}."""

    operator: GradedMap
    primitives: dict[int, Subspace]

    def strings(self) -> list[tuple[int, int, list[np.ndarray]]]:
        """(k, index, [p, e p, ..., e^k p]) as full-space vectors for each primitive basis vector."""
        e = self.operator
        sp = e.space
        out = []
        for k, sub in sorted(self.primitives.items()):
            for idx, p in enumerate(sub.basis):
                v = zeros(sp.total_dim)
                v[sp.slice(-k)] = p
                chain = [v]
                for _ in range(k):
                    chain.append(e.apply(chain[-1]))
                out.append((k, idx, chain))
        return out

    def total_dim(self) -> int:
        return sum((k + 1) * s.dim for k, s in self.primitives.items())


def primitive_decomposition(e: GradedMap) -> PrimitiveDecomposition:
    sp = e.space
    prims = {}
    for d in sp.degrees:
        if d > 0:
            continue
        k = -d
        p = kernel(_power_block(e, d, k + 1))
        if p.dim:
            prims[k] = p
    return PrimitiveDecomposition(e, prims)


def jm_dual(e: GradedMap, space: GradedSpace | None = None) -> GradedMap:
    """The unique degree −2 operator f with [e, f] = h, built on primitive strings."""
    report = lefschetz_report(e)
    if report:
        raise LefschetzViolation(report)
    sp = e.space
    dec = primitive_decomposition(e)
    # per degree: basis vectors e^j p and their prescribed images
    cols: dict[int, list[np.ndarray]] = {d: [] for d in sp.degrees}
    images: dict[int, list[np.ndarray]] = {d: [] for d in sp.degrees}
    for k, _, chain in dec.strings():
        for j, v in enumerate(chain):
            d = -k + 2 * j
            cols[d].append(v[sp.slice(d)])
            if j == 0:
                images[d].append(None)
            else:
                images[d].append(chain[j - 1][sp.slice(d - 2)] * Q(j * (k - j + 1)))
    blocks = {}
    for d in sp.degrees:
        if d - 2 not in sp.dims:
            continue
        basis = np.column_stack(cols[d])
        if basis.shape != (sp.dims[d], sp.dims[d]):
            raise ArithmeticError("primitive strings do not form a basis")
        imgs = np.column_stack([zeros(sp.dims[d - 2]) if x is None else x for x in images[d]])
        blocks[d] = matmul(imgs, inverse(basis))
    return GradedMap(sp, -2, blocks)


def jm_dual_by_solve(e: GradedMap) -> tuple[GradedMap | None, int]:
    """Solve [e, f] = h over all degree −2 maps; returns (a solution, dimension of the solution set)."""
    sp = e.space
    layout = flat_layout(sp, -2)
    nvars = sum(r * c for _, r, c in layout)
    target = h_of(sp).flat()
    if nvars == 0:
        return (GradedMap.zero(sp, -2) if is_zero(target) else None), 0
    columns = []
    for i in range(nvars):
        unit = zeros(nvars)
        unit[i] = Q(1)
        columns.append(e.bracket(GradedMap.from_flat(sp, -2, unit)).flat())
    system = np.column_stack(columns)
    sol = solve(system, target)
    if sol is None:
        return None, 0
    return GradedMap.from_flat(sp, -2, sol), nvars - rank(system)


def sl2_type(e: GradedMap) -> dict[int, int]:
    """Multiplicity of V(k) for each k, read off from primitive dimensions."""
    if not lefschetz_check(e):
        raise LefschetzViolation(lefschetz_report(e))
    return {k: s.dim for k, s in sorted(primitive_decomposition(e).primitives.items())}


def isotypic_components(e: GradedMap) -> dict[int, Subspace]:
    """The V(k)-isotypic subspace of M for each k occurring."""
    sp = e.space
    out: dict[int, list[np.ndarray]] = {}
    for k, _, chain in primitive_decomposition(e).strings():
        out.setdefault(k, []).extend(chain)
    return {k: Subspace.span(v, sp.total_dim) for k, v in out.items()}


def progression_check(graded_dims) -> tuple[bool, int | None]:
    """Check dims (listed from degree −n to n in steps of 2) increase strictly, then stay flat.

    Returns (ok, r) where the plateau starts at position r.
    """
    dims = [int(x) for x in graded_dims]
    if not dims or dims != dims[::-1]:
        return False, None
    mid = (len(dims) - 1) // 2
    r = 0
    while r < mid and dims[r] < dims[r + 1]:
        r += 1
    if any(dims[i] != dims[r] for i in range(r, len(dims) - r)):
        return False, None
    return True, r


def graded_dims_step2(space: GradedSpace) -> list[int]:
    """Dimensions from degree −n to n in steps of 2 (the parity of n)."""
    n = space.top
    return [space.dim(d) for d in range(-n, n + 1, 2)]
