"""Acceptance criteria, one test per criterion; each prints a PASS/FAIL line."""

import itertools

from conftest import record_acceptance

from leflab import cli
from leflab.appendixlab import FormedSpace, g2_configuration, gl_decomposition, hi_check, spinor_example, tensor_closure_experiment
from leflab.coinv import a2_flag_bundle, bundle_cohomology, coinvariant_algebra, flag_lie, leray_split
from leflab.exactla import matrix, vector
from leflab.geomodels import ALGEBRAS, albert_sku, hk_model, torus_kahler, torus_total, verify_psi
from leflab.graded import h_of, truncated_polynomial
from leflab.jordanalg import EXPECTED_CLOSURE, bd_level_k_direct, frobenius_model, level_k_matches_direct, presentation_check
from leflab.lefmod import (
    LefschetzModule,
    box_plus,
    box_times,
    find_lefschetz_element,
    generate_g,
    irreducible_module,
    jordan_check,
    nonreductive_example,
)
from leflab.liegen import adh_grading, aut_dimension, is_simple, killing_semisimple
from leflab.rootcomb import WeightedDynkin, adjacency_check, build_roots, classical_types, dims_sweep, jordan_pair_enumerate, round_trip
from leflab.sl2kit import jm_dual, jm_dual_by_solve, lefschetz_check, progression_check


def qs(*xs):
    return vector(list(xs))


def test_criterion_01_sl2_core():
    line = LefschetzModule.from_algebra(truncated_polynomial(1))
    fixtures = [irreducible_module(k) for k in range(6)]
    fixtures += [box_plus(irreducible_module(1), irreducible_module(3)), box_times(line, line), box_times(line, irreducible_module(2))]
    fixtures += [torus_total(2).module, LefschetzModule.from_algebra(frobenius_model("C", m=2).algebra)]
    fixtures += [LefschetzModule.from_algebra(coinvariant_algebra("A", 2).algebra)]
    ops = []
    for L in fixtures:
        ops.extend(L.a_basis)
        ops.append(L.operator(find_lefschetz_element(L)))
    hk = hk_model()
    ops.extend(hk.e_ops.values())
    tested = bad = 0
    for e in ops:
        if not lefschetz_check(e):
            continue
        tested += 1
        f = jm_dual(e)
        f2, free = jm_dual_by_solve(e)
        if not (e.bracket(f) == h_of(e.space) and f2 == f and free == 0):
            bad += 1
    ok = tested >= 15 and bad == 0
    record_acceptance(1, ok, f"{tested} Lefschetz operators, {bad} disagreements")
    assert ok


def test_criterion_02_nonreductive():
    ex = nonreductive_example()
    ok = not ex.semisimple
    record_acceptance(2, ok, f"closure dim {ex.g.dim}, semisimple={ex.semisimple}")
    assert ok


def test_criterion_03_torus():
    t1, t2 = torus_total(1), torus_total(2)
    v = jordan_check(t2.generated)
    v1 = jordan_check(t1.generated)
    k1, k2 = torus_kahler(1), torus_kahler(2)
    got = {
        "n1_dim": t1.g.dim,
        "n2_dim": t2.g.dim,
        "jordan": v.degrees_only_202 and v.f_commute and v1.degrees_only_202,
        "psi": verify_psi(1) and verify_psi(2),
        "kahler": (k1.g.dim, k2.g.dim),
    }
    ok = got["n1_dim"] == 6 and got["n2_dim"] == 28 and got["jordan"] and got["psi"] and got["kahler"] == (3, 15)
    record_acceptance(3, ok, " ".join(f"{k}={v}" for k, v in got.items()))
    assert ok


def _quaternion_product(x, y):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]


def _left_matrix(p):
    basis = [[1 if i == m else 0 for i in range(4)] for m in range(4)]
    cols = [_quaternion_product(p, e) for e in basis]
    return [[cols[m][i] for m in range(4)] for i in range(4)]


def test_criterion_04_quaternionic():
    hk = hk_model()
    calc = hk.calculus
    h = h_of(calc.space)
    units = {"i": [0, 1, 0, 0], "j": [0, 0, 1, 0], "k": [0, 0, 0, 1]}
    identity_ok = True
    for (na, a), (nb, b) in itertools.product(units.items(), repeat=2):
        # for unit pure quaternions b⁻¹ = −b, so ab⁻¹ = −ab
        q = [-x for x in _quaternion_product(a, b)]
        pure = [0, *q[1:]]
        rhs = calc.derivation(matrix(_left_matrix(pure)).T) * -1 + h * q[0]
        identity_ok = identity_ok and hk.e_ops[na].bracket(hk.f_ops[nb]) == rhs
    adh = adh_grading(hk.g)
    ok = (
        hk.g.dim == 10
        and adh == {-2: 3, 0: 4, 2: 3}
        and identity_ok
        and hk.bracket_identity_ok
        and hk.m_dims == [1, 3, 1]
        and hk.m_star_invariant
        and hk.kills_antiselfdual
    )
    record_acceptance(4, ok, f"dim {hk.g.dim} adh {adh} bracket_identity={identity_ok} M={hk.m_dims} star={hk.m_star_invariant} kills={hk.kills_antiselfdual}")
    assert ok


def test_criterion_05_jordan_frobenius():
    cases = [("A", {"m": m}, m) for m in (1, 2, 3)] + [("C", {"m": m}, m) for m in (1, 2, 3)] + [("D", {"m": 2}, 2)]
    split = {1: qs(1), 2: qs(1, -1), 3: qs(1, 1, -1), 4: qs(1, 1, -1, -1)}
    cases += [("BD", {"q": split[w]}, w) for w in (1, 2, 3, 4)]
    failures = []
    for case, kw, size in cases:
        model = frobenius_model(case, **kw)
        gen = generate_g(LefschetzModule.from_algebra(model.algebra))
        v = jordan_check(gen)
        label = f"{case}{size}"
        if not presentation_check(model):
            failures.append(f"{label}:presentation")
        if gen.g.dim != EXPECTED_CLOSURE[case](size):
            failures.append(f"{label}:dim {gen.g.dim}")
        if not (v.degrees_only_202 and v.f_commute):
            failures.append(f"{label}:jordan")
    ok = not failures
    record_acceptance(5, ok, f"{len(cases)} models; failing: {failures or 'none'}")
    assert ok


def test_criterion_06_level_k():
    rec = bd_level_k_direct(qs(1, 1, -1), 2)
    agrees = level_k_matches_direct(qs(1, 1, -1), 2)
    ok = rec.algebra.total_dim == 14 and sum(rec.invariant_dims) == 3 and rec.soccle_ok and agrees
    record_acceptance(6, ok, f"total {rec.algebra.total_dim} invariants {sum(rec.invariant_dims)} soccle={rec.soccle_ok} sym2_agrees={agrees}")
    assert ok


CLASSIFIED_PAIRS_RANK_8 = {
    "(A1,)",
    "(A3,A1+A1)",
    "(A5,A2+A2)",
    "(A7,A3+A3)",
    *(f"(B{n},B{n - 1})" for n in range(3, 9)),
    "(B2,A1)",
    *(f"(C{n},A{n - 1})" for n in range(2, 9)),
    "(D4,A3)",
    "(D6,A5)",
    "(D8,A7)",
    *(f"(D{n},D{n - 1})" for n in range(5, 9)),
}


def test_criterion_07_root_combinatorics():
    found = {v.label for kind, rank in classical_types(8) for v in jordan_pair_enumerate(kind, rank) if v.admissible}
    placements = [p for kind in ("A", "B", "C", "D") for p in dims_sweep(kind, 8)]
    adjacent_ok = all(adjacency_check(WeightedDynkin.from_b2(build_roots(p.kind, p.rank), p.b2)) for p in placements)
    trips = all(round_trip(p) for p in placements)
    ok = found == CLASSIFIED_PAIRS_RANK_8 and adjacent_ok and trips
    record_acceptance(7, ok, f"{len(found)} pairs, diff {sorted(found ^ CLASSIFIED_PAIRS_RANK_8)}; {len(placements)} placements adjacency={adjacent_ok} round_trip={trips}")
    assert ok


def test_criterion_08_albert():
    want = {"q": (3, 3, 0), "qi": (4, 3, 1), "h": (6, 3, 3)}
    got = {F: albert_sku(ALGEBRAS[F](), 1) for F in want}
    ok = all(got[F].dims == want[F] and got[F].decomposition_ok for F in want)
    record_acceptance(8, ok, " ".join(f"{F}={r.dims}/{r.decomposition_ok}" for F, r in got.items()))
    assert ok


def test_criterion_09_flags():
    a2, b2 = flag_lie("A", 2), flag_lie("B", 2)
    line = LefschetzModule.from_algebra(bundle_cohomology(truncated_polynomial(1), 1).algebra)
    g = generate_g(line).g
    # a six-dimensional semisimple algebra that is not simple is a product of two three-dimensional ones
    product_ok = g.dim == 6 and killing_semisimple(g).semisimple and not is_simple(g)
    ok = (
        a2.g.dim == 21 == aut_dimension(6, a2.symmetric)
        and b2.g.dim == 28 == aut_dimension(8, b2.symmetric)
        and a2.maximal
        and b2.maximal
        and product_ok
    )
    record_acceptance(9, ok, f"A2 {a2.g.dim} maximal={a2.maximal}; B2 {b2.g.dim} maximal={b2.maximal}; line bundle {g.dim}")
    assert ok


def test_criterion_10_leray():
    line = leray_split(bundle_cohomology(truncated_polynomial(1), 1))
    flag = leray_split(a2_flag_bundle())

    def good(s):
        return s.in_g and s.commute and s.product_embedded and s.h_hor + s.h_ver == s.g.basis[s.g.h_index]

    ok = good(line) and good(flag) and flag.product_dim < flag.g.dim
    record_acceptance(10, ok, f"line {line.product_dim}/{line.g.dim}; A2 flag {flag.product_dim}/{flag.g.dim}")
    assert ok


def test_criterion_11_appendix():
    gl_ok = all(gl_decomposition(d).dims == [2 * i + 1 for i in range(d + 1)] and gl_decomposition(d).total == (d + 1) ** 2 for d in range(1, 7))
    g2 = g2_configuration()
    hi = hi_check(3, 2)
    S, O = FormedSpace.symplectic, FormedSpace.orthogonal
    t1 = tensor_closure_experiment([S(2), S(4)], seed=7)
    t2 = tensor_closure_experiment([O(3), S(2)], seed=7)
    ok = (
        gl_ok
        and g2.closed
        and g2.simple
        and g2.dim == 14
        and hi.outside_sl2
        and t1.closure_dim == t1.aut_dim == 28
        and t2.closure_dim == t2.aut_dim == 21
    )
    record_acceptance(11, ok, f"gl={gl_ok} G2 dim {g2.dim} h2_outside_sl2={hi.outside_sl2} tensors {t1.closure_dim}/{t1.aut_dim} {t2.closure_dim}/{t2.aut_dim}")
    assert ok


def test_criterion_12_spinor():
    k2, k3 = spinor_example(2), spinor_example(3)
    ok = k2.centralizer_dim == 3 and k3.relations_ok and k3.order == 2
    record_acceptance(12, ok, f"k=2 centralizer {k2.centralizer_dim}; k=3 relations={k3.relations_ok} order {k3.order}")
    assert ok


def test_criterion_13_progressions():
    checked, bad = 0, []
    for name in sorted(cli.MODELS):
        res = cli.build_model(name, {}, None)
        if res.module is None:
            continue
        for dims, passed in cli.summand_progressions(res.module):
            checked += 1
            if not passed:
                bad.append((name, dims))
    for L in [irreducible_module(k) for k in range(8)]:
        checked += 1
        dims = [L.space.dims.get(d, 0) for d in range(-L.depth, L.depth + 1, 2)]
        if not progression_check(dims)[0]:
            bad.append(("irreducible", dims))
    ok = not bad
    record_acceptance(13, ok, f"{checked} summands, failing {bad or 'none'}")
    assert ok
