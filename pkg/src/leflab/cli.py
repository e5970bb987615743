"""Command-line interface: build models, run analyses and verification suites, emit reports."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import __version__
from .exactla import Q
from .graded import GradedAlgebra, point_algebra, truncated_polynomial
from .lefmod import (
    DegenerateForm,
    GeneratedAlgebra,
    LefschetzModule,
    NoLefschetzElement,
    frobenius_order,
    generate_g,
    invariant_form,
    jordan_check,
    primitive_summands,
    search_box,
)
from .liegen import aut_dimension, fingerprint, preserves_form
from .sl2kit import progression_check

ANALYSES = ("closure", "jordan", "frobenius", "fingerprint", "forms")
SUITES = ("core", "jordan", "torus", "hk", "albert", "flags", "appendix")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    id: str
    claim: str
    passed: bool
    detail: object = None

    def to_json(self) -> dict:
        out = {"id": self.id, "claim": self.claim, "pass": self.passed}
        if self.detail is not None:
            out["detail"] = self.detail
        return out

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.id}: {self.claim}"


def _dims(dims: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(dims.items())}


# ---------------------------------------------------------------------------
# builtin models


@dataclass
class ModelResult:
    module: LefschetzModule | None = None
    generated: GeneratedAlgebra | None = None
    facts: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)


@dataclass(frozen=True)
class ModelSpec:
    name: str
    params: dict
    summary: str
    build: Callable[..., ModelResult]


def _int(v) -> int:
    return int(v)


def _model_torus(n=2, box=None) -> ModelResult:
    from .geomodels import psi_image_algebra, torus_total

    m = torus_total(_int(n), box)
    psi = psi_image_algebra(m.calculus)
    checks = [
        Check("torus.f_formula", "dual of wedge with the standard symplectic form is the double contraction", m.f_formula_ok),
        Check(
            "torus.psi_image",
            "closure equals the image of so(V ⊕ V*) in End(∧V*)",
            psi.same_as(m.g),
            {"closure_dim": m.g.dim, "psi_image_dim": psi.dim},
        ),
    ]
    return ModelResult(m.module, m.generated, {"n": int(n)}, checks)


def _model_kahler(n=2, box=None) -> ModelResult:
    from .geomodels import torus_kahler

    m = torus_kahler(_int(n), box=box)
    checks = [Check("kahler.f_formula", "dual of the Kähler class is the double contraction", m.f_formula_ok)]
    return ModelResult(m.module, m.generated, {"n": int(n), "a_dim": m.module.rank_a}, checks)


def _model_hk(box=None) -> ModelResult:
    from .geomodels import hk_model

    m = hk_model(box)
    checks = [
        Check("hk.f_star", "f_a equals Nm(a)⁻¹ ⋆ e_a ⋆⁻¹", m.f_star_ok),
        Check("hk.bracket", "[e_a, f_b] = −(ab⁻¹)₀ + Re(ab⁻¹)h for a, b ∈ {i, j, k}", m.bracket_identity_ok),
        Check("hk.quaternions", "e_a and f_a commute with the quaternion action", m.commutes_with_quaternions),
        Check("hk.m_dims", "the subalgebra generated by the Kähler classes has dims (1, 3, 1)", m.m_dims == [1, 3, 1]),
        Check("hk.m_invariant", "that subalgebra is star- and g-invariant", m.m_star_invariant and m.m_g_invariant),
        Check("hk.antiselfdual", "degree-0 part of g kills the anti-self-dual 2-forms", m.kills_antiselfdual),
    ]
    module = LefschetzModule(m.calculus.space, list(m.e_ops.values()), name="hk")
    return ModelResult(module, m.generated, {"m_dims": m.m_dims}, checks)


def _model_albert(F="q", m=1) -> ModelResult:
    from .geomodels import ALGEBRAS, albert_sku

    if F not in ALGEBRAS:
        raise ConfigError(f"unknown algebra {F!r}; choose from {sorted(ALGEBRAS)}")
    rec = albert_sku(ALGEBRAS[F](), _int(m))
    checks = [Check("albert.decomposition", "sku splits as g × u with both ideals", rec.decomposition_ok)]
    facts = {"F": F, "m": int(m), "sku_g_u_dims": list(rec.dims), "jordan": rec.jordan}
    return ModelResult(None, None, facts, checks)


def _model_jordan(case="A", m=2, level=1, q=None, box=None) -> ModelResult:
    from .jordanalg import EXPECTED_CLOSURE, derivation_check, frobenius_model, level_k, presentation_report

    case = str(case).upper()
    if q is not None and isinstance(q, str):
        q = [Q(x) for x in q.split(",")]
    model = frobenius_model(case, m=None if case == "BD" else _int(m), q=q)
    level = _int(level)
    alg = model.algebra if level == 1 else level_k(model, level).algebra
    module = LefschetzModule.from_algebra(alg, name=f"jordan-{case}")
    gen = generate_g(module, box)
    facts = {"case": case, "level": level, "algebra_dims": alg.dims}
    checks = []
    if level == 1:
        rep = presentation_report(model)
        size = len(model.generators)
        checks.append(Check("jordan.presentation", "the listed quadratic relations present the model", rep.ok, rep.first_failing_degree))
        key = size if case == "BD" else int(m)
        checks.append(
            Check(
                "jordan.closure_dim",
                "closure dimension matches the Jordan-algebra formula",
                gen.g.dim == EXPECTED_CLOSURE[case](key),
                {"closure_dim": gen.g.dim, "expected": EXPECTED_CLOSURE[case](key)},
            )
        )
        checks.append(Check("jordan.derivations", "degree-0 part acts by derivations", derivation_check(model, gen.g)))
    return ModelResult(module, gen, facts, checks)


def _model_flag(type="A", rank=2, box=None) -> ModelResult:  # noqa: A002
    from .coinv import coinvariant_algebra

    alg = coinvariant_algebra(str(type).upper(), _int(rank)).algebra
    module = LefschetzModule.from_algebra(alg, name=f"flag-{type}{rank}")
    gen = generate_g(module, box)
    symmetric = module.form.symmetry_sign() == 1
    aut = aut_dimension(alg.total_dim, symmetric)
    inside = preserves_form(gen.g, module.form)
    checks = [
        Check("flag.maximal", "closure is the full automorphism algebra of the Poincaré form", inside and gen.g.dim == aut, {"aut_dim": aut})
    ]
    return ModelResult(module, gen, {"type": str(type).upper(), "rank": int(rank), "algebra_dims": alg.dims}, checks)


BUNDLE_BASES = {
    "point": point_algebra,
    "line": lambda: truncated_polynomial(1),
    "plane": lambda: truncated_polynomial(2),
}


def _model_bundle(base="line", d=1, box=None) -> ModelResult:
    from .coinv import a2_flag_bundle, bundle_cohomology, leray_split

    if base == "a2flag":
        bundle = a2_flag_bundle()
    elif base in BUNDLE_BASES:
        bundle = bundle_cohomology(BUNDLE_BASES[base](), _int(d))
    else:
        raise ConfigError(f"unknown base {base!r}; choose from {sorted(BUNDLE_BASES) + ['a2flag']}")
    split = leray_split(bundle, box)
    module = LefschetzModule.from_algebra(bundle.algebra, name=f"bundle-{base}")
    checks = [
        Check("bundle.h_split", "h = h_hor + h_ver with both summands in the closure", split.in_g and split.commute),
        Check("bundle.filtration", "the split respects the Leray filtration", split.splits_filtration),
        Check("bundle.product", "g(base) × sl2 embeds in the closure", split.product_embedded, {"product_dim": split.product_dim}),
    ]
    facts = {"base": base, "fibre_rank": bundle.d + 1, "product_is_everything": split.product_is_everything, "closure_dim": split.g.dim}
    return ModelResult(module, None, facts, checks)


def _model_spinor(k=3, a="5/4") -> ModelResult:
    from .appendixlab import spinor_example

    rec = spinor_example(_int(k), a)
    checks = [Check("spinor.relations", "a₊a₋ = a₊^(2k+1) = a₋^(2k+1) = 0 and the e′ relations", rec.relations_ok)]
    if rec.frobenius is not None:
        checks.append(Check("spinor.order", "the semispinor is Frobenius up to order 2 but not 3", rec.order == 2))
        checks.append(Check("spinor.abar", "ā² acts trivially on the semispinor", bool(rec.abar_square_zero)))
    return ModelResult(None, None, rec.to_json(), checks)


MODELS: dict[str, ModelSpec] = {
    s.name: s
    for s in [
        ModelSpec("torus", {"n": 2}, "cohomology of a complex torus of dimension n over all 2-forms", _model_torus),
        ModelSpec("kahler-torus", {"n": 2}, "complex torus over the J-invariant 2-forms", _model_kahler),
        ModelSpec("hk", {}, "quaternionic 2-torus over the three Kähler classes", _model_hk),
        ModelSpec("albert", {"F": "q", "m": 1}, "skew-adjoint Lie algebra for an algebra with involution (q, qi, h)", _model_albert),
        ModelSpec("jordan", {"case": "A", "m": 2, "level": 1, "q": None}, "Jordan–Frobenius model (A, C, D, BD with q=\"p/q,...\")", _model_jordan),
        ModelSpec("flag", {"type": "A", "rank": 2}, "coinvariant algebra of a Weyl group", _model_flag),
        ModelSpec("bundle", {"base": "line", "d": 1}, "projectivized trivial bundle (point, line, plane) or the A2 flag bundle (a2flag)", _model_bundle),
        ModelSpec("spinor", {"k": 3, "a": "5/4"}, "V(2k) ⊕ V(2k−2) and its semispinor", _model_spinor),
    ]
}


def list_models() -> list[dict]:
    return [{"name": s.name, "params": s.params, "summary": s.summary} for s in MODELS.values()]


def build_model(name: str, params: dict, box: int | None) -> ModelResult:
    if name not in MODELS:
        raise ConfigError(f"unknown model {name!r}; choose from {sorted(MODELS)}")
    spec = MODELS[name]
    unknown = set(params) - set(spec.params)
    if unknown:
        raise ConfigError(f"unknown parameters for {name}: {sorted(unknown)}")
    kwargs = {**spec.params, **params}
    if "box" in spec.build.__code__.co_varnames:
        kwargs["box"] = box
    try:
        return spec.build(**kwargs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# scenarios


@dataclass
class ScenarioConfig:
    source: dict
    analyses: list[str]
    seed: int | None = None
    box: int | None = None
    expect: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, doc) -> "ScenarioConfig":
        if not isinstance(doc, dict):
            raise ConfigError("scenario must be a JSON object")
        kinds = [k for k in ("model", "algebra") if k in doc]
        if len(kinds) != 1:
            raise ConfigError("scenario needs exactly one of 'model' or 'algebra'")
        analyses = doc.get("analyses", ["closure", "jordan"])
        bad = [a for a in analyses if a not in ANALYSES]
        if bad:
            raise ConfigError(f"unknown analyses {bad}; choose from {list(ANALYSES)}")
        reserved = {"analyses", "seed", "box", "expect"}
        source = {k: v for k, v in doc.items() if k not in reserved}
        box = doc.get("box")
        return cls(source, list(analyses), doc.get("seed"), None if box is None else int(box), dict(doc.get("expect", {})))

    def to_json(self) -> dict:
        out = {"source": self.source, "analyses": self.analyses, "expect": self.expect}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.box is not None:
            out["box"] = self.box
        return out


def _module_from_algebra_doc(source: dict) -> LefschetzModule:
    try:
        alg = GradedAlgebra.from_json(source["algebra"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad algebra document: {exc}") from exc
    a_basis = source.get("a_basis")
    return LefschetzModule.from_algebra(alg, a_basis, source.get("name", "input"))


def _analyze(L: LefschetzModule, gen: GeneratedAlgebra | None, analyses: list[str], box: int | None) -> tuple[dict, list[Check], GeneratedAlgebra]:
    if gen is None:
        gen = generate_g(L, box)
    out: dict = {
        "lefschetz_elements": {"tested": [list(c) for c in gen.tested], "certified": [list(c) for c in gen.certified]},
    }
    checks: list[Check] = []
    g = gen.g
    if "closure" in analyses:
        out["closure"] = {"dim": g.dim, "degrees": _dims({d: len(v) for d, v in g.degrees.items()})}
    if "jordan" in analyses:
        v = jordan_check(gen)
        out["jordan"] = {"degrees_only_202": v.degrees_only_202, "f_commute": v.f_commute}
        checks.append(
            Check("analysis.jordan_equivalence", "degrees in {−2, 0, 2} exactly when the duals commute", v.degrees_only_202 == v.f_commute)
        )
    if "frobenius" in analyses:
        r = frobenius_order(L)
        out["frobenius"] = {"dim_lowest": r.dim_lowest, "map_iso": r.map_iso, "order": r.order, "depth": r.depth}
    if "fingerprint" in analyses:
        out["fingerprint"] = fingerprint(g).to_json()
    if "forms" in analyses:
        try:
            form = invariant_form(L)
            out["forms"] = {"symmetry_sign": form.symmetry_sign(), "nondegenerate": True, "invariant": preserves_form(g, form)}
        except (DegenerateForm, ValueError) as exc:
            out["forms"] = {"error": str(exc)}
    return out, checks, gen


def _expect_checks(report: dict, expect: dict) -> list[Check]:
    checks = []
    for key, want in sorted(expect.items()):
        if key == "dim":
            got = report.get("closure", {}).get("dim")
        elif key == "jordan":
            j = report.get("jordan", {})
            got = j.get("degrees_only_202") if j else None
        elif key == "frobenius_order":
            got = report.get("frobenius", {}).get("order")
        elif key == "degrees":
            got = report.get("closure", {}).get("degrees")
            want = {str(k): v for k, v in want.items()}
        else:
            raise ConfigError(f"unknown expectation {key!r}")
        checks.append(Check(f"expect.{key}", f"{key} equals {json.dumps(want)}", got == want, {"got": got}))
    return checks


def run(config: ScenarioConfig, timing: bool = False) -> tuple[dict, int]:
    """Execute a scenario; returns (report, exit status)."""
    start = time.perf_counter()
    box = config.box if config.box is not None else search_box()
    checks: list[Check] = []
    report: dict = {"tool": "leflab", "version": __version__, "input": config.to_json()}
    if "model" in config.source:
        params = {k: v for k, v in config.source.items() if k != "model"}
        res = build_model(config.source["model"], params, box)
        module, gen = res.module, res.generated
        report["model"] = res.facts
        checks.extend(res.checks)
    else:
        module, gen = _module_from_algebra_doc(config.source), None
    if module is not None:
        report["graded_dims"] = _dims(module.space.dims)
        try:
            analysis, extra, gen = _analyze(module, gen, config.analyses, box)
        except NoLefschetzElement as exc:
            analysis, extra = {"error": str(exc)}, [Check("analysis.lefschetz", "a Lefschetz element exists in the search box", False)]
        report.update(analysis)
        checks.extend(extra)
    checks.extend(_expect_checks(report, config.expect))
    checks.sort(key=lambda c: c.id)
    report["verdicts"] = [c.to_json() for c in checks]
    report["ok"] = all(c.passed for c in checks)
    if timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    return report, 0 if report["ok"] else 1


# ---------------------------------------------------------------------------
# verification suites


def _suite_core(seed: int) -> list[Check]:
    from .lefmod import box_times, irreducible_module, nonreductive_example
    from .sl2kit import jm_dual, jm_dual_by_solve

    out = []
    for k in range(1, 6):
        e = irreducible_module(k).a_basis[0]
        f = jm_dual(e)
        f2, sols = jm_dual_by_solve(e)
        out.append(Check(f"core.sl2_V{k}", f"[e, f] = h on V({k}) with a unique dual", e.bracket(f) == _h(e) and f2 == f and sols == 0))
    ex = nonreductive_example()
    out.append(Check("core.nonreductive", "the corrected non-reductive module has a degenerate Killing form", not ex.semisimple, {"dim": ex.g.dim}))
    line = LefschetzModule.from_algebra(truncated_polynomial(1))
    g = generate_g(line).g
    b = generate_g(box_times(line, line)).g
    out.append(Check("core.product_lines", "the product of two lines gives sl2 × sl2", b.dim == 6 and g.dim == 3))
    return out


def _h(e):
    from .graded import h_of

    return h_of(e.space)


def _suite_jordan(seed: int) -> list[Check]:
    from .jordanalg import EXPECTED_CLOSURE, bd_level_k_direct, frobenius_model, level_k_matches_direct, presentation_check

    out = []
    cases = [("A", 1), ("A", 2), ("A", 3), ("C", 2), ("C", 3), ("D", 2)]
    for case, m in cases:
        model = frobenius_model(case, m=m)
        g = generate_g(LefschetzModule.from_algebra(model.algebra)).g
        out.append(Check(f"jordan.{case}{m}.presentation", f"relations present the {case}{m} model", presentation_check(model)))
        out.append(Check(f"jordan.{case}{m}.closure", f"closure dim {EXPECTED_CLOSURE[case](m)}", g.dim == EXPECTED_CLOSURE[case](m), {"dim": g.dim}))
    for q in (["1", "1"], ["1", "1", "-1"], ["1", "-1", "1", "-1"]):
        model = frobenius_model("BD", q=[Q(x) for x in q])
        g = generate_g(LefschetzModule.from_algebra(model.algebra)).g
        w = len(q)
        out.append(Check(f"jordan.BD{w}.presentation", f"relations present the BD model with dim W = {w}", presentation_check(model)))
        out.append(Check(f"jordan.BD{w}.closure", f"closure dim {EXPECTED_CLOSURE['BD'](w)}", g.dim == EXPECTED_CLOSURE["BD"](w), {"dim": g.dim}))
    rec = bd_level_k_direct([Q(1), Q(1), Q(-1)], 2)
    out.append(Check("jordan.level2.total", "level-2 algebra for dim W = 3 has total dim 14", rec.algebra.total_dim == 14))
    out.append(Check("jordan.level2.invariants", "so-invariants have dim k + 1 = 3", rec.invariant_total == 3))
    out.append(Check("jordan.level2.soccle", "x²u^(k−1) = q(x)u^k on all basis vectors", rec.soccle_ok))
    out.append(Check("jordan.level2.agree", "symmetric-power route agrees with the direct quotient", level_k_matches_direct([Q(1), Q(1), Q(-1)], 2)))
    return out


def _suite_torus(seed: int) -> list[Check]:
    from .geomodels import psi_image_algebra, torus_kahler, torus_total, verify_psi

    out = []
    for n, want in ((1, 6), (2, 28)):
        m = torus_total(n)
        v = jordan_check(m.generated)
        out.append(Check(f"torus.n{n}.closure", f"closure dim {want}", m.g.dim == want, {"dim": m.g.dim}))
        out.append(Check(f"torus.n{n}.jordan", "jordan check holds", v.degrees_only_202 and v.f_commute))
        out.append(Check(f"torus.n{n}.psi", "ψ is a Lie algebra map on all basis pairs", verify_psi(n)))
        out.append(Check(f"torus.n{n}.psi_image", "closure equals the ψ-image", psi_image_algebra(m.calculus).same_as(m.g)))
    for n, want in ((1, 3), (2, 15)):
        k = torus_kahler(n)
        out.append(Check(f"torus.kahler.n{n}", f"Kähler closure dim {want}", k.g.dim == want, {"dim": k.g.dim}))
    return out


def _suite_hk(seed: int) -> list[Check]:
    from .liegen import adh_grading

    res = _model_hk()
    degs = adh_grading(res.generated.g)
    out = [Check("hk.closure", "closure dim 10 with ad-h dims (3, 4, 3)", res.generated.g.dim == 10 and degs == {-2: 3, 0: 4, 2: 3}, _dims(degs))]
    return out + res.checks


def _suite_albert(seed: int) -> list[Check]:
    from .geomodels import ALGEBRAS, albert_sku

    out = []
    for F, m, want in (("q", 1, (3, 3, 0)), ("qi", 1, (4, 3, 1)), ("h", 1, (6, 3, 3)), ("q", 2, (10, 10, 0)), ("qi", 2, (16, 15, 1))):
        rec = albert_sku(ALGEBRAS[F](), m)
        out.append(Check(f"albert.{F}.m{m}", f"sku/g/u dims {want} with an ideal decomposition", rec.dims == want and rec.decomposition_ok, list(rec.dims)))
    return out


def _suite_flags(seed: int) -> list[Check]:
    from .coinv import a2_flag_bundle, bundle_cohomology, flag_lie, leray_split

    out = []
    for kind, rank, want in (("A", 1, 3), ("A", 2, 21), ("B", 2, 28)):
        f = flag_lie(kind, rank)
        out.append(Check(f"flags.{kind}{rank}", f"closure dim {want} and maximal", f.g.dim == want and f.maximal, {"dim": f.g.dim}))
    line = leray_split(bundle_cohomology(truncated_polynomial(1), 1))
    out.append(Check("flags.line_bundle", "trivial line bundle over a line gives exactly sl2 × sl2", line.g.dim == 6 and line.product_is_everything))
    for name, split in (("line", line), ("a2flag", leray_split(a2_flag_bundle()))):
        out.append(Check(f"flags.leray.{name}", "h = h_hor + h_ver inside the closure with g(base) × sl2 embedded", split.in_g and split.commute and split.product_embedded))
        if name == "a2flag":
            out.append(Check("flags.leray.a2flag.strict", "the product is a proper subalgebra", not split.product_is_everything))
    return out


def _suite_appendix(seed: int) -> list[Check]:
    from .appendixlab import FormedSpace, g2_configuration, gl_decomposition, hi_check, spinor_example, tensor_closure_experiment

    out = []
    for d in range(1, 7):
        dec = gl_decomposition(d)
        ok = dec.dims == [2 * i + 1 for i in range(d + 1)] and dec.total == (d + 1) ** 2 and dec.direct_sum and dec.odd_is_aut
        out.append(Check(f"appendix.gl.d{d}", "gl(V(d)) splits into pieces of dims 2i+1 with odd part aut", ok))
    g2 = g2_configuration()
    out.append(Check("appendix.g2", "gl^(1) + gl^(5) of V(6) is closed, simple, dim 14", g2.closed and g2.simple and g2.dim == 14))
    h = hi_check(3, 2)
    out.append(Check("appendix.h2", "h₂ = diag(12, 12, −12, −12) lies in aut but not in sl2", h.eigenvalues == [12, 12, -12, -12] and h.in_aut and h.outside_sl2))
    S, O = FormedSpace.symplectic, FormedSpace.orthogonal
    for label, spaces, want in (("sp2_sp4", [S(2), S(4)], 28), ("o3_sp2", [O(3), S(2)], 21)):
        v = tensor_closure_experiment(spaces, seed=seed)
        out.append(Check(f"appendix.tensor.{label}", f"closure reaches aut of the product, dim {want}", v.equals_aut and v.closure_dim == want, v.to_json()))
    s2 = spinor_example(2)
    out.append(Check("appendix.spinor.centralizer", "degree-2 centralizer of e in so(V) has dim 3 (k = 2)", s2.centralizer_dim == 3))
    s3 = spinor_example(3)
    out.append(Check("appendix.spinor.relations", "a₊a₋ = a₊^7 = a₋^7 = 0 (k = 3)", s3.relations_ok))
    out.append(Check("appendix.spinor.order", "semispinor Frobenius order 2, not 3 (k = 3)", s3.order == 2, {"order": s3.order}))
    return out


SUITE_FUNCS: dict[str, Callable[[int], list[Check]]] = {
    "core": _suite_core,
    "jordan": _suite_jordan,
    "torus": _suite_torus,
    "hk": _suite_hk,
    "albert": _suite_albert,
    "flags": _suite_flags,
    "appendix": _suite_appendix,
}


def verify_suite(name: str, seed: int = 7) -> list[Check]:
    if name == "all":
        return [c for s in SUITES for c in SUITE_FUNCS[s](seed)]
    if name not in SUITE_FUNCS:
        raise ConfigError(f"unknown suite {name!r}; valid names: {', '.join(SUITES + ('all',))}")
    return SUITE_FUNCS[name](seed)


def summand_progressions(L: LefschetzModule, box: int | None = None) -> list[tuple[list[int], bool]]:
    """Step-2 dims of each primitive-generated submodule with its progression verdict."""
    g = generate_g(L, box).g
    return [(s.step2(), progression_check(s.step2())[0]) for s in primitive_summands(g)]


# ---------------------------------------------------------------------------
# argument handling


def _parse_params(tokens: list[str]) -> dict:
    params: dict = {}
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if t.startswith("--"):
            key = t[2:]
            if "=" in key:
                key, val = key.split("=", 1)
            elif i + 1 < len(tokens) and not tokens[i + 1].startswith("--"):
                val = tokens[i + 1]
                i += 1
            else:
                val = True
        elif "=" in t:
            key, val = t.split("=", 1)
        else:
            raise ConfigError(f"cannot parse parameter {t!r}")
        params[key.replace("-", "_") if key != "F" else key] = val
        i += 1
    return params


def _emit(obj, fmt_name: str, text: Callable[[], str]) -> None:
    if fmt_name == "json":
        print(json.dumps(obj, indent=2, sort_keys=True, default=str))
    else:
        print(text())


def _report_text(report: dict) -> str:
    lines = [f"leflab {report['version']}"]
    for key in ("model", "graded_dims", "closure", "jordan", "frobenius", "fingerprint", "forms"):
        if key in report:
            lines.append(f"{key}: {json.dumps(report[key], sort_keys=True, default=str)}")
    for v in report["verdicts"]:
        lines.append(f"{'PASS' if v['pass'] else 'FAIL'} {v['id']}: {v['claim']}")
    lines.append("ok" if report["ok"] else "FAILED")
    return "\n".join(lines)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leflab", description="Lie algebras generated by Lefschetz operators, in exact arithmetic.")
    p.add_argument("--format", choices=("json", "text"), default=None, help="json for reports, text for list-models by default")
    p.add_argument("--version", action="version", version=f"leflab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run a scenario file")
    a.add_argument("file")
    a.add_argument("--timing", action="store_true", help="include wall-clock seconds (breaks byte-identical output)")

    m = sub.add_parser("model", help="build a builtin model and analyze it")
    m.add_argument("name")
    m.add_argument("--analyses", default="closure,jordan")
    m.add_argument("--kahler", action="store_true", help="torus over the J-invariant forms only")

    c = sub.add_parser("classify", help="Jordan–Lefschetz pairs for a root system")
    c.add_argument("--type", required=True)
    c.add_argument("--rank", type=int, required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite")
    v.add_argument("--seed", type=int, default=7)
    v.add_argument("--suite", dest="suite_opt", help="alias for the positional suite")

    ls = sub.add_parser("list-models", help="print the builtin model catalog")
    ls.add_argument("--json", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args, rest = parser.parse_known_args(argv)
    if rest and args.command != "model":
        parser.error(f"unrecognized arguments: {' '.join(rest)}")
    if args.format is None:
        args.format = "text" if args.command == "list-models" else "json"
    try:
        if args.command == "analyze":
            try:
                doc = json.loads(Path(args.file).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read scenario: {exc}") from exc
            report, status = run(ScenarioConfig.from_json(doc), timing=args.timing)
            _emit(report, args.format, lambda: _report_text(report))
            return status
        if args.command == "model":
            name = args.name
            if name == "torus" and args.kahler:
                name = "kahler-torus"
            params = _parse_params(rest)
            analyses = [x for x in args.analyses.split(",") if x]
            report, status = run(ScenarioConfig.from_json({"model": name, **params, "analyses": analyses}))
            _emit(report, args.format, lambda: _report_text(report))
            return status
        if args.command == "classify":
            from .rootcomb import jordan_pair_enumerate

            try:
                rows = jordan_pair_enumerate(args.type, args.rank)
            except (KeyError, ValueError) as exc:
                raise ConfigError(str(exc)) from exc
            table = [
                {
                    "beta": r.beta,
                    "sum_free": r.sum_free,
                    "highest_coefficient_one": r.highest_coefficient_one,
                    "h_simple": r.h_simple,
                    "admissible": r.admissible,
                    "pair": r.label,
                }
                for r in rows
            ]
            _emit(table, args.format, lambda: "\n".join(f"β={t['beta']} {t['pair']} admissible={t['admissible']}" for t in table))
            return 0
        if args.command == "verify":
            name = args.suite_opt or args.suite
            checks = verify_suite(name, args.seed)
            summary = {"suite": name, "seed": args.seed, "checks": [c.to_json() for c in checks], "ok": all(c.passed for c in checks)}
            _emit(summary, args.format, lambda: "\n".join([c.line() for c in checks] + [f"{sum(c.passed for c in checks)}/{len(checks)} passed"]))
            return 0 if summary["ok"] else 1
        if args.command == "list-models":
            cat = list_models()
            if args.json or args.format == "json":
                print(json.dumps(cat, indent=2, sort_keys=True))
            else:
                for entry in cat:
                    params = " ".join(f"{k}={v}" for k, v in entry["params"].items())
                    print(f"{entry['name']:<13} {params:<32} {entry['summary']}")
            return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
