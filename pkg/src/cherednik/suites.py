"""Suite registry, run configuration and module-spec ingestion."""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Callable, Dict, Tuple

from .exact import parse_rational
from .glmod import (GlModule, ModuleValidationError, casimir_split_check, check_cybe, make_natural,
                    make_onedim, make_trivial, tensor, validate)
from .linops import CheckReport, TensorSpace, render, sample_basis

WORKERS_ENV = "CHEREDNIK_WORKERS"


class ConfigError(ValueError):
    """Invalid run configuration or module spec (exit status 2)."""


class ModuleSpecError(ConfigError):
    pass


@dataclass(frozen=True)
class RunConfig:
    suite: str
    m: int = 2
    n: int = 1
    N: int = 2
    kappa: Tuple[Fraction, ...] = (Fraction(1), Fraction(5, 2), Fraction(-7, 3))
    level_offset: Fraction = Fraction(0)
    level: Fraction | None = None
    window: Tuple[int, int] = (-2, 2)
    depth: int = 2
    degree: int = 5
    samples: int = 200
    seed: int = 0
    modules: Tuple[str, ...] = ()
    flavor: str = "gl"
    expect_fail: bool = False

    def validate(self) -> "RunConfig":
        if not self.kappa:
            raise ConfigError("kappa sequence must be nonempty")
        lo, hi = self.window
        if lo > hi:
            raise ConfigError(f"empty window {lo}..{hi}")
        for name in ("m", "n", "N", "samples", "degree"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if self.depth < 0:
            raise ConfigError("depth must be >= 0")
        if self.flavor not in ("gl", "sl"):
            raise ConfigError("flavor must be gl or sl")
        return self

    def echo(self) -> dict:
        return {"suite": self.suite, "m": self.m, "n": self.n, "N": self.N,
                "kappa": [str(k) for k in self.kappa], "level_offset": str(self.level_offset),
                "level": None if self.level is None else str(self.level),
                "window": list(self.window), "depth": self.depth, "degree": self.degree,
                "samples": self.samples, "seed": self.seed, "modules": list(self.modules),
                "flavor": self.flavor, "expect_fail": self.expect_fail}


# -- module specs ------------------------------------------------------------------

def _alias(text: str) -> GlModule:
    parts = text.split(":")
    kind = parts[0]
    try:
        if kind == "natural" and len(parts) == 2:
            return make_natural(int(parts[1]))
        if kind == "trivial" and len(parts) == 2:
            return make_trivial(int(parts[1]))
        if kind == "onedim" and len(parts) == 3:
            return make_onedim(int(parts[1]), parts[2].split(","))
    except ModuleValidationError:
        raise
    except ValueError as exc:
        raise ModuleSpecError(f"bad module alias {text!r}: {exc}") from None
    raise ModuleSpecError(f"unknown module alias {text!r}")


def _from_json(path: Path) -> GlModule:
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ModuleSpecError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        m, dim = int(data["m"]), int(data["dim"])
        mats = data["matrices"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ModuleSpecError(f"{path}: missing or malformed field {exc}") from None
    action = {}
    for a, b in product(range(1, m + 1), repeat=2):
        where = f"{path}: matrices[{a - 1}][{b - 1}]"
        try:
            rows = mats[a - 1][b - 1]
            mat = [[parse_rational(x) for x in row] for row in rows]
        except (IndexError, TypeError, ValueError) as exc:
            raise ModuleSpecError(f"{where}: {exc}") from None
        if len(mat) != dim or any(len(r) != dim for r in mat):
            raise ModuleSpecError(f"{where}: expected a {dim}x{dim} matrix")
        action[(a, b)] = mat
    return GlModule(m, dim, action, name=data.get("name", path.stem))


def parse_module_spec(spec: str) -> GlModule:
    """A JSON module file, or an alias such as ``natural:2``, ``onedim:2:1,1``,
    ``trivial:3``; aliases joined by ``*`` are tensored."""
    path = Path(spec)
    if path.suffix == ".json" or path.is_file():
        if not path.is_file():
            raise ModuleSpecError(f"{spec}: no such file")
        return _from_json(path)
    mods = [_alias(part.strip()) for part in spec.split("*")]
    out = mods[0]
    for nxt in mods[1:]:
        out = tensor(out, nxt)
    return out


def _module(cfg: RunConfig, idx: int, default: str) -> GlModule:
    spec = cfg.modules[idx] if len(cfg.modules) > idx else default
    return parse_module_spec(spec)


def _level(cfg: RunConfig, kappa: Fraction) -> Fraction:
    if cfg.level is not None:
        return cfg.level
    return kappa - cfg.m + cfg.level_offset


# -- runners -------------------------------------------------------------------------

def _run_hecke(cfg, kappa):
    from .hecke import HeckeActionFamily, hecke_relation_suite
    U = _module(cfg, 0, f"natural:{cfg.m}")
    rep = CheckReport("hecke")
    keys = sample_basis(TensorSpace(U.m, cfg.N, U.dim), cfg.samples, cfg.seed)
    for sl in (False, True):
        for f in (Fraction(0), Fraction(-U.m), Fraction(3, 2)):
            fam = HeckeActionFamily(U, cfg.N, f, sl)
            rep.merge(hecke_relation_suite(fam, keys), f"{'sl' if sl else 'gl'} f={f}: ")
    return rep


def _run_cybe(cfg, kappa):
    rep = check_cybe(cfg.m)
    rep.merge(casimir_split_check(cfg.m), "casimir: ")
    rep.merge(validate(_module(cfg, 0, f"natural:{cfg.m}")), "module: ")
    return rep


def _dunkl_params(cfg, kappa):
    from .dunkl import CherednikParams
    return CherednikParams(cfg.N, kappa)


def _run_rational(cfg, kappa):
    from .dunkl import rational_relation_suite
    return rational_relation_suite(_dunkl_params(cfg, kappa), cfg.degree)


def _run_trig(cfg, kappa):
    from .dunkl import trig_relation_suite
    return trig_relation_suite(_dunkl_params(cfg, kappa), *cfg.window)


def _run_embedding(cfg, kappa):
    from .dunkl import embedding_check
    return embedding_check(_dunkl_params(cfg, kappa), cfg.degree)


def _wspace(cfg, kappa, level=None, corrected=None, flavor=None):
    from .affine import induce_affine
    from .wspace import WSpace
    U = _module(cfg, 0, f"natural:{cfg.m}")
    flavor = flavor or cfg.flavor
    module = induce_affine(U, _level(cfg, kappa) if level is None else level, flavor)
    return WSpace(module, cfg.N, kappa, corrected)


def _run_affine(cfg, kappa):
    from .affine import jacobi_check, representation_check, smoothness_check
    from .wspace import theta_representation_check
    lo, hi = cfg.window
    rep = jacobi_check(cfg.m, lo, hi)
    wsp = _wspace(cfg, kappa)
    mkeys = sample_basis(wsp.module.keys(cfg.depth), min(cfg.samples, 40), cfg.seed)
    rep.merge(representation_check(wsp.module, mkeys, lo, hi), "module: ")
    rep.merge(smoothness_check(wsp.module, wsp.module.keys(cfg.depth)), "module: ")
    wkeys = wsp.sample(lo, hi, cfg.depth, min(cfg.samples, 20), cfg.seed)
    rep.merge(theta_representation_check(wsp, wkeys, lo, hi), "W: ")
    rep.name = "affine"
    return rep


def _run_xy_sigma(cfg, kappa):
    from .glmod import make_onedim as onedim
    from .wspace import lift_independence_check, prop15_suite
    wsp = _wspace(cfg, kappa)
    keys = wsp.sample(*cfg.window, cfg.depth, cfg.samples, cfg.seed)
    rep = prop15_suite(wsp, keys)
    if cfg.flavor == "sl":
        from .affine import induce_affine
        from .wspace import WSpace
        U = wsp.module.base
        shifted = tensor(U, onedim(U.m, [2] * U.m))
        other = WSpace(induce_affine(shifted, wsp.level, "sl"), cfg.N, kappa)
        rep.merge(lift_independence_check(wsp, other, keys), "lift: ")
    return rep


def _run_extended(cfg, kappa):
    from .wspace import lemma_suite_31_35
    wsp = _wspace(cfg, kappa)
    keys = wsp.sample(*cfg.window, cfg.depth, cfg.samples, cfg.seed)
    return lemma_suite_31_35(wsp, keys)


def _loop_commutator_suite(cfg, kappa, check_fn, name):
    """Both sign conventions of j, every (c, d); a built-in level control."""
    strict = cfg.level is None and cfg.level_offset == 0
    wsp = _wspace(cfg, kappa, corrected=cfg.flavor == "sl", flavor="gl")
    keys = wsp.sample(*cfg.window, cfg.depth, cfg.samples, cfg.seed)
    rep = CheckReport(name)
    m = cfg.m
    for j in (-1, -2):
        for c, d in product(range(1, m + 1), repeat=2):
            rep.merge(check_fn(wsp, j, c, d, keys, check_level=strict), f"j={j}: ")
    if strict:
        bad = _wspace(cfg, kappa, level=wsp.level + 1, corrected=wsp.corrected, flavor="gl")
        witness = None
        for c, d in product(range(1, m + 1), repeat=2):
            r = check_fn(bad, -1, c, d, keys, check_level=False)
            if not r.passed:
                witness = (c, d, r.failures[0].key)
                break
        rep.expect_witness("level κ - m + 1 breaks the formula", witness)
    return rep


def _run_commutator(cfg, kappa):
    from .wspace import commutator_formula_check
    return _loop_commutator_suite(cfg, kappa, commutator_formula_check, "ast_commutator_j")


def _run_jelement(cfg, kappa):
    from .wspace import j_element_check
    return _loop_commutator_suite(cfg, kappa, j_element_check, "ast_j_element")


def _run_qw(cfg, kappa):
    from .coinvariants import check_qw_preservation
    strict = cfg.level is None and cfg.level_offset == 0
    wsp = _wspace(cfg, kappa)
    keys = wsp.sample(*cfg.window, cfg.depth, cfg.samples, cfg.seed)
    return check_qw_preservation(wsp, keys, cfg.depth, control=strict, strict=strict)


def _run_finite_coinvariants(cfg, kappa):
    from .coinvariants import check_thm_125
    U = _module(cfg, 0, f"natural:{cfg.m}")
    V = _module(cfg, 1, f"natural:{cfg.n}")
    if U.m != cfg.m or V.m != cfg.n:
        raise ConfigError("module ranks must match --m and --n")
    return check_thm_125(U, V, cfg.m, cfg.n, cfg.N, cfg.depth)


def _run_affine_coinvariants(cfg, kappa):
    from .coinvariants import check_thm_17
    U = _module(cfg, 0, f"natural:{cfg.m}")
    if U.m != cfg.m:
        raise ConfigError("module rank must match --m")
    return check_thm_17(U, cfg.N, kappa, *cfg.window, cfg.depth, cfg.samples, cfg.seed,
                        level_offset=cfg.level_offset, strict=False)


@dataclass(frozen=True)
class Suite:
    runner: Callable
    uses_kappa: bool
    description: str


REGISTRY: Dict[str, Suite] = {
    "hecke": Suite(_run_hecke, False, "degenerate affine Hecke action on (C^m)^N ⊗ U"),
    "cybe": Suite(_run_cybe, False, "classical Yang-Baxter equation and module validation"),
    "dunkl_rational": Suite(_run_rational, True, "Dunkl operators on polynomials"),
    "dunkl_trig": Suite(_run_trig, True, "trigonometric operators on Laurent polynomials"),
    "embedding": Suite(_run_embedding, True, "z_p -> x_p y_p"),
    "affine": Suite(_run_affine, False, "affine bracket, induced modules and θ"),
    "ast_prop15": Suite(_run_xy_sigma, True, "X, Y, σ on W and commutation with gl_m"),
    "ast_lemmas3": Suite(_run_extended, True, "D, R, T identities in the extended space"),
    "ast_commutator_j": Suite(_run_commutator, True, "closed form of [Y_1, θ(E_cd t^j)]"),
    "ast_j_element": Suite(_run_jelement, True, "the J element and the maps ω_r"),
    "prop15_qw": Suite(_run_qw, True, "Y_p preserves qW"),
    "thm125": Suite(_run_finite_coinvariants, False, "finite coinvariants and induced H_N-modules"),
    "thm17": Suite(_run_affine_coinvariants, True, "affine coinvariants and the induced T_N-module"),
}


def _one(args):
    cfg, kappa = args
    return REGISTRY[cfg.suite].runner(cfg, kappa)


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def run_suite(cfg: RunConfig) -> CheckReport:
    """Run a registered suite once per κ (or once) and merge the reports in order."""
    if cfg.suite not in REGISTRY:
        raise ConfigError(f"unknown suite {cfg.suite!r}; known: {', '.join(sorted(REGISTRY))}")
    cfg.validate()
    suite = REGISTRY[cfg.suite]
    kappas = list(cfg.kappa) if suite.uses_kappa else [cfg.kappa[0]]
    jobs = [(cfg, k) for k in kappas]
    workers = min(_workers(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_one, jobs))
    else:
        parts = [_one(j) for j in jobs]
    report = CheckReport(cfg.suite, cfg.echo())
    for k, part in zip(kappas, parts):
        report.merge(part, f"κ={k}: " if suite.uses_kappa else "")
    if cfg.expect_fail:
        inner = report
        report = CheckReport(cfg.suite, cfg.echo())
        report.record("expected failure observed", cfg.suite, not inner.passed,
                      expected="fail", actual=inner.status)
    return report


def emit_report(report: CheckReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, ensure_ascii=False)
    if fmt == "text":
        return report.summary()
    raise ConfigError(f"unknown format {fmt!r}")


def with_overrides(cfg: RunConfig, **kw) -> RunConfig:
    return replace(cfg, **kw)
