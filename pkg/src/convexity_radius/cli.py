"""Command-line interface: ``convexity-radius {radius,sweep,verify,check}``.

Exit codes: 0 success/pass, 1 usage or I/O error, 2 verification or check
failure, 3 inconclusive verification.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field, fields, replace
from typing import Optional

import numpy as np

from .errors import ConvexityRadiusError, ScenarioError
from .functions import CATALOG_PARAMS, catalog
from .operators import scenario_from_json
from .radii import FORMULAS, VARIANTS, ClassSpec, compute_radius
from .verifier import (
    VerifierSettings,
    check_class_membership,
    circle_profile_csv,
    claim_for_scenario,
    random_scenario,
    verify_scenario,
)

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2, 3
FORMULA_CHOICES = FORMULAS + ("thm24",)
SWEEP_PARAMS = ("alpha", "beta", "xi", "M", "N")
SWEEP_HEADER = ["param", "radius", "quadratic_a", "quadratic_b", "quadratic_c"]
RANDOM_FAMILY = {
    "thm21": "F_lif", "thm23": "F_ozaki", "thm24": "J_lif",
    "thm24_paper": "J_lif", "thm24_rederived": "J_lif", "thm26": "J_ozaki",
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    formula: Optional[str] = None
    alpha: Optional[str] = None
    beta: Optional[str] = None
    xi: Optional[str] = None
    M: Optional[str] = None
    N: Optional[str] = None
    variant: Optional[str] = None
    scenario: Optional[str] = None
    out: Optional[str] = None
    format: str = "json"
    samples: Optional[int] = None
    tol: Optional[float] = None
    seed: Optional[int] = None
    function: Optional[str] = None
    class_tag: Optional[str] = None
    class_param: Optional[float] = None
    extra: dict = field(default_factory=dict)

    def number(self, name: str) -> Optional[float]:
        raw = getattr(self, name)
        if raw is None:
            return None
        if isinstance(raw, str) and ":" in raw:
            raise UsageError(f"--{name} takes a single number here, got range {raw!r}")
        try:
            return float(raw)
        except (TypeError, ValueError):
            raise UsageError(f"--{name} expects a number, got {raw!r}") from None

    def settings(self) -> VerifierSettings:
        st = VerifierSettings()
        if self.samples is not None:
            st = replace(st, n_samples=int(self.samples))
        if self.tol is not None:
            st = replace(st, bisect_tol=float(self.tol))
        return st


def parse_range(spec: str):
    """``"start:stop:step"`` to the inclusive list of sweep values."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must be start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"range must be numeric, got {spec!r}") from None
    if not start > 0 or not step > 0:
        raise UsageError(f"range needs start > 0 and step > 0, got {spec!r}")
    if stop > 1e6:
        raise UsageError(f"range stop must be <= 1e6, got {stop}")
    if stop < start:
        raise UsageError(f"range stop {stop} is below start {start}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


def _fmt(x: float) -> str:
    # repr is the shortest string that round-trips the double exactly
    return repr(float(x))


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _radius_params(cfg: RunConfig, override: Optional[tuple] = None) -> dict:
    params = {}
    for name in SWEEP_PARAMS:
        if override and override[0] == name:
            params[name] = override[1]
            continue
        value = cfg.number(name)
        if value is not None:
            params[name] = value
    if cfg.variant is not None:
        params["variant"] = cfg.variant
    return params


def _require_formula(cfg: RunConfig) -> str:
    if cfg.formula is None:
        raise UsageError("--formula is required")
    if cfg.formula not in FORMULA_CHOICES:
        raise UsageError(f"unknown formula {cfg.formula!r}")
    return cfg.formula


def cmd_radius(cfg: RunConfig) -> int:
    result = compute_radius(_require_formula(cfg), **_radius_params(cfg))
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["radius"] + SWEEP_HEADER[2:])
        w.writerow([_fmt(result.radius)] + [_fmt(q) for q in result.quadratic])
        _emit(buf.getvalue(), cfg.out)
    else:
        _emit(json.dumps(result.to_json()) + "\n", cfg.out)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    formula = _require_formula(cfg)
    ranged = [n for n in SWEEP_PARAMS if isinstance(getattr(cfg, n), str) and ":" in getattr(cfg, n)]
    if len(ranged) != 1:
        raise UsageError("sweep needs exactly one parameter given as start:stop:step")
    name = ranged[0]
    values = parse_range(getattr(cfg, name))
    results = [compute_radius(formula, **_radius_params(cfg, (name, v))) for v in values]
    if cfg.format == "json":
        rows = [{"param": v, **r.to_json()} for v, r in zip(values, results)]
        _emit(json.dumps(rows) + "\n", cfg.out)
        return EXIT_OK
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for v, r in zip(values, results):
        w.writerow([_fmt(v), _fmt(r.radius)] + [_fmt(q) for q in r.quadratic])
    _emit(buf.getvalue(), cfg.out)
    return EXIT_OK


def _load_scenario(cfg: RunConfig):
    if cfg.scenario:
        try:
            with open(cfg.scenario) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read scenario {cfg.scenario!r}: {exc}") from None
        try:
            return scenario_from_json(text)
        except ScenarioError as exc:
            raise UsageError(f"{cfg.scenario}: {exc}") from None
    if cfg.seed is None:
        raise UsageError("verify needs --scenario PATH or --seed INT (random scenario)")
    family = RANDOM_FAMILY.get(cfg.formula or "")
    if family is None:
        raise UsageError(f"random scenarios exist for {sorted(RANDOM_FAMILY)}, not {cfg.formula!r}")
    rng = np.random.default_rng(cfg.seed)
    s, _ = random_scenario(rng, family, scenario_id=f"seed-{cfg.seed}")
    return s


def cmd_verify(cfg: RunConfig) -> int:
    s = _load_scenario(cfg)
    formula = cfg.formula
    if formula is not None and formula not in FORMULA_CHOICES:
        raise UsageError(f"unknown formula {formula!r}")
    overrides = {n: cfg.number(n) for n in SWEEP_PARAMS}
    claim = claim_for_scenario(s, formula, cfg.variant or "rederived", **overrides)
    report = verify_scenario(s, claim, cfg.settings())
    if cfg.format == "csv":
        radii = [row[0] for row in report.profile_check]
        _emit(circle_profile_csv(s, radii), cfg.out)
    else:
        _emit(json.dumps(report.to_json()) + "\n", cfg.out)
    return {"pass": EXIT_OK, "fail": EXIT_FAIL}.get(report.verdict, EXIT_INCONCLUSIVE)


_CLASS_PARAM = {"lif": "alpha", "ozaki": "beta", "starlike": "xi"}


def cmd_check(cfg: RunConfig) -> int:
    if not cfg.function or not cfg.class_tag:
        raise UsageError("check needs --function NAME and --class TAG")
    if cfg.function not in CATALOG_PARAMS:
        raise UsageError(f"unknown catalog function {cfg.function!r}")
    fparams = {k: cfg.number(k) for k in CATALOG_PARAMS[cfg.function]}
    missing = [k for k, v in fparams.items() if v is None]
    if missing:
        raise UsageError(f"{cfg.function} needs --{missing[0]}")
    f = catalog(cfg.function, **fparams)
    cparam = cfg.class_param
    if cparam is None and cfg.class_tag in _CLASS_PARAM:
        cparam = cfg.number(_CLASS_PARAM[cfg.class_tag])
        if cparam is None:
            raise UsageError(f"class {cfg.class_tag} needs --class-param")
    report = check_class_membership(f, ClassSpec(cfg.class_tag, cparam or 0.0))
    _emit(json.dumps({"function": f.label, **report.to_json()}) + "\n", cfg.out)
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {"radius": cmd_radius, "sweep": cmd_sweep, "verify": cmd_verify, "check": cmd_check}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        return COMMANDS[config.command](config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvexityRadiusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--formula", choices=FORMULA_CHOICES)
    for name in ("alpha", "beta", "xi", "M", "N"):
        common.add_argument(f"--{name}", dest=name, help="number, or start:stop:step for sweep")
    common.add_argument("--variant", choices=VARIANTS)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--config", metavar="PATH", help="JSON file; its keys override flags")

    parser = _Parser(prog="convexity-radius", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("radius", parents=[common], help="closed-form radius as JSON")
    sub.add_parser("sweep", parents=[common], help="radius over a parameter range as CSV")
    verify = sub.add_parser("verify", parents=[common], help="empirical check of a radius")
    verify.add_argument("--scenario", metavar="PATH")
    verify.add_argument("--samples", type=int)
    verify.add_argument("--tol", type=float)
    verify.add_argument("--seed", type=int)
    check = sub.add_parser("check", parents=[common], help="class membership / distortion check")
    check.add_argument("--function", choices=sorted(CATALOG_PARAMS))
    check.add_argument("--class", dest="class_tag",
                       choices=("lif", "convex", "univalent", "ozaki", "starlike"))
    check.add_argument("--class-param", type=float)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(ns).items() if k != "config"}
    if ns.config:
        try:
            with open(ns.config) as fh:
                overrides = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read config {ns.config!r}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(
                f"{ns.config}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        if not isinstance(overrides, dict):
            raise UsageError(f"{ns.config}: config must be a JSON object")
        if overrides.get("command", ns.command) != ns.command:
            raise UsageError(f"config command {overrides['command']!r} != {ns.command!r}")
        known = {f.name for f in fields(RunConfig)} | {"class"}
        unknown = set(overrides) - known
        if unknown:
            raise UsageError(f"{ns.config}: unknown key(s) {sorted(unknown)}")
        if "class" in overrides:
            overrides["class_tag"] = overrides.pop("class")
        for k, v in overrides.items():
            values[k] = str(v) if k in SWEEP_PARAMS and not isinstance(v, str) else v
    if values.get("format") is None:
        values["format"] = "csv" if ns.command == "sweep" else "json"
    names = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in values.items() if k in names})


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
