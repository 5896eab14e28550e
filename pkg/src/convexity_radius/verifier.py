"""Empirical checks of the closed-form radii.

The central object is ``min_{|z|=r} Re Q(z)`` for the convexity functional
``Q = 1 + z J''/J'``: dense uniform sampling of the circle followed by
golden-section refinement of the best brackets. On top of it sit the
empirical convexity radius, class-membership and distortion checks, order
estimation and the scenario-level verdict.
"""
from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BadParameter,
    ConvexityRadiusError,
    CriticalPoint,
    EvaluationFailure,
    UncheckableClass,
)
from .functions import FunctionHandle, MobiusParams, catalog, invariance_a2
from .operators import Scenario, convexity_functional, starlike_term
from .radii import ClassSpec, RadiusResult, compute_radius

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class VerifierSettings:
    n_samples: int = 4096
    refine_tol: float = 1e-9
    radius_tol: float = 1e-4
    value_tol: float = 1e-6
    bisect_tol: float = 1e-6
    grid_step: float = 0.01
    radius_cap: float = 0.995
    check_fractions: tuple = (0.25, 0.5, 0.75, 0.9)
    class_grid: tuple = (50, 256, 0.99)

    def __post_init__(self):
        if self.n_samples < 256:
            raise BadParameter(f"n_samples must be >= 256, got {self.n_samples}")


@dataclass(frozen=True)
class CircleMin:
    value: float
    arg_theta: float
    r: float
    evaluations: int = field(default=0, compare=False)


@dataclass(frozen=True)
class EmpiricalRadius:
    radius: float
    cap_reached: bool
    evaluations: int = field(default=0, compare=False)
    nonmonotone: bool = False


def _re_q(s: Scenario, r, theta):
    return np.asarray(convexity_functional(s, r * np.exp(1j * np.asarray(theta)))).real


def _sample(s: Scenario, r, theta: np.ndarray) -> np.ndarray:
    try:
        vals = _re_q(s, r, theta)
    except (ConvexityRadiusError, ArithmeticError, ValueError) as exc:
        rs = np.broadcast_to(r, np.shape(theta)).ravel()
        bad = None
        for rk, t in zip(rs, np.ravel(theta)):
            try:
                _re_q(s, rk, t)
            except (ConvexityRadiusError, ArithmeticError, ValueError):
                bad = float(t)
                break
        raise EvaluationFailure(f"Q failed on the circle at theta = {bad}: {exc}", bad) from exc
    if not np.all(np.isfinite(vals)):
        bad = float(np.ravel(theta)[np.flatnonzero(~np.isfinite(vals).ravel())[0]])
        raise EvaluationFailure(f"Q is not finite on the circle at theta = {bad}", bad)
    return vals


def golden_section(func, lo: np.ndarray, hi: np.ndarray, tol: float):
    """Vectorized golden-section minimization on each bracket ``[lo_k, hi_k]``.

    Returns ``(x, f(x), evaluations)`` with ``x`` the better interior point
    once every bracket is narrower than ``tol``.
    """
    a, b = np.array(lo, dtype=float), np.array(hi, dtype=float)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = func(c), func(d)
    evals = 2 * a.size
    while np.max(b - a) > tol:
        left = fc < fd
        # where f(c) < f(d) keep [a, d], otherwise keep [c, b]
        a, b = np.where(left, a, c), np.where(left, d, b)
        c, d = (np.where(left, b - INV_PHI * (b - a), d),
                np.where(left, c, a + INV_PHI * (b - a)))
        f_new = func(np.where(left, c, d))
        evals += a.size
        fc, fd = np.where(left, f_new, fd), np.where(left, fc, f_new)
    better = fc <= fd
    return np.where(better, c, d), np.where(better, fc, fd), evals


def min_re_on_circles(s: Scenario, radii: Sequence[float], n_samples: int = 4096,
                      refine_tol: float = 1e-9, n_brackets: int = 3) -> list:
    """:func:`min_re_on_circle` for several radii in one vectorized pass."""
    radii = np.asarray(radii, dtype=float).reshape(-1)
    if np.any((radii <= 0.0) | (radii >= 1.0)):
        raise BadParameter(f"circle radii must lie in (0, 1), got {radii}")
    if n_samples < 256:
        raise BadParameter(f"n_samples must be >= 256, got {n_samples}")
    step = TWO_PI / n_samples
    theta = np.arange(n_samples) * step
    vals = _sample(s, radii[:, None], theta[None, :])

    # up to n_brackets lowest local minima per circle, ties to the lowest index
    is_local = (vals <= np.roll(vals, 1, axis=1)) & (vals <= np.roll(vals, -1, axis=1))
    ranked = np.where(is_local, vals, np.inf)
    picks = np.argsort(ranked, axis=1, kind="stable")[:, :n_brackets]
    valid = np.isfinite(np.take_along_axis(ranked, picks, axis=1))
    rows = np.repeat(np.arange(radii.size), n_brackets)[valid.ravel()]
    centers = theta[picks.ravel()[valid.ravel()]]
    r_rows = radii[rows]
    x, fx, evals = golden_section(
        lambda t: _sample(s, r_rows, t), centers - step, centers + step, refine_tol,
    )
    x = np.mod(x, TWO_PI)

    out = []
    for i, r in enumerate(radii):
        k0 = int(np.argmin(vals[i]))
        best_val, best_theta = float(vals[i, k0]), float(theta[k0])
        mine = rows == i
        for xv, fv in sorted(zip(x[mine], fx[mine])):
            if fv < best_val:
                best_val, best_theta = float(fv), float(xv)
        count = n_samples + evals // max(rows.size, 1) * int(np.sum(mine))
        out.append(CircleMin(best_val, best_theta, float(r), count))
    return out


def min_re_on_circle(s: Scenario, r: float, n_samples: int = 4096,
                     refine_tol: float = 1e-9, n_brackets: int = 3) -> CircleMin:
    """Global minimum of ``theta -> Re Q(r e^{i theta})`` over ``[0, 2 pi)``.

    Uniform sampling at ``n_samples`` angles, then golden-section refinement
    on the brackets around the ``n_brackets`` lowest sampled local minima.
    Ties resolve to the smallest angle.
    """
    if not 0.0 < r < 1.0:
        raise BadParameter(f"circle radius must lie in (0, 1), got {r}")
    return min_re_on_circles(s, [r], n_samples, refine_tol, n_brackets)[0]


def _radius_grid(step: float, cap: float) -> np.ndarray:
    k = int(math.floor(cap / step + 1e-9))
    grid = step * np.arange(1, k + 1)
    grid = grid[grid < cap - 1e-12]
    return np.append(grid, cap)


def empirical_convexity_radius(s: Scenario, tol: float = 1e-6,
                               settings: Optional[VerifierSettings] = None) -> EmpiricalRadius:
    """Largest ``r`` such that ``min_{|z|=rho} Re Q >= 0`` on every scanned ``rho <= r``.

    The whole coarse grid is scanned first; the first failing cell is then
    bisected to ``tol``. ``cap_reached`` marks a scan with no failure.
    """
    st = settings or VerifierSettings()
    grid = _radius_grid(st.grid_step, st.radius_cap)
    mins = min_re_on_circles(s, grid, st.n_samples, st.refine_tol)
    evals = sum(cm.evaluations for cm in mins)
    ok = np.array([cm.value >= 0.0 for cm in mins])
    failing = np.flatnonzero(~ok)
    if failing.size == 0:
        return EmpiricalRadius(float(grid[-1]), True, evals)
    first = int(failing[0])
    nonmonotone = bool(np.any(ok[first:]))
    lo = float(grid[first - 1]) if first > 0 else 0.0
    hi = float(grid[first])
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        cm = min_re_on_circle(s, mid, st.n_samples, st.refine_tol)
        evals += cm.evaluations
        if cm.value >= 0.0:
            lo = mid
        else:
            hi = mid
    return EmpiricalRadius(lo, False, evals, nonmonotone)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a pointwise inequality sweep over a polar grid.

    ``worst_margin`` is the smallest slack seen (negative means violated).
    """

    passed: bool
    check: str
    worst_margin: float
    worst_z: complex
    label: str = "verified on compact exhaustion"
    violations: tuple = ()

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "check": self.check,
            "worst_margin": self.worst_margin,
            "worst_z": [self.worst_z.real, self.worst_z.imag],
            "label": self.label,
            "violations": [[z.real, z.imag, lhs, rhs] for z, lhs, rhs in self.violations],
        }


def _polar(radii: Sequence[float], n_angles: int) -> np.ndarray:
    theta = TWO_PI * np.arange(n_angles) / n_angles
    return (np.asarray(radii, dtype=float)[:, None] * np.exp(1j * theta)[None, :]).ravel()


def check_lemma_lif(f: FunctionHandle, alpha: float, r_grid: Sequence[float],
                    n_angles: int = 512, rel_tol: float = 1e-9) -> CheckReport:
    """Sweep ``|z f''/f' - 2|z|^2/(1-|z|^2)| <= 2 alpha |z| / (1-|z|^2)``."""
    if alpha < 1.0:
        raise BadParameter(f"alpha must be >= 1, got {alpha}")
    r_grid = np.asarray(r_grid, dtype=float)
    if np.any((r_grid <= 0.0) | (r_grid >= 1.0)):
        raise BadParameter("lemma radii must lie in (0, 1)")
    z = _polar(r_grid, n_angles)
    rr = np.abs(z) ** 2
    lhs = np.abs(np.asarray(f.logderiv(z)) - 2.0 * rr / (1.0 - rr))
    rhs = 2.0 * alpha * np.abs(z) / (1.0 - rr)
    slack = rhs - lhs
    bad = slack < -rel_tol * np.maximum(1.0, rhs)
    k = int(np.argmin(slack))
    violations = tuple((complex(z[i]), float(lhs[i]), float(rhs[i])) for i in np.flatnonzero(bad))
    return CheckReport(
        passed=not violations,
        check=f"lemma_lif(alpha={alpha:g})",
        worst_margin=float(slack[k]),
        worst_z=complex(z[k]),
        label="necessary-only",
        violations=violations,
    )


def check_class_membership(f: FunctionHandle, c: ClassSpec, grid_spec=None,
                           strict: bool = False) -> CheckReport:
    """Test the defining inequality of ``c`` on a polar grid of radius at most 0.99.

    Classes without a pointwise characterization (``lif``, ``univalent``)
    fall back to the distortion lemma and are labelled ``necessary-only``;
    ``strict=True`` raises :class:`UncheckableClass` instead.
    """
    n_radii, n_angles, r_max = grid_spec or VerifierSettings().class_grid
    if r_max > 0.99:
        raise BadParameter(f"class grids stop at radius 0.99, got {r_max}")
    radii = np.linspace(r_max / n_radii, r_max, n_radii)
    if c.class_tag in ("lif", "univalent"):
        if strict:
            raise UncheckableClass(f"no finite sufficient test for class {c.class_tag!r}")
        return check_lemma_lif(f, c.lif_order, radii, n_angles)
    z = _polar(radii, n_angles)
    if c.class_tag == "convex":
        margin = 1.0 + np.asarray(f.logderiv(z)).real
    elif c.class_tag == "ozaki":
        margin = 1.0 + c.parameter / 2.0 - (1.0 + np.asarray(f.logderiv(z)).real)
    elif c.class_tag == "starlike":
        margin = 1.0 + np.asarray(starlike_term(f, z)).real - c.parameter
    else:
        raise BadParameter(f"unknown class tag {c.class_tag!r}")
    k = int(np.argmin(margin))
    return CheckReport(
        passed=bool(margin[k] > 0.0),
        check=f"{c.class_tag}({c.parameter:g})",
        worst_margin=float(margin[k]),
        worst_z=complex(z[k]),
    )


def estimate_order(f: FunctionHandle, a_max: float = 0.99, grid: int = 64) -> float:
    """Lower bound on ``ord f`` from ``|a_2|`` of Koebe transforms over a polar grid.

    ``|a_2|`` does not depend on the rotation angle, so only ``a`` is gridded:
    moduli ``k / grid <= a_max`` at ``grid`` equally spaced arguments. The
    lattice does not scale with ``a_max``, so the point set only grows when
    ``a_max`` grows or ``grid`` is multiplied by an integer, and so does the
    estimate.
    """
    if not 0.0 < a_max < 1.0:
        raise BadParameter(f"a_max must lie in (0, 1), got {a_max}")
    if grid < 1:
        raise BadParameter(f"grid must be >= 1, got {grid}")
    best = 0.0
    rho = np.arange(int(math.floor(a_max * grid + 1e-9)) + 1) / grid
    phis = TWO_PI * np.arange(grid) / grid
    for p in rho:
        for phi in phis:
            a = complex(p * math.cos(phi), p * math.sin(phi))
            try:
                val = abs(invariance_a2(f, MobiusParams(a, 0.0)))
            except CriticalPoint as exc:
                raise CriticalPoint(f"f' vanishes at phi(0) for a = {a!r}", where=a) from exc
            best = max(best, val)
            if p == 0.0:
                break
    return best


@dataclass
class VerificationReport:
    scenario_id: str
    closed_form_radius: float
    empirical_radius: float
    profile_check: list
    verdict: str
    samples_used: int
    wall_time: float
    formula: str = ""
    cap_reached: bool = False
    diagnostics: list = field(default_factory=list)
    class_checks: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = asdict(self)
        out["profile_check"] = [list(row) for row in self.profile_check]
        return out


VERIFICATION_REPORT_SCHEMA = {
    "type": "object",
    "required": [
        "scenario_id", "closed_form_radius", "empirical_radius", "profile_check",
        "verdict", "samples_used", "wall_time",
    ],
    "properties": {
        "scenario_id": {"type": "string"},
        "closed_form_radius": {"type": "number"},
        "empirical_radius": {"type": ["number", "null"]},
        "profile_check": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [
                    {"type": "number"}, {"type": "number"},
                    {"type": "number"}, {"type": "boolean"},
                ],
                "minItems": 4,
                "maxItems": 4,
            },
        },
        "verdict": {"enum": ["pass", "fail", "inconclusive"]},
        "samples_used": {"type": "integer", "minimum": 0},
        "wall_time": {"type": "number", "minimum": 0},
        "formula": {"type": "string"},
        "cap_reached": {"type": "boolean"},
        "diagnostics": {"type": "array", "items": {"type": "string"}},
        "class_checks": {"type": "array"},
    },
}

_F_FAMILY = {
    "thm21": "lif", "cor_convex": "lif", "thm22": "lif", "thm23": "ozaki",
    "thm24_paper": "lif", "thm24_rederived": "lif", "cor25": "lif", "thm26": "ozaki",
}
_USES_G = {"thm24_paper", "thm24_rederived", "cor25", "thm26"}


def claim_problems(s: Scenario, claim: RadiusResult) -> list:
    """Reasons why ``claim``'s hypotheses do not cover ``s`` (empty if they do)."""
    fid = claim.formula_id
    if fid not in _F_FAMILY:
        return [f"unknown formula {fid!r}"]
    p = claim.params
    alpha = {"cor_convex": 1.0, "cor25": 1.0, "thm22": 2.0}.get(fid, p.get("alpha"))
    problems = []
    if s.M > p.get("M", 0.0) + 1e-12:
        problems.append(f"scenario M = {s.M} exceeds claimed M = {p.get('M')}")
    if fid in _USES_G:
        if s.N > p.get("N", 0.0) + 1e-12:
            problems.append(f"scenario N = {s.N} exceeds claimed N = {p.get('N')}")
    elif any(l != 0 for l in s.lambdas):
        problems.append(f"{fid} covers the operator F only (no g factors)")
    if s.n and not s.f_classes:
        problems.append("f functions carry no class claims")
    if s.m and fid in _USES_G and not s.g_classes:
        problems.append("g functions carry no class claims")
    for i, c in enumerate(s.f_classes):
        if _F_FAMILY[fid] == "lif":
            if c.lif_order is None:
                problems.append(f"fs[{i}] class {c.class_tag} is not a linear-invariant class")
            elif c.lif_order > alpha + 1e-12:
                problems.append(f"fs[{i}] order {c.lif_order} exceeds alpha = {alpha}")
        else:
            if c.class_tag != "ozaki":
                problems.append(f"fs[{i}] class {c.class_tag} is not an Ozaki class")
            elif c.parameter > p.get("beta", 0.0) + 1e-12:
                problems.append(f"fs[{i}] beta {c.parameter} exceeds beta = {p.get('beta')}")
    if fid in _USES_G:
        for j, c in enumerate(s.g_classes):
            if c.class_tag != "starlike":
                problems.append(f"gs[{j}] class {c.class_tag} is not a starlike class")
            elif c.parameter < p.get("xi", 0.0) - 1e-12:
                problems.append(f"gs[{j}] order {c.parameter} is below xi = {p.get('xi')}")
    return problems


def class_report(f: FunctionHandle, c: ClassSpec, settings: VerifierSettings) -> CheckReport:
    if c.class_tag in ("lif", "univalent"):
        return check_lemma_lif(f, c.lif_order, np.linspace(0.1, 0.9, 9), 512)
    return check_class_membership(f, c, settings.class_grid)


def verify_scenario(s: Scenario, claim: RadiusResult,
                    settings: Optional[VerifierSettings] = None) -> VerificationReport:
    """Compare a closed-form radius against the scenario's empirical behaviour.

    Verdict ``pass`` needs the empirical radius within ``radius_tol`` of the
    claim or above it, and ``min Re Q >= profile - value_tol`` at each check
    radius. Unverifiable hypotheses or evaluation errors give ``inconclusive``.
    """
    st = settings or VerifierSettings()
    start = time.perf_counter()
    report = VerificationReport(
        scenario_id=s.scenario_id, closed_form_radius=claim.radius,
        empirical_radius=float("nan"), profile_check=[], verdict="inconclusive",
        samples_used=0, wall_time=0.0, formula=claim.formula_id,
    )

    def done():
        report.wall_time = time.perf_counter() - start
        return report

    problems = claim_problems(s, claim)
    for label, funcs, classes in (("fs", s.fs, s.f_classes), ("gs", s.gs, s.g_classes)):
        for k, (f, c) in enumerate(zip(funcs, classes)):
            try:
                rep = class_report(f, c, st)
            except ConvexityRadiusError as exc:
                problems.append(f"{label}[{k}] class check failed: {exc}")
                continue
            report.class_checks.append({"function": f"{label}[{k}]", **rep.to_json()})
            if not rep.passed:
                problems.append(f"{label}[{k}] fails {rep.check} (margin {rep.worst_margin:.3g})")
    if problems:
        report.diagnostics.extend(problems)
        return done()

    try:
        emp = empirical_convexity_radius(s, st.bisect_tol, st)
        report.samples_used += emp.evaluations
        report.empirical_radius = emp.radius
        report.cap_reached = emp.cap_reached
        if emp.cap_reached:
            report.diagnostics.append("cap-reached")
        if emp.nonmonotone:
            report.diagnostics.append("min Re Q changes sign more than once over the radius grid")
        all_ok = True
        for frac in st.check_fractions:
            r = frac * claim.radius
            if r >= 1.0:
                continue
            cm = min_re_on_circle(s, r, st.n_samples, st.refine_tol)
            report.samples_used += cm.evaluations
            bound = claim.profile(r)
            row_ok = cm.value >= bound - st.value_tol
            all_ok &= row_ok
            report.profile_check.append((r, cm.value, bound, bool(row_ok)))
    except ConvexityRadiusError as exc:
        report.diagnostics.append(f"evaluation error: {exc}")
        report.verdict = "inconclusive"
        return done()

    radius_ok = emp.radius >= claim.radius - st.radius_tol
    if not radius_ok:
        report.diagnostics.append(
            f"empirical radius {emp.radius:.6g} below claim {claim.radius:.6g}")
    report.verdict = "pass" if radius_ok and all_ok else "fail"
    return done()


def claim_for_scenario(s: Scenario, formula: Optional[str] = None,
                       variant: str = "rederived", **overrides) -> RadiusResult:
    """Closed-form radius whose hypotheses are read off the scenario's class claims.

    ``alpha``/``beta`` take the maximum over the ``f_i`` and ``xi`` the
    minimum over the ``g_j``; the minimum is what the starlike bound needs.
    """
    orders = [c.lif_order for c in s.f_classes if c.lif_order is not None]
    betas = [c.parameter for c in s.f_classes if c.class_tag == "ozaki"]
    xis = [c.parameter for c in s.g_classes if c.class_tag == "starlike"]
    use_g = any(l != 0 for l in s.lambdas)
    if formula is None:
        ozaki = bool(betas) and not orders
        if use_g:
            formula = "thm26" if ozaki else f"thm24_{variant}"
        else:
            formula = "thm23" if ozaki else "thm21"
    params = {
        "alpha": max(orders, default=1.0),
        "beta": max(betas, default=1.0),
        "xi": min(xis, default=0.0),
        "M": s.M,
        "N": s.N,
    }
    params.update({k: v for k, v in overrides.items() if v is not None})
    if formula in ("thm24", "cor25"):
        params["variant"] = variant
    return compute_radius(formula, **params)


_F_POOL = {
    "lif": [
        (("half_plane", {}), ClassSpec("convex")),
        (("koebe", {}), ClassSpec("univalent")),
        (("starlike_extremal", None), ClassSpec("univalent")),
    ],
    "ozaki": [(("ozaki_example", None), None)],
}
_G_POOL = [("koebe", 0.0), ("half_plane", 0.5), ("starlike_extremal", None)]


def random_scenario(rng: np.random.Generator, family: str, M: Optional[float] = None,
                    N: Optional[float] = None, scenario_id: str = "random",
                    include_lif_extremal: bool = False):
    """Random catalog scenario with matching class claims, and its formula id.

    ``family`` is one of ``F_lif``, ``F_ozaki``, ``J_lif``, ``J_ozaki``.
    Weights have uniform random phases and ``sum |gamma| = M``,
    ``sum |lambda| = N`` exactly.
    """
    if family not in ("F_lif", "F_ozaki", "J_lif", "J_ozaki"):
        raise BadParameter(f"unknown scenario family {family!r}")
    kind = family.split("_")[1]
    M = float(rng.uniform(0.1, 3.0)) if M is None else float(M)
    n = int(rng.integers(1, 4))
    fs, f_classes = [], []
    pool = list(_F_POOL[kind])
    if kind == "lif" and include_lif_extremal:
        pool.append((("lif_extremal", None), None))
    for _ in range(n):
        (name, params), cls = pool[int(rng.integers(len(pool)))]
        if name == "starlike_extremal":
            f = catalog(name, xi=float(rng.uniform(0.0, 0.95)))
        elif name == "ozaki_example":
            beta = float(rng.uniform(0.05, 1.0))
            f, cls = catalog(name, beta=beta), ClassSpec("ozaki", beta)
        elif name == "lif_extremal":
            alpha = float(rng.uniform(1.0, 3.0))
            f, cls = catalog(name, alpha=alpha), ClassSpec("lif", alpha)
        else:
            f = catalog(name, **params)
        fs.append(f)
        f_classes.append(cls)
    gammas = _weights(rng, n, M)
    gs, g_classes, lambdas = [], [], []
    if family.startswith("J"):
        N = float(rng.uniform(0.0, 2.0)) if N is None else float(N)
        m = int(rng.integers(1, 3))
        for _ in range(m):
            name, xi = _G_POOL[int(rng.integers(len(_G_POOL)))]
            if xi is None:
                xi = float(rng.uniform(0.0, 0.95))
                gs.append(catalog(name, xi=xi))
            else:
                gs.append(catalog(name))
            g_classes.append(ClassSpec("starlike", xi))
        lambdas = _weights(rng, m, N)
    else:
        N = 0.0
    s = Scenario(fs, gammas, gs, lambdas, M, N, f_classes, g_classes, scenario_id)
    formula = {"F_lif": "thm21", "F_ozaki": "thm23",
               "J_lif": "thm24_rederived", "J_ozaki": "thm26"}[family]
    return s, formula


def _weights(rng: np.random.Generator, k: int, total: float) -> list:
    mags = rng.uniform(0.05, 1.0, k)
    mags = total * mags / mags.sum()
    phases = np.exp(1j * rng.uniform(0.0, TWO_PI, k))
    return list(mags * phases)


def circle_profile_csv(s: Scenario, radii: Sequence[float], n_samples: int = 512) -> str:
    """CSV of ``Re Q`` around each circle (columns ``r,theta,re_q``)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "theta", "re_q"])
    theta = TWO_PI * np.arange(n_samples) / n_samples
    for r in radii:
        vals = _re_q(s, r, theta)
        for t, v in zip(theta, vals):
            w.writerow([repr(float(r)), repr(float(t)), repr(float(v))])
    return buf.getvalue()
