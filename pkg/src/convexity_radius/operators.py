"""The integral operators F and J and their convexity functional.

``J(z) = int_0^z prod (f_i'(t))**gamma_i * prod (g_j(t)/t)**lambda_j dt``;
``F`` is the special case with no ``g_j``. The convexity functional is
evaluated from the log-derivative identity

    1 + z J''/J' = 1 + sum gamma_i z f_i''/f_i' + sum lambda_j (z g_j'/g_j - 1)

so it never needs the operator itself.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import QuadratureNoConverge, ScenarioError, ZeroOfG
from .functions import DEFAULT_ORDER, FunctionHandle, _check_disk, _scalarize, handle_from_json
from .radii import ClassSpec
from .series import (
    PowerSeries,
    series_cpow,
    series_differentiate,
    series_eval,
    series_integrate_from_zero,
    series_multiply,
)

WEIGHT_SLACK = 1e-12
ZERO_G_TOL = 1e-14


def _as_complex_tuple(values) -> tuple:
    return tuple(complex(v) for v in values)


@dataclass(frozen=True)
class Scenario:
    """Inputs of the operator J: functions, complex weights and the bounds M, N.

    ``f_classes``/``g_classes`` optionally record the class each function is
    claimed to belong to; the verifier checks them before trusting a radius.
    """

    fs: tuple = ()
    gammas: tuple = ()
    gs: tuple = ()
    lambdas: tuple = ()
    M: Optional[float] = None
    N: Optional[float] = None
    f_classes: tuple = ()
    g_classes: tuple = ()
    scenario_id: str = "scenario"

    def __post_init__(self):
        object.__setattr__(self, "fs", tuple(self.fs))
        object.__setattr__(self, "gs", tuple(self.gs))
        object.__setattr__(self, "gammas", _as_complex_tuple(self.gammas))
        object.__setattr__(self, "lambdas", _as_complex_tuple(self.lambdas))
        object.__setattr__(self, "f_classes", tuple(self.f_classes))
        object.__setattr__(self, "g_classes", tuple(self.g_classes))
        if len(self.fs) != len(self.gammas):
            raise ScenarioError(f"{len(self.fs)} fs but {len(self.gammas)} gammas")
        if len(self.gs) != len(self.lambdas):
            raise ScenarioError(f"{len(self.gs)} gs but {len(self.lambdas)} lambdas")
        if self.f_classes and len(self.f_classes) != len(self.fs):
            raise ScenarioError("f_classes must be empty or match fs")
        if self.g_classes and len(self.g_classes) != len(self.gs):
            raise ScenarioError("g_classes must be empty or match gs")
        sum_gamma = float(sum(abs(g) for g in self.gammas))
        sum_lambda = float(sum(abs(l) for l in self.lambdas))
        M = sum_gamma if self.M is None else float(self.M)
        N = sum_lambda if self.N is None else float(self.N)
        if not M >= 0.0 or not N >= 0.0:
            raise ScenarioError(f"M and N must be >= 0, got M={M}, N={N}")
        if sum_gamma > M + WEIGHT_SLACK:
            raise ScenarioError(f"sum |gamma| = {sum_gamma} exceeds M = {M}")
        if sum_lambda > N + WEIGHT_SLACK:
            raise ScenarioError(f"sum |lambda| = {sum_lambda} exceeds N = {N}")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "N", N)
        for j, g in enumerate(self.gs):
            if g.kind == "series" and not g.series.is_normalized():
                raise ScenarioError(f"gs[{j}] is not normalized (g(0) = 0, g'(0) = 1)")

    @property
    def n(self) -> int:
        return len(self.fs)

    @property
    def m(self) -> int:
        return len(self.gs)

    def concat(self, other: "Scenario") -> "Scenario":
        """Union of two scenarios; Q of the result is ``Q1 + Q2 - 1``."""
        classes_f = self.f_classes + other.f_classes if self.f_classes and other.f_classes else ()
        classes_g = self.g_classes + other.g_classes if self.g_classes and other.g_classes else ()
        return Scenario(
            self.fs + other.fs, self.gammas + other.gammas,
            self.gs + other.gs, self.lambdas + other.lambdas,
            self.M + other.M, self.N + other.N, classes_f, classes_g,
            f"{self.scenario_id}+{other.scenario_id}",
        )

    def to_json(self) -> dict:
        def entry(h, cls):
            out = h.to_json()
            if cls is not None:
                out["class"] = cls.to_json()
            return out

        fc = self.f_classes or (None,) * self.n
        gc = self.g_classes or (None,) * self.m
        return {
            "id": self.scenario_id,
            "fs": [entry(h, c) for h, c in zip(self.fs, fc)],
            "gammas": [[g.real, g.imag] for g in self.gammas],
            "gs": [entry(h, c) for h, c in zip(self.gs, gc)],
            "lambdas": [[l.real, l.imag] for l in self.lambdas],
            "M": self.M,
            "N": self.N,
        }


def _parse_weight(value, where: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError):
            pass
    raise ScenarioError(f"{where}: expected a number or [re, im], got {value!r}")


def scenario_from_json(obj) -> Scenario:
    """Build a :class:`Scenario` from its JSON form (dict or text)."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ScenarioError("scenario must be a JSON object")
    unknown = set(obj) - {"id", "fs", "gammas", "gs", "lambdas", "M", "N"}
    if unknown:
        raise ScenarioError(f"unknown field(s) {sorted(unknown)}")

    def handles(key):
        out, classes = [], []
        for k, item in enumerate(obj.get(key, [])):
            if not isinstance(item, dict):
                raise ScenarioError(f"{key}[{k}]: expected an object")
            try:
                out.append(handle_from_json(item))
                if "class" in item:
                    classes.append(ClassSpec.from_json(item["class"]))
            except (ValueError, KeyError, TypeError) as exc:
                raise ScenarioError(f"{key}[{k}]: {exc}") from exc
        if classes and len(classes) != len(out):
            raise ScenarioError(f"{key}: give a class for every entry or for none")
        return out, classes

    fs, f_classes = handles("fs")
    gs, g_classes = handles("gs")
    gammas = [_parse_weight(v, f"gammas[{k}]") for k, v in enumerate(obj.get("gammas", []))]
    lambdas = [_parse_weight(v, f"lambdas[{k}]") for k, v in enumerate(obj.get("lambdas", []))]
    for key in ("M", "N"):
        if key in obj and not isinstance(obj[key], (int, float)):
            raise ScenarioError(f"{key}: expected a number, got {obj[key]!r}")
    return Scenario(
        fs, gammas, gs, lambdas, obj.get("M"), obj.get("N"),
        f_classes, g_classes, str(obj.get("id", "scenario")),
    )


def logderiv_f(f: FunctionHandle, z):
    """``z f''(z) / f'(z)``."""
    return f.logderiv(z)


def starlike_term(g: FunctionHandle, z):
    """``z g'(z) / g(z) - 1``, with the limit value 0 at the origin.

    Raises :class:`ZeroOfG` where ``|g(z)/z| <= 1e-14`` away from the origin.
    """
    z = np.asarray(z, dtype=np.complex128)
    _check_disk(z)
    zero = z == 0
    zs = np.where(zero, 0.5, z)
    gz = np.asarray(g.f(zs))
    unit = gz / zs
    if np.any(np.abs(unit) <= ZERO_G_TOL):
        raise ZeroOfG(f"g vanishes near z = {z[np.abs(unit) <= ZERO_G_TOL]!r}")
    out = np.asarray(g.d1(zs)) / unit - 1.0
    return _scalarize(np.where(zero, 0.0, out))


def convexity_functional(s: Scenario, z):
    """``Q(z) = 1 + z J''(z)/J'(z)`` for scalar or array ``z``."""
    z = np.asarray(z, dtype=np.complex128)
    q = np.ones_like(z)
    for gamma, f in zip(s.gammas, s.fs):
        if gamma != 0:
            q = q + gamma * np.asarray(f.logderiv(z))
    for lam, g in zip(s.lambdas, s.gs):
        if lam != 0:
            q = q + lam * np.asarray(starlike_term(g, z))
    return _scalarize(q)


@dataclass(frozen=True)
class OperatorSeries:
    series: PowerSeries
    scenario: Scenario = field(compare=False)

    def __call__(self, z):
        return series_eval(self.series, z)

    def convexity(self, z):
        """``1 + z B''/B'`` evaluated from the series itself."""
        d1 = series_differentiate(self.series)
        d2 = series_differentiate(d1)
        return 1.0 + z * series_eval(d2, z) / series_eval(d1, z)


def _integrand_series(s: Scenario, order: int, with_g: bool) -> PowerSeries:
    acc = PowerSeries.constant(1.0, order)
    for gamma, f in zip(s.gammas, s.fs):
        if gamma == 0:
            continue
        d1 = series_differentiate(f.to_series(order + 1))
        acc = series_multiply(acc, series_cpow(d1, gamma))
    if with_g:
        for lam, g in zip(s.lambdas, s.gs):
            if lam == 0:
                continue
            unit = g.to_series(order + 1).shift_down()
            acc = series_multiply(acc, series_cpow(unit, lam))
    return acc


def build_F(s: Scenario, T: int = DEFAULT_ORDER) -> OperatorSeries:
    """Series of ``int_0^z prod f_i'(t)**gamma_i dt`` at order ``T``."""
    if s.m:
        raise ScenarioError("build_F takes scenarios without g functions; use build_J")
    return OperatorSeries(series_integrate_from_zero(_integrand_series(s, T, False)), s)


def build_J(s: Scenario, T: int = DEFAULT_ORDER) -> OperatorSeries:
    """Series of J at order ``T``; equals :func:`build_F` when no ``lambda_j`` is nonzero."""
    return OperatorSeries(series_integrate_from_zero(_integrand_series(s, T, True)), s)


def integrand(s: Scenario, t):
    """Pointwise integrand with principal-branch powers."""
    t = np.asarray(t, dtype=np.complex128)
    out = np.ones_like(t)
    for gamma, f in zip(s.gammas, s.fs):
        if gamma != 0:
            out = out * np.power(np.asarray(f.d1(t)), gamma)
    for lam, g in zip(s.lambdas, s.gs):
        if lam != 0:
            zero = t == 0
            ts = np.where(zero, 0.5, t)
            unit = np.where(zero, 1.0, np.asarray(g.f(ts)) / ts)
            out = out * np.power(unit, lam)
    return out


# 15-point Kronrod nodes on [-1, 1] (nonnegative half) and weights; the
# odd-indexed nodes carry the embedded 7-point Gauss rule.
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]
GAUSS_WEIGHTS[7] = _WG[3]


def gauss_kronrod_segment(func, z0: complex, z1: complex, tol: float = 1e-10,
                          max_depth: int = 20):
    """Adaptive G7/K15 quadrature of ``func`` along the segment ``[z0, z1]``.

    Intervals of the parameter ``u in [0, 1]`` are halved until each one's
    ``|K - G|`` is below ``tol`` times its length. Returns ``(value, error)``.
    """
    dz = z1 - z0
    stack = [(0.0, 1.0, 0)]
    total, error = 0j, 0.0
    while stack:
        a, b, depth = stack.pop()
        half = 0.5 * (b - a)
        u = a + half * (NODES + 1.0)
        vals = np.asarray(func(z0 + u * dz)) * dz
        k = half * np.dot(KRONROD_WEIGHTS, vals)
        g = half * np.dot(GAUSS_WEIGHTS, vals)
        err = abs(k - g)
        if err <= tol * (b - a) or err <= 1e-15 * abs(k):
            total += k
            error += err
            continue
        if depth >= max_depth:
            raise QuadratureNoConverge(
                f"depth cap {max_depth} reached on [{a:.3g}, {b:.3g}] with error {err:.3g}",
                estimate=total + k, error=error + err,
            )
        mid = a + half
        stack.append((mid, b, depth + 1))
        stack.append((a, mid, depth + 1))
    return complex(total), error


def eval_operator_quadrature(s: Scenario, z: complex, tol: float = 1e-10,
                             max_depth: int = 20) -> complex:
    """``J(z)`` by quadrature along ``[0, z]``; independent of the series route."""
    z = complex(z)
    _check_disk(np.asarray(z))
    if z == 0:
        return 0j
    value, _ = gauss_kronrod_segment(lambda t: integrand(s, t), 0j, z, tol, max_depth)
    return value
