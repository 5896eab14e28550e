"""Function handles: a closed-form catalog plus series-backed functions.

Every catalog entry is normalized (``f(0) = 0``, ``f'(0) = 1``) and its
derivative has the product form ``f'(z) = prod (1 + s z)**p``.
That form gives exact ``f'``, ``f''``, ``z f''/f'``, the analytic branch of
``log f'`` and the Taylor expansion (binomial series) from one table.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import BadParameter, CriticalPoint, OutsideDisk
from .series import (
    PowerSeries,
    binomial_series,
    series_differentiate,
    series_integrate_from_zero,
    series_multiply,
    _horner,
)

CATALOG_PARAMS = {
    "identity": (),
    "half_plane": (),
    "koebe": (),
    "starlike_extremal": ("xi",),
    "lif_extremal": ("alpha",),
    "ozaki_example": ("beta",),
}

DEFAULT_ORDER = 256
CRITICAL_TOL = 1e-14


def clog1p(w):
    """Accurate complex ``log(1 + w)`` for small ``w`` (numpy's is not)."""
    w = np.asarray(w, dtype=np.complex128)
    x, y = w.real, w.imag
    re = 0.5 * np.log1p(2.0 * x + x * x + y * y)
    im = np.arctan2(y, 1.0 + x)
    return re + 1j * im


def _scalarize(v):
    return complex(v) if np.ndim(v) == 0 else v


def _check_disk(z):
    if np.any(np.abs(z) >= 1.0):
        raise OutsideDisk(f"|z| >= 1 for z = {z!r}")


def _validate(name: str, params: dict) -> dict:
    if name not in CATALOG_PARAMS:
        raise BadParameter(f"unknown catalog entry {name!r}")
    keys = CATALOG_PARAMS[name]
    extra = set(params) - set(keys)
    if extra:
        raise BadParameter(f"{name} takes parameters {keys}, got {sorted(extra)}")
    missing = [k for k in keys if k not in params]
    if missing:
        raise BadParameter(f"{name} needs parameter(s) {missing}")
    out = {k: float(params[k]) for k in keys}
    if name == "starlike_extremal" and not 0.0 <= out["xi"] < 1.0:
        raise BadParameter(f"xi must satisfy 0 <= xi < 1, got {out['xi']}")
    if name == "lif_extremal" and not out["alpha"] >= 1.0:
        raise BadParameter(f"alpha must be >= 1, got {out['alpha']}")
    if name == "ozaki_example" and not 0.0 < out["beta"] <= 1.0:
        raise BadParameter(f"beta must satisfy 0 < beta <= 1, got {out['beta']}")
    return out


def _factors(name: str, params: dict):
    """``(s, p)`` pairs with ``f'(z) = prod (1 + s z)**p``."""
    if name == "identity":
        return ()
    if name == "half_plane":
        return ((-1.0, -2.0),)
    if name == "koebe":
        return ((1.0, 1.0), (-1.0, -3.0))
    if name == "starlike_extremal":
        b = 1.0 - params["xi"]
        return ((2.0 * b - 1.0, 1.0), (-1.0, -2.0 * b - 1.0))
    if name == "lif_extremal":
        a = params["alpha"]
        return ((1.0, a - 1.0), (-1.0, -a - 1.0))
    if name == "ozaki_example":
        return ((-1.0, params["beta"]),)
    raise BadParameter(name)


def _catalog_f(name: str, params: dict, z):
    if name == "identity":
        return z + 0j
    if name == "half_plane":
        return z / (1.0 - z)
    if name == "koebe":
        return z / (1.0 - z) ** 2
    if name == "starlike_extremal":
        b = 1.0 - params["xi"]
        return z * np.exp(-2.0 * b * clog1p(-z))
    if name == "lif_extremal":
        a = params["alpha"]
        return np.expm1(a * (clog1p(z) - clog1p(-z))) / (2.0 * a)
    if name == "ozaki_example":
        b1 = params["beta"] + 1.0
        return -np.expm1(b1 * clog1p(-z)) / b1
    raise BadParameter(name)


@dataclass(frozen=True)
class FunctionHandle:
    """A normalized analytic function on the unit disk.

    ``kind`` is ``"catalog"`` (closed form, ``catalog_name`` and ``params``
    set) or ``"series"`` (``series`` set).
    """

    kind: str
    catalog_name: Optional[str] = None
    params: tuple = ()
    series: Optional[PowerSeries] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind == "catalog":
            if self.catalog_name is None or self.series is not None:
                raise BadParameter("catalog handle needs catalog_name and no series")
        elif self.kind == "series":
            if self.series is None or self.catalog_name is not None:
                raise BadParameter("series handle needs a series and no catalog_name")
        else:
            raise BadParameter(f"unknown handle kind {self.kind!r}")

    @property
    def param_dict(self) -> dict:
        return dict(self.params)

    @property
    def label(self) -> str:
        if self.kind == "series":
            return f"series(T={self.series.T})"
        if not self.params:
            return self.catalog_name
        args = ", ".join(f"{k}={v:g}" for k, v in self.params)
        return f"{self.catalog_name}({args})"

    @cached_property
    def _factors(self):
        return _factors(self.catalog_name, self.param_dict)

    @cached_property
    def _derivs(self):
        d1 = series_differentiate(self.series)
        d2 = series_differentiate(d1)
        return self.series.coeffs, d1.coeffs, d2.coeffs

    def f(self, z):
        z = np.asarray(z, dtype=np.complex128)
        _check_disk(z)
        if self.kind == "catalog":
            return _scalarize(_catalog_f(self.catalog_name, self.param_dict, z))
        return _scalarize(_horner(self._derivs[0], z))

    def d1(self, z):
        z = np.asarray(z, dtype=np.complex128)
        _check_disk(z)
        if self.kind == "catalog":
            out = np.ones_like(z)
            for s, p in self._factors:
                out = out * np.power(1.0 + s * z, p)
            return _scalarize(out)
        return _scalarize(_horner(self._derivs[1], z))

    def d2(self, z):
        z = np.asarray(z, dtype=np.complex128)
        if self.kind == "catalog":
            return _scalarize(self.d1(z) * self._d2_over_d1(z))
        _check_disk(z)
        return _scalarize(_horner(self._derivs[2], z))

    def _d2_over_d1(self, z):
        acc = np.zeros_like(z)
        for s, p in self._factors:
            acc = acc + p * s / (1.0 + s * z)
        return acc

    def _abs_d1(self, z):
        acc = np.zeros(np.shape(z))
        for s, p in self._factors:
            acc = acc + p * np.log(np.abs(1.0 + s * z))
        return np.exp(acc)

    def logderiv(self, z):
        """``z f''(z) / f'(z)``; raises :class:`CriticalPoint` where ``f'`` vanishes."""
        z = np.asarray(z, dtype=np.complex128)
        _check_disk(z)
        if self.kind == "catalog":
            _check_critical(self._abs_d1(z), z)
            return _scalarize(z * self._d2_over_d1(z))
        d1 = _horner(self._derivs[1], z)
        _check_critical(d1, z)
        return _scalarize(z * _horner(self._derivs[2], z) / d1)

    def log_d1(self, z):
        """``log f'(z)`` on the branch with ``log f'(0) = 0``.

        Catalog entries sum the factor logarithms, which is the analytic
        branch on the whole disk; series handles use the principal value.
        """
        z = np.asarray(z, dtype=np.complex128)
        _check_disk(z)
        if self.kind == "catalog":
            acc = np.zeros_like(z)
            for s, p in self._factors:
                acc = acc + p * clog1p(s * z)
            return _scalarize(acc)
        d1 = _horner(self._derivs[1], z)
        _check_critical(d1, z)
        return _scalarize(np.log(d1))

    def to_series(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        """Taylor expansion about 0 truncated at ``order``."""
        if self.kind == "series":
            return self.series.truncate(order)
        return _catalog_series(self.catalog_name, self.params, order)

    def to_json(self) -> dict:
        if self.kind == "catalog":
            out = {"catalog": self.catalog_name}
            if self.params:
                out["params"] = dict(self.params)
            return out
        return {"series": self.series.to_json()}


def _check_critical(d1, z):
    bad = np.abs(d1) <= CRITICAL_TOL
    if np.any(bad):
        where = np.asarray(z)[bad] if np.ndim(z) else z
        raise CriticalPoint(f"f'(z) vanishes at z = {where!r}", where=where)


def _catalog_series(name: str, params: tuple, order: int) -> PowerSeries:
    d1 = PowerSeries.constant(1.0, order)
    for s, p in _factors(name, dict(params)):
        d1 = series_multiply(d1, binomial_series(s, p, order))
    return series_integrate_from_zero(d1)


def catalog(name: str, *args, **params) -> FunctionHandle:
    """Closed-form normalized function by name.

    >>> catalog("starlike_extremal", xi=0.5).label
    'starlike_extremal(xi=0.5)'
    """
    if args:
        keys = CATALOG_PARAMS.get(name, ())
        if len(args) > len(keys):
            raise BadParameter(f"{name} takes {len(keys)} parameter(s)")
        params = {**dict(zip(keys, args)), **params}
    checked = _validate(name, params)
    return FunctionHandle("catalog", catalog_name=name, params=tuple(checked.items()))


def from_series(series: PowerSeries) -> FunctionHandle:
    return FunctionHandle("series", series=series)


def handle_from_json(obj: dict) -> FunctionHandle:
    from .series import series_from_json

    if "catalog" in obj:
        return catalog(obj["catalog"], **obj.get("params", {}))
    if "series" in obj:
        return from_series(series_from_json(obj["series"]))
    raise BadParameter("function entry needs a 'catalog' or 'series' key")


@dataclass(frozen=True)
class MobiusParams:
    """Disk automorphism ``phi(z) = exp(i theta) (z + a) / (1 + conj(a) z)``."""

    a: complex
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "theta", float(self.theta))
        if not abs(self.a) < 1.0:
            raise BadParameter(f"|a| must be < 1, got {abs(self.a)}")

    @property
    def rotation(self) -> complex:
        return cmath.exp(1j * self.theta)

    def phi(self, z):
        return self.rotation * (z + self.a) / (1.0 + self.a.conjugate() * z)

    def dphi(self, z):
        return self.rotation * (1.0 - abs(self.a) ** 2) / (1.0 + self.a.conjugate() * z) ** 2

    def d2phi(self, z):
        ac = self.a.conjugate()
        return -2.0 * ac * self.rotation * (1.0 - abs(self.a) ** 2) / (1.0 + ac * z) ** 3


def invariance_a2(f: FunctionHandle, m: MobiusParams) -> complex:
    """Second Taylor coefficient of the Koebe transform ``F_phi(f)``.

    ``a_2 = (f''(w)/f'(w)) phi'(0) / 2 + phi''(0) / (2 phi'(0))`` with
    ``w = phi(0)``.
    """
    w = m.phi(0.0)
    d1 = f.d1(w)
    if abs(d1) <= CRITICAL_TOL:
        raise CriticalPoint(f"f'(phi(0)) vanishes at {w!r}", where=w)
    dphi0 = m.dphi(0.0)
    return complex(0.5 * f.d2(w) / d1 * dphi0 + 0.5 * m.d2phi(0.0) / dphi0)


def koebe_transform(f: FunctionHandle, m: MobiusParams, z):
    """``F_phi(f)(z) = (f(phi(z)) - f(phi(0))) / (f'(phi(0)) phi'(0))``."""
    w = m.phi(0.0)
    return (f.f(m.phi(z)) - f.f(w)) / (f.d1(w) * m.dphi(0.0))


__all__ = [
    "FunctionHandle",
    "MobiusParams",
    "catalog",
    "clog1p",
    "from_series",
    "handle_from_json",
    "invariance_a2",
    "koebe_transform",
]
