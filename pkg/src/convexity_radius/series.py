"""Truncated power series with complex coefficients.

A :class:`PowerSeries` stores ``c_0 .. c_T`` of an analytic function about
the origin. All arithmetic truncates at the common order ``T``; operands of
different length are zero-padded to the longer one.
"""
from __future__ import annotations

import cmath
import json
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DivisionByNonUnit, NotUnit, OutsideDisk

UNIT_TOL = 1e-14
LOG_UNIT_TOL = 1e-12
TAIL_WARN = 1e-8


class TruncationWarning(UserWarning):
    """The truncation tail at an evaluation point exceeds the warning level."""


@dataclass(frozen=True, eq=False)
class PowerSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if c.size < 2:
            raise ValueError("a power series needs truncation order T >= 1")
        if not np.all(np.isfinite(c)):
            raise ValueError("power series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, order: int) -> "PowerSeries":
        return cls(np.zeros(order + 1, dtype=np.complex128))

    @classmethod
    def constant(cls, value: complex, order: int) -> "PowerSeries":
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = value
        return cls(c)

    @classmethod
    def identity(cls, order: int) -> "PowerSeries":
        """The series of ``z``."""
        c = np.zeros(order + 1, dtype=np.complex128)
        c[1] = 1.0
        return cls(c)

    @property
    def truncation_order(self) -> int:
        return self.coeffs.size - 1

    @property
    def T(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:4])
        return f"PowerSeries(T={self.T}, [{head}, ...])"

    def is_normalized(self, tol: float = 1e-12) -> bool:
        """Whether ``c_0 = 0`` and ``c_1 = 1`` up to ``tol``."""
        return abs(self.coeffs[0]) <= tol and abs(self.coeffs[1] - 1.0) <= tol

    def truncate(self, order: int) -> "PowerSeries":
        """Drop or zero-pad coefficients so the result has order ``order``."""
        return PowerSeries(_pad(self.coeffs, order))

    def shift_down(self) -> "PowerSeries":
        """Return ``u(z)/z`` for a series with ``c_0 = 0`` (order drops by one)."""
        if abs(self.coeffs[0]) > UNIT_TOL:
            raise ValueError("shift_down needs a zero constant term")
        return PowerSeries(self.coeffs[1:])

    # operator sugar; the module-level functions are the primary API
    def __add__(self, other):
        if isinstance(other, PowerSeries):
            T = max(self.T, other.T)
            return PowerSeries(_pad(self.coeffs, T) + _pad(other.coeffs, T))
        c = self.coeffs.copy()
        c[0] += other
        return PowerSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return series_multiply(self, other)
        return PowerSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return series_divide(self, other)
        return PowerSeries(self.coeffs / other)

    def __call__(self, z):
        return series_eval(self, z)

    def to_json(self) -> list:
        return series_to_json(self)


def _pad(c: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order + 1, dtype=np.complex128)
    n = min(c.size, order + 1)
    out[:n] = c[:n]
    return out


def _aligned(u: PowerSeries, v: PowerSeries):
    T = max(u.T, v.T)
    return _pad(u.coeffs, T), _pad(v.coeffs, T), T


def series_multiply(u: PowerSeries, v: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at the common order."""
    a, b, T = _aligned(u, v)
    return PowerSeries(np.convolve(a, b)[: T + 1])


def series_divide(u: PowerSeries, v: PowerSeries) -> PowerSeries:
    """Return ``w`` with ``w * v = u`` up to truncation.

    Raises :class:`DivisionByNonUnit` when ``|v_0| <= 1e-14``.
    """
    a, b, T = _aligned(u, v)
    if abs(b[0]) <= UNIT_TOL:
        raise DivisionByNonUnit(f"divisor constant term {b[0]!r} is not a unit")
    w = np.zeros(T + 1, dtype=np.complex128)
    inv0 = 1.0 / b[0]
    w[0] = a[0] * inv0
    for k in range(1, T + 1):
        w[k] = (a[k] - np.dot(b[1 : k + 1], w[k - 1 :: -1])) * inv0
    return PowerSeries(w)


def series_differentiate(u: PowerSeries) -> PowerSeries:
    """Termwise derivative; the result has order ``T - 1`` (at least 1)."""
    c = u.coeffs[1:] * np.arange(1, u.T + 1)
    if c.size < 2:
        c = np.append(c, 0.0)
    return PowerSeries(c)


def series_integrate_from_zero(u: PowerSeries) -> PowerSeries:
    """Antiderivative vanishing at 0, truncated back to the order of ``u``."""
    c = np.zeros(u.T + 1, dtype=np.complex128)
    c[1:] = u.coeffs[:-1] / np.arange(1, u.T + 1)
    return PowerSeries(c)


def series_exp(u: PowerSeries) -> PowerSeries:
    """``exp(u)`` via the recurrence ``k e_k = sum_j j u_j e_{k-j}``."""
    T = u.T
    c = u.coeffs
    jc = c * np.arange(T + 1)
    e = np.zeros(T + 1, dtype=np.complex128)
    e[0] = cmath.exp(c[0])
    for k in range(1, T + 1):
        e[k] = np.dot(jc[1 : k + 1], e[k - 1 :: -1]) / k
    return PowerSeries(e)


def series_log_unit(h: PowerSeries) -> PowerSeries:
    """The analytic logarithm of a series with ``h_0 = 1``, normalized by log 1 = 0."""
    if abs(h.coeffs[0] - 1.0) > LOG_UNIT_TOL:
        raise NotUnit(f"constant term {h.coeffs[0]!r} is not 1")
    T = h.T
    dh = PowerSeries(_pad(h.coeffs[1:] * np.arange(1, T + 1), T))
    q = series_divide(dh, h)
    return series_integrate_from_zero(q)


def series_cpow(h: PowerSeries, gamma: complex) -> PowerSeries:
    """``h**gamma`` on the branch fixed by the principal value of ``h_0**gamma``."""
    gamma = complex(gamma)
    if gamma == 0:
        return PowerSeries.constant(1.0, h.T)
    if gamma == 1:
        return h
    h0 = h.coeffs[0]
    if abs(h0) <= UNIT_TOL:
        raise DivisionByNonUnit(f"cannot raise a series with h_0 = {h0!r} to a power")
    unit = PowerSeries(h.coeffs / h0)
    lead = cmath.exp(gamma * cmath.log(h0))
    return series_exp(series_log_unit(unit) * gamma) * lead


def binomial_series(s: complex, p: float, order: int) -> PowerSeries:
    """Coefficients of ``(1 + s z)**p`` from the binomial recurrence."""
    c = np.zeros(order + 1, dtype=np.complex128)
    c[0] = 1.0
    for k in range(order):
        c[k + 1] = c[k] * (p - k) / (k + 1) * s
    return PowerSeries(c)


def tail_estimate(u: PowerSeries, z) -> float:
    """Heuristic truncation error ``|c_T| |z|^T / (1 - |z|)``."""
    r = float(np.max(np.abs(z)))
    if r >= 1.0:
        return float("inf")
    return float(abs(u.coeffs[-1]) * r ** u.T / (1.0 - r))


def series_eval(u: PowerSeries, z, *, with_tail: bool = False):
    """Horner evaluation at ``z`` (scalar or array) in the open unit disk.

    A :class:`TruncationWarning` is issued when the tail estimate exceeds
    1e-8. With ``with_tail=True`` the pair ``(value, tail_flagged)`` is returned.
    """
    za = np.asarray(z)
    if np.any(np.abs(za) >= 1.0):
        raise OutsideDisk(f"|z| >= 1 for z = {z!r}")
    flagged = tail_estimate(u, za) > TAIL_WARN
    if flagged:
        warnings.warn(
            f"truncation tail exceeds {TAIL_WARN:g} at |z| = {np.max(np.abs(za)):.4g}",
            TruncationWarning,
            stacklevel=2,
        )
    value = _horner(u.coeffs, za)
    if np.ndim(value) == 0:
        value = complex(value)
    if with_tail:
        return value, flagged
    return value


def _horner(c: np.ndarray, z):
    acc = np.zeros_like(z, dtype=np.complex128) + c[-1]
    for ck in c[-2::-1]:
        acc = acc * z + ck
    return acc


def series_to_json(u: PowerSeries) -> list:
    """JSON exchange form: a list of ``[re, im]`` pairs indexed by degree."""
    return [[float(c.real), float(c.imag)] for c in u.coeffs]


def series_from_json(data: Sequence[Sequence[float]] | str) -> PowerSeries:
    if isinstance(data, str):
        data = json.loads(data)
    coeffs = []
    for k, pair in enumerate(data):
        if isinstance(pair, (int, float)):
            coeffs.append(complex(pair))
            continue
        if len(pair) != 2:
            raise ValueError(f"coefficient {k}: expected [re, im], got {pair!r}")
        coeffs.append(complex(float(pair[0]), float(pair[1])))
    return PowerSeries(coeffs)


def as_series(values: Iterable[complex], order: int | None = None) -> PowerSeries:
    c = np.asarray(list(values), dtype=np.complex128)
    if order is not None:
        c = _pad(c, order)
    return PowerSeries(c)
