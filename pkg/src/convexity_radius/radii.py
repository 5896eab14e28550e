"""Closed-form radii of convexity for the two integral operators.

Every radius is the positive root of a numerator polynomial
``a r**2 + b r + c`` whose quotient by ``1 - r**2`` is the guaranteed lower
bound for ``min_{|z|=r} Re(1 + z J''/J')``. Parameter conventions:
``alpha >= 1`` (linear-invariant order), ``0 < beta <= 1`` (Ozaki class),
``0 <= xi < 1`` (starlike order), ``M = sum |gamma_i|``, ``N = sum |lambda_j|``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import BadParameter, NoPositiveRoot

log = logging.getLogger(__name__)

FORMULAS = (
    "thm21",
    "cor_convex",
    "thm22",
    "thm23",
    "thm24_paper",
    "thm24_rederived",
    "cor25",
    "thm26",
)
VARIANTS = ("paper", "rederived")
CLASS_TAGS = ("lif", "convex", "univalent", "ozaki", "starlike")


@dataclass(frozen=True)
class ClassSpec:
    """A claimed class membership, e.g. ``ClassSpec("ozaki", 0.5)``.

    ``convex`` and ``univalent`` are stored as linear-invariant orders 1 and 2
    where an order is needed (see :attr:`lif_order`).
    """

    class_tag: str
    parameter: float = 0.0
    allow_large_beta: bool = False

    def __post_init__(self):
        object.__setattr__(self, "parameter", float(self.parameter))
        tag, p = self.class_tag, self.parameter
        if tag not in CLASS_TAGS:
            raise BadParameter(f"unknown class tag {tag!r}")
        if tag == "lif" and not p >= 1.0:
            raise BadParameter(f"lif order alpha must be >= 1, got {p}")
        if tag == "ozaki":
            if not p > 0.0:
                raise BadParameter(f"ozaki beta must be > 0, got {p}")
            if p > 1.0:
                if not self.allow_large_beta:
                    raise BadParameter(f"ozaki beta must be <= 1, got {p}")
                log.warning("ozaki class with beta = %g > 1 accepted by override", p)
        if tag == "starlike" and not 0.0 <= p < 1.0:
            raise BadParameter(f"starlike order xi must satisfy 0 <= xi < 1, got {p}")

    @property
    def lif_order(self) -> Optional[float]:
        """Order of the smallest universal linear-invariant family containing the class."""
        return {"lif": self.parameter, "convex": 1.0, "univalent": 2.0}.get(self.class_tag)

    def to_json(self) -> dict:
        return {"tag": self.class_tag, "parameter": self.parameter}

    @classmethod
    def from_json(cls, obj) -> "ClassSpec":
        if isinstance(obj, str):
            return cls(obj)
        return cls(obj["tag"], obj.get("parameter", 0.0), obj.get("allow_large_beta", False))


@dataclass(frozen=True)
class RadiusResult:
    radius: float
    formula_id: str
    quadratic: tuple
    discriminant: float
    variant: Optional[str] = None
    params: dict = field(default_factory=dict, compare=False)
    printed_radius: Optional[float] = None

    def residual(self, r: Optional[float] = None) -> float:
        a, b, c = self.quadratic
        r = self.radius if r is None else r
        return a * r * r + b * r + c

    def profile(self, r: float) -> float:
        """Lower bound for ``min_{|z|=r} Re Q``: the numerator over ``1 - r**2``."""
        if not 0.0 <= r < 1.0:
            raise BadParameter(f"profile radius must lie in [0, 1), got {r}")
        return self.residual(r) / (1.0 - r * r)

    def to_json(self) -> dict:
        out = {
            "radius": self.radius,
            "formula": self.formula_id,
            "quadratic": [float(q) for q in self.quadratic],
            "discriminant": self.discriminant,
        }
        if self.variant is not None:
            out["variant"] = self.variant
        if self.params:
            out["params"] = dict(self.params)
        if self.printed_radius is not None:
            out["printed_radius"] = self.printed_radius
        return out


RADIUS_RESULT_SCHEMA = {
    "type": "object",
    "required": ["radius", "formula", "quadratic", "discriminant"],
    "properties": {
        "radius": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
        "formula": {"enum": list(FORMULAS)},
        "quadratic": {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 3,
            "maxItems": 3,
        },
        "discriminant": {"type": "number"},
        "variant": {"enum": list(VARIANTS)},
        "params": {"type": "object", "additionalProperties": {"type": "number"}},
        "printed_radius": {"type": "number"},
    },
}


def solve_quadratic_positive_root(a: float, b: float, c: float) -> float:
    """Smallest positive root of ``a r**2 + b r + c`` without cancellation.

    >>> solve_quadratic_positive_root(-5.0, -4.0, 1.0)
    0.2
    """
    a, b, c = float(a), float(b), float(c)
    if a == 0.0:
        if b == 0.0:
            raise NoPositiveRoot("degenerate polynomial has no root")
        root = -c / b
        if root > 0.0:
            return root
        raise NoPositiveRoot(f"linear root {root} is not positive")
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        raise NoPositiveRoot(f"negative discriminant {disc}")
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    roots = []
    if q != 0.0:
        roots = [q / a, c / q]
    else:
        roots = [0.0]
    positive = [r for r in roots if r > 0.0]
    if not positive:
        raise NoPositiveRoot(f"roots {roots} are not positive")
    return min(positive)


def _nonneg(name: str, value: float) -> float:
    value = float(value)
    if not value >= 0.0 or math.isinf(value):
        raise BadParameter(f"{name} must be a finite value >= 0, got {value}")
    return value


def _alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha >= 1.0 or math.isinf(alpha):
        raise BadParameter(f"alpha must be >= 1, got {alpha}")
    return alpha


def _beta(beta: float, allow_large_beta: bool = False) -> float:
    beta = float(beta)
    if not beta > 0.0 or math.isinf(beta):
        raise BadParameter(f"beta must be > 0, got {beta}")
    if beta > 1.0:
        if not allow_large_beta:
            raise BadParameter(f"beta must be <= 1, got {beta}")
        log.warning("beta = %g > 1 accepted by override", beta)
    return beta


def _xi(xi: float) -> float:
    xi = float(xi)
    if not 0.0 <= xi < 1.0:
        raise BadParameter(f"xi must satisfy 0 <= xi < 1, got {xi}")
    return xi


def _from_quadratic(formula_id, a, b, c, variant=None, params=None, radius=None, printed=None):
    root = solve_quadratic_positive_root(a, b, c)
    return RadiusResult(
        radius=root if radius is None else radius,
        formula_id=formula_id,
        quadratic=(a, b, c),
        discriminant=b * b - 4.0 * a * c,
        variant=variant,
        params=params or {},
        printed_radius=printed,
    )


def radius_lif(alpha: float, M: float) -> RadiusResult:
    """Operator F with every ``f_i`` of linear-invariant order at most ``alpha``."""
    alpha, M = _alpha(alpha), _nonneg("M", M)
    printed = (math.sqrt(alpha**2 * M**2 + 2 * M + 1) - alpha * M) / (2 * M + 1)
    return _from_quadratic(
        "thm21", -(2 * M + 1), -2 * alpha * M, 1.0,
        params={"alpha": alpha, "M": M}, printed=printed,
    )


def radius_convex(M: float) -> RadiusResult:
    M = _nonneg("M", M)
    return RadiusResult(
        radius=1.0 / (2 * M + 1),
        formula_id="cor_convex",
        quadratic=(-(2 * M + 1), -2 * M, 1.0),
        discriminant=4 * M * M + 4 * (2 * M + 1),
        params={"M": M},
    )


def radius_univalent(M: float) -> RadiusResult:
    M = _nonneg("M", M)
    a, b = -(2 * M + 1), -4 * M
    return RadiusResult(
        radius=1.0 / (math.sqrt(4 * M * M + 2 * M + 1) + 2 * M),
        formula_id="thm22",
        quadratic=(a, b, 1.0),
        discriminant=b * b - 4 * a,
        params={"M": M},
    )


def radius_ozaki(beta: float, M: float, *, allow_large_beta: bool = False) -> RadiusResult:
    """``1/(beta M + 1)``; numerator ``(1 - (beta M + 1) r)(1 + r)``."""
    beta, M = _beta(beta, allow_large_beta), _nonneg("M", M)
    k = beta * M
    return RadiusResult(
        radius=1.0 / (k + 1),
        formula_id="thm23",
        quadratic=(-(k + 1), -k, 1.0),
        discriminant=(k + 2) ** 2,
        params={"beta": beta, "M": M},
    )


def printed_mixed_radius(alpha: float, xi: float, M: float, N: float) -> float:
    """Closed-form expression recorded for audit; it evaluates negative, so it is not used as the radius."""
    u = (xi - 1) * N - alpha * M
    v = (xi - 1) * N - M - 1
    return (math.sqrt(u * u - 2 * v) - (xi - 1) * N + alpha * M) / (2 * v)


def _mixed(formula_id, alpha, xi, M, N, variant):
    if variant not in VARIANTS:
        raise BadParameter(f"variant must be one of {VARIANTS}, got {variant!r}")
    alpha, xi = _alpha(alpha), _xi(xi)
    M, N = _nonneg("M", M), _nonneg("N", N)
    w = (1 - xi) * N
    if variant == "paper":
        a = -2 * (w + M + 1)
    else:
        a = -(2 * w + 2 * M + 1)
    b = -2 * (alpha * M + w)
    return _from_quadratic(
        formula_id, a, b, 1.0, variant=variant,
        params={"alpha": alpha, "xi": xi, "M": M, "N": N},
        printed=printed_mixed_radius(alpha, xi, M, N),
    )


def radius_mixed(alpha: float, xi: float, M: float, N: float,
                 variant: str = "rederived") -> RadiusResult:
    """Operator J with linear-invariant ``f_i`` and starlike ``g_j``.

    ``variant="paper"`` roots the looser numerator, whose leading
    coefficient is ``-2((1-xi)N + M + 1)``. ``"rederived"`` adds the two
    ingredient bounds exactly, giving ``-(2(1-xi)N + 2M + 1)``; it reduces to
    :func:`radius_lif` at ``N = 0``.
    """
    return _mixed(f"thm24_{variant}" if variant in VARIANTS else "thm24", alpha, xi, M, N, variant)


def radius_mixed_convex(xi: float, M: float, N: float, variant: str = "rederived") -> RadiusResult:
    return _mixed("cor25", 1.0, xi, M, N, variant)


def radius_mixed_locally_convex(beta: float, xi: float, M: float, N: float,
                                *, allow_large_beta: bool = False) -> RadiusResult:
    beta, xi = _beta(beta, allow_large_beta), _xi(xi)
    M, N = _nonneg("M", M), _nonneg("N", N)
    k = 2 * (1 - xi) * N + beta * M
    a, b = -(k + 1), -k
    factored = 1.0 / (k + 1)
    root = solve_quadratic_positive_root(a, b, 1.0)
    if abs(root - factored) > 1e-12:
        raise ArithmeticError(f"root {root} disagrees with factored radius {factored}")
    return RadiusResult(
        radius=factored,
        formula_id="thm26",
        quadratic=(a, b, 1.0),
        discriminant=(k + 2) ** 2,
        params={"beta": beta, "xi": xi, "M": M, "N": N},
    )


def compute_radius(formula_id: str, *, alpha: float = 1.0, beta: float = 1.0, xi: float = 0.0,
                   M: float = 1.0, N: float = 0.0, variant: Optional[str] = None,
                   allow_large_beta: bool = False) -> RadiusResult:
    """Dispatch on a formula id (``thm24`` and ``cor25`` honour ``variant``)."""
    if formula_id == "thm21":
        return radius_lif(alpha, M)
    if formula_id == "cor_convex":
        return radius_convex(M)
    if formula_id == "thm22":
        return radius_univalent(M)
    if formula_id == "thm23":
        return radius_ozaki(beta, M, allow_large_beta=allow_large_beta)
    if formula_id in ("thm24", "thm24_paper", "thm24_rederived"):
        if formula_id != "thm24":
            implied = formula_id.split("_", 1)[1]
            if variant not in (None, implied):
                raise BadParameter(f"{formula_id} conflicts with variant {variant!r}")
            variant = implied
        return radius_mixed(alpha, xi, M, N, variant or "rederived")
    if formula_id == "cor25":
        return radius_mixed_convex(xi, M, N, variant or "rederived")
    if formula_id == "thm26":
        return radius_mixed_locally_convex(beta, xi, M, N, allow_large_beta=allow_large_beta)
    raise BadParameter(f"unknown formula {formula_id!r}")


def lower_bound_profile(formula_id: str, params: dict, r: float) -> float:
    """Guaranteed lower bound for ``min_{|z|=r} Re Q`` under a formula's hypotheses.

    >>> lower_bound_profile("thm21", {"alpha": 1, "M": 1}, 0.2)
    0.5
    """
    return compute_radius(formula_id, **params).profile(r)
