import logging
import math

import jsonschema
import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from convexity_radius.errors import BadParameter, NoPositiveRoot
from convexity_radius.radii import (
    FORMULAS,
    RADIUS_RESULT_SCHEMA,
    ClassSpec,
    compute_radius,
    lower_bound_profile,
    printed_mixed_radius,
    radius_convex,
    radius_lif,
    radius_mixed,
    radius_mixed_convex,
    radius_mixed_locally_convex,
    radius_ozaki,
    radius_univalent,
    solve_quadratic_positive_root,
)

M_GRID = np.logspace(-2, 1, 50)
ALPHAS = (1.0, 1.5, 2.0, 3.0)
BETAS = (0.25, 0.5, 1.0)
XIS = (0.0, 0.25, 0.5)


def all_results(M, N=0.7):
    """One result per formula family at grid point ``M``."""
    out = [radius_convex(M), radius_univalent(M)]
    out += [radius_lif(a, M) for a in ALPHAS]
    out += [radius_ozaki(b, M) for b in BETAS]
    for xi in XIS:
        for a in ALPHAS:
            out += [radius_mixed(a, xi, M, N, v) for v in ("paper", "rederived")]
        out += [radius_mixed_convex(xi, M, N, v) for v in ("paper", "rederived")]
        out += [radius_mixed_locally_convex(b, xi, M, N) for b in BETAS]
    return out


@pytest.mark.parametrize("abc,root", [((-5, -4, 1), 0.2), ((-1, 0, 1), 1.0), ((0, -2, 1), 0.5)])
def test_solver_examples(abc, root):
    assert solve_quadratic_positive_root(*abc) == pytest.approx(root, abs=1e-15)


def test_solver_picks_smallest_positive_root():
    # (r - 0.25)(r - 2)
    assert solve_quadratic_positive_root(1, -2.25, 0.5) == pytest.approx(0.25, rel=1e-15)


@pytest.mark.parametrize("abc", [(1, 0, 1), (1, 3, 2), (0, 1, 1), (0, 0, 1)])
def test_solver_no_positive_root(abc):
    with pytest.raises(NoPositiveRoot):
        solve_quadratic_positive_root(*abc)


def test_solver_is_cancellation_free():
    mpmath.mp.dps = 50
    for b in (-1e3, -1e5, -1e7, -1e9):
        a, c = -1.0, 1.0
        exact = (-mpmath.mpf(b) - mpmath.sqrt(mpmath.mpf(b) ** 2 + 4)) / (2 * a)
        assert solve_quadratic_positive_root(a, b, c) == pytest.approx(float(exact), rel=1e-15)
    for M in (1e-8, 1e3, 1e6):
        r = radius_lif(3, M).radius
        mp_r = mpmath.findroot(lambda x: -(2 * M + 1) * x**2 - 6 * M * x + 1, r)
        assert r == pytest.approx(float(mp_r), rel=1e-14)


def test_spot_values():
    assert radius_lif(1, 1).radius == pytest.approx(1 / 3, abs=1e-15)
    assert radius_lif(2, 1).radius == pytest.approx((math.sqrt(7) - 2) / 3, abs=1e-15)
    assert radius_univalent(1).radius == pytest.approx(1 / (math.sqrt(7) + 2), abs=1e-15)
    assert radius_convex(0.5).radius == 0.5
    assert radius_ozaki(1, 1).radius == 0.5
    assert radius_ozaki(0.5, 2).radius == 0.5
    assert radius_mixed(1, 0, 1, 1).radius == pytest.approx(0.2, abs=1e-15)
    assert radius_mixed(1, 0, 1, 1, "paper").radius == pytest.approx((math.sqrt(10) - 2) / 6, abs=1e-15)
    assert radius_mixed_convex(0, 1, 1).radius == pytest.approx(0.2, abs=1e-15)
    assert radius_mixed_locally_convex(1, 0, 1, 1).radius == pytest.approx(0.25, abs=1e-15)


def test_degenerate_limits():
    for res in (radius_lif(2.5, 0), radius_convex(0), radius_univalent(0), radius_ozaki(0.3, 0),
                radius_mixed(2, 0.3, 0, 0), radius_mixed_locally_convex(0.3, 0.3, 0, 0)):
        assert res.radius == 1.0


def test_printed_forms():
    for M in M_GRID:
        for a in ALPHAS:
            res = radius_lif(a, M)
            assert abs(res.radius - res.printed_radius) < 1e-12
    assert printed_mixed_radius(1, 0, 1, 1) < 0
    assert radius_mixed(1, 0, 1, 1).printed_radius == printed_mixed_radius(1, 0, 1, 1)


def test_identities_and_reductions():
    for M in M_GRID:
        assert abs(radius_univalent(M).radius - radius_lif(2, M).radius) < 1e-12
        assert abs(radius_lif(1, M).radius - radius_convex(M).radius) < 1e-14
        assert abs(radius_convex(M).radius - 1 / (2 * M + 1)) < 1e-15
        for xi in XIS:
            for a in ALPHAS:
                assert abs(radius_mixed(a, xi, M, 0).radius - radius_lif(a, M).radius) < 1e-12
            for b in BETAS:
                assert abs(radius_mixed_locally_convex(b, xi, M, 0).radius
                           - radius_ozaki(b, M).radius) < 1e-12
            assert abs(radius_mixed_convex(xi, M, 0).radius - 1 / (2 * M + 1)) < 1e-12


def test_residuals_on_grid():
    for M in M_GRID:
        for res in all_results(M):
            assert 0 < res.radius <= 1
            if res.radius < 1:
                assert abs(res.residual()) < 1e-10


def test_monotone_in_M():
    for build in (radius_convex, radius_univalent, lambda M: radius_lif(1.5, M),
                  lambda M: radius_ozaki(0.5, M),
                  lambda M: radius_mixed(2, 0.25, M, 0.5),
                  lambda M: radius_mixed(2, 0.25, M, 0.5, "paper"),
                  lambda M: radius_mixed_locally_convex(0.5, 0.25, M, 0.5)):
        values = np.array([build(M).radius for M in M_GRID])
        assert np.all(np.diff(values) < 0)


def test_monotone_in_other_parameters():
    grid = np.logspace(-2, 1, 50)
    for build in (lambda N: radius_mixed(2, 0.25, 1, N),
                  lambda N: radius_mixed(2, 0.25, 1, N, "paper"),
                  lambda N: radius_mixed_locally_convex(0.5, 0.25, 1, N)):
        assert np.all(np.diff([build(N).radius for N in grid]) < 0)
    alphas = 1 + grid
    assert np.all(np.diff([radius_lif(a, 1).radius for a in alphas]) < 0)
    assert np.all(np.diff([radius_mixed(a, 0.2, 1, 1).radius for a in alphas]) < 0)
    betas = np.linspace(0.02, 1, 50)
    assert np.all(np.diff([radius_ozaki(b, 1).radius for b in betas]) < 0)
    xis = np.linspace(0, 0.98, 50)
    # larger xi means a stronger starlike hypothesis, so a larger radius
    assert np.all(np.diff([radius_mixed(2, x, 1, 1).radius for x in xis]) > 0)


def test_domination_of_paper_variant(rng):
    for _ in range(500):
        alpha = rng.uniform(1, 4)
        xi = rng.uniform(0, 0.99)
        M, N = rng.uniform(0.001, 10, 2)
        paper = radius_mixed(alpha, xi, M, N, "paper").radius
        rederived = radius_mixed(alpha, xi, M, N, "rederived").radius
        assert paper < rederived


def test_profile_values():
    assert lower_bound_profile("thm21", {"alpha": 1, "M": 1}, 0.2) == pytest.approx(0.5, abs=1e-15)
    for f in FORMULAS:
        assert compute_radius(f, alpha=2, beta=0.5, xi=0.2, M=1.3, N=0.4).profile(0) == 1


def test_profile_signs():
    r_grid = np.linspace(0, 0.999, 400)
    for M in M_GRID[::7]:
        for res in all_results(M):
            assert abs(res.profile(res.radius)) < 1e-10 or res.radius == 1
            for r in r_grid:
                p = res.profile(r)
                if r < res.radius - 1e-9:
                    assert p > 1e-12
                elif r > res.radius + 1e-9:
                    assert p < -1e-12


def test_profile_domain():
    with pytest.raises(BadParameter):
        radius_lif(1, 1).profile(1.0)


def test_ozaki_profile_closed_form():
    # numerator/(1 - r^2) equals 1 - beta M r/(1 - r)
    res = radius_ozaki(0.7, 1.9)
    for r in np.linspace(0.05, 0.95, 19):
        assert res.profile(r) == pytest.approx(1 - 0.7 * 1.9 * r / (1 - r), rel=1e-12, abs=1e-13)


@pytest.mark.parametrize("call", [
    lambda: radius_lif(0.99, 1),
    lambda: radius_lif(1, -0.1),
    lambda: radius_ozaki(0, 1),
    lambda: radius_ozaki(1.5, 1),
    lambda: radius_mixed(1, 1.0, 1, 1),
    lambda: radius_mixed(1, -0.1, 1, 1),
    lambda: radius_mixed(1, 0, 1, -1),
    lambda: radius_mixed(1, 0, 1, 1, "typo"),
    lambda: radius_mixed_locally_convex(2, 0, 1, 1),
    lambda: compute_radius("thm99"),
    lambda: compute_radius("thm24_paper", variant="rederived"),
    lambda: ClassSpec("lif", 0.5),
    lambda: ClassSpec("starlike", 1.0),
    lambda: ClassSpec("ozaki", 2.0),
    lambda: ClassSpec("bogus"),
])
def test_bad_parameters(call):
    with pytest.raises(BadParameter):
        call()


def test_large_beta_override_logs(caplog):
    with caplog.at_level(logging.WARNING):
        spec = ClassSpec("ozaki", 1.5, allow_large_beta=True)
        res = radius_ozaki(1.5, 1, allow_large_beta=True)
    assert spec.parameter == 1.5 and res.radius == pytest.approx(0.4)
    assert any("override" in rec.getMessage() for rec in caplog.records)


def test_class_spec_orders_and_json():
    assert ClassSpec("convex").lif_order == 1
    assert ClassSpec("univalent").lif_order == 2
    assert ClassSpec("lif", 2.5).lif_order == 2.5
    assert ClassSpec("ozaki", 0.5).lif_order is None
    spec = ClassSpec("starlike", 0.3)
    assert ClassSpec.from_json(spec.to_json()) == spec
    assert ClassSpec.from_json("convex") == ClassSpec("convex")


def test_json_schema_for_every_formula():
    for f in FORMULAS:
        for M in (0.0, 0.3, 5.0):
            res = compute_radius(f, alpha=1.5, beta=0.5, xi=0.25, M=M, N=0.5)
            jsonschema.validate(res.to_json(), RADIUS_RESULT_SCHEMA)
            assert res.to_json()["formula"] == f


@settings(max_examples=200, deadline=None)
@given(st.floats(1, 10), st.floats(0, 0.999), st.floats(1e-6, 1e4), st.floats(0, 1e4))
def test_mixed_root_properties(alpha, xi, M, N):
    for variant in ("paper", "rederived"):
        res = radius_mixed(alpha, xi, M, N, variant)
        assert 0 < res.radius < 1
        scale = max(abs(q) for q in res.quadratic)
        assert abs(res.residual()) <= 1e-12 * scale
