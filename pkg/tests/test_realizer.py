import numpy as np
import pytest

from transurf.exprlang import parse
from transurf.geomcore import (
    AnalyticCurve,
    SurfacePatch,
    conserved_A,
    conserved_B,
    fixture,
    form_grid,
    gauss_curvature_forms,
)
from transurf.realizer import (
    RealizabilityInput,
    RealizerError,
    StrictnessError,
    circle_case_probe,
    classify_surface,
    conservation_AB,
    metric_residual,
    realizability_check,
    surface_report,
)

ANALYTIC_PAIRS = [("circle", "line"), ("circle", "helix"), ("helix(2,1)", "circle(3)"), ("fourier", "helix(1,2)"),
                  ("scherk-slice(0)", "scherk-slice(1)"), ("line(1,0,0)", "line(0,1,0)")]


def patch(a, b):
    return SurfacePatch.from_curves(fixture(a), fixture(b))


def inp(phi, A, B, K, eps1=1, eps2=None):
    eps2 = eps1 * (1 if K >= 0 else -1) if eps2 is None else eps2
    return RealizabilityInput(parse(phi, ("u", "v")), parse(A, ("u",)), parse(B, ("v",)), K, eps1, eps2)


# -- conservation -----------------------------------------------------------------------

def test_cylinder_A_is_one():
    r = conservation_AB(patch("circle", "line"))
    assert np.allclose(r.A, 1, atol=1e-12)
    assert r.max_spread < 1e-8


@pytest.mark.parametrize("pair", ANALYTIC_PAIRS)
def test_conservation_on_fixtures(pair):
    assert conservation_AB(patch(*pair)).max_spread < 1e-5


def test_conservation_detects_jitter():
    r = conservation_AB(patch("circle", "helix"), L_perturbation=lambda u, v: 0.01 * np.sin(7 * v))
    assert r.spread_A > 1e-3


def test_conserved_values_match_frenet_curvature_for_a_cylinder():
    # on a right cylinder over a circle of radius r, A equals 1/r
    r = conservation_AB(patch("circle(2)", "line"), 8, 8)
    assert np.allclose(r.A, 0.5, atol=1e-12)


# -- realizability -----------------------------------------------------------------------

def test_boundary_strictness():
    with pytest.raises(StrictnessError) as err:
        realizability_check(inp("pi/4 + u/2", "1/2", "1/2", 0))
    assert err.value.which == "A^2 > phi_u^2"


def test_flat_case_is_not_applicable():
    rep = realizability_check(inp("pi/2 + u*v/10", "1", "1", 0))
    assert not rep.applicable and rep.realizable is None
    assert "K = 0" in rep.message and rep.residuals == {}


def test_trial_metric_reports_residuals():
    rep = realizability_check(inp("1 + u*v/4", "1", "1", -1))
    assert rep.applicable
    assert set(rep.residuals) == {"metric", "gauss", "egregium", "codazzi_L", "codazzi_N"}
    assert rep.realizable is False and rep.residuals["metric"] > 1e-3


def test_right_angle_metric_fails_only_egregium():
    rep = realizability_check(inp("pi/2", "1", "1", 1))
    assert rep.residuals["egregium"] == pytest.approx(1)
    assert all(rep.residuals[k] < 1e-12 for k in ("metric", "gauss", "codazzi_L", "codazzi_N"))
    assert rep.realizable is False and "egregium" in rep.message


def test_sign_rule_enforced():
    with pytest.raises(RealizerError):
        inp("1", "1", "1", -1, eps1=1, eps2=1)


def test_variable_dependence_enforced():
    with pytest.raises(RealizerError):
        RealizabilityInput(parse("u"), parse("v"), parse("1"), 1)


def test_phi_outside_range_rejected():
    with pytest.raises(RealizerError):
        realizability_check(inp("4 + u", "1", "1", 1))


@pytest.mark.parametrize("pair", [("circle", "helix"), ("fourier", "circle(2)")])
def test_metric_equation_holds_on_real_surfaces(pair):
    S = patch(*pair)
    fc = form_grid(S, *S.grid(24, 24))
    K = gauss_curvature_forms(fc)
    r = metric_residual(fc.phi, fc.phi_u, fc.phi_v, conserved_A(fc), conserved_B(fc), K)
    assert np.nanmax(r) < 1e-10


# -- circle probe ----------------------------------------------------------------------------

def test_probe_helix_violates():
    p = circle_case_probe(fixture("helix"), 1.0)
    assert p.classification == "violation" and p.residual_1 == pytest.approx(0.25, rel=1e-4)


def test_probe_line_and_plane():
    assert circle_case_probe(fixture("line"), 1.0).classification == "line"
    assert circle_case_probe(fixture("circle(2)"), 1.0).classification == "plane"


def test_probe_requires_unit_speed():
    with pytest.raises(ValueError):
        circle_case_probe(fixture("fourier"), 1.0)


def test_probe_agrees_with_classifier():
    for beta, cylindrical in (("line", True), ("line(1,0,1)", True), ("helix", False)):
        S = patch("circle", beta)
        p = circle_case_probe(S.beta, 1.0)
        c = classify_surface(S, (32, 32))
        assert (p.classification != "violation") == cylindrical
        assert c.cylindricity.is_cylindrical == cylindrical


# -- classification --------------------------------------------------------------------------

def test_classify_cylinder():
    c = classify_surface(patch("circle", "line"))
    assert abs(c.k_mean) < 1e-8 and c.k_var < 1e-8
    assert c.cylindricity.is_cylindrical and c.implication_holds
    assert np.allclose(np.abs(c.cylindricity.ruling_direction), (0, 0, 1))


def test_classify_circle_helix():
    c = classify_surface(patch("circle", "helix"))
    assert c.k_var > 1e-4 and not c.cylindricity.is_cylindrical and c.implication_holds


def test_classify_plane():
    c = classify_surface(patch("line(1,0,0)", "line(0,1,0)"))
    assert c.k_mean == 0 and c.cylindricity.is_cylindrical


def test_non_flat_curve_over_line_is_cylinder():
    alpha = AnalyticCurve.from_text("t", "t^2/2", "0", (-1.0, 1.0))
    c = classify_surface(SurfacePatch.from_curves(alpha, fixture("line")), (32, 32))
    assert c.cylindricity.is_cylindrical and c.cylindricity.generator == "beta"


def test_surface_report_fields():
    r = surface_report(patch("circle", "helix"), (16, 16))
    assert set(r) >= {"k_mean", "k_var", "cylindrical", "ruling", "implication_holds", "residuals"}
    assert r["residuals"]["k_routes"] < 1e-8 and r["residuals"]["spread_A"] < 1e-8


@pytest.mark.parametrize("pair", [("circle(1)", "circle(2)"), ("scherk-slice(0)", "scherk-slice(0)")])
def test_coplanar_generators_give_a_plane(pair):
    c = classify_surface(patch(*pair), (32, 32))
    assert c.k_var < 1e-8 and abs(c.k_mean) < 1e-8
    assert c.cylindricity.is_cylindrical and c.cylindricity.generator == "plane" and c.implication_holds
