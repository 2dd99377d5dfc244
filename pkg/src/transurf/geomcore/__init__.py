"""Curves, Frenet data and the fundamental forms of translation surfaces."""
from .curves import (
    AnalyticCurve,
    ArclengthCurve,
    Curve,
    DegenerateCurveError,
    FrenetData,
    GeomError,
    SampledCurve,
    TranslatedCurve,
    ZeroCurvatureError,
    arclength_reparam,
    frenet,
)
from .fixtures import (
    FIXTURE_NAMES,
    FixtureError,
    curve_from_json,
    curve_to_json,
    dump_curve_json,
    fixture,
    fixture_json,
    load_curve,
)
from .surface import (
    SIN_FLOOR,
    Christoffel,
    FormCoefficients,
    RegularityError,
    SurfacePatch,
    ZeroDenominatorError,
    christoffel,
    codazzi_residual,
    codazzi_residual_grid,
    conserved_A,
    conserved_B,
    egregium_residual,
    form_coefficients,
    form_grid,
    forms_from_derivatives,
    gauss_curvature_angle,
    gauss_curvature_forms,
    gauss_formula_residual,
    parametric_torsion_surface,
    torsion_identity_residual,
    unit_normal,
)

__all__ = [name for name in dir() if not name.startswith("_")]
