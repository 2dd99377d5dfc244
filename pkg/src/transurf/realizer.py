"""Translation metrics: conservation laws, realizability residuals, the circle probe and a cylindricity classifier."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .exprlang import Expr, ExprError, eval_jet, jet_sqrt
from .geomcore import (
    SIN_FLOOR,
    Curve,
    SurfacePatch,
    codazzi_residual_grid,
    conserved_A,
    conserved_B,
    egregium_residual,
    form_grid,
    gauss_curvature_angle,
    gauss_curvature_forms,
)
from .geomcore.surface import _centres

TOL_K = 1e-8
TOL_C = 1e-7


class RealizerError(ValueError):
    pass


class StrictnessError(RealizerError):
    def __init__(self, which: str, u: float, v: float, margin: float):
        super().__init__(f"strictness violated: {which} at (u, v) = ({u!r}, {v!r}), margin {margin!r}")
        self.which, self.u, self.v, self.margin = which, u, v, margin


# -- conservation of A and B ------------------------------------------------------

@dataclass(frozen=True)
class ConservationResult:
    u: np.ndarray
    v: np.ndarray
    A: np.ndarray
    B: np.ndarray
    spread_A: float
    spread_B: float

    @property
    def max_spread(self) -> float:
        return max(self.spread_A, self.spread_B)


def _spread(x: np.ndarray, axis: int) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        s = np.nanmax(x, axis=axis) - np.nanmin(x, axis=axis)
    return float(np.nanmax(s)) if np.any(np.isfinite(s)) else 0.0


def conservation_AB(S: SurfacePatch, nu: int = 64, nv: int = 64, L_perturbation=None) -> ConservationResult:
    """A(u) = sqrt(L^2 + phi_u^2) across v-slices and B(v) = sqrt(N^2 + phi_v^2) across u-slices.

    ``L_perturbation(u, v)`` is added to L first (a negative control).
    """
    us, vs = S.grid(nu, nv)
    fc = form_grid(S, us, vs)
    L = fc.L
    if L_perturbation is not None:
        U, V = np.meshgrid(us, vs, indexing="ij")
        L = L + L_perturbation(U, V)
    A = np.sqrt(L**2 + fc.phi_u**2)
    B = conserved_B(fc)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)  # rows that are entirely irregular average to NaN
        return ConservationResult(us, vs, np.nanmean(A, axis=1), np.nanmean(B, axis=0), _spread(A, 1), _spread(B, 0))


# -- realizability -------------------------------------------------------------------

@dataclass(frozen=True)
class RealizabilityInput:
    phi: Expr
    A: Expr
    B: Expr
    K: float
    eps1: int = 1
    eps2: int = 1

    def __post_init__(self):
        if self.eps1 not in (-1, 1) or self.eps2 not in (-1, 1):
            raise RealizerError("signs must be +1 or -1")
        if not self.phi.free_variables() <= {"u", "v"}:
            raise RealizerError("phi may depend on u and v only")
        if not self.A.free_variables() <= {"u"}:
            raise RealizerError("A may depend on u only")
        if not self.B.free_variables() <= {"v"}:
            raise RealizerError("B may depend on v only")
        if self.K != 0 and self.eps1 * self.eps2 != np.sign(self.K):
            raise RealizerError("the product of the signs must equal the sign of K")


@dataclass
class RealizabilityReport:
    applicable: bool
    message: str
    residuals: dict = field(default_factory=dict)
    tol: float = 1e-6

    @property
    def realizable(self) -> bool | None:
        if not self.applicable:
            return None
        return all(r <= self.tol for r in self.residuals.values())

    def to_dict(self) -> dict:
        return {"applicable": self.applicable, "message": self.message, "realizable": self.realizable,
                "residuals": dict(sorted(self.residuals.items())), "tol": self.tol}


def metric_residual(phi, phi_u, phi_v, A, B, K):
    """|(A^2 - phi_u^2)(B^2 - phi_v^2) - K^2 sin^4(phi)|, elementwise."""
    return np.abs((A**2 - phi_u**2) * (B**2 - phi_v**2) - K**2 * np.sin(phi) ** 4)


def _first_bad(mask, U, V):
    i = np.argwhere(mask)[0]
    return float(U[tuple(i)]), float(V[tuple(i)])


def realizability_check(inp: RealizabilityInput, grid=(64, 64), domain=((0.0, 1.0), (0.0, 1.0)),
                        tol: float = 1e-6, floor: float = SIN_FLOOR) -> RealizabilityReport:
    """Residuals of the metric equation, Gauss and Codazzi for L = eps1 sqrt(A^2 - phi_u^2), N = eps2 sqrt(B^2 - phi_v^2)."""
    nu, nv = grid
    us, vs = _centres(domain[0], nu), _centres(domain[1], nv)
    U, V = np.meshgrid(us, vs, indexing="ij")
    point = {"u": U.ravel(), "v": V.ravel()}
    try:
        phi = eval_jet(inp.phi, point, 2)
        A = eval_jet(inp.A, point, 1)
        B = eval_jet(inp.B, point, 1)
    except ExprError as exc:
        raise RealizerError(f"cannot evaluate inputs: {exc}") from None
    shape = U.shape

    def arr(x):
        return np.broadcast_to(np.asarray(x, dtype=float), (U.size,)).reshape(shape)

    p = {k: arr(v) for k, v in phi.partials().items()}
    sin = np.sin(p[(0, 0)])
    bad = ~(sin >= floor)
    if np.any(bad):
        u, v = _first_bad(bad, U, V)
        raise RealizerError(f"phi leaves (0, pi) at (u, v) = ({u!r}, {v!r})")
    phi_u_jet, phi_v_jet = phi.derivative("u"), phi.derivative("v")
    XA = A * A - phi_u_jet * phi_u_jet
    XB = B * B - phi_v_jet * phi_v_jet
    for which, X in (("A^2 > phi_u^2", XA), ("B^2 > phi_v^2", XB)):
        margin = arr(X.value)
        if np.any(margin <= 0):
            u, v = _first_bad(margin <= 0, U, V)
            raise StrictnessError(which, u, v, float(margin[margin <= 0][0]))
    if inp.K == 0:
        return RealizabilityReport(False, "K = 0: the cylindrical case; no realizability residual computed", {}, tol)

    L = jet_sqrt(XA) * inp.eps1
    N = jet_sqrt(XB) * inp.eps2
    Lv, Nv, phi_u, phi_v = arr(L.value), arr(N.value), p[(1, 0)], p[(0, 1)]
    residuals = {
        "metric": float(np.max(metric_residual(p[(0, 0)], phi_u, phi_v, arr(A.value), arr(B.value), inp.K))),
        "gauss": float(np.max(np.abs(Lv * Nv / sin**2 - inp.K))),
        "egregium": float(np.max(np.abs(p[(1, 1)] + inp.K * sin))),
        "codazzi_L": float(np.max(np.abs(arr(L.partial("v")) - Nv * phi_u / sin))),
        "codazzi_N": float(np.max(np.abs(arr(N.partial("u")) - Lv * phi_v / sin))),
    }
    flagged = [k for k, r in residuals.items() if r > tol]
    message = "all residuals within tolerance" if not flagged else "residuals above tolerance: " + ", ".join(flagged)
    return RealizabilityReport(True, message, residuals, tol)


# -- circle probe ------------------------------------------------------------------------

@dataclass(frozen=True)
class ProbeResult:
    classification: str
    radius: float
    max_beta3_prime: float
    residual_1: float
    residual_2: float
    bracket_1: float
    bracket_2: float


def circle_case_probe(beta: Curve, r: float, samples: int = 256, tol: float = 1e-8) -> ProbeResult:
    """Check the relations forced on the partner of a circle of radius r.

    Residuals beta3'(beta2' beta3'' - beta2'' beta3') and beta3'(beta1' beta3'' - beta1'' beta3').
    "plane": beta3' vanishes; "line": both brackets vanish; otherwise "violation".
    """
    if not beta.arclength:
        raise ValueError("circle_case_probe needs a unit-speed curve")
    d = beta.derivatives(beta.sample_parameters(samples))
    b1, b2 = d[1], d[2]
    bracket_1 = b1[:, 1] * b2[:, 2] - b2[:, 1] * b1[:, 2]
    bracket_2 = b1[:, 0] * b2[:, 2] - b2[:, 0] * b1[:, 2]
    m3 = float(np.max(np.abs(b1[:, 2])))
    res1 = float(np.max(np.abs(b1[:, 2] * bracket_1)))
    res2 = float(np.max(np.abs(b1[:, 2] * bracket_2)))
    br1, br2 = float(np.max(np.abs(bracket_1))), float(np.max(np.abs(bracket_2)))
    if m3 <= tol:
        kind = "plane"
    elif br1 <= tol and br2 <= tol:
        kind = "line"
    else:
        kind = "violation"
    return ProbeResult(kind, float(r), m3, res1, res2, br1, br2)


# -- cylindricity ----------------------------------------------------------------------------

@dataclass(frozen=True)
class CylindricityReport:
    is_cylindrical: bool
    ruling_direction: tuple | None
    max_deviation: float
    generator: str | None = None


@dataclass(frozen=True)
class SurfaceClassification:
    k_mean: float
    k_var: float
    cylindricity: CylindricityReport
    implication_holds: bool
    regular_points: int
    skipped_points: int
    tolK: float
    tolC: float


def tangent_spread(c: Curve, samples: int = 64) -> tuple[float, np.ndarray]:
    """Largest angle between two sampled tangents, and the first tangent."""
    t = c.derivatives(c.sample_parameters(samples))[1]
    t = t / np.linalg.norm(t, axis=1, keepdims=True)
    cross = np.linalg.norm(np.cross(t[:, None, :], t[None, :, :]), axis=-1)
    dot = np.einsum("ik,jk->ij", t, t)
    return float(np.max(np.arctan2(cross, dot))), t[0]


def normal_spread(S: SurfacePatch, samples: int = 32) -> float:
    """Largest angle between unit normals (up to sign) over a grid; zero exactly when the patch is planar."""
    us, vs = S.grid(samples, samples)
    ta = S.alpha.derivatives(us)[1]
    tb = S.beta.derivatives(vs)[1]
    n = np.cross(ta[:, None, :], tb[None, :, :]).reshape(-1, 3)
    norm = np.linalg.norm(n, axis=1)
    n = n[norm > SIN_FLOOR] / norm[norm > SIN_FLOOR, None]
    if len(n) == 0:
        return float("nan")
    n = n * np.where(n @ n[0] < 0, -1.0, 1.0)[:, None]
    return float(np.max(np.arctan2(np.linalg.norm(np.cross(n, n[0]), axis=1), n @ n[0])))


def cylindricity(S: SurfacePatch, samples: int = 64, tolC: float = TOL_C) -> CylindricityReport:
    """A generator with constant tangent gives parallel rulings; a planar patch is a cylinder over any of its lines."""
    best = None
    for name, c in (("alpha", S.alpha), ("beta", S.beta)):
        spread, direction = tangent_spread(c, samples)
        if best is None or spread < best[0]:
            best = (spread, direction, name)
    spread, direction, name = best
    if spread < tolC:
        return CylindricityReport(True, tuple(float(x) for x in direction), spread, name)
    if normal_spread(S, min(samples, 32)) < tolC:
        return CylindricityReport(True, tuple(float(x) for x in direction), spread, "plane")
    return CylindricityReport(False, None, spread, None)


def classify_surface(S: SurfacePatch, grid=(64, 64), tolK: float = TOL_K, tolC: float = TOL_C) -> SurfaceClassification:
    """K statistics over the grid and the cylindricity test.

    ``implication_holds`` evaluates: var(K) < tolK implies |mean K| < tolK and cylindrical.
    """
    nu, nv = grid
    us, vs = S.grid(nu, nv)
    fc = form_grid(S, us, vs)
    K = gauss_curvature_forms(fc)[fc.regular]
    k_mean = float(np.mean(K)) if K.size else float("nan")
    k_var = float(np.var(K)) if K.size else float("nan")
    cyl = cylindricity(S, max(nu, nv), tolC)
    holds = not (k_var < tolK) or (abs(k_mean) < tolK and cyl.is_cylindrical)
    return SurfaceClassification(k_mean, k_var, cyl, holds, int(K.size), int(fc.regular.size - K.size), tolK, tolC)


def surface_report(S: SurfacePatch, grid=(64, 64), h: float = 1e-4, tolK: float = TOL_K, tolC: float = TOL_C) -> dict:
    """JSON-ready report: K statistics, cylindricity and the geometric residuals."""
    cls = classify_surface(S, grid, tolK, tolC)
    us, vs = S.grid(*grid)
    fc = form_grid(S, us, vs)
    c1, c2 = codazzi_residual_grid(S, us, vs, h)
    cons = conservation_AB(S, *grid)

    def worst(x):
        x = np.asarray(x)[fc.regular]
        return float(np.max(x)) if x.size else 0.0

    return {
        "k_mean": cls.k_mean,
        "k_var": cls.k_var,
        "cylindrical": cls.cylindricity.is_cylindrical,
        "ruling": list(cls.cylindricity.ruling_direction) if cls.cylindricity.ruling_direction else None,
        "tangent_spread": cls.cylindricity.max_deviation,
        "implication_holds": cls.implication_holds,
        "grid": list(grid),
        "regular_points": cls.regular_points,
        "skipped_points": cls.skipped_points,
        "residuals": {
            "codazzi_L": worst(c1),
            "codazzi_N": worst(c2),
            "egregium": worst(egregium_residual(fc)),
            "k_routes": worst(np.abs(gauss_curvature_forms(fc) - gauss_curvature_angle(fc))),
            "spread_A": cons.spread_A,
            "spread_B": cons.spread_B,
        },
    }
