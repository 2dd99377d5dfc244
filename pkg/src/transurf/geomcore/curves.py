"""Space curves with derivatives to order 3, arclength reparametrization and Frenet data."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator
from scipy.optimize import minimize_scalar

from ..exprlang import Expr, eval_jet, parse

ORDER = 3
K_FLOOR = 1e-8


class GeomError(Exception):
    pass


class DegenerateCurveError(GeomError):
    def __init__(self, message: str, t: float):
        super().__init__(f"{message} (t = {t!r})")
        self.t = t


class ZeroCurvatureError(GeomError):
    pass


class Curve:
    """Base class: subclasses provide ``domain``, ``arclength`` and ``derivatives``."""

    domain: tuple[float, float]
    arclength: bool

    def derivatives(self, t) -> np.ndarray:
        """Array of shape (4, n, 3): position and first three derivatives at each t."""
        raise NotImplementedError

    def __call__(self, t):
        d = self.derivatives(np.atleast_1d(np.asarray(t, dtype=float)))
        return d[0] if np.ndim(t) else d[0, 0]

    def sample_parameters(self, n: int) -> np.ndarray:
        a, b = self.domain
        return np.linspace(a, b, n)


@dataclass(frozen=True, eq=False)
class AnalyticCurve(Curve):
    """Three expressions in the parameter ``t``; derivatives come from jets."""

    x: Expr
    y: Expr
    z: Expr
    domain: tuple[float, float]
    arclength: bool = False

    @classmethod
    def from_text(cls, x: str, y: str, z: str, domain, arclength: bool = False) -> "AnalyticCurve":
        return cls(parse(x, ("t",)), parse(y, ("t",)), parse(z, ("t",)), (float(domain[0]), float(domain[1])), arclength)

    def derivatives(self, t) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty((ORDER + 1, ts.size, 3))
        for i, e in enumerate((self.x, self.y, self.z)):
            jet = eval_jet(e, {"t": ts}, ORDER)
            for k in range(ORDER + 1):
                out[k, :, i] = jet.partial(*("t",) * k)
        return out


@dataclass(frozen=True, eq=False)
class SampledCurve(Curve):
    """Cubic spline (not-a-knot ends) through ordered samples (t, x, y, z).

    Third derivatives are piecewise constant, so torsion carries O(h) error.
    """

    points: np.ndarray
    arclength: bool = False
    _spline: CubicSpline = field(init=False, repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 4 or len(pts) < 4:
            raise ValueError("samples must be at least four rows of (t, x, y, z)")
        if np.any(np.diff(pts[:, 0]) <= 0):
            raise ValueError("sample parameters must be strictly increasing")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_spline", CubicSpline(pts[:, 0], pts[:, 1:], axis=0, bc_type="not-a-knot"))

    @property
    def domain(self):
        return (float(self.points[0, 0]), float(self.points[-1, 0]))

    def derivatives(self, t) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        return np.stack([self._spline(ts, k) for k in range(ORDER + 1)])


@dataclass(frozen=True, eq=False)
class TranslatedCurve(Curve):
    """``base + offset``; the parametric curves of a translation surface."""

    base: Curve
    offset: np.ndarray

    @property
    def domain(self):
        return self.base.domain

    @property
    def arclength(self):
        return self.base.arclength

    def derivatives(self, t) -> np.ndarray:
        d = self.base.derivatives(t).copy()
        d[0] += np.asarray(self.offset, dtype=float)
        return d


def _speed_derivatives(d: np.ndarray):
    """|c'| and its first two parameter derivatives from a derivative stack."""
    c1, c2, c3 = d[1], d[2], d[3]
    g = np.linalg.norm(c1, axis=-1)
    g1 = np.einsum("ij,ij->i", c1, c2) / g
    g2 = (np.einsum("ij,ij->i", c2, c2) + np.einsum("ij,ij->i", c1, c3) - g1 * g1) / g
    return g, g1, g2


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)


def _arc(c: Curve, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gauss-Legendre estimate of the length of c between parameters a and b, elementwise."""
    mid, half = (a + b) / 2, (b - a) / 2
    nodes = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    speed = np.linalg.norm(c.derivatives(nodes.ravel())[1], axis=-1).reshape(nodes.shape)
    return half * (speed @ _GL_WEIGHTS)


@dataclass(frozen=True, eq=False)
class ArclengthCurve(Curve):
    """``base`` reparametrized by arclength measured from the start of its domain."""

    base: Curve
    length: float
    knots_t: np.ndarray = field(repr=False)
    knots_s: np.ndarray = field(repr=False)
    constant_speed: float | None = None
    arclength: bool = field(default=True, init=False)

    @property
    def domain(self):
        return (0.0, self.length)

    def parameter(self, s) -> np.ndarray:
        """Base parameter t(s): monotone cubic guess refined by Newton steps on s(t)."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        t0 = self.base.domain[0]
        if self.constant_speed is not None:
            return t0 + s / self.constant_speed
        guess = PchipInterpolator(self.knots_s, self.knots_t, extrapolate=True)(s)
        idx = np.clip(np.searchsorted(self.knots_s, s) - 1, 0, len(self.knots_s) - 1)
        anchor_t, anchor_s = self.knots_t[idx], self.knots_s[idx]
        t = guess
        for _ in range(8):
            residual = anchor_s + _arc(self.base, anchor_t, t) - s
            speed = np.linalg.norm(self.base.derivatives(t)[1], axis=-1)
            step = residual / speed
            t = t - step
            if np.max(np.abs(step)) < 1e-14 * max(1.0, np.max(np.abs(t))):
                break
        return t

    def derivatives(self, s) -> np.ndarray:
        t = self.parameter(s)
        d = self.base.derivatives(t)
        g, g1, g2 = _speed_derivatives(d)
        dt1 = 1 / g
        dt2 = -g1 / g**3
        dt3 = -g2 / g**4 + 3 * g1 * g1 / g**5
        out = np.empty_like(d)
        out[0] = d[0]
        out[1] = d[1] * dt1[:, None]
        out[2] = d[2] * (dt1 * dt1)[:, None] + d[1] * dt2[:, None]
        out[3] = d[3] * (dt1**3)[:, None] + 3 * d[2] * (dt1 * dt2)[:, None] + d[1] * dt3[:, None]
        return out


def arclength_reparam(c: Curve, tol: float = 1e-6, intervals: int = 256) -> Curve:
    """Unit-speed version of ``c``; curves already flagged arclength are checked and returned."""
    a, b = c.domain
    grid = np.linspace(a, b, intervals + 1)
    mids = (grid[:-1, None] + grid[1:, None]) / 2 + (grid[1:, None] - grid[:-1, None]) / 2 * _GL_NODES[None, :]
    probe = np.concatenate([grid, mids.ravel()])
    speed = np.linalg.norm(c.derivatives(probe)[1], axis=-1)
    i = int(np.argmin(speed))
    lo, hi = max(a, probe[i] - (b - a) / intervals), min(b, probe[i] + (b - a) / intervals)
    if hi > lo:
        best = minimize_scalar(lambda t: float(np.linalg.norm(c.derivatives([t])[1, 0])), bounds=(lo, hi),
                               method="bounded", options={"xatol": 1e-12})
        if best.fun < speed[i]:
            speed_min, t_min = float(best.fun), float(best.x)
        else:
            speed_min, t_min = float(speed[i]), float(probe[i])
    else:
        speed_min, t_min = float(speed[i]), float(probe[i])
    if speed_min < tol:
        raise DegenerateCurveError("curve speed falls below the tolerance", t_min)
    if c.arclength:
        if np.max(np.abs(speed - 1)) > tol:
            raise GeomError("curve flagged arclength does not have unit speed")
        return c
    if np.max(speed) - np.min(speed) <= tol * np.max(speed):
        g = float(np.mean(speed))
        knots = np.array([a, b])
        return ArclengthCurve(c, g * (b - a), knots, knots - a, constant_speed=g)
    pieces = _arc(c, grid[:-1], grid[1:])
    knots_s = np.concatenate([[0.0], np.cumsum(pieces)])
    return ArclengthCurve(c, float(knots_s[-1]), grid, knots_s)


@dataclass(frozen=True)
class FrenetData:
    t: np.ndarray
    n: np.ndarray | None
    b: np.ndarray | None
    k: float
    tau: float | None


def frenet(c: Curve, s: float, torsion: bool = True, k_floor: float = K_FLOOR) -> FrenetData:
    """Frenet frame, curvature and torsion; the formulas hold for any regular parametrization."""
    d = c.derivatives([s])[:, 0]
    c1, c2, c3 = d[1], d[2], d[3]
    speed = float(np.linalg.norm(c1))
    cross = np.cross(c1, c2)
    cross_norm = float(np.linalg.norm(cross))
    k = cross_norm / speed**3
    t = c1 / speed
    if k < k_floor:
        if torsion:
            raise ZeroCurvatureError(f"curvature {k!r} below {k_floor!r} at s = {s!r}; torsion undefined")
        return FrenetData(t, None, None, k, None)
    b = cross / cross_norm
    n = np.cross(b, t)
    tau = float(np.dot(cross, c3)) / cross_norm**2
    return FrenetData(t, n, b, k, tau)
