"""Fundamental forms and curvature of translation surfaces alpha(u) + beta(v).

All quantities are computed on whole grids at once: the jets carry numpy
arrays as coefficients, so the angle partials are exact up to round-off.
Single points are grids of size 1x1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exprlang import Jet
from .curves import Curve, GeomError, arclength_reparam

SIN_FLOOR = 1e-6
VARS = ("u", "v")


class RegularityError(GeomError):
    """Tangents of the generating curves (nearly) parallel."""

    def __init__(self, u: float, v: float, sin_phi: float):
        super().__init__(f"regularity violated at (u, v) = ({u!r}, {v!r}): sin(phi) = {sin_phi!r}")
        self.u, self.v, self.sin_phi = u, v, sin_phi


class ZeroDenominatorError(GeomError):
    pass


@dataclass(frozen=True)
class SurfacePatch:
    """Psi(u, v) = alpha(u) + beta(v) with unit-speed generating curves."""

    alpha: Curve
    beta: Curve

    def __post_init__(self):
        if not (self.alpha.arclength and self.beta.arclength):
            raise ValueError("generating curves must be unit speed; use SurfacePatch.from_curves")

    @classmethod
    def from_curves(cls, alpha: Curve, beta: Curve, tol: float = 1e-6) -> "SurfacePatch":
        return cls(arclength_reparam(alpha, tol), arclength_reparam(beta, tol))

    @property
    def domain(self):
        return self.alpha.domain, self.beta.domain

    def point(self, u, v) -> np.ndarray:
        return self.alpha(u) + self.beta(v)

    def grid(self, nu: int, nv: int):
        """Cell-centred sample parameters, away from the domain ends."""
        return _centres(self.alpha.domain, nu), _centres(self.beta.domain, nv)


def _centres(domain, n: int) -> np.ndarray:
    a, b = domain
    return a + (b - a) * (np.arange(n) + 0.5) / n


@dataclass(frozen=True)
class FormCoefficients:
    """First and second form data; fields are floats or arrays of shape (len(u), len(v))."""

    u: object
    v: object
    E: object
    F: object
    G: object
    L: object
    M: object
    N: object
    phi: object
    phi_u: object
    phi_v: object
    phi_uu: object
    phi_uv: object
    phi_vv: object
    L_u: object
    N_v: object
    regular: object

    def at(self, i: int, j: int) -> "FormCoefficients":
        """The scalar record at grid index (i, j)."""
        vals = {}
        for name in self.__dataclass_fields__:
            x = getattr(self, name)
            if name == "u":
                vals[name] = float(x[i])
            elif name == "v":
                vals[name] = float(x[j])
            elif name == "regular":
                vals[name] = bool(np.broadcast_to(x, self.phi.shape)[i, j])
            else:
                vals[name] = float(np.broadcast_to(x, self.phi.shape)[i, j])
        return FormCoefficients(**vals)


def _u_jet(c0, c1, c2, order):
    return Jet(VARS, order, {(0, 0): c0[:, None], (1, 0): c1[:, None], (2, 0): c2[:, None] / 2})


def _v_jet(c0, c1, c2, order):
    return Jet(VARS, order, {(0, 0): c0[None, :], (0, 1): c1[None, :], (0, 2): c2[None, :] / 2})


def _dot(xs, ys):
    return sum((x * y for x, y in zip(xs[1:], ys[1:])), xs[0] * ys[0])


def _acos_series(c):
    w = 1 - c * c
    return [np.arccos(c), -1 / np.sqrt(w), -c / w**1.5 / 2]


def forms_from_derivatives(u, v, alpha_d: np.ndarray, beta_d: np.ndarray, floor: float = SIN_FLOOR):
    """Form coefficients from derivative stacks of shape (4, n, 3).

    Points with sin(phi) below ``floor`` are marked irregular and hold NaN.
    """
    a1, a2, a3 = alpha_d[1], alpha_d[2], alpha_d[3]
    b1, b2, b3 = beta_d[1], beta_d[2], beta_d[3]
    t_alpha = [_u_jet(a1[:, i], a2[:, i], a3[:, i], 2) for i in range(3)]
    t_beta = [_v_jet(b1[:, i], b2[:, i], b3[:, i], 2) for i in range(3)]
    cos_jet = _dot(t_alpha, t_beta)
    cos_val = np.asarray(cos_jet.value, dtype=float)
    regular = np.sqrt(np.clip(1 - cos_val * cos_val, 0, None)) >= floor
    safe = np.where(regular, cos_val, 0.0)
    phi_jet = Jet(VARS, 2, {**cos_jet.coeffs, (0, 0): safe}).compose(_acos_series(safe))
    part = phi_jet.partials()

    phi1 = Jet(VARS, 1, phi_jet.coeffs)
    sin_val = np.sin(part[(0, 0)])
    inv_sin = phi1.compose([np.sin(part[(0, 0)]), np.cos(part[(0, 0)])]).compose([1 / sin_val, -1 / sin_val**2])

    # alpha' x alpha'' and its u-derivative alpha' x alpha'''; likewise for beta in v
    acc = np.cross(a1, a2), np.cross(a1, a3)
    bcc = np.cross(b1, b2), np.cross(b1, b3)
    acc_jet = [Jet(VARS, 1, {(0, 0): acc[0][:, None, i], (1, 0): acc[1][:, None, i]}) for i in range(3)]
    bcc_jet = [Jet(VARS, 1, {(0, 0): bcc[0][None, :, i], (0, 1): bcc[1][None, :, i]}) for i in range(3)]
    tb1 = [Jet(VARS, 1, j.coeffs) for j in t_beta]
    ta1 = [Jet(VARS, 1, j.coeffs) for j in t_alpha]
    L_jet = -_dot(acc_jet, tb1) * inv_sin
    N_jet = _dot(ta1, bcc_jet) * inv_sin

    nan = lambda x: np.where(regular, np.broadcast_to(x, regular.shape), np.nan)
    return FormCoefficients(
        u=np.asarray(u, dtype=float), v=np.asarray(v, dtype=float),
        E=1.0, F=nan(cos_val), G=1.0,
        L=nan(L_jet.value), M=0.0, N=nan(N_jet.value),
        phi=nan(part[(0, 0)]),
        phi_u=nan(part[(1, 0)]), phi_v=nan(part[(0, 1)]),
        phi_uu=nan(part[(2, 0)]), phi_uv=nan(part[(1, 1)]), phi_vv=nan(part[(0, 2)]),
        L_u=nan(L_jet.partial("u")), N_v=nan(N_jet.partial("v")),
        regular=regular,
    )


def form_grid(S: SurfacePatch, us, vs, floor: float = SIN_FLOOR) -> FormCoefficients:
    us = np.atleast_1d(np.asarray(us, dtype=float))
    vs = np.atleast_1d(np.asarray(vs, dtype=float))
    return forms_from_derivatives(us, vs, S.alpha.derivatives(us), S.beta.derivatives(vs), floor)


def form_coefficients(S: SurfacePatch, u: float, v: float, floor: float = SIN_FLOOR) -> FormCoefficients:
    """Scalar form data at (u, v); raises RegularityError below the sin(phi) floor."""
    fc = form_grid(S, [u], [v], floor)
    if not fc.regular[0, 0]:
        a = S.alpha.derivatives([u])[1, 0]
        b = S.beta.derivatives([v])[1, 0]
        raise RegularityError(u, v, float(np.linalg.norm(np.cross(a, b))))
    return fc.at(0, 0)


def gauss_curvature_forms(fc: FormCoefficients):
    """K = L N / sin^2(phi)."""
    return fc.L * fc.N / np.sin(fc.phi) ** 2


def gauss_curvature_angle(fc: FormCoefficients):
    """K = -phi_uv / sin(phi)."""
    return -fc.phi_uv / np.sin(fc.phi)


def egregium_residual(fc: FormCoefficients):
    """|phi_uv + K sin(phi)| with K from the second form."""
    return np.abs(fc.phi_uv + gauss_curvature_forms(fc) * np.sin(fc.phi))


@dataclass(frozen=True)
class Christoffel:
    """Symbols Gamma^k_ij for the coordinates (u, v) = (1, 2)."""

    g1_11: object
    g2_11: object
    g1_12: object
    g2_12: object
    g1_22: object
    g2_22: object

    def as_tuple(self):
        return (self.g1_11, self.g2_11, self.g1_12, self.g2_12, self.g1_22, self.g2_22)


def christoffel(fc: FormCoefficients) -> Christoffel:
    sin, cot = np.sin(fc.phi), np.cos(fc.phi) / np.sin(fc.phi)
    zero = 0.0 * fc.phi
    return Christoffel(
        g1_11=cot * fc.phi_u,
        g2_11=-fc.phi_u / sin,
        g1_12=zero,
        g2_12=zero,
        g1_22=-fc.phi_v / sin,
        g2_22=cot * fc.phi_v,
    )


def unit_normal(S: SurfacePatch, u: float, v: float) -> np.ndarray:
    ta = S.alpha.derivatives([u])[1, 0]
    tb = S.beta.derivatives([v])[1, 0]
    n = np.cross(ta, tb)
    return n / np.linalg.norm(n)


def gauss_formula_residual(S: SurfacePatch, u: float, v: float) -> float:
    """|Psi_uu - G1_11 Psi_u - G2_11 Psi_v - L n|."""
    fc = form_coefficients(S, u, v)
    g = christoffel(fc)
    da, db = S.alpha.derivatives([u])[:, 0], S.beta.derivatives([v])[:, 0]
    r = da[2] - g.g1_11 * da[1] - g.g2_11 * db[1] - fc.L * unit_normal(S, u, v)
    return float(np.linalg.norm(r))


def codazzi_residual_grid(S: SurfacePatch, us, vs, h: float = 1e-4, L_perturbation=None, floor: float = SIN_FLOOR):
    """(|L_v - N phi_u / sin|, |N_u - L phi_v / sin|) on the grid, L_v and N_u by central differences.

    ``L_perturbation(u, v)`` is added to L everywhere (a negative control).
    """
    us = np.atleast_1d(np.asarray(us, dtype=float))
    vs = np.atleast_1d(np.asarray(vs, dtype=float))
    bump = (lambda uu, vv: 0.0) if L_perturbation is None else L_perturbation
    U, V = np.meshgrid(us, vs, indexing="ij")
    centre = form_grid(S, us, vs, floor)
    L = centre.L + bump(U, V)
    L_v = ((form_grid(S, us, vs + h, floor).L + bump(U, V + h)) - (form_grid(S, us, vs - h, floor).L + bump(U, V - h))) / (2 * h)
    N_u = (form_grid(S, us + h, vs, floor).N - form_grid(S, us - h, vs, floor).N) / (2 * h)
    sin = np.sin(centre.phi)
    return np.abs(L_v - centre.N * centre.phi_u / sin), np.abs(N_u - L * centre.phi_v / sin)


def codazzi_residual(S: SurfacePatch, u: float, v: float, h: float = 1e-4, L_perturbation=None) -> tuple[float, float]:
    first, second = codazzi_residual_grid(S, [u], [v], h, L_perturbation)
    return float(first[0, 0]), float(second[0, 0])


def parametric_torsion_surface(fc: FormCoefficients, tol: float = 1e-12):
    """Torsion of the u-parametric curve from surface data alone:

    (L phi_uu - L cot(phi) (L^2 + phi_u^2) - L_u phi_u) / (L^2 + phi_u^2).
    """
    denom = fc.L**2 + fc.phi_u**2
    if np.any(np.asarray(denom) < tol):
        raise ZeroDenominatorError(f"L^2 + phi_u^2 below {tol!r}")
    cot = np.cos(fc.phi) / np.sin(fc.phi)
    return (fc.L * fc.phi_uu - fc.L * cot * denom - fc.L_u * fc.phi_u) / denom


def torsion_identity_residual(fc: FormCoefficients, tau, A, A_prime):
    """|phi_uu - tau L - cot(phi) L^2 - (A'/A) phi_u|, the torsion formula solved for phi_uu."""
    cot = np.cos(fc.phi) / np.sin(fc.phi)
    return np.abs(fc.phi_uu - tau * fc.L - cot * fc.L**2 - A_prime / A * fc.phi_u)


def conserved_A(fc: FormCoefficients):
    """sqrt(L^2 + phi_u^2), a function of u alone on a translation surface."""
    return np.sqrt(fc.L**2 + fc.phi_u**2)


def conserved_B(fc: FormCoefficients):
    return np.sqrt(fc.N**2 + fc.phi_v**2)
