"""Floating-point cross-checks of the symbolic stages, independent of symring's derivation.

The angle identity is differentiated here with forward-mode jets (exprlang)
rather than with d_u, so agreement is evidence that the trig relation and
(P, Q, R) are right.
"""
from __future__ import annotations

import math

from ..exprlang import Jet, jet_cos, jet_sin, jet_sqrt
from .stages import PQRTriple


def _line(value, slope):
    return Jet.variable("u", 0.0, ("u",), 1) * slope + value


def curvature_identity_defect(values: dict, z: float, phi: float) -> float:
    """u-derivative of K phi_v plus sin(phi), with K^2 = 1.

    K phi_v = (3 z cos sin^2 - (A'/A) sin^3) / X + tau z sin^3 / X^(3/2) and
    d/du (K phi_v) = K phi_uv = -K^2 sin(phi), so this vanishes on an actual
    surface.  The u-derivatives use phi_u = z, z_u = tau sqrt(X) + cot X + (A'/A) z.
    """
    A, A1, A2, T, T1 = (values[k] for k in ("A", "A1", "A2", "T", "T1"))
    X = A * A - z * z
    s = math.sqrt(X)
    z_u = T * s + math.cos(phi) / math.sin(phi) * X + A1 / A * z
    phi_j = _line(phi, z)
    z_j = _line(z, z_u)
    A_j = _line(A, A1)
    A1_j = _line(A1, A2)
    T_j = _line(T, T1)
    X_j = A_j * A_j - z_j * z_j
    sn, cs = jet_sin(phi_j), jet_cos(phi_j)
    F = (3 * z_j * cs * sn * sn - A1_j / A_j * sn**3) / X_j + T_j * z_j * sn**3 / (X_j * jet_sqrt(X_j))
    return F.partial("u") + math.sin(phi)


def pqr_residual(t: PQRTriple, values: dict, z: float, phi: float) -> float:
    """P sin 2phi + Q cos 2phi + R at a numeric point (s = +sqrt(X))."""
    s = math.sqrt(values["A"] ** 2 - z * z)
    fv = {k: float(v) for k, v in values.items()}
    P, Q, R = (float(x.evaluate(fv, z, s)) for x in (t.P, t.Q, t.R))
    return P * math.sin(2 * phi) + Q * math.cos(2 * phi) + R


def first_principles_ratios(t: PQRTriple, values: dict, z: float, phis) -> list[float]:
    """defect * X^2 / (sin(phi) * relation) at several angles.

    For a correct triple this is the same constant for every angle.
    """
    X = values["A"] ** 2 - z * z
    out = []
    for phi in phis:
        out.append(curvature_identity_defect(values, z, phi) * X * X / (math.sin(phi) * pqr_residual(t, values, z, phi)))
    return out
