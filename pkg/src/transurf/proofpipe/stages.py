"""Pipeline stages: trig relation -> (P,Q,R) -> derived relation -> two quadratics in cos 2phi -> eliminant."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..symring import (
    LOG_DERIV,
    ONE,
    SIGMA,
    X_POLY,
    A,
    CotPair,
    RadFrac,
    RatExpr,
    SymringError,
    T,
    T1,
    ZPoly,
    d_u,
)

Z = ZPoly.z()
S = RadFrac.s()
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class TrigRelation:
    """sum over (i, j) of coeffs[(i, j)] * cos^i * sin^j = 0, with i + j in {0, 2}."""

    coeffs: dict

    def to_double_angle(self) -> "PQRTriple":
        P = Q = R = RadFrac()
        for (i, j), c in self.coeffs.items():
            if (i, j) == (0, 0):
                R = R + c
            elif (i, j) == (2, 0):
                R, Q = R + c * HALF, Q + c * HALF
            elif (i, j) == (0, 2):
                R, Q = R + c * HALF, Q - c * HALF
            elif (i, j) == (1, 1):
                P = P + c * HALF
            else:
                raise ValueError(f"trig monomial cos^{i} sin^{j} is not of degree 0 or 2")
        return PQRTriple(P, Q, R)


@dataclass(frozen=True)
class PQRTriple:
    """P sin 2phi + Q cos 2phi + R = 0."""

    P: RadFrac
    Q: RadFrac
    R: RadFrac

    def substitute_zero(self, names) -> "PQRTriple":
        f = lambda r: r.map_coeffs(lambda c: c.substitute_zero(names))
        return PQRTriple(f(self.P), f(self.Q), f(self.R))


@dataclass(frozen=True)
class DerivedRelation:
    """d/du of the PQR relation: d_sin sin 2phi + d_cos cos 2phi + d_one = 0."""

    d_sin: CotPair
    d_cos: CotPair
    d_one: CotPair


@dataclass(frozen=True)
class TrigForm:
    """Relation after cot = sin2phi/(1 - cos2phi), cleared of the denominator.

    cos2 * C^2 + sin_cos * S*C + cos * C + sin * S + one = 0 with C = cos 2phi, S = sin 2phi.
    """

    cos2: RadFrac
    sin_cos: RadFrac
    cos: RadFrac
    sin: RadFrac
    one: RadFrac


@dataclass(frozen=True)
class TrigQuadratic:
    """b2 C^2 + b1 C + b0 = 0 with C = cos 2phi."""

    b2: RadFrac
    b1: RadFrac
    b0: RadFrac

    def parts(self):
        return (self.b2, self.b1, self.b0)


# relation obtained by differentiating the curvature identity in v, then in u,
# written in powers of cos phi, sin phi (general case, before the 2phi rewrite)
def general_trig_relation() -> TrigRelation:
    X = RadFrac(X_POLY)
    X2 = X * X
    z = RadFrac(Z)
    z2 = RadFrac(Z * Z)
    return TrigRelation({
        (0, 0): X2,
        (2, 0): X2 * 3 + z2 * X * 12,
        (1, 1): X * S * (4 * T) - z * X * (8 * LOG_DERIV) + z2 * S * (12 * T),
        (0, 2): (z2 * (-3) + RadFrac(ZPoly.const(SIGMA + T * T))) * X
        + z * S * (T1 - 4 * T * LOG_DERIV)
        + z2 * (3 * T * T),
    })


def planar_trig_relation() -> TrigRelation:
    X = RadFrac(X_POLY)
    z = RadFrac(Z)
    z2 = RadFrac(Z * Z)
    return TrigRelation({
        (0, 0): X,
        (2, 0): X * 3 + z2 * 12,
        (1, 1): z * (-8 * LOG_DERIV),
        (0, 2): z2 * (-3) + RadFrac(ZPoly.const(SIGMA)),
    })


def printed_pqr_general() -> PQRTriple:
    """The triple as it appears in the closed form written out term by term.

    Kept for comparison: it drops the tau^2 X / 2 contribution of the
    tau^2 sin^2 X term, so it is not a consequence of the trig relation.
    """
    g = 2 * T * LOG_DERIV - T1 * HALF
    P = RadFrac(ZPoly({1: -4 * A * LOG_DERIV * A, 3: 4 * LOG_DERIV}), ZPoly({0: 2 * T * A * A, 2: 4 * T}))
    Q = RadFrac(
        ZPoly({0: Fraction(3, 2) * A**4 - SIGMA * A * A * HALF,
               2: Fraction(9, 2) * A * A - Fraction(3, 2) * T * T + SIGMA * HALF, 4: -6}),
        ZPoly({1: g}),
    )
    R = RadFrac(
        ZPoly({0: Fraction(5, 2) * A**4 + SIGMA * A * A * HALF,
               2: Fraction(3, 2) * T * T - A * A * HALF - SIGMA * HALF, 4: -2}),
        ZPoly({1: -g}),
    )
    return PQRTriple(P, Q, R)


def build_pqr_general(variant: str = "derived") -> PQRTriple:
    """(P, Q, R) for the general case.

    ``variant="derived"`` rewrites the trig relation mechanically (the default,
    and the only one consistent with the relation); ``"printed"`` returns the
    closed form with the missing tau^2 X / 2 terms.
    """
    if variant == "derived":
        return general_trig_relation().to_double_angle()
    if variant == "printed":
        return printed_pqr_general()
    raise ValueError(f"unknown variant {variant!r}")


def build_pqr_planar() -> PQRTriple:
    return planar_trig_relation().to_double_angle()


def derive_relation(t: PQRTriple, planar: bool = False) -> DerivedRelation:
    """(P' - 2Qz, Q' + 2Pz, R') using d(sin 2phi) = 2z cos 2phi, d(cos 2phi) = -2z sin 2phi."""
    z2 = Z.scale(2)
    return DerivedRelation(
        d_u(t.P, planar) - CotPair(t.Q * z2),
        d_u(t.Q, planar) + CotPair(t.P * z2),
        d_u(t.R, planar),
    )


def trig_form(d: DerivedRelation) -> TrigForm:
    ac, ar = d.d_sin.cot, d.d_sin.reg
    bc, br = d.d_cos.cot, d.d_cos.reg
    gc, gr = d.d_one.cot, d.d_one.reg
    return TrigForm(
        cos2=-(ac + br),
        sin_cos=bc - ar,
        cos=br - gr,
        sin=ar + gc,
        one=ac + gr,
    )


def eliminate_trig(t: PQRTriple, d: DerivedRelation) -> TrigQuadratic:
    """Multiply the trig form by P and replace P sin 2phi by -Q cos 2phi - R."""
    f = trig_form(d)
    P, Q, R = t.P, t.Q, t.R
    return TrigQuadratic(
        b2=P * f.cos2 - Q * f.sin_cos,
        b1=P * f.cos - R * f.sin_cos - Q * f.sin,
        b0=P * f.one - R * f.sin,
    )


def square_relation(t: PQRTriple) -> TrigQuadratic:
    """(P^2 + Q^2) C^2 + 2QR C + R^2 - P^2 = 0, from (P S)^2 = (Q C + R)^2 and S^2 = 1 - C^2."""
    P, Q, R = t.P, t.Q, t.R
    return TrigQuadratic(P * P + Q * Q, Q * R * 2, R * R - P * P)


@dataclass(frozen=True)
class Eliminant:
    kappa: RadFrac
    lam: RadFrac
    mu: RadFrac
    value: RadFrac


def eliminant(b: TrigQuadratic, c: TrigQuadratic) -> Eliminant:
    """kappa^2 - lambda*mu with kappa = b2c0 - b0c2, lambda = b0c1 - b1c0, mu = b1c2 - b2c1."""
    kappa = b.b2 * c.b0 - b.b0 * c.b2
    lam = b.b0 * c.b1 - b.b1 * c.b0
    mu = b.b1 * c.b2 - b.b2 * c.b1
    return Eliminant(kappa, lam, mu, kappa * kappa - lam * mu)


def rationalize(x: RadFrac, min_degree: int | None = None) -> ZPoly:
    """Numerator of x times its conjugate: p^2 - q^2 X (the X^k denominator is dropped).

    With ``min_degree`` only coefficients of z^k, k >= min_degree, are formed.
    The conjugate of x vanishes with x, so this polynomial vanishes wherever x does.
    """
    p, q = x.p, x.q
    if min_degree is None:
        return p.mul(p) - q.mul(q).mul(X_POLY)
    qq = q.mul(q, min_degree=min_degree - 2)
    return p.mul(p, min_degree=min_degree) - qq.mul(X_POLY, min_degree=min_degree)


def split_radical(x: RadFrac) -> tuple[ZPoly, ZPoly]:
    """(radical part, even part) of a denominator-free RadFrac."""
    if x.k != 0:
        raise SymringError(f"expected no X denominator, got X^{x.k}")
    return x.q, x.p


def divide_by_monomial(x: RadFrac, coeff, power: int = 1) -> RadFrac:
    """Exact division of both parts by coeff * z^power."""
    inv = RatExpr.coerce(coeff).inverse()

    def div(p: ZPoly) -> ZPoly:
        if any(k < power for k in p.support()):
            raise SymringError(f"not divisible by z^{power}")
        return ZPoly({k - power: v * inv for k, v in p.items()})

    return RadFrac(div(x.p), div(x.q), x.k)


def quadratic_eliminant(b, c):
    """Numeric version of the eliminant for coefficient triples (b2, b1, b0), (c2, c1, c0)."""
    b2, b1, b0 = b
    c2, c1, c0 = c
    return (b2 * c0 - b0 * c2) ** 2 - (b0 * c1 - b1 * c0) * (b1 * c2 - b2 * c1)


__all__ = [
    "TrigRelation", "PQRTriple", "DerivedRelation", "TrigForm", "TrigQuadratic", "Eliminant",
    "general_trig_relation", "planar_trig_relation", "printed_pqr_general",
    "build_pqr_general", "build_pqr_planar", "derive_relation", "trig_form",
    "eliminate_trig", "square_relation", "eliminant", "rationalize", "split_radical",
    "divide_by_monomial", "quadratic_eliminant", "ONE",
]
