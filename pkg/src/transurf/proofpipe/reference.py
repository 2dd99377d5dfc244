"""Reference values the ledger is checked against, keyed by ledger entry name.

Written with the shorthands AA = A'/A, AAp = (A'/A)', SIG = 2 AA^2 - AAp and
SIGp = SIG'.  Polynomials in z are given as dicts degree -> coefficient.
"""
from __future__ import annotations

from fractions import Fraction as F

from ..symring import A, A1, LOG_DERIV, SIGMA, T, T1, T2, RatExpr, ZPoly

AA = LOG_DERIV
AAp = LOG_DERIV.derivative()
SIG = SIGMA
SIGp = SIGMA.derivative()
A2_ = A * A
X = {0: A2_, 2: RatExpr.const(-1)}


def poly(d) -> ZPoly:
    return ZPoly(d)


def _add(*ds):
    out: dict = {}
    for d in ds:
        for k, v in d.items():
            out[k] = out.get(k, 0) + v
    return out


def _scale(d, c):
    return {k: v * c for k, v in d.items()}


# -- general case ----------------------------------------------------------------

_g = 2 * T * AA - T1 / 2

GENERAL_PQR = {
    "P1": poly({0: 2 * T * A2_, 2: 4 * T}),
    "P2": poly({1: -4 * A * A1, 3: 4 * AA}),
    "Q1": poly({1: _g}),
    "Q2": poly({0: F(3, 2) * A**4 - SIG * A2_ / 2, 2: F(9, 2) * A2_ - F(3, 2) * T * T + SIG / 2, 4: -6}),
    "R1": poly({1: -_g}),
    "R2": poly({0: F(5, 2) * A**4 + SIG * A2_ / 2, 2: -A2_ / 2 + F(3, 2) * T * T - SIG / 2, 4: -2}),
}

# closed forms of the cot / radical split of the derived relation
GENERAL_DERIVED = {
    "alpha1": poly({1: 6 * T * A2_, 3: -12 * T}),
    "alpha2": poly({0: -4 * A**3 * A1, 2: 16 * A * A1, 4: -12 * AA}),
    "alpha3": poly({0: 2 * T * A * A1 + 2 * A2_ * T1, 2: 20 * T * AA + 5 * T1}),
    "alpha4": poly({
        1: 6 * T * T * A2_ - 12 * A1 * A1 - 4 * A2_ * AAp - 3 * A**4 + SIG * A2_,
        3: 12 * AA**2 + 4 * AAp - 9 * A2_ - 9 * T * T - SIG,
        5: 12,
    }),
    "beta1": poly({0: 2 * T * A * A1 - T1 * A2_ / 2, 2: -(4 * T * AA - T1)}),
    "beta2": poly({1: 9 * A**4 - 3 * A2_ * T * T + SIG * A2_, 3: -(33 * A2_ - 3 * T * T + SIG), 5: 24}),
    "beta3": poly({
        1: A1 * T1 / A + 2 * T * AAp - T2 / 2 + 4 * T * AA**2 + 13 * A2_ * T - 3 * T**3 + SIG * T,
        3: -16 * T,
    }),
    "beta4": poly({
        0: 6 * A**3 * A1 - SIGp * A2_ / 2 - SIG * A * A1 + 2 * A * A1 * T * T - A2_ * T * T1 / 2,
        2: 10 * A * A1 - 2 * T * T1 - 7 * AA * T * T + AA * SIG + SIGp / 2,
        4: -16 * AA,
    }),
    "gamma1": poly({0: -2 * T * A * A1 + T1 * A2_ / 2, 2: 4 * T * AA - T1}),
    "gamma2": poly({1: 3 * A2_ * T * T - A**4 - SIG * A2_, 3: -(7 * A2_ + 3 * T * T - SIG), 5: 8}),
    "gamma3": poly({
        1: 2 * T**3 - 6 * T * AA**2 - T * AAp - T1 * AA - A2_ * T + T2 / 2,
        3: -8 * T,
    }),
    "gamma4": poly({
        0: 10 * A**3 * A1 + A2_ / 2 * (T * T1 + SIGp) + (SIG - 2 * T * T) * A * A1,
        2: 2 * T * T1 - 2 * A * A1 - SIGp / 2 + 7 * AA * T * T - AA * SIG,
        4: -8 * AA,
    }),
}

# coefficient-by-coefficient listing; three entries differ from the closed forms above
GENERAL_DERIVED_COMPONENTS = {
    f"{name}[z^{k}]": v for name, p in GENERAL_DERIVED.items() for k, v in p.items()
}
GENERAL_DERIVED_COMPONENTS.update({
    "alpha3[z^0]": 2 * T * A * A1 + 2 * A2_ * T,
    "beta3[z^3]": 16 * T,
    "gamma2[z^3]": 7 * A2_ + 3 * T * T - SIG,
})

GENERAL_BC = {
    "b21[z^6]": 56 * T * AA - 18 * T1,
    "b22[z^9]": RatExpr.const(72),
    "b22[z^7]": -198 * A2_ - 28 * T * T - 18 * AAp + 28 * AA**2,
    "b11[z^6]": 16 * T * AA + 20 * T1,
    "b12[z^9]": RatExpr.const(144),
    "b12[z^7]": -228 * A2_ - 10 * T * T + 20 * AAp + 8 * AA**2,
    "b01[z^6]": -72 * T * AA - 2 * T1,
    "b02[z^9]": RatExpr.const(40),
    "b02[z^7]": -2 * AAp - 36 * AA**2 + 36 * T * T - 22 * A2_,
    "c21[z^5]": 8 * T * AA + 6 * T1,
    "c22[z^8]": RatExpr.const(36),
    "c22[z^6]": 6 * AAp + 4 * AA**2 - 4 * T * T - 54 * A2_,
    "c11[z^5]": 16 * T * AA - 4 * T1,
    "c12[z^8]": RatExpr.const(24),
    "c12[z^6]": -4 * AAp + 8 * AA**2 - 8 * T * T - 12 * A2_,
    "c01[z^5]": -24 * T * AA - 2 * T1,
    "c02[z^8]": RatExpr.const(4),
    "c02[z^6]": -2 * AAp - 12 * AA**2 + 12 * T * T + 2 * A2_,
}

GENERAL_KLM = {
    "kappa1[z^14]": 768 * T * AA - 384 * T1,
    "kappa2[z^15]": -384 * AAp + 384 * AA**2 + 2304 * A2_ - 384 * T * T,
    "kappa2[z^17]": RatExpr.const(-1152),
    "lambda1[z^14]": 2304 * T * AA,
    "lambda2[z^15]": 1152 * AA**2 - 1144 * T * T - 384 * A2_,
    "lambda2[z^17]": RatExpr.const(384),
    "mu1[z^14]": -768 * T * AA + 2304 * T1,
    "mu2[z^15]": 2304 * AAp - 384 * AA**2 + 312 * T * T - 10368 * A2_,
    "mu2[z^17]": RatExpr.const(3456),
}

# the first square in the z^64 coefficient, expanded to integers
GENERAL_U32_EXPANDED = -384 * 2**7 * 3 * 32 * AA**2 + 3**2 * 2**7 * 4096 * T * T
GENERAL_U32_REDUCED = T * T - AA**2
GENERAL_V31_REDUCED = T * AA


# -- planar case -----------------------------------------------------------------

PLANAR_PQR = {
    "P": poly({1: -4 * AA}),
    "Q": poly(_add(_scale(X, F(3, 2)), {2: F(15, 2), 0: -SIG / 2})),
    "R": poly(_add(_scale(X, F(5, 2)), {2: F(9, 2), 0: SIG / 2})),
}

PLANAR_DERIVED = {
    "dsin.cot": poly(_scale(X, -4 * AA)),
    "dsin.reg": poly(_add({1: -4 * AAp - 4 * AA**2 + SIG, 3: -15}, {1: -3 * A2_, 3: 3})),
    "dcos.cot": poly({1: 12 * A2_, 3: -12}),
    "dcos.reg": poly({0: 3 * A * A1 - SIGp / 2, 2: 12 * AA - 8 * AA}),
    "done.cot": poly({1: 4 * A2_, 3: -4}),
    "done.reg": poly({0: 5 * A * A1 + SIGp / 2, 2: 4 * AA}),
}

PLANAR_TRIG_FORM = {
    "trig.sin": poly({3: -16, 1: A2_ - 5 * AAp - 2 * AA**2}),
    "trig.sin_cos": poly({1: 15 * A2_ + 5 * AAp + 2 * AA**2}),
    "trig.cos2": poly({2: -8 * AA, 0: A * A1 + SIGp / 2}),
    "trig.cos": poly({0: -(2 * A * A1 + SIGp)}),
    "trig.one": poly({2: -8 * AA, 0: A * A1 + SIGp / 2}),
}

_Q0 = F(3, 2) * A2_ - SIG / 2
_R0 = F(5, 2) * A2_ + SIG / 2
_m1 = 15 * A2_ + 5 * AAp + 2 * AA**2

PLANAR_BC = {
    "b2": poly({2: 90 * A2_ + 30 * AAp - 20 * AA**2, 0: _m1 * _Q0 + 4 * A1 * A1 + 2 * A1 * SIGp / A}),
    "b1": poly({
        4: -96,
        2: 12 * A2_ - 20 * AAp - 8 * AA**2 + 8 * SIG,
        0: (A2_ - 5 * AAp - 2 * AA**2) * _Q0 + _m1 * _R0 - 8 * A1 * A1 - 4 * A1 * SIGp / A,
    }),
    "b0": poly({
        4: -32,
        2: -38 * A2_ - 10 * AAp + 28 * AA**2 - 8 * SIG,
        0: (A2_ - 5 * AAp - 8 * AA**2) * _R0 + 4 * A1 * A1 + 2 * A1 * SIGp / A,
    }),
    "c2": poly({4: 36, 2: 18 * A2_ - 6 * SIG + 16 * AA**2, 0: _Q0 * _Q0}),
    "c1": poly({4: 24, 2: 36 * A2_ + 4 * SIG, 0: (3 * A2_ - SIG) * _R0}),
    "c0": poly({4: 4, 2: 10 * A2_ + 2 * SIG - 16 * AA**2, 0: _R0 * _R0}),
}

PLANAR_KLM = {
    "kappa[z^8]": RatExpr.const(1152),
    "kappa[z^6]": 384 * (6 * A2_ + AAp - AA**2),
    "lambda[z^8]": RatExpr.const(-384),
    "lambda[z^6]": -384 * 3 * (A2_ + AA**2),
    "mu[z^8]": RatExpr.const(-384 * 9),
    "mu[z^6]": -384 * (9 * A2_ - AA**2 + 6 * AAp),
}

PLANAR_E14 = -14 * AA**2
