import math
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from transurf.exprlang import Jet, jet_sqrt
from transurf.symring import (
    LOG_DERIV,
    SIGMA,
    X_POLY,
    A,
    A1,
    A2,
    A3,
    CotPair,
    GeneratorOverflowError,
    LocalizationError,
    RadFrac,
    RatExpr,
    T,
    T1,
    T2,
    ZPoly,
    coeff,
    d_u,
    ratexpr,
)

GENS = {"A": A, "A1": A1, "A2": A2, "T": T, "T1": T1}
PROPS = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def ratexprs(draw, max_terms=3):
    out = RatExpr.const(0)
    for _ in range(draw(st.integers(1, max_terms))):
        c = Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
        term = RatExpr.const(c) * A ** draw(st.integers(-2, 2))
        for name in ("A1", "A2", "T", "T1"):
            term = term * GENS[name] ** draw(st.integers(0, 1))
        out = out + term
    return out


@st.composite
def zpolys(draw, max_degree=3):
    return ZPoly({k: draw(ratexprs(2)) for k in range(draw(st.integers(0, max_degree)) + 1)})


@st.composite
def radfracs(draw):
    return RadFrac(draw(zpolys()), draw(zpolys(2)), draw(st.integers(0, 1)))


# -- stated examples -------------------------------------------------------------

def test_log_derivative_difference_is_zero():
    assert (LOG_DERIV - ratexpr("A1/A")).is_zero()


def test_sigma_expansion():
    assert SIGMA == (3 * A1**2 - A2 * A) / A**2
    assert str(SIGMA) == "(-A*A2 + 3*A1^2)/A^2"


def test_cancellation():
    assert (A * A - A * A).is_zero()


def test_s_squared_is_X():
    s = RadFrac.s()
    prod = s * s
    assert prod.k == 0 and prod.q.is_zero() and prod.p == X_POLY


def test_localization_reduces_k():
    s = RadFrac.s()
    assert (s.over_X() * s) == RadFrac(ZPoly.const(1))


def test_sum_of_radical_free_parts():
    z2 = ZPoly.z(2)
    assert ZPoly.const(A * A) + z2 + (ZPoly.const(A * A) - z2) == ZPoly.const(2 * A * A)


def test_d_u_of_generator():
    d = d_u(RadFrac(ZPoly.const(A)))
    assert d == CotPair(RadFrac(ZPoly.const(A1)))


def test_d_u_of_z():
    d = d_u(RadFrac(ZPoly.z()))
    assert d.reg == RadFrac(ZPoly.z().scale(A1 / A), ZPoly.const(T))
    assert d.cot == RadFrac(X_POLY)


def test_d_u_s_squared_matches_d_u_X():
    s = RadFrac.s()
    assert d_u(s * s) == d_u(RadFrac(X_POLY))


def test_coeff_contract():
    p = ZPoly({3: 2 * A * A, 1: 1})
    assert coeff(p, 3) == 2 * A * A
    assert coeff(p, 7).is_zero()
    with pytest.raises(ValueError):
        coeff(p, -1)


def test_generator_overflow():
    with pytest.raises(GeneratorOverflowError):
        A3.derivative()
    with pytest.raises(GeneratorOverflowError):
        T2.derivative()


def test_only_A_is_invertible():
    with pytest.raises(LocalizationError):
        (A + T).inverse()
    assert (3 * A**2).inverse() == RatExpr.const(Fraction(1, 3)) / A**2


def test_canonical_text_is_deterministic():
    x = (T1 * A - 2 * A1**2 + T2) / A**3
    assert str(x) == str(ratexpr(str(x)))
    assert ratexpr(str(x)) == x


# -- properties --------------------------------------------------------------------

@PROPS
@given(radfracs(), radfracs(), radfracs())
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == RadFrac()


@PROPS
@given(radfracs(), radfracs())
def test_leibniz_rule(x, y):
    lhs = d_u(x * y)
    rhs = d_u(x) * y + d_u(y) * x
    assert lhs == rhs


@PROPS
@given(radfracs())
def test_normal_form_idempotent(x):
    again = RadFrac(x.p, x.q, x.k)
    assert again == x and str(again) == str(x)
    assert x.k == 0 or x.p.divide_by_X() is None or x.q.divide_by_X() is None


points = st.fixed_dictionaries({
    n: st.fractions(min_value=Fraction(1, 5), max_value=9, max_denominator=5)
    for n in ("A", "A1", "A2", "A3", "T", "T1", "T2")
})
SHADOW = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SHADOW
@given(radfracs(), radfracs(), points, st.floats(-0.95, 0.95), st.sampled_from((-1, 1)))
def test_numeric_shadow_of_ring_operations(x, y, vals, ratio, sign):
    fv = {k: float(v) for k, v in vals.items()}
    z = ratio * fv["A"]
    s = sign * math.sqrt(fv["A"] ** 2 - z * z)
    ex, ey = x.evaluate(fv, z, s), y.evaluate(fv, z, s)
    assert (x * y).evaluate(fv, z, s) == pytest.approx(ex * ey, rel=1e-10, abs=1e-10)
    assert (x + y).evaluate(fv, z, s) == pytest.approx(ex + ey, rel=1e-10, abs=1e-10)


def _jet(value, slope):
    return Jet(("u",), 1, {(0,): value, (1,): slope})


@SHADOW
@given(radfracs(), points, st.floats(-0.9, 0.9), st.floats(-2, 2))
def test_d_u_matches_chain_rule_numerically(x, vals, ratio, cot):
    """d_u against a first-order jet along the flow z' = T s + cot X + (A1/A) z."""
    fv = {k: float(v) for k, v in vals.items()}
    z = ratio * fv["A"]
    X = fv["A"] ** 2 - z * z
    s = math.sqrt(X)
    dz = fv["T"] * s + cot * X + fv["A1"] / fv["A"] * z
    jets = {"A": _jet(fv["A"], fv["A1"]), "A1": _jet(fv["A1"], fv["A2"]), "A2": _jet(fv["A2"], fv["A3"]),
            "T": _jet(fv["T"], fv["T1"]), "T1": _jet(fv["T1"], fv["T2"])}
    z_jet = _jet(z, dz)
    s_jet = jet_sqrt(jets["A"] * jets["A"] - z_jet * z_jet)
    expected = x.evaluate(jets, z_jet, s_jet).partial("u")
    got = d_u(x).evaluate(fv, z, s, cot)
    assert got == pytest.approx(expected, rel=1e-8, abs=1e-8)
