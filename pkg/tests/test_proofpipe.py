import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transurf.proofpipe import (
    CSV_COLUMNS,
    LedgerMismatchError,
    build_pqr_general,
    build_pqr_planar,
    derive_relation,
    eliminate_trig,
    quadratic_eliminant,
    run_general_case,
    run_planar_case,
    specialization_check,
    square_relation,
    trig_form,
)
from transurf.proofpipe.numeric import first_principles_ratios, pqr_residual
from transurf.proofpipe.stages import printed_pqr_general, split_radical
from transurf.symring import LOG_DERIV, SIGMA, X_POLY, A, A1, RadFrac, RatExpr, T, T1

AA = LOG_DERIV


@pytest.fixture(scope="module")
def general():
    return run_general_case()


@pytest.fixture(scope="module")
def planar():
    return run_planar_case()


def _value(ledger, name):
    return ledger[name].value


# -- (P, Q, R) ---------------------------------------------------------------------

def test_pqr_general_stated_parts():
    t = build_pqr_general()
    P1, P2 = split_radical(t.P)
    Q1, Q2 = split_radical(t.Q)
    R1, _ = split_radical(t.R)
    assert P1.coeff(0) == 2 * T * A * A and P1.coeff(2) == 4 * T
    assert R1 == -Q1
    # the constant term of Q2 picks up -tau^2 A^2 / 2 from a -tau^2 X / 2 term
    assert Q2.coeff(0) + T * T * A * A / 2 == RatExpr.const(3) / 2 * A**4 - SIGMA * A * A / 2


def test_printed_pqr_is_not_a_consequence_of_the_relation():
    values = {"A": 1.3, "A1": 0.4, "A2": -0.7, "A3": 0.2, "T": 0.9, "T1": 0.3, "T2": -0.5}
    ratios = first_principles_ratios(build_pqr_general(), values, 0.6, [0.4, 1.1, 2.0])
    assert max(ratios) - min(ratios) < 1e-9
    printed = first_principles_ratios(printed_pqr_general(), values, 0.6, [0.4, 1.1, 2.0])
    assert max(printed) - min(printed) > 1e-3


# -- stated coefficients ------------------------------------------------------------

@pytest.mark.parametrize("name, expected", [
    ("b21[z^6]", 56 * T * AA - 18 * T1),
    ("b22[z^9]", RatExpr.const(72)),
    ("b02[z^9]", RatExpr.const(40)),
    ("c21[z^5]", 8 * T * AA + 6 * T1),
    ("c22[z^8]", RatExpr.const(36)),
    ("c02[z^8]", RatExpr.const(4)),
    ("kappa1[z^14]", 768 * T * AA - 384 * T1),
    ("kappa2[z^17]", RatExpr.const(-1152)),
    ("lambda2[z^17]", RatExpr.const(384)),
    ("mu2[z^17]", RatExpr.const(3456)),
])
def test_general_stated_values(general, name, expected):
    assert general[name].status == "match"
    assert _value(general, name) == expected


def test_alpha2_and_gamma25(general):
    assert general["alpha2[z^4]"].value == -12 * AA
    assert general["alpha2[z^0]"].value == -4 * A**3 * A1
    assert general["gamma2[z^5]"].value == RatExpr.const(8)


def test_b22_z7(general):
    assert general["b22[z^7]"].status == "match"


def test_kappa_leading_coefficients_cancel(general):
    assert general["kappa2[z^17]^2 - lambda2[z^17]*mu2[z^17] = 0"].status == "derived"
    assert 1152**2 == 384 * 3456


def test_general_final_contradiction(general):
    assert general["E[z^68]"].status == "match"
    assert general["E[z^66]"].status == "match"
    assert general["E[z^64] = U[z^32]^2 + V[z^31]^2"].status == "derived"
    u = general["U[z^32] ~ tau^2 - (A'/A)^2"]
    v = general["V[z^31] ~ tau*A'/A"]
    assert u.status == v.status == "match-scaled"
    assert u.scale == "4718592" and v.scale == "-9437184"
    assert general.proven
    assert "tau^2 = (A'/A)^2" in general.conclusion and "tau*A'/A = 0" in general.conclusion


def test_general_mismatches_are_reported_not_hidden(general):
    bad = {e.name for e in general.mismatches()}
    assert "Q2[z^2]" in bad and "b12[z^7]" in bad
    assert general.first_mismatch().name == "Q2[z^2]"
    with pytest.raises(LedgerMismatchError):
        general.raise_on_mismatch()


def test_planar_leading_expansion(planar):
    assert planar["kappa[z^8]"].value == RatExpr.const(1152)
    assert planar["kappa[z^6]"].value == 384 * (6 * A * A + AA.derivative() - AA**2)


def test_planar_eliminant_coefficients(planar):
    assert planar["E[z^16]"].status == "match"
    z14 = planar["E[z^14]"]
    assert z14.status == "match-scaled"
    assert z14.value.ratio_to(AA**2) == -4718592
    assert planar.proven


def test_planar_discrepancies_listed(planar):
    assert [e.name for e in planar.mismatches()] == ["trig.one[z^2]", "b0[z^0]"]


def test_ledger_serialization(general):
    lines = general.to_csv().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == len(general.entries) + 1
    summary = general.summary()
    assert summary["case"] == "general" and summary["entries"] == len(general.entries)


def test_serialization_is_deterministic():
    a, b = run_planar_case(), run_planar_case()
    assert a.to_csv() == b.to_csv() and a.to_json() == b.to_json()


# -- specialization ------------------------------------------------------------------------

def test_tau_zero_specialization(general):
    check = specialization_check(general.artifacts["run"])
    assert check["c_scaled"] and check["b_shifted"]


def test_planar_relation_is_tau_free_limit():
    g = build_pqr_general().substitute_zero(["T", "T1", "T2"])
    p = build_pqr_planar()
    X = RadFrac(X_POLY)
    assert g.P == p.P * X and g.Q == p.Q * X and g.R == p.R * X


# -- numeric shadow of the stage identities ----------------------------------------------------

def _eval(x, vals, z, s, cot=None):
    return x.evaluate(vals, z, s) if cot is None else x.evaluate(vals, z, s, cot)


@pytest.mark.parametrize("case", ["general", "planar"])
def test_trig_elimination_identity(case):
    """b(C) = P (1 - C) D - (sin_cos C + sin) W, with D the derived relation and W = P S + Q C + R."""
    t = build_pqr_general() if case == "general" else build_pqr_planar()
    d = derive_relation(t, planar=case == "planar")
    f = trig_form(d)
    b = eliminate_trig(t, d)
    c = square_relation(t)
    rng = random.Random(1)
    for _ in range(20):
        vals = {n: rng.uniform(0.5, 2.0) for n in ("A", "A1", "A2", "A3", "T", "T1", "T2")}
        if case == "planar":
            vals.update(T=0.0, T1=0.0, T2=0.0)
        z = rng.uniform(-0.9, 0.9) * vals["A"]
        s = math.sqrt(vals["A"] ** 2 - z * z)
        phi = rng.uniform(0.2, 2.9)
        C, S, cot = math.cos(2 * phi), math.sin(2 * phi), 1 / math.tan(phi)
        P, Q, R = (_eval(x, vals, z, s) for x in (t.P, t.Q, t.R))
        W = P * S + Q * C + R
        D = sum(_eval(x, vals, z, s, cot) * w for x, w in ((d.d_sin, S), (d.d_cos, C), (d.d_one, 1)))
        sc, sn = _eval(f.sin_cos, vals, z, s), _eval(f.sin, vals, z, s)
        bC = sum(_eval(x, vals, z, s) * C**k for x, k in zip(b.parts(), (2, 1, 0)))
        expected = P * (1 - C) * D - (sc * C + sn) * W
        assert bC == pytest.approx(expected, rel=1e-9, abs=1e-9 * (1 + abs(expected)))
        cC = sum(_eval(x, vals, z, s) * C**k for x, k in zip(c.parts(), (2, 1, 0)))
        assert cC == pytest.approx(W * (Q * C + R - P * S), rel=1e-9, abs=1e-9 * (1 + abs(cC)))


def test_pqr_residual_vanishes_on_the_relation():
    # pick phi so that the double-angle relation holds, then the residual is zero
    t = build_pqr_planar()
    vals = {"A": 1.1, "A1": 0.3, "A2": 0.2, "A3": 0.1, "T": 0.0, "T1": 0.0, "T2": 0.0}
    z = 0.4
    P, Q, R = (float(x.evaluate(vals, z, 0.0)) for x in (t.P, t.Q, t.R))
    r = math.hypot(P, Q)
    if abs(R) <= r:
        phi = (math.asin(-R / r) - math.atan2(Q, P)) / 2
        assert abs(pqr_residual(t, vals, z, phi)) < 1e-9


# -- eliminant soundness ------------------------------------------------------------------------

finite = st.floats(-3, 3, allow_nan=False)
nonzero = st.floats(0.2, 3).flatmap(lambda x: st.sampled_from((x, -x)))


@settings(max_examples=1000, deadline=None)
@given(finite, finite, finite, nonzero, nonzero)
def test_eliminant_vanishes_on_shared_root(root, p, q, kb, kc):
    b = (kb, -kb * (root + p), kb * root * p)
    c = (kc, -kc * (root + q), kc * root * q)
    assert abs(quadratic_eliminant(b, c)) < 1e-9 * max(1.0, max(abs(x) for x in b + c) ** 4)


@settings(max_examples=300, deadline=None)
@given(finite, finite, finite, finite)
def test_eliminant_nonzero_without_shared_root(r1, r2, r3, r4):
    roots_b, roots_c = {r1, r2}, {r3, r4}
    gap = min(abs(x - y) for x in roots_b for y in roots_c)
    if gap < 0.1:
        return
    b = (1.0, -(r1 + r2), r1 * r2)
    c = (1.0, -(r3 + r4), r3 * r4)
    # for monic quadratics the eliminant is the resultant, the product of root differences
    expected = (r1 - r3) * (r1 - r4) * (r2 - r3) * (r2 - r4)
    assert quadratic_eliminant(b, c) == pytest.approx(expected, rel=1e-9, abs=1e-9)
    assert abs(quadratic_eliminant(b, c)) > 0
