import math
import random
from fractions import Fraction

import numpy as np
import pytest

from transurf.exprlang import (
    BinOp,
    Call,
    ExprDomainError,
    ExprSyntaxError,
    Jet,
    UnknownIdentifierError,
    Var,
    eval_jet,
    parse,
)


def test_parse_variable():
    assert parse("u") == Var("u")


def test_parse_sum_of_two_terms():
    e = parse("sin(2*u)+v^2")
    assert isinstance(e, BinOp) and e.op == "+"
    assert isinstance(e.left, Call) and e.left.func == "sin"


def test_syntax_error_offset():
    with pytest.raises(ExprSyntaxError) as err:
        parse("3*)")
    assert err.value.offset == 2


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as err:
        parse("u + w")
    assert err.value.name == "w" and err.value.offset == 4


def test_non_integer_exponent_rejected():
    with pytest.raises(ExprSyntaxError):
        parse("u^(1/2)")


def test_sin_jet_at_zero():
    j = eval_jet(parse("sin(u)"), {"u": 0.0}, 1)
    assert j.value == 0 and j.partial("u") == 1


def test_mixed_partial_of_product():
    j = eval_jet(parse("u*v"), {"u": 2, "v": 3}, 2)
    assert j.partial("u", "v") == 1 and j.partial("v", "u") == 1


def test_third_derivative_of_cube():
    j = eval_jet(parse("u^3"), {"u": 2}, 3)
    assert j.partial("u", "u", "u") == 6


def test_domain_error_names_subtree():
    with pytest.raises(ExprDomainError) as err:
        eval_jet(parse("1 + log(u - 1)"), {"u": 0.5}, 1)
    assert err.value.subtree.to_text() == "log((u - 1))"
    with pytest.raises(ExprDomainError):
        parse("1/(u-u)").evaluate({"u": 1.0})


def test_array_jets_match_scalar_jets():
    e = parse("exp(u)*cos(v) + sqrt(1 + u^2)/v")
    us = np.array([0.1, 0.7])
    vs = np.array([1.3, 2.0])
    arr = eval_jet(e, {"u": us, "v": vs}, 3).partials()
    for i in range(2):
        one = eval_jet(e, {"u": float(us[i]), "v": float(vs[i])}, 3).partials()
        for k, val in one.items():
            assert arr[k][i] == pytest.approx(val, rel=1e-14, abs=1e-14)


def test_derivative_lowers_order():
    j = eval_jet(parse("u^2*v"), {"u": 3, "v": 5}, 3)
    d = j.derivative("u")
    assert d.order == 2 and d.value == 30 and d.partial("u") == 10 and d.partial("v") == 6


CORPUS = [
    "sin(u)*cos(v)",
    "exp(u*v)",
    "log(1 + u^2 + v^2)",
    "sqrt(2 + sin(u) + v^2)",
    "tan(u/3 + v/5)",
    "u^4 - 3*u^2*v + v^3",
    "1/(1 + u^2*v^2)",
    "exp(-u^2)*sin(3*v)",
    "cos(u + 2*v)^3",
    "sqrt(1 + exp(u - v))",
    "log(2 + cos(u*v))",
    "sin(exp(u/2)) + v",
    "u/sqrt(u^2 + v^2 + 1)",
    "(u - v)^2/(3 + sin(u))",
    "exp(sin(u)*cos(v))",
    "tan(u)*tan(v)/4",
    "log(3 + u)*log(3 + v)",
    "sin(u)^2 + cos(v)^2 - u*v",
    "sqrt(5 - cos(u)^2 - sin(v)^2)",
    "exp(u)/(1 + exp(v))",
]


@pytest.mark.parametrize("text", CORPUS)
def test_jets_match_central_differences(text):
    e = parse(text)
    rng = random.Random(hash(text) & 0xFFFF)
    h = 1e-5
    for _ in range(5):
        u, v = rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)
        jet = eval_jet(e, {"u": u, "v": v}, 1)
        fd_u = (e.evaluate({"u": u + h, "v": v}) - e.evaluate({"u": u - h, "v": v})) / (2 * h)
        fd_v = (e.evaluate({"u": u, "v": v + h}) - e.evaluate({"u": u, "v": v - h})) / (2 * h)
        for exact, fd in ((jet.partial("u"), fd_u), (jet.partial("v"), fd_v)):
            assert abs(exact - fd) <= 1e-6 * max(1.0, abs(exact))


def _poly_text(poly):
    return " + ".join(f"({c})*u^{i}*v^{j}" for (i, j), c in poly.items()) or "0"


def _poly_partial(poly, du, dv, u, v):
    total = Fraction(0)
    for (i, j), c in poly.items():
        if i < du or j < dv:
            continue
        fu = math.perm(i, du)
        fv = math.perm(j, dv)
        total += c * fu * fv * u ** (i - du) * v ** (j - dv)
    return total


def test_random_polynomial_jets_are_exact():
    rng = random.Random(7)
    for _ in range(200):
        poly = {}
        for _ in range(rng.randint(1, 6)):
            i = rng.randint(0, 4)
            j = rng.randint(0, 4 - i)
            poly[(i, j)] = poly.get((i, j), 0) + Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        u, v = Fraction(rng.randint(-7, 7), rng.randint(1, 4)), Fraction(rng.randint(-7, 7), rng.randint(1, 4))
        jet = eval_jet(parse(_poly_text(poly)), {"u": u, "v": v}, 3)
        for (du, dv), val in jet.partials().items():
            assert val == _poly_partial(poly, du, dv, u, v)


def test_print_parse_round_trip():
    rng = random.Random(3)
    for text in CORPUS:
        e = parse(text)
        again = parse(e.to_text())
        for _ in range(3):
            pt = {"u": rng.uniform(-0.5, 0.5), "v": rng.uniform(-0.5, 0.5)}
            assert again.evaluate(pt) == e.evaluate(pt)


def test_jet_mixed_partials_share_a_slot():
    j = Jet.variable("u", 1.0, ("u", "v"), 3) * Jet.variable("v", 2.0, ("u", "v"), 3)
    assert j.partial("u", "v") == j.partial("v", "u")
