"""Scalar expression language with forward-mode jet evaluation.

Grammar (precedence climbing, lowest first)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := ("+" | "-") unary | power
    power    := atom ("^" unary)?          # exponent must be a constant integer
    atom     := NUMBER | NAME | NAME "(" expr ")" | "(" expr ")"

Numbers are read as exact rationals (``0.25`` is ``1/4``).  ``pi`` is the
only named constant.  Functions: sin, cos, tan, exp, log, sqrt.

Derivatives come from truncated multivariate Taylor propagation (:class:`Jet`),
never from finite differences.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_VARIABLES = ("u", "v", "t", "s")
FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt")
CONSTANTS = {"pi": math.pi}
MAX_ORDER = 3


class ExprError(Exception):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifierError(ExprError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown identifier {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


class ExprDomainError(ExprError):
    """Raised when evaluation leaves a function's domain; ``subtree`` is the culprit."""

    def __init__(self, message: str, subtree: "Expr"):
        super().__init__(f"{message} in {subtree}")
        self.subtree = subtree


# --------------------------------------------------------------------------
# AST
# --------------------------------------------------------------------------

class Expr:
    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        raise NotImplementedError

    def free_variables(self) -> frozenset[str]:
        raise NotImplementedError

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate with plain numbers (float or Fraction) bound to the variables."""
        return _evaluate(self, point, _NUMERIC, _float_mode(point))


@dataclass(frozen=True)
class Num(Expr):
    value: Fraction

    def to_text(self):
        if self.value.denominator == 1:
            return str(self.value.numerator) if self.value >= 0 else f"({self.value.numerator})"
        return f"({self.value.numerator}/{self.value.denominator})"

    def free_variables(self):
        return frozenset()


@dataclass(frozen=True)
class Const(Expr):
    name: str

    def to_text(self):
        return self.name

    def free_variables(self):
        return frozenset()


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def to_text(self):
        return self.name

    def free_variables(self):
        return frozenset([self.name])


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    def to_text(self):
        return f"(-{self.operand.to_text()})"

    def free_variables(self):
        return self.operand.free_variables()


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def to_text(self):
        return f"({self.left.to_text()} {self.op} {self.right.to_text()})"

    def free_variables(self):
        return self.left.free_variables() | self.right.free_variables()


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def to_text(self):
        exp = str(self.exponent) if self.exponent >= 0 else f"({self.exponent})"
        return f"({self.base.to_text()}^{exp})"

    def free_variables(self):
        return self.base.free_variables()


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr

    def to_text(self):
        return f"{self.func}({self.arg.to_text()})"

    def free_variables(self):
        return self.arg.free_variables()


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)(?:[eE](?P<exp>[+-]?\d+))?|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))"
)


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            offset = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise ExprSyntaxError(f"unexpected character {src[offset]!r}", offset)
        start = m.start(m.lastgroup) if m.lastgroup != "exp" else m.start("num")
        if m.group("num") is not None:
            value = Fraction(m.group("num"))
            if m.group("exp") is not None:
                value *= Fraction(10) ** int(m.group("exp"))
            tokens.append(("num", value, m.start("num")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    tokens.append(("end", None, len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, variables: Iterable[str]):
        self.tokens = _tokenize(src)
        self.i = 0
        self.variables = frozenset(variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ExprSyntaxError(f"expected {op!r}", tok[2])
        return tok

    def parse(self) -> Expr:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected token {tok[1]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            operand = self.unary()
            return Neg(operand) if tok[1] == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_offset = self.peek()[2]
            exponent = self.unary()
            if exponent.free_variables() or _has_nonrational(exponent):
                raise ExprSyntaxError("exponent must be a constant integer", exp_offset)
            value = exponent.evaluate({})
            if Fraction(value).denominator != 1:
                raise ExprSyntaxError("exponent must be an integer", exp_offset)
            return Pow(base, int(value))
        return base

    def atom(self):
        tok = self.take()
        kind, value, offset = tok
        if kind == "num":
            return Num(value)
        if kind == "name":
            if value in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(value, arg)
            if value in CONSTANTS:
                return Const(value)
            if value in self.variables:
                return Var(value)
            raise UnknownIdentifierError(value, offset)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", offset)
        raise ExprSyntaxError(f"unexpected token {value!r}", offset)


def _has_nonrational(e: Expr) -> bool:
    if isinstance(e, (Const, Call)):
        return True
    if isinstance(e, (Num, Var)):
        return False
    if isinstance(e, Neg):
        return _has_nonrational(e.operand)
    if isinstance(e, Pow):
        return _has_nonrational(e.base)
    return _has_nonrational(e.left) or _has_nonrational(e.right)


def parse(src: str, variables: Iterable[str] = DEFAULT_VARIABLES) -> Expr:
    if not src or not src.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(src, variables).parse()


# --------------------------------------------------------------------------
# Jets
# --------------------------------------------------------------------------

def _multi_indices(nvars: int, order: int):
    out = [idx for idx in product(range(order + 1), repeat=nvars) if sum(idx) <= order]
    out.sort(key=lambda idx: (sum(idx), tuple(-i for i in idx)))
    return out


class Jet:
    """Truncated Taylor expansion in several variables.

    ``coeffs[alpha]`` holds ``d^alpha f / alpha!`` so products are plain
    truncated convolutions.  Mixed partials share one slot and are therefore
    symmetric by construction.
    """

    __slots__ = ("variables", "order", "coeffs")

    def __init__(self, variables: Sequence[str], order: int, coeffs: Mapping[tuple, object]):
        self.variables = tuple(variables)
        self.order = order
        self.coeffs = {k: v for k, v in coeffs.items() if sum(k) <= order}

    @classmethod
    def constant(cls, value, variables, order):
        return cls(variables, order, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, name, value, variables, order):
        variables = tuple(variables)
        zero = (0,) * len(variables)
        coeffs = {zero: value}
        if order >= 1:
            idx = list(zero)
            idx[variables.index(name)] = 1
            coeffs[tuple(idx)] = 1
        return cls(variables, order, coeffs)

    @property
    def value(self):
        return self.coeffs.get((0,) * len(self.variables), 0)

    def partial(self, *names: str):
        """Partial derivative, e.g. ``jet.partial("u", "v")`` for d2/du dv."""
        if len(names) > self.order:
            raise ValueError(f"jet of order {self.order} has no order-{len(names)} partial")
        idx = [0] * len(self.variables)
        for name in names:
            idx[self.variables.index(name)] += 1
        scale = 1
        for k in idx:
            scale *= math.factorial(k)
        return self.coeffs.get(tuple(idx), 0) * scale

    def partials(self) -> dict[tuple, object]:
        """All partials keyed by multi-index."""
        out = {}
        for idx in _multi_indices(len(self.variables), self.order):
            scale = 1
            for k in idx:
                scale *= math.factorial(k)
            out[idx] = self.coeffs.get(idx, 0) * scale
        return out

    def derivative(self, name: str) -> "Jet":
        """The partial in ``name`` as a jet of one lower order."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        i = self.variables.index(name)
        coeffs = {}
        for k, v in self.coeffs.items():
            if k[i] > 0:
                lower = list(k)
                lower[i] -= 1
                coeffs[tuple(lower)] = v * k[i]
        return Jet(self.variables, self.order - 1, coeffs)

    def __repr__(self):
        return f"Jet({self.variables}, order={self.order}, {self.partials()})"

    # arithmetic ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Jet):
            if other.variables != self.variables:
                raise ValueError("jets over different variables")
            return other
        return Jet.constant(other, self.variables, self.order)

    def __add__(self, other):
        other = self._lift(other)
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            coeffs[k] = coeffs.get(k, 0) + v
        return Jet(self.variables, min(self.order, other.order), coeffs)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.variables, self.order, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        order = min(self.order, other.order)
        coeffs: dict = {}
        for ka, va in self.coeffs.items():
            da = sum(ka)
            for kb, vb in other.coeffs.items():
                if da + sum(kb) > order:
                    continue
                k = tuple(a + b for a, b in zip(ka, kb))
                coeffs[k] = coeffs.get(k, 0) + va * vb
        return Jet(self.variables, order, coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("jets only support integer powers")
        if n < 0:
            return (self ** (-n)).reciprocal()
        result = Jet.constant(1, self.variables, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose(self, series: Sequence) -> "Jet":
        """Apply f given ``series[k] = f^(k)(a) / k!`` at ``a = self.value``."""
        zero = (0,) * len(self.variables)
        h = Jet(self.variables, self.order, {k: v for k, v in self.coeffs.items() if k != zero})
        result = Jet.constant(series[0], self.variables, self.order)
        power = Jet.constant(1, self.variables, self.order)
        for k in range(1, self.order + 1):
            power = power * h
            result = result + power * series[k]
        return result

    def reciprocal(self):
        a = self.value
        if _any(a == 0):
            raise ZeroDivisionError("reciprocal of a jet with zero value")
        if isinstance(a, (int, Fraction)):
            return self.compose([Fraction((-1) ** k) / a ** (k + 1) for k in range(self.order + 1)])
        return self.compose([(-1) ** k / a ** (k + 1) for k in range(self.order + 1)])


# Jet coefficients may be numbers or numpy arrays (one jet per array element);
# the helpers below pick the matching elementary functions.

def _any(mask) -> bool:
    return bool(np.any(mask))


def _lib(a):
    return np if isinstance(a, np.ndarray) else math


def _real(a):
    return a if isinstance(a, np.ndarray) else float(a)


def _power_series(a, r: float, order: int):
    out = []
    coeff = 1.0
    for k in range(order + 1):
        out.append(coeff * a ** (r - k))
        coeff *= (r - k) / (k + 1)
    return out


def jet_sin(x: Jet) -> Jet:
    a = _real(x.value)
    m = _lib(a)
    return x.compose([m.sin(a + k * math.pi / 2) / math.factorial(k) for k in range(x.order + 1)])


def jet_cos(x: Jet) -> Jet:
    a = _real(x.value)
    m = _lib(a)
    return x.compose([m.cos(a + k * math.pi / 2) / math.factorial(k) for k in range(x.order + 1)])


def jet_exp(x: Jet) -> Jet:
    a = _real(x.value)
    e = _lib(a).exp(a)
    return x.compose([e / math.factorial(k) for k in range(x.order + 1)])


def jet_log(x: Jet) -> Jet:
    a = _real(x.value)
    if _any(a <= 0):
        raise ValueError("log of non-positive value")
    return x.compose([_lib(a).log(a)] + [(-1) ** (k + 1) / (k * a ** k) for k in range(1, x.order + 1)])


def jet_sqrt(x: Jet) -> Jet:
    a = _real(x.value)
    if _any(a < 0) or (x.order > 0 and _any(a == 0)):
        raise ValueError("sqrt of a non-positive value")
    return x.compose(_power_series(a, 0.5, x.order))


def jet_tan(x: Jet) -> Jet:
    c = jet_cos(x)
    if _any(c.value == 0):
        raise ValueError("tan at a pole")
    return jet_sin(x) / c


def jet_acos(x: Jet) -> Jet:
    a = _real(x.value)
    if _any(a <= -1) or _any(a >= 1):
        raise ValueError("acos outside (-1, 1)")
    if x.order > 3:
        raise ValueError("acos jets are provided up to order 3")
    w = 1 - a * a
    series = [_lib(a).arccos(a) if isinstance(a, np.ndarray) else math.acos(a),
              -1 / w ** 0.5, -a / w ** 1.5 / 2, -(1 + 2 * a * a) / w ** 2.5 / 6]
    return x.compose(series[: x.order + 1])


_JET_FUNCS = {"sin": jet_sin, "cos": jet_cos, "tan": jet_tan, "exp": jet_exp, "log": jet_log, "sqrt": jet_sqrt}


def _num_sqrt(a):
    if _any(np.asarray(a) < 0):
        raise ValueError("sqrt of a negative value")
    return _lib(a).sqrt(a)


def _num_log(a):
    if _any(np.asarray(a) <= 0):
        raise ValueError("log of non-positive value")
    return _lib(a).log(a)


def _num_tan(a):
    if _any(_lib(a).cos(a) == 0):
        raise ValueError("tan at a pole")
    return _lib(a).tan(a)


def _num(name):
    return lambda a: getattr(_lib(a), name)(a)


_NUMERIC = {"sin": _num("sin"), "cos": _num("cos"), "tan": _num_tan, "exp": _num("exp"), "log": _num_log,
            "sqrt": _num_sqrt}


def _evaluate(e: Expr, point: Mapping[str, object], funcs, floats: bool = False):
    """Recursive evaluator; with ``floats`` rational literals are turned into floats first."""
    if isinstance(e, Num):
        return float(e.value) if floats else e.value
    if isinstance(e, Var):
        return point[e.name]
    if isinstance(e, Const):
        return CONSTANTS[e.name]
    if isinstance(e, Neg):
        return -_evaluate(e.operand, point, funcs, floats)
    if isinstance(e, BinOp):
        left = _evaluate(e.left, point, funcs, floats)
        right = _evaluate(e.right, point, funcs, floats)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        rv = right.value if isinstance(right, Jet) else right
        if _any(rv == 0):
            raise ExprDomainError("division by zero", e)
        return left / right
    if isinstance(e, Pow):
        base = _evaluate(e.base, point, funcs, floats)
        bv = base.value if isinstance(base, Jet) else base
        if e.exponent < 0 and _any(bv == 0):
            raise ExprDomainError("negative power of zero", e)
        return base ** e.exponent
    if isinstance(e, Call):
        arg = _evaluate(e.arg, point, funcs, floats)
        if isinstance(arg, Fraction):
            arg = float(arg)
        f = funcs[e.func] if isinstance(arg, Jet) else _NUMERIC[e.func]
        try:
            return f(arg)
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise ExprDomainError(str(exc), e) from None
    raise TypeError(f"not an expression node: {e!r}")


def _float_mode(point: Mapping[str, object]) -> bool:
    return any(isinstance(v, (float, np.ndarray)) for v in point.values())


def eval_jet(e: Expr, point: Mapping[str, object], order: int = 1) -> Jet:
    """Value and partials of ``e`` up to total ``order`` at ``point``.

    The jet's variables are the keys of ``point`` in insertion order.  With
    Fraction inputs and no transcendental calls the result is exact.  Values
    may be numpy arrays, giving one jet per element.
    """
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in 0..{MAX_ORDER}")
    missing = e.free_variables() - set(point)
    if missing:
        raise ExprError(f"unbound variables: {sorted(missing)}")
    names = tuple(point)
    seeded = {name: Jet.variable(name, value, names, order) for name, value in point.items()}
    result = _evaluate(e, seeded, _JET_FUNCS, _float_mode(point))
    if not isinstance(result, Jet):
        result = Jet.constant(result, names, order)
    return result
