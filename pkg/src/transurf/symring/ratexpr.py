"""Exact rational expressions in A, A', A'', A''', tau, tau', tau''.

Elements live in Q[A, A1, A2, A3, T, T1, T2] localized at A: a numerator with
integer coefficients over a positive integer times a power of A.  Because A is
the only invertible generator the fraction is always fully reduced once the
integer content is cancelled and the A-power is minimal, so structural equality
is mathematical equality.

Monomials are packed into a single int, 16 bits per generator, with the A
exponent biased so it may go negative.  Multiplying monomials is then integer
addition.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

GENERATORS = ("A", "A1", "A2", "A3", "T", "T1", "T2")
NGEN = len(GENERATORS)
_BITS = 16
_MASK = (1 << _BITS) - 1
_ABIAS = 1 << (_BITS - 1)
_ONE = _ABIAS  # packed key of the empty monomial

# derivative chain: A -> A1 -> A2 -> A3, T -> T1 -> T2
_SUCCESSOR = {0: 1, 1: 2, 2: 3, 4: 5, 5: 6}


class SymringError(Exception):
    pass


class LocalizationError(SymringError):
    """A denominator outside the multiplicative set generated by A (and X)."""


class GeneratorOverflowError(SymringError):
    """Derivative of A''' or tau'' requested; the generator set stops there."""


def _pack(exps) -> int:
    key = exps[0] + _ABIAS
    for i in range(1, NGEN):
        key |= exps[i] << (_BITS * i)
    return key


def _unpack(key: int) -> tuple[int, ...]:
    out = [(key & _MASK) - _ABIAS]
    for i in range(1, NGEN):
        out.append((key >> (_BITS * i)) & _MASK)
    return tuple(out)


def _generator_key(i: int) -> int:
    exps = [0] * NGEN
    exps[i] = 1
    return _pack(exps)


def _order_key(exps):
    # graded lex with A < A1 < ... < T2: compare T2 exponent first
    return (sum(exps), tuple(reversed(exps)))


class RatExpr:
    __slots__ = ("_terms", "_den")

    def __init__(self, terms: Mapping[int, int] | None = None, den: int = 1, *, _normalized=False):
        if _normalized:
            self._terms = terms
            self._den = den
            return
        terms = {k: v for k, v in (terms or {}).items() if v}
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            terms = {k: -v for k, v in terms.items()}
            den = -den
        if not terms:
            den = 1
        else:
            g = math.gcd(den, *terms.values())
            if g > 1:
                terms = {k: v // g for k, v in terms.items()}
                den //= g
        self._terms = terms
        self._den = den

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, value) -> "RatExpr":
        value = Fraction(value)
        if value == 0:
            return cls()
        return cls({_ONE: value.numerator}, value.denominator)

    @classmethod
    def gen(cls, name: str) -> "RatExpr":
        return cls({_generator_key(GENERATORS.index(name)): 1})

    @classmethod
    def coerce(cls, value) -> "RatExpr":
        if isinstance(value, RatExpr):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        return NotImplemented

    # inspection --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ONE in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise SymringError(f"{self} is not a constant")
        return Fraction(self._terms.get(_ONE, 0), self._den)

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Monomial exponent tuples (A exponent may be negative) -> rational coefficient."""
        return {_unpack(k): Fraction(v, self._den) for k, v in self._terms.items()}

    def __len__(self):
        return len(self._terms)

    def _a_shift(self) -> int:
        if not self._terms:
            return 0
        low = min((k & _MASK) - _ABIAS for k in self._terms)
        return -low if low < 0 else 0

    @property
    def numerator(self) -> dict[tuple[int, ...], int]:
        """Numerator polynomial (integer coefficients) of the reduced fraction."""
        shift = self._a_shift()
        out = {}
        for k, v in self._terms.items():
            exps = list(_unpack(k))
            exps[0] += shift
            out[tuple(exps)] = v
        return out

    @property
    def denominator(self) -> tuple[int, int]:
        """Reduced denominator as ``(integer, power of A)``."""
        return self._den, self._a_shift()

    def weight(self) -> set[int]:
        """Weights present (A, T: 1; each derivative adds 1)."""
        w = (1, 2, 3, 4, 1, 2, 3)
        return {sum(e * wi for e, wi in zip(_unpack(k), w)) for k in self._terms}

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = RatExpr.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        if self._den == other._den:
            terms = dict(self._terms)
            for k, v in other._terms.items():
                terms[k] = terms.get(k, 0) + v
            return RatExpr(terms, self._den)
        l = self._den * other._den // math.gcd(self._den, other._den)
        fa, fb = l // self._den, l // other._den
        terms = {k: v * fa for k, v in self._terms.items()}
        for k, v in other._terms.items():
            terms[k] = terms.get(k, 0) + v * fb
        return RatExpr(terms, l)

    __radd__ = __add__

    def __neg__(self):
        return RatExpr({k: -v for k, v in self._terms.items()}, self._den, _normalized=True)

    def __sub__(self, other):
        other = RatExpr.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = RatExpr.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0 or not self._terms:
                return RatExpr()
            other = Fraction(other)
            return RatExpr({k: v * other.numerator for k, v in self._terms.items()}, self._den * other.denominator)
        if not isinstance(other, RatExpr):
            return NotImplemented
        if not self._terms or not other._terms:
            return RatExpr()
        terms: dict[int, int] = {}
        get = terms.get
        for ka, va in self._terms.items():
            base = ka - _ABIAS
            for kb, vb in other._terms.items():
                k = base + kb
                terms[k] = get(k, 0) + va * vb
        return RatExpr(terms, self._den * other._den)

    __rmul__ = __mul__

    def _is_unit(self) -> bool:
        if len(self._terms) != 1:
            return False
        (k,) = self._terms
        return (k >> _BITS) == 0

    def inverse(self) -> "RatExpr":
        if not self._terms:
            raise ZeroDivisionError("division by zero RatExpr")
        if not self._is_unit():
            raise LocalizationError(f"cannot invert {self}: only c*A^k is invertible")
        ((k, v),) = self._terms.items()
        a_exp = (k & _MASK) - _ABIAS
        return RatExpr({_pack([-a_exp] + [0] * (NGEN - 1)): self._den}, v)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, RatExpr):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = RatExpr.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = RatExpr.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = RatExpr.coerce(other) if not isinstance(other, RatExpr) else other
        if other is NotImplemented:
            return NotImplemented
        return self._den == other._den and self._terms == other._terms

    def __hash__(self):
        return hash((self._den, frozenset(self._terms.items())))

    def ratio_to(self, other: "RatExpr") -> Fraction | None:
        """The rational c with ``self == c * other``, or None if there is none."""
        if other.is_zero():
            return None
        k0 = next(iter(other._terms))
        if k0 not in self._terms:
            return None
        c = Fraction(self._terms[k0], self._den) / Fraction(other._terms[k0], other._den)
        return c if self == other * c else None

    # calculus ----------------------------------------------------------------
    def derivative(self) -> "RatExpr":
        """d/du with A' = A1, ..., tau' = T1, ...; raises past A''' or tau''."""
        terms: dict[int, int] = {}
        for k, v in self._terms.items():
            exps = _unpack(k)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                nxt = _SUCCESSOR.get(i)
                if nxt is None:
                    raise GeneratorOverflowError(f"derivative of {GENERATORS[i]} is outside the generator set")
                nk = k - (1 << (_BITS * i)) + (1 << (_BITS * nxt))
                terms[nk] = terms.get(nk, 0) + v * e
        return RatExpr(terms, self._den)

    def substitute_zero(self, names) -> "RatExpr":
        """Set the listed generators to zero."""
        idx = [GENERATORS.index(n) for n in names]
        keep = {k: v for k, v in self._terms.items() if all(_unpack(k)[i] == 0 for i in idx)}
        return RatExpr(keep, self._den)

    def evaluate(self, values: Mapping[str, object]):
        total = 0
        for k, v in self._terms.items():
            term = v
            for name, e in zip(GENERATORS, _unpack(k)):
                if e:
                    term = term * values[name] ** e
            total = total + term
        if isinstance(total, int):
            return Fraction(total, self._den)
        return total / self._den

    # text --------------------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        num = self.numerator
        den, apow = self.denominator
        items = sorted(num.items(), key=lambda kv: _order_key(kv[0]), reverse=True)
        parts = []
        for i, (exps, c) in enumerate(items):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(GENERATORS, exps) if e
            )
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        text = "".join(parts)
        den_parts = []
        if den != 1:
            den_parts.append(str(den))
        if apow:
            den_parts.append("A" if apow == 1 else f"A^{apow}")
        if not den_parts:
            return text
        if len(items) > 1:
            text = f"({text})"
        den_text = "*".join(den_parts)
        return f"{text}/{den_text}" if len(den_parts) == 1 else f"{text}/({den_text})"

    def __repr__(self):
        return f"RatExpr({self})"


A, A1, A2, A3, T, T1, T2 = (RatExpr.gen(n) for n in GENERATORS)


def ratexpr(text: str) -> RatExpr:
    """Parse e.g. ``"56*T*A1/A - 18*T1"`` into a RatExpr."""
    from ..exprlang import parse, _evaluate

    tree = parse(text, variables=GENERATORS)
    point = {n: RatExpr.gen(n) for n in GENERATORS}
    value = _evaluate(tree, point, {})
    return RatExpr.coerce(value) if not isinstance(value, RatExpr) else value
