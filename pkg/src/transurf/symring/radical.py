"""Polynomials in z over RatExpr, the radical s = sqrt(A^2 - z^2), and d/du.

Here z stands for the u-derivative of the angle between the generating
curves, X = A^2 - z^2 and s^2 = X.  ``cot`` (cotangent of the angle) never
enters the ring; it is carried as the second slot of a CotPair.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .ratexpr import A, A1, T, RatExpr, SymringError


def _coerce_coeff(c) -> RatExpr:
    out = RatExpr.coerce(c)
    if out is NotImplemented:
        raise TypeError(f"not a ring coefficient: {c!r}")
    return out


class ZPoly:
    """Finitely supported map degree -> RatExpr; zeros are never stored."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        for k, v in (coeffs or {}).items():
            if k < 0:
                raise ValueError("negative degree")
            v = _coerce_coeff(v)
            if not v.is_zero():
                c[k] = v
        self._c = c

    @classmethod
    def _raw(cls, c: dict) -> "ZPoly":
        out = cls.__new__(cls)
        out._c = {k: v for k, v in c.items() if not v.is_zero()}
        return out

    @classmethod
    def const(cls, c) -> "ZPoly":
        return cls({0: c})

    @classmethod
    def z(cls, power: int = 1) -> "ZPoly":
        return cls({power: 1})

    @classmethod
    def coerce(cls, x) -> "ZPoly":
        if isinstance(x, ZPoly):
            return x
        return cls({0: x})

    def coeff(self, k: int) -> RatExpr:
        if k < 0:
            raise ValueError("coefficient index must be non-negative")
        return self._c.get(k, RatExpr())

    def items(self):
        return sorted(self._c.items())

    def support(self) -> list[int]:
        return sorted(self._c)

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return max(self._c) if self._c else -1

    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other):
        other = ZPoly.coerce(other)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c[k] + v if k in c else v
        return ZPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return ZPoly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-ZPoly.coerce(other))

    def __rsub__(self, other):
        return ZPoly.coerce(other) - self

    def scale(self, c) -> "ZPoly":
        c = _coerce_coeff(c)
        return ZPoly._raw({k: v * c for k, v in self._c.items()})

    def shift(self, n: int) -> "ZPoly":
        """Multiply by z^n."""
        return ZPoly._raw({k + n: v for k, v in self._c.items()})

    def mul(self, other: "ZPoly", min_degree: int | None = None) -> "ZPoly":
        """Product; with ``min_degree`` only coefficients of z^k, k >= min_degree, are formed."""
        c: dict[int, RatExpr] = {}
        items_b = list(other._c.items())
        for ka, va in self._c.items():
            for kb, vb in items_b:
                k = ka + kb
                if min_degree is not None and k < min_degree:
                    continue
                prod = va * vb
                c[k] = c[k] + prod if k in c else prod
        return ZPoly._raw(c)

    def __mul__(self, other):
        if isinstance(other, ZPoly):
            return self.mul(other)
        if isinstance(other, (RatExpr, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ZPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, ZPoly):
            try:
                other = ZPoly.coerce(other)
            except TypeError:
                return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def dz(self) -> "ZPoly":
        return ZPoly._raw({k - 1: v * k for k, v in self._c.items() if k > 0})

    def coeff_derivative(self) -> "ZPoly":
        """Differentiate the coefficients only (z held fixed)."""
        return ZPoly._raw({k: v.derivative() for k, v in self._c.items()})

    def map_coeffs(self, fn) -> "ZPoly":
        return ZPoly._raw({k: fn(v) for k, v in self._c.items()})

    def divide_by_X(self) -> "ZPoly | None":
        """Exact quotient by X = A^2 - z^2, or None if X does not divide."""
        rem = dict(self._c)
        quo: dict[int, RatExpr] = {}
        a2 = A * A
        while rem:
            n = max(rem)
            cn = rem.pop(n)
            if cn.is_zero():
                continue
            if n < 2:
                return None
            # cn z^n = -cn z^(n-2) * (A^2 - z^2) + cn A^2 z^(n-2)
            quo[n - 2] = -cn
            extra = cn * a2
            rem[n - 2] = rem[n - 2] + extra if n - 2 in rem else extra
            if rem[n - 2].is_zero():
                del rem[n - 2]
        return ZPoly._raw(quo)

    def evaluate(self, values: Mapping[str, object], z):
        total = 0
        for k, v in self._c.items():
            total = total + v.evaluate(values) * z**k
        return total

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c, reverse=True):
            c = str(self._c[k])
            zpart = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not zpart:
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*{zpart}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ZPoly({self})"


ZERO = ZPoly()
ONE = ZPoly.const(1)
Z = ZPoly.z()
X_POLY = ZPoly({0: A * A, 2: -1})


class RadFrac:
    """(p + q*s) / X^k in normal form (k minimal)."""

    __slots__ = ("p", "q", "k")

    def __init__(self, p=None, q=None, k: int = 0):
        p = ZPoly.coerce(p if p is not None else ZERO)
        q = ZPoly.coerce(q if q is not None else ZERO)
        if k < 0:
            raise ValueError("negative X power")
        if p.is_zero() and q.is_zero():
            k = 0
        while k > 0:
            pd = p.divide_by_X()
            if pd is None:
                break
            qd = q.divide_by_X()
            if qd is None:
                break
            p, q, k = pd, qd, k - 1
        self.p = p
        self.q = q
        self.k = k

    @classmethod
    def coerce(cls, x) -> "RadFrac":
        if isinstance(x, RadFrac):
            return x
        return cls(ZPoly.coerce(x))

    @classmethod
    def s(cls) -> "RadFrac":
        return cls(ZERO, ONE)

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero()

    def _lift(self, k: int):
        """(p, q) over X^k for k >= self.k."""
        p, q = self.p, self.q
        for _ in range(k - self.k):
            p = p * X_POLY
            q = q * X_POLY
        return p, q

    def __add__(self, other):
        try:
            other = RadFrac.coerce(other)
        except TypeError:
            return NotImplemented
        k = max(self.k, other.k)
        p1, q1 = self._lift(k)
        p2, q2 = other._lift(k)
        return RadFrac(p1 + p2, q1 + q2, k)

    __radd__ = __add__

    def __neg__(self):
        return RadFrac(-self.p, -self.q, self.k)

    def __sub__(self, other):
        return self + (-RadFrac.coerce(other))

    def __rsub__(self, other):
        return RadFrac.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (RatExpr, int, Fraction)):
            return RadFrac(self.p.scale(other), self.q.scale(other), self.k)
        if isinstance(other, ZPoly):
            return RadFrac(self.p * other, self.q * other, self.k)
        if not isinstance(other, RadFrac):
            return NotImplemented
        p = self.p * other.p + (self.q * other.q) * X_POLY
        q = self.p * other.q + self.q * other.p
        return RadFrac(p, q, self.k + other.k)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RadFrac(ONE)
        for _ in range(n):
            out = out * self
        return out

    def over_X(self, n: int = 1) -> "RadFrac":
        """Divide by X^n."""
        return RadFrac(self.p, self.q, self.k + n)

    def __eq__(self, other):
        if not isinstance(other, RadFrac):
            try:
                other = RadFrac.coerce(other)
            except TypeError:
                return NotImplemented
        return self.k == other.k and self.p == other.p and self.q == other.q

    def __hash__(self):
        return hash((self.p, self.q, self.k))

    def map_coeffs(self, fn) -> "RadFrac":
        return RadFrac(self.p.map_coeffs(fn), self.q.map_coeffs(fn), self.k)

    def evaluate(self, values: Mapping[str, object], z, s):
        X = values["A"] ** 2 - z**2
        return (self.p.evaluate(values, z) + self.q.evaluate(values, z) * s) / X**self.k

    def __str__(self):
        body = f"[{self.p}] + [{self.q}]*s"
        return body if self.k == 0 else f"({body})/X^{self.k}"

    def __repr__(self):
        return f"RadFrac({self})"


class CotPair:
    """reg + cot * cotangent(angle), with both parts RadFracs."""

    __slots__ = ("reg", "cot")

    def __init__(self, reg=None, cot=None):
        self.reg = RadFrac.coerce(reg if reg is not None else ZERO)
        self.cot = RadFrac.coerce(cot if cot is not None else ZERO)

    @classmethod
    def coerce(cls, x) -> "CotPair":
        if isinstance(x, CotPair):
            return x
        return cls(RadFrac.coerce(x))

    def __add__(self, other):
        other = CotPair.coerce(other)
        return CotPair(self.reg + other.reg, self.cot + other.cot)

    __radd__ = __add__

    def __neg__(self):
        return CotPair(-self.reg, -self.cot)

    def __sub__(self, other):
        return self + (-CotPair.coerce(other))

    def __rsub__(self, other):
        return CotPair.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, CotPair):
            raise TypeError("product of two CotPairs leaves the cot-linear module")
        if isinstance(other, (RadFrac, ZPoly, RatExpr, int, Fraction)):
            return CotPair(self.reg * other, self.cot * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CotPair):
            try:
                other = CotPair.coerce(other)
            except TypeError:
                return NotImplemented
        return self.reg == other.reg and self.cot == other.cot

    def __hash__(self):
        return hash((self.reg, self.cot))

    def is_zero(self) -> bool:
        return self.reg.is_zero() and self.cot.is_zero()

    def evaluate(self, values, z, s, cot):
        return self.reg.evaluate(values, z, s) + cot * self.cot.evaluate(values, z, s)

    def __str__(self):
        return f"{{{self.reg}}} + cot*{{{self.cot}}}"

    def __repr__(self):
        return f"CotPair({self})"


_LOG_DERIV = A1 / A


def _rules(planar: bool):
    """(d_u z, d_u s) as CotPairs."""
    zp = ZPoly.z()
    if planar:
        dz = CotPair(RadFrac(zp.scale(_LOG_DERIV)), RadFrac(X_POLY))
        ds = CotPair(RadFrac(ZERO, ONE.scale(_LOG_DERIV)), RadFrac(ZERO, -zp))
    else:
        dz = CotPair(RadFrac(zp.scale(_LOG_DERIV), ONE.scale(T)), RadFrac(X_POLY))
        ds = CotPair(RadFrac(zp.scale(-T), ONE.scale(_LOG_DERIV)), RadFrac(ZERO, -zp))
    return dz, ds


def d_u(x, planar: bool = False) -> CotPair:
    """Total u-derivative of a RadFrac.

    Uses d z = T s + (A1/A) z + cot X and d s = (A1/A) s - T z - cot z s.
    With ``planar`` the torsion terms are dropped (tau identically zero).
    """
    x = RadFrac.coerce(x)
    dz, ds = _rules(planar)
    d_p = CotPair(RadFrac(x.p.coeff_derivative())) + dz * x.p.dz()
    d_q = CotPair(RadFrac(x.q.coeff_derivative())) + dz * x.q.dz()
    d_num = d_p + d_q * RadFrac.s() + ds * x.q
    if x.k == 0:
        return d_num
    num = RadFrac(x.p, x.q)
    d_X = CotPair(RadFrac(ZPoly.const(2 * A * A1))) - dz * Z.scale(2)
    out = d_num * RadFrac(ONE, None, x.k) - d_X * (num * RadFrac(ONE, None, x.k + 1)) * x.k
    return out


def cot_free(x: CotPair) -> RadFrac:
    if not x.cot.is_zero():
        raise SymringError("expression still depends on cot")
    return x.reg
