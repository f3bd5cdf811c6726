"""Exact scalar fields: the rationals QQ and the rational-function field QQ(q).

Every coefficient in the engine is either a ``fractions.Fraction`` (field tag
``"QQ"``) or a :class:`RatFunc` (field tag ``"QQ(q)"``).  Both are immutable,
hashable and carry a unique canonical form, so zero tests and equality are
exact.  No floating point appears anywhere.

``RatFunc`` stores a reduced fraction of dense polynomials in ``q`` with
Fraction coefficients; the denominator is kept monic and coprime to the
numerator, so equal rational functions compare equal as Python objects.
"""

from __future__ import annotations

from fractions import Fraction

QQ = "QQ"
QQ_Q = "QQ(q)"

Poly = tuple  # dense tuple of Fraction coefficients, lowest degree first

_F0 = Fraction(0)
_F1 = Fraction(1)


def _ptrim(c: Poly) -> Poly:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return c[:n]


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(tuple(out))


def _pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [_F0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(tuple(out))


def _pscale(a: Poly, s: Fraction) -> Poly:
    if not s:
        return ()
    return tuple(x * s for x in a)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_F0] * max(0, len(a) - len(b) + 1)
    r = list(a)
    inv_lead = 1 / b[-1]
    while len(r) >= len(b):
        if not r[-1]:
            r.pop()
            continue
        k = len(r) - len(b)
        c = r[-1] * inv_lead
        q[k] = c
        for i, y in enumerate(b):
            r[k + i] -= c * y
        r.pop()
    return _ptrim(tuple(q)), _ptrim(tuple(r))


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        a = _pscale(a, 1 / a[-1])  # monic gcd
    return a


class RatFunc:
    """An element of QQ(q) in canonical form (monic denominator, gcd 1)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(_F1,), _reduced=False):
        num = _ptrim(tuple(Fraction(c) for c in num))
        den = _ptrim(tuple(Fraction(c) for c in den))
        if not den:
            raise ZeroDivisionError("zero denominator in RatFunc")
        if not _reduced:
            if not num:
                den = (_F1,)
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lead = den[-1]
                if lead != 1:
                    num = _pscale(num, 1 / lead)
                    den = _pscale(den, 1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc((Fraction(c),))

    @staticmethod
    def _coerce(v):
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, (int, Fraction)):
            return RatFunc((Fraction(v),))
        return NotImplemented

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if len(self.num) <= 1 and self.den == (_F1,):
            # constants hash like their Fraction value
            return hash(self.num[0] if self.num else _F0)
        return hash((self.num, self.den))

    def __add__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = RatFunc.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if not self.num:
            return "0"
        s = _poly_str(self.num)
        if self.den != (_F1,):
            d = _poly_str(self.den)
            if len(self.num) > 1 or "+" in s or ("-" in s[1:]):
                s = f"({s})"
            if len(self.den) > 1:
                d = f"({d})"
            s = f"{s}/{d}"
        return s


def _poly_str(c: Poly) -> str:
    parts = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if not a:
            continue
        if i == 0:
            term = str(a)
        else:
            v = "q" if i == 1 else f"q^{i}"
            if a == 1:
                term = v
            elif a == -1:
                term = f"-{v}"
            else:
                term = f"{a}*{v}"
        parts.append(term)
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


Q_GEN = RatFunc((_F0, _F1))  # the indeterminate q


def field_zero(field: str):
    return _F0 if field == QQ else RatFunc.const(0)


def field_one(field: str):
    return _F1 if field == QQ else RatFunc.const(1)


def coerce(field: str, v):
    """Bring an int/Fraction/RatFunc into the given field."""
    if field == QQ:
        if isinstance(v, RatFunc):
            if v.den == (_F1,) and len(v.num) <= 1:
                return v.num[0] if v.num else _F0
            raise TypeError("cannot coerce a genuine rational function into QQ")
        return Fraction(v)
    if isinstance(v, RatFunc):
        return v
    return RatFunc.const(Fraction(v))


def scalar_str(s) -> str:
    return str(s)
