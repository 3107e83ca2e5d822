"""Exact arithmetic in Z[q, q^-1] and its fraction field.

Laurent polynomials are stored sparsely as ``{exponent: coefficient}`` with
Python integers, so there is no overflow and no floating point.  Rational
functions are pairs of Laurent polynomials kept in a canonical form, which
makes equality a representation comparison.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd


class InexactDivision(ArithmeticError):
    """Raised by :func:`exact_div` when the divisor does not divide evenly."""

    def __init__(self, dividend, divisor, quotient, remainder):
        super().__init__(f"{dividend} is not divisible by {divisor} (remainder {remainder})")
        self.dividend = dividend
        self.divisor = divisor
        self.quotient = quotient
        self.remainder = remainder


class LaurentPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            self._c = {}
        elif isinstance(coeffs, LaurentPoly):
            self._c = coeffs._c
        elif isinstance(coeffs, int):
            self._c = {0: coeffs} if coeffs else {}
        else:
            self._c = {int(e): int(c) for e, c in coeffs.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, d):
        # trusted constructor: d has int keys and no zero values
        p = cls.__new__(cls)
        p._c = d
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls._raw({exp: coeff} if coeff else {})

    @classmethod
    def q(cls, exp=1):
        return cls._raw({exp: 1})

    # -- basic protocol -------------------------------------------------
    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __getitem__(self, exp):
        return self._c.get(exp, 0)

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def is_zero(self):
        return not self._c

    def is_constant(self):
        return not self._c or set(self._c) == {0}

    def is_unit(self):
        return len(self._c) == 1 and next(iter(self._c.values())) in (1, -1)

    def min_exp(self):
        return min(self._c) if self._c else None

    def max_exp(self):
        return max(self._c) if self._c else None

    def lead(self):
        """Coefficient at the highest exponent."""
        return self._c[max(self._c)] if self._c else 0

    def content(self):
        g = 0
        for c in self._c.values():
            g = gcd(g, c)
        return g

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(self._c) < len(other._c):
            a, b = other._c, self._c
        else:
            a, b = self._c, other._c
        d = dict(a)
        for e, c in b.items():
            s = d.get(e, 0) + c
            if s:
                d[e] = s
            else:
                d.pop(e, None)
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: c * other for e, c in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._c, other._c
        if len(b) == 1 or len(a) == 1:
            if len(a) == 1:
                a, b = b, a
            (e2, c2), = b.items()
            return LaurentPoly._raw({e + e2: c * c2 for e, c in a.items()})
        d = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                s = d.get(e, 0) + c1 * c2
                if s:
                    d[e] = s
                else:
                    del d[e]
        return LaurentPoly._raw(d)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if self.is_unit():
                (e, c), = self._c.items()
                return LaurentPoly._raw({e * n: c ** (-n)})
            raise ValueError("negative power of a non-unit")
        result = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by q^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._c.items()})

    def bar(self):
        return LaurentPoly._raw({-e: c for e, c in self._c.items()})

    def evaluate(self, value):
        """Evaluate at q = value (exact for int/Fraction inputs)."""
        return sum(c * Fraction(value) ** e for e, c in self._c.items())

    def evaluate_mod(self, value, p):
        inv = pow(value, -1, p)
        total = 0
        for e, c in self._c.items():
            total += c * (pow(value, e, p) if e >= 0 else pow(inv, -e, p))
        return total % p

    def at_zero(self):
        """Value at q = 0; raises if a negative power is present."""
        if self._c and min(self._c) < 0:
            raise ValueError(f"{self} has a pole at q = 0")
        return self._c.get(0, 0)

    # -- formatting -----------------------------------------------------
    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            c = self._c[e]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if a == 1 else f"{a}{var}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def to_json(self):
        return {str(e): c for e, c in sorted(self._c.items())}

    @classmethod
    def from_json(cls, obj):
        return cls({int(e): int(c) for e, c in obj.items()})

    _TERM = re.compile(r"([+-]?)(\d*)(q(?:\^(-?\d+))?)?")

    @classmethod
    def parse(cls, text):
        """Parse the human form produced by ``str``, e.g. ``"q^-2+1+3q"``."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        d = {}
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse Laurent polynomial {text!r} at position {pos}")
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(1) == "-":
                c = -c
            e = 0
            if m.group(3):
                e = int(m.group(4)) if m.group(4) is not None else 1
            d[e] = d.get(e, 0) + c
            pos = m.end()
        return cls(d)


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
Q = LaurentPoly.q(1)


def as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(x)
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def bar(p):
    return as_laurent(p).bar()


def qint(n):
    """Quantum integer [n] = (q^n - q^-n)/(q - q^-1)."""
    if n == 0:
        return LaurentPoly()
    if n < 0:
        return -qint(-n)
    return LaurentPoly._raw({e: 1 for e in range(-(n - 1), n, 2)})


def qfact(n):
    if n < 0:
        raise ValueError("quantum factorial of a negative integer")
    result = ONE
    for k in range(2, n + 1):
        result = result * qint(k)
    return result


def qdblfact(m):
    """[m]!! = [m][m-2]...; ``m`` must be even and nonnegative."""
    if m < 0 or m % 2:
        raise ValueError("quantum double factorial needs an even nonnegative argument")
    result = ONE
    for k in range(2, m + 1, 2):
        result = result * qint(k)
    return result


def divmod_laurent(p, d):
    """Division with remainder by the top term of ``d``.

    The quotient is built from the top exponent downward; the remainder
    has no term at or above ``p``'s range that could still be cancelled.
    """
    p = as_laurent(p)
    d = as_laurent(d)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    dtop = d.max_exp()
    dlead = d[dtop]
    span = dtop - d.min_exp()
    rem = dict(p._c)
    quot = {}
    while rem:
        top = max(rem)
        if top - span < min(rem):
            break
        c = rem[top]
        if c % dlead:
            break
        k = c // dlead
        shift = top - dtop
        quot[shift] = k
        for e, dc in d._c.items():
            ee = e + shift
            v = rem.get(ee, 0) - k * dc
            if v:
                rem[ee] = v
            else:
                rem.pop(ee, None)
    return LaurentPoly._raw(quot), LaurentPoly._raw(rem)


def exact_div(p, d):
    """Quotient of ``p`` by ``d`` in Z[q, q^-1]; raises :class:`InexactDivision`."""
    quot, rem = divmod_laurent(p, d)
    if rem:
        raise InexactDivision(as_laurent(p), as_laurent(d), quot, rem)
    return quot


def divides(d, p):
    try:
        exact_div(p, d)
    except InexactDivision:
        return False
    return True


# ---------------------------------------------------------------------------
# Polynomial gcd over Z, used to normalise rational functions.

def _to_poly(p):
    """Shift to an ordinary polynomial; returns (coefficient list low->high, shift)."""
    lo = p.min_exp()
    hi = p.max_exp()
    coeffs = [0] * (hi - lo + 1)
    for e, c in p.items():
        coeffs[e - lo] = c
    return coeffs, lo


def _from_poly(coeffs, shift=0):
    return LaurentPoly._raw({i + shift: c for i, c in enumerate(coeffs) if c})


def _poly_content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def _poly_primitive(a):
    g = _poly_content(a)
    if g == 0:
        return a
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _poly_prem(a, b):
    """Pseudo-remainder of a by b (lists low->high, b nonzero)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            a[i + shift] -= la * bc
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_gcd(a, b):
    a = _poly_primitive(a)
    b = _poly_primitive(b)
    while b:
        r = _poly_prem(a, b)
        a, b = b, (_poly_primitive(r) if r else [])
    return _poly_primitive(a)


def laurent_gcd(a, b):
    """A gcd in Z[q, q^-1], normalised to nonnegative exponents starting at 0."""
    a = as_laurent(a)
    b = as_laurent(b)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    pa, _ = _to_poly(a)
    pb, _ = _to_poly(b)
    g = _poly_gcd(pa, pb)
    content = gcd(a.content(), b.content())
    return _from_poly([c * content for c in g])


class RationalQ:
    """Element of Q(q) stored as num/den.

    Canonical form: num and den share no common factor (including integer
    content), den has lowest exponent 0 and a positive leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = as_laurent(num)
        den = as_laurent(den)
        if den.is_zero():
            raise ZeroDivisionError("RationalQ with zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        g = laurent_gcd(num, den)
        num = exact_div(num, g)
        den = exact_div(den, g)
        # den: lowest exponent 0 and positive leading coefficient
        shift = den.min_exp()
        num = num.shift(-shift)
        den = den.shift(-shift)
        if den.lead() < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, x):
        return x if isinstance(x, RationalQ) else cls(as_laurent(x))

    def is_laurent(self):
        return self.den.is_unit()

    def to_laurent(self):
        if self.den == ONE:
            return self.num
        if self.den.is_unit():
            return self.num * (self.den ** -1)
        raise InexactDivision(self.num, self.den, *divmod_laurent(self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RationalQ(as_laurent(other))
        if not isinstance(other, RationalQ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = RationalQ.coerce(other)
        if self.den == other.den:
            return RationalQ(self.num + other.num, self.den)
        return RationalQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = RationalQ.__new__(RationalQ)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        return self + (-RationalQ.coerce(other))

    def __rsub__(self, other):
        return RationalQ.coerce(other) - self

    def __mul__(self, other):
        other = RationalQ.coerce(other)
        return RationalQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalQ(self.den, self.num)

    def __truediv__(self, other):
        return self * RationalQ.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalQ.coerce(other) * self.inverse()

    def bar(self):
        return RationalQ(self.num.bar(), self.den.bar())

    def at_zero(self):
        """Value at q = 0 as a Fraction; raises on a pole."""
        from fractions import Fraction

        return Fraction(self.num.at_zero(), self.den[0])

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalQ({str(self)!r})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}
