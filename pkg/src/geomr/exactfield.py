"""Exact scalar arithmetic.

Two layers:

* ``Rational`` -- arbitrary-precision exact rationals.  Backed by
  ``gmpy2.mpq`` when available, by ``fractions.Fraction`` otherwise; both
  accept ints, ``"p/q"`` strings, and each other, and are always reduced.

* ``EpsRational`` -- rational functions of a single formal infinitesimal
  ``eps`` with Rational coefficients, stored as

      eps**v * p(eps) / q(eps),    p(0) != 0,  q(0) = 1.

  The integer ``v`` is the eps-adic valuation and is exact whether or not
  p/q is in lowest terms, which is what the tropical evaluation engine
  reads off.  Fractions are reduced eagerly while small and on demand via
  :meth:`EpsRational.canonical`; equality and valuation never depend on the
  state of reduction.

``LaurentPoly`` is the shared dense Laurent-polynomial container
(offset + coefficient vector).  It is coefficient-generic: the loop-group
layer reuses it for polynomials in the loop variable whose coefficients are
themselves Rational or EpsRational.
"""

from __future__ import annotations

from typing import Iterable

from .errors import DegenerateInput, MalformedInput

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rational


def as_rational(x) -> "Rational":
    """Coerce an int, a 'p/q' string, or any rational-like value exactly."""
    if isinstance(x, float):
        raise MalformedInput("refusing to coerce a float to an exact rational")
    try:
        return Rational(x)
    except (ValueError, TypeError) as exc:
        raise MalformedInput(f"not a rational value: {x!r}") from exc


def rational_str(x) -> str:
    """Render a Rational as 'p' or 'p/q' (the JSON wire format)."""
    return str(x)


def _exact_div(a, b):
    """a / b without the int/int -> float trap."""
    if isinstance(a, int) and isinstance(b, int):
        return Rational(a, b)
    return a / b


# === Laurent polynomials ====================================================


class LaurentPoly:
    """Dense Laurent polynomial ``sum_i coeffs[i] * z**(offset+i)``.

    Immutable by convention.  ``coeffs`` is ``()`` for the zero polynomial;
    otherwise its first and last entries are nonzero.  Coefficients may live
    in any exact field that supports ``+ - * /``, mixes with small ints, and
    is falsy exactly at zero.
    """

    __slots__ = ("offset", "coeffs")

    def __init__(self, offset: int, coeffs: Iterable):
        cs = list(coeffs)
        lo, hi = 0, len(cs)
        while lo < hi and not cs[lo]:
            lo += 1
        while hi > lo and not cs[hi - 1]:
            hi -= 1
        if lo == hi:
            self.offset = 0
            self.coeffs = ()
        else:
            self.offset = offset + lo
            self.coeffs = tuple(cs[lo:hi])

    # --- constructors ---

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(0, ())

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls(0, (c,))

    @classmethod
    def variable(cls, power: int = 1, c=1) -> "LaurentPoly":
        return cls(power, (c,))

    # --- structure ---

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Top exponent.  Undefined (raises) on the zero polynomial."""
        if not self.coeffs:
            raise DegenerateInput("degree of the zero polynomial")
        return self.offset + len(self.coeffs) - 1

    @property
    def low(self) -> int:
        """Bottom exponent (the valuation).  Undefined on zero."""
        if not self.coeffs:
            raise DegenerateInput("valuation of the zero polynomial")
        return self.offset

    def coeff(self, m: int):
        """Coefficient of z**m (0 when out of range)."""
        i = m - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def shift(self, m: int) -> "LaurentPoly":
        """Multiply by z**m."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.offset + m, self.coeffs)

    # --- ring operations ---

    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        if not x:
            return _LP_ZERO
        return LaurentPoly(0, (x,))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        try:
            other = LaurentPoly._coerce(other)
        except TypeError:
            return NotImplemented
        return self.offset == other.offset and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((LaurentPoly, self.offset, self.coeffs))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.offset, tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "LaurentPoly":
        other = LaurentPoly._coerce(other)
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        off = min(self.offset, other.offset)
        end = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        cs = [0] * (end - off)
        for i, c in enumerate(self.coeffs):
            cs[self.offset - off + i] = c
        for i, c in enumerate(other.coeffs):
            j = other.offset - off + i
            cs[j] = cs[j] + c
        return LaurentPoly(off, cs)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-LaurentPoly._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = LaurentPoly._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _LP_ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if not cb:
                    continue
                out[i + j] = out[i + j] + ca * cb
        return LaurentPoly(self.offset + other.offset, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self.coeffs) == 1:
                return LaurentPoly(n * self.offset, (self.coeffs[0] ** n,))
            raise DegenerateInput("negative power of a non-monomial")
        out = _LP_ONE
        for _ in range(n):
            out = out * self
        return out

    def eval_at(self, v):
        """Evaluate at z = v.  v must be invertible when offset < 0."""
        if not self.coeffs:
            return 0 * v
        acc = 0
        for c in reversed(self.coeffs):
            acc = v * acc + c
        if self.offset:
            acc = acc * v ** self.offset
        return acc

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises DegenerateInput when the division fails."""
        other = LaurentPoly._coerce(other)
        if not other.coeffs:
            raise DegenerateInput("division by the zero polynomial")
        if not self.coeffs:
            return _LP_ZERO
        num = list(self.coeffs)
        den = other.coeffs
        if len(num) < len(den):
            raise DegenerateInput("inexact polynomial division")
        lead = den[-1]
        q = [0] * (len(num) - len(den) + 1)
        for i in range(len(q) - 1, -1, -1):
            c = num[i + len(den) - 1]
            if not c:
                continue
            f = _exact_div(c, lead)
            q[i] = f
            for j, d in enumerate(den):
                num[i + j] = num[i + j] - f * d
        if any(bool(x) for x in num[: len(den) - 1]):
            raise DegenerateInput("inexact polynomial division")
        return LaurentPoly(self.offset - other.offset, q)

    def map_coeffs(self, fn) -> "LaurentPoly":
        return LaurentPoly(self.offset, tuple(fn(c) for c in self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.offset + i
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*z")
            else:
                parts.append(f"{c}*z^{e}")
        return " + ".join(parts)


_LP_ZERO = LaurentPoly(0, ())
_LP_ONE = LaurentPoly(0, (1,))


# --- polynomial gcd over the rationals (offset-0 coefficient tuples) --------


def _coeffs_mod(a: tuple, b: tuple) -> tuple:
    """Remainder of ordinary-poly division a mod b, trimmed; b nonempty."""
    num = list(a)
    lead = b[-1]
    for i in range(len(num) - len(b), -1, -1):
        c = num[i + len(b) - 1]
        if not c:
            continue
        f = _exact_div(c, lead)
        for j, d in enumerate(b):
            num[i + j] = num[i + j] - f * d
    hi = min(len(num), len(b) - 1)
    while hi > 0 and not num[hi - 1]:
        hi -= 1
    return tuple(num[:hi])


def _coeffs_gcd(a: tuple, b: tuple) -> tuple:
    """Monic gcd of two ordinary polynomials given as coefficient tuples."""
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        a, b = b, _coeffs_mod(a, b)
    lead = a[-1]
    if lead != 1:
        a = tuple(_exact_div(c, lead) for c in a)
    return a


# === rational functions of a formal infinitesimal ==========================


# Fractions whose numerator+denominator coefficient count stays at or below
# this are reduced eagerly; larger ones lazily (see EpsRational.canonical).
REDUCE_LIMIT = 48


class EpsRational:
    """Rational function of the formal infinitesimal eps.

    Canonical form ``eps**v * p/q`` with p, q ordinary polynomials, nonzero
    constant terms, and q(0) = 1; the zero element is p = 0, q = 1, v = 0.
    p/q is kept coprime whenever the pair is small (REDUCE_LIMIT) and can be
    forced coprime with :meth:`canonical`; ``val`` and ``==`` are exact
    either way (valuations read off the offsets, equality cross-multiplies).
    """

    __slots__ = ("v", "num", "den", "_reduced")

    def __init__(self, value=0):
        c = as_rational(value)
        self.v = 0
        self.num = LaurentPoly.const(c) if c else _LP_ZERO
        self.den = _LP_ONE
        self._reduced = True

    @classmethod
    def _make(cls, v: int, num: LaurentPoly, den: LaurentPoly,
              reduced: bool = False, force: bool = False) -> "EpsRational":
        self = object.__new__(cls)
        if den.is_zero:
            raise DegenerateInput("division by zero")
        if num.is_zero:
            self.v, self.num, self.den, self._reduced = 0, _LP_ZERO, _LP_ONE, True
            return self
        v = v + num.offset - den.offset
        nc, dc = num.coeffs, den.coeffs
        if not reduced and (force or len(nc) + len(dc) <= REDUCE_LIMIT):
            if len(dc) > 1 and len(nc) > 1:
                g = _coeffs_gcd(nc, dc)
                if len(g) > 1:
                    gp = LaurentPoly(0, g)
                    nc = LaurentPoly(0, nc).divexact(gp).coeffs
                    dc = LaurentPoly(0, dc).divexact(gp).coeffs
            reduced = True
        q0 = dc[0]
        if q0 != 1:
            inv = _exact_div(1, q0)
            nc = tuple(c * inv for c in nc)
            dc = tuple(c * inv for c in dc)
        self.v = v
        self.num = LaurentPoly(0, nc)
        self.den = LaurentPoly(0, dc)
        self._reduced = reduced or len(dc) == 1
        return self

    # --- structure ---

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def valuation(self) -> int:
        if self.num.is_zero:
            raise DegenerateInput("valuation of zero")
        return self.v

    def leading(self):
        """Lowest-order series coefficient (q(0) = 1, so just p(0))."""
        if self.num.is_zero:
            raise DegenerateInput("leading coefficient of zero")
        return self.num.coeffs[0]

    def canonical(self) -> "EpsRational":
        """The same value with p/q forced into lowest terms."""
        if self._reduced:
            return self
        return EpsRational._make(self.v, self.num, self.den, force=True)

    # --- field operations ---

    @staticmethod
    def _coerce(x):
        if isinstance(x, EpsRational):
            return x
        if isinstance(x, LaurentPoly):
            return NotImplemented
        try:
            return EpsRational(x)
        except MalformedInput:
            return NotImplemented

    def __bool__(self):
        return not self.num.is_zero

    def __eq__(self, other):
        other = EpsRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero or other.num.is_zero:
            return self.num.is_zero and other.num.is_zero
        if self.v != other.v:
            return False
        if self.den.coeffs == other.den.coeffs:
            return self.num.coeffs == other.num.coeffs
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        c = self.canonical()
        return hash((EpsRational, c.v, c.num.coeffs, c.den.coeffs))

    def __neg__(self):
        return EpsRational._make(self.v, -self.num, self.den, self._reduced)

    def __add__(self, other):
        other = EpsRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero:
            return other
        if other.num.is_zero:
            return self
        v = min(self.v, other.v)
        a = self.num.shift(self.v - v)
        b = other.num.shift(other.v - v)
        if self.den.coeffs == other.den.coeffs:
            return EpsRational._make(v, a + b, self.den)
        return EpsRational._make(v, a * other.den + b * self.den,
                                 self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = EpsRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = EpsRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero or other.num.is_zero:
            return _EPS_ZERO
        return EpsRational._make(self.v + other.v, self.num * other.num,
                                 self.den * other.den,
                                 reduced=self._reduced and other._reduced
                                 and len(self.den.coeffs) == 1
                                 and len(other.den.coeffs) == 1)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = EpsRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero:
            raise DegenerateInput("division by zero")
        if self.num.is_zero:
            return _EPS_ZERO
        return EpsRational._make(self.v - other.v, self.num * other.den,
                                 self.den * other.num)

    def __rtruediv__(self, other):
        other = EpsRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n == 0:
            return EpsRational(1)
        if n < 0:
            if self.num.is_zero:
                raise DegenerateInput("negative power of zero")
            base = EpsRational._make(-self.v, self.den, self.num)
            n = -n
        else:
            base = self
        out = EpsRational(1)
        for _ in range(n):
            out = out * base
        return out

    def __repr__(self):
        if self.num.is_zero:
            return "EpsRational(0)"
        p = repr(self.num).replace("z", "eps")
        q = repr(self.den).replace("z", "eps")
        body = p if self.den == _LP_ONE else f"({p})/({q})"
        if self.v:
            return f"eps^{self.v}*({body})"
        return body


_EPS_ZERO = EpsRational(0)


# === module-level ops =======================================================


def eps_monomial(power: int, coeff=1) -> EpsRational:
    """The element coeff * eps**power."""
    c = as_rational(coeff)
    if not c:
        return _EPS_ZERO
    return EpsRational._make(power, LaurentPoly.const(c), _LP_ONE, reduced=True)


def val(x) -> int:
    """eps-adic valuation.  DegenerateInput on zero."""
    if isinstance(x, EpsRational):
        return x.valuation
    if isinstance(x, LaurentPoly):
        return x.low
    c = as_rational(x)
    if not c:
        raise DegenerateInput("valuation of zero")
    return 0


def field_arith(op: str, a, b):
    """Dispatch one exact field operation: '+', '-', '*', '/'."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise MalformedInput(f"unknown field operation {op!r}")
