"""Exact scalars: rationals and the ordered field Q(sqrt 2).

Every payoff and probability in the package is a :class:`QuadExt`, i.e. a
number ``r + s*sqrt(2)`` with rational ``r`` and ``s``.  Rationals are plain
:class:`fractions.Fraction` objects, which already keep themselves in
lowest terms with a positive denominator.

The text format used everywhere (JSON documents, CLI arguments and output)
is::

    scalar   := rational | decimal | term "*sqrt2" | term ("+"|"-") term "*sqrt2"
    rational := [-]digits[/digits]
    decimal  := [-]digits.digits

Decimals are read exactly, ``0.30602`` is ``15301/50000``.
"""
from __future__ import annotations

import re
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational

__all__ = [
    "QuadExt",
    "ScalarParseError",
    "as_scalar",
    "compare",
    "parse_scalar",
    "render",
    "SQRT2",
    "ZERO",
    "ONE",
]


class ScalarParseError(ValueError):
    """Raised for text that is not a scalar literal."""

    def __init__(self, token, reason="malformed scalar literal"):
        super().__init__(f"{reason}: {token!r}")
        self.token = token


def _sign_of_frac(q):
    return (q > 0) - (q < 0)


class QuadExt:
    """Immutable number ``rat + root2 * sqrt(2)`` with exact arithmetic.

    Instances compare, hash and interoperate with ``int`` and ``Fraction``;
    a QuadExt with zero irrational part is equal to (and hashes like) the
    corresponding rational.
    """

    __slots__ = ("rat", "root2")

    def __init__(self, rat=0, root2=0):
        if isinstance(rat, QuadExt):
            if root2:
                raise TypeError("cannot combine a QuadExt with an explicit root2 part")
            rat, root2 = rat.rat, rat.root2
        object.__setattr__(self, "rat", Fraction(rat))
        object.__setattr__(self, "root2", Fraction(root2))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def __reduce__(self):
        return (QuadExt, (self.rat, self.root2))

    # -- classification ----------------------------------------------------
    @property
    def is_rational(self):
        return self.root2 == 0

    def sign(self):
        """Exact sign, -1, 0 or 1."""
        a, b = self.rat, self.root2
        sa, sb = _sign_of_frac(a), _sign_of_frac(b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins, |a| vs |b|*sqrt2
        return sa if a * a > 2 * b * b else sb

    def conjugate(self):
        return QuadExt(self.rat, -self.root2)

    def norm(self):
        """Field norm ``rat**2 - 2*root2**2`` (a rational)."""
        return self.rat * self.rat - 2 * self.root2 * self.root2

    # -- arithmetic ----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, QuadExt):
            return other
        if isinstance(other, (int, Rational)):
            return QuadExt(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.rat + o.rat, self.root2 + o.root2)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.rat - o.rat, self.root2 - o.root2)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadExt(-self.rat, -self.root2)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.rat, self.root2, o.rat, o.root2
        if not b and not d:
            return QuadExt(a * c)
        return QuadExt(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        return QuadExt(self.rat / n, -self.root2 / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.root2:
            if not o.rat:
                raise ZeroDivisionError("division by zero in Q(sqrt2)")
            return QuadExt(self.rat / o.rat, self.root2 / o.rat)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadExt(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ----------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.rat == o.rat and self.root2 == o.root2

    def __hash__(self):
        if not self.root2:
            return hash(self.rat)
        return hash((self.rat, self.root2))

    def _cmp(self, other):
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self):
        return bool(self.rat) or bool(self.root2)

    # -- conversions ---------------------------------------------------------
    def __float__(self):
        return float(self.to_decimal(30))

    def to_decimal(self, digits=17):
        """Decimal approximation carrying ``digits`` significant digits."""
        with localcontext() as ctx:
            ctx.prec = digits + 10
            r = Decimal(self.rat.numerator) / Decimal(self.rat.denominator)
            if self.root2:
                s = Decimal(self.root2.numerator) / Decimal(self.root2.denominator)
                r += s * Decimal(2).sqrt()
            ctx.prec = digits
            return +r

    def approx(self, digits=6):
        """Fixed-point rendering with ``digits`` decimals."""
        d = self.to_decimal(digits + 25)
        return f"{d:.{digits}f}"

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"QuadExt({render(self)!r})"


ZERO = QuadExt(0)
ONE = QuadExt(1)
SQRT2 = QuadExt(0, 1)


def as_scalar(value):
    """Coerce ``int``, ``Fraction``, ``QuadExt`` or a literal string."""
    if isinstance(value, QuadExt):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return QuadExt(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


_NUM = r"\d+(?:/\d+|\.\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?P<first>[+-]?{_NUM})(?P<firstroot>\*sqrt2)?"
    rf"(?:(?P<second>[+-]{_NUM})\*sqrt2)?$"
)


def _parse_number(token):
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise ScalarParseError(token, "zero denominator")
        return Fraction(int(num), int(den))
    # Fraction parses "12.345" exactly, no binary float involved
    return Fraction(token)


def parse_scalar(text):
    """Parse a scalar literal into an exact :class:`QuadExt`.

    >>> parse_scalar("1/2+1/4*sqrt2")
    QuadExt('1/2+1/4*sqrt2')
    >>> parse_scalar("0.30602")
    QuadExt('15301/50000')
    """
    if not isinstance(text, str):
        raise ScalarParseError(repr(text), "expected a string")
    compact = "".join(text.split())
    m = _SCALAR_RE.match(compact)
    if m is None:
        raise ScalarParseError(text)
    first = _parse_number(m.group("first"))
    if m.group("firstroot"):
        if m.group("second"):
            raise ScalarParseError(text)
        return QuadExt(0, first)
    second = m.group("second")
    return QuadExt(first, _parse_number(second) if second else 0)


def _render_frac(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def render(x):
    """Canonical literal for ``x``; ``parse_scalar(render(x)) == x``."""
    x = as_scalar(x)
    if not x.root2:
        return _render_frac(x.rat)
    root = _render_frac(abs(x.root2)) + "*sqrt2"
    if not x.rat:
        return ("-" if x.root2 < 0 else "") + root
    return _render_frac(x.rat) + ("-" if x.root2 < 0 else "+") + root


def compare(x, y):
    """Exact three-way comparison: -1 if x < y, 0 if equal, 1 if x > y."""
    return (as_scalar(x) - as_scalar(y)).sign()
