"""Exact scalar arithmetic: rationals, quadratic surds and germs at infinity.

Three number kinds show up in the rest of the package:

* ``Fraction`` (and ``int``) for everything rational;
* :class:`Surd`, an element ``a + b*sqrt(d)`` of a real quadratic field, which
  is what square roots and the selector produce from rational data;
* :class:`Germ`, a rational function of ``x = 1/n`` ordered by its behaviour
  as ``n -> oo``.  This is the ordered field used to compute limits of
  per-index feasible sets along a residue class.

Floats are allowed to mix in (they absorb everything), but no exact routine
ever produces one.
"""

from __future__ import annotations

import math
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]
Number = Union[int, Fraction, float, "Surd", "Germ"]

_SMALL_PRIMES: list[int] = []


def _small_primes(limit: int = 1000) -> list[int]:
    if not _SMALL_PRIMES:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, int(limit**0.5) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _SMALL_PRIMES.extend(i for i, flag in enumerate(sieve) if flag)
    return _SMALL_PRIMES


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def _square_split(n: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r``; ``r`` free of small square factors."""
    s = 1
    for p in _small_primes():
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            s *= p
    root = math.isqrt(n)
    if root * root == n:
        return s * root, 1
    return s, n


def surd(a, b, radicand) -> "Number":
    """Build ``a + b*sqrt(radicand)`` in normal form, collapsing to a Fraction when possible."""
    a = to_fraction(a)
    b = to_fraction(b)
    r = to_fraction(radicand)
    if r < 0:
        raise ValueError("negative radicand")
    if b == 0 or r == 0:
        return a
    # sqrt(p/q) = sqrt(p*q)/q
    b = b / r.denominator
    s, d = _square_split(r.numerator * r.denominator)
    b = b * s
    if d == 1:
        return a + b
    return Surd(a, b, d)


def exact_sqrt(x):
    """Square root that stays exact for rational input."""
    if isinstance(x, (int, Fraction)):
        if x < 0:
            raise ValueError("sqrt of negative number")
        return surd(0, 1, x)
    if isinstance(x, float):
        return math.sqrt(x)
    if isinstance(x, Germ):
        c = x.constant_value()
        if c is None:
            raise TypeError("sqrt of a non-constant germ is not rational in 1/n")
        return exact_sqrt(c)
    if isinstance(x, Surd):
        raise TypeError("nested radicals are not supported")
    raise TypeError(f"unsupported type {type(x).__name__}")


def sign(x) -> int:
    if isinstance(x, (Surd, Germ)):
        return x.sign()
    return (x > 0) - (x < 0)


def is_exact(x) -> bool:
    return not isinstance(x, float)


class Surd:
    """``a + b*sqrt(d)`` with rational ``a, b``, ``b != 0`` and integer ``d > 1``.

    Instances are only made through :func:`surd`, which guarantees the normal
    form.  Equal values over the same ``d`` compare and hash equal.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Fraction, b: Fraction, d: int):
        self.a = a
        self.b = b
        self.d = d

    # -- coercion -----------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Surd):
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    # -- arithmetic ---------------------------------------------------
    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _mixed(self, other) -> bool:
        # no common quadratic field: arithmetic falls back to floats
        return isinstance(other, float) or (isinstance(other, Surd) and other.d != self.d)

    def __add__(self, other):
        if self._mixed(other):
            return float(self) + float(other)
        if isinstance(other, Germ):
            return NotImplemented
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        c, e = lifted
        return _mk(self.a + c, self.b + e, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        if self._mixed(other):
            return float(self) - float(other)
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        c, e = lifted
        return _mk(self.a - c, self.b - e, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._mixed(other):
            return float(self) * float(other)
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        c, e = lifted
        return _mk(self.a * c + self.b * e * self.d, self.a * e + self.b * c, self.d)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - self.b * self.b * self.d
        return Surd(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        if self._mixed(other):
            return float(self) / float(other)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("surd division by zero")
            return Surd(self.a / other, self.b / other, self.d)
        if isinstance(other, Surd):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Fraction(1)
        for _ in range(n):
            out = out * self
        return out

    # -- order --------------------------------------------------------
    def sign(self) -> int:
        sa = sign(self.a)
        sb = sign(self.b)
        if sa >= 0 and sb >= 0:
            return 1 if (sa or sb) else 0
        if sa <= 0 and sb <= 0:
            return -1
        gap = self.a * self.a - self.b * self.b * self.d
        return sa if gap > 0 else -sa

    def _cmp(self, other) -> int:
        if isinstance(other, float):
            x = float(self)
            return (x > other) - (x < other)
        if isinstance(other, Surd) and other.d != self.d:
            return _cmp_decimal(self, other)
        return sign(self - other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, float, Surd)):
            return self._cmp(other) == 0
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, (int, Fraction, float, Surd)):
            return self._cmp(other) < 0
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, (int, Fraction, float, Surd)):
            return self._cmp(other) <= 0
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (int, Fraction, float, Surd)):
            return self._cmp(other) > 0
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, Fraction, float, Surd)):
            return self._cmp(other) >= 0
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        return format_number(self)


def _mk(a: Fraction, b: Fraction, d: int):
    return a if b == 0 else Surd(a, b, d)


def _decimal(x, prec: int) -> Decimal:
    if isinstance(x, Surd):
        return _decimal(x.a, prec) + _decimal(x.b, prec) * Decimal(x.d).sqrt()
    x = Fraction(x)
    return Decimal(x.numerator) / Decimal(x.denominator)


def _cmp_decimal(x, y) -> int:
    # Distinct squarefree radicals are linearly independent, so the
    # difference is nonzero unless normalisation missed a large square factor.
    for prec in (50, 120, 300):
        with localcontext() as ctx:
            ctx.prec = prec
            diff = _decimal(x, prec) - _decimal(y, prec)
            if abs(diff) > Decimal(10) ** (-(prec - 10)):
                return 1 if diff > 0 else -1
    return 0


# ---------------------------------------------------------------------------
# Germs of rational functions in x = 1/n


def _trim(p: tuple) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _val(p: tuple) -> int:
    for i, c in enumerate(p):
        if c != 0:
            return i
    return len(p)


def _padd(p: tuple, q: tuple) -> tuple:
    n = max(len(p), len(q))
    return _trim(
        tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))
    )


def _pmul(p: tuple, q: tuple) -> tuple:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(tuple(out))


def _peval(p: tuple, n: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc / n + c
    return acc


class Germ:
    """Rational function ``num(x)/den(x)`` of ``x = 1/n``, ordered at ``n -> oo``.

    ``g > 0`` means ``g(n) > 0`` for all sufficiently large ``n``.  The order
    is total because a nonzero rational function has eventually constant sign.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)):
        num = _trim(tuple(Fraction(c) for c in num))
        den = _trim(tuple(Fraction(c) for c in den))
        if not den:
            raise ZeroDivisionError("germ with zero denominator")
        if not num:
            num, den = (), (Fraction(1),)
        else:
            shift = min(_val(num), _val(den))
            if shift:
                num, den = num[shift:], den[shift:]
            if len(den) == 1 and den[0] != 1:
                num = tuple(c / den[0] for c in num)
                den = (Fraction(1),)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, coeffs) -> "Germ":
        return cls(tuple(coeffs))

    def constant_value(self):
        if len(self.den) == 1 and len(self.num) <= 1:
            return self.num[0] / self.den[0] if self.num else Fraction(0)
        return None

    def _lift(self, other) -> "Germ | None":
        if isinstance(other, Germ):
            return other
        if isinstance(other, (int, Fraction)):
            return Germ((other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Germ(_padd(self.num, o.num), self.den)
        return Germ(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return Germ(tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Germ(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("germ division by zero")
        return Germ(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def sign(self) -> int:
        if not self.num:
            return 0
        return sign(self.num[_val(self.num)]) * sign(self.den[_val(self.den)])

    def _cmp(self, other) -> int:
        o = self._lift(other)
        if o is None:
            raise TypeError(f"cannot compare germ with {type(other).__name__}")
        return (self - o).sign()

    def __eq__(self, other):
        if self._lift(other) is None:
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        c = self.constant_value()
        return hash(c) if c is not None else hash((self.num, self.den))

    def at(self, n: int) -> Fraction:
        """Exact value at index ``n``."""
        d = _peval(self.den, n)
        if d == 0:
            raise ZeroDivisionError(f"germ has a pole at n={n}")
        return _peval(self.num, n) / d

    def limit(self) -> Fraction:
        vn, vd = _val(self.num), _val(self.den)
        if not self.num or vn > vd:
            return Fraction(0)
        if vn < vd:
            raise OverflowError("germ is unbounded")
        return self.num[vn] / self.den[vd]

    def __repr__(self):
        return f"Germ(num={[str(c) for c in self.num]}, den={[str(c) for c in self.den]})"


def at_index(x, n: int):
    """Evaluate a germ at ``n``; plain numbers pass through."""
    return x.at(n) if isinstance(x, Germ) else x


def limit_of(x):
    return x.limit() if isinstance(x, Germ) else x


# ---------------------------------------------------------------------------
# literals

_SURD_RE = re.compile(
    r"^\s*(?:(?P<a>[-+]?[0-9./]+)\s*(?P<op>[-+])|(?P<sign>[-+]?))\s*(?P<b>[0-9./]+)\s*\*\s*sqrt\(\s*(?P<d>[0-9]+)\s*\)\s*$"
)


def parse_number(text) -> Number:
    """Parse ints, decimals, ``"p/q"`` and the surd form emitted by :func:`format_number`.

    Decimals are read exactly (``"0.1"`` is ``1/10``).
    """
    if isinstance(text, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(text, (int, Fraction, Surd)):
        return text
    if isinstance(text, float):
        return Fraction(repr(text))
    if not isinstance(text, str):
        raise ValueError(f"cannot parse number from {text!r}")
    m = _SURD_RE.match(text)
    if m:
        b = Fraction(m["b"])
        if (m["op"] or m["sign"]) == "-":
            b = -b
        return surd(Fraction(m["a"] or 0), b, int(m["d"]))
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad number literal {text!r}") from exc


def format_number(x) -> str | float:
    if isinstance(x, Surd):
        if x.a == 0:
            return f"{x.b}*sqrt({x.d})"
        op = "-" if x.b < 0 else "+"
        return f"{x.a}{op}{abs(x.b)}*sqrt({x.d})"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return x
    if isinstance(x, Germ):
        c = x.constant_value()
        if c is not None:
            return str(c)
        return repr(x)
    raise TypeError(f"cannot format {x!r}")
