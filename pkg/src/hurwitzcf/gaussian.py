"""Exact arithmetic over the Gaussian integers Z[i] and their field of fractions."""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import lcm as _lcm


class GaussianInt:
    """An immutable Gaussian integer re + im*i with exact int components."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0) -> None:
        if not isinstance(re, int) or not isinstance(im, int):
            raise TypeError("GaussianInt components must be int")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("GaussianInt is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_any(cls, value: int | GaussianInt) -> GaussianInt:
        """Coerce an int or GaussianInt to GaussianInt."""
        if isinstance(value, GaussianInt):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussianInt")

    # -- ring structure -----------------------------------------------

    def __add__(self, other: int | GaussianInt) -> GaussianInt:
        if isinstance(other, int):
            return GaussianInt(self.re + other, self.im)
        if isinstance(other, GaussianInt):
            return GaussianInt(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: int | GaussianInt) -> GaussianInt:
        if isinstance(other, int):
            return GaussianInt(self.re - other, self.im)
        if isinstance(other, GaussianInt):
            return GaussianInt(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other: int | GaussianInt) -> GaussianInt:
        return (-self).__add__(other)

    def __mul__(self, other: int | GaussianInt) -> GaussianInt:
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        if isinstance(other, GaussianInt):
            return GaussianInt(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __pos__(self) -> GaussianInt:
        return self

    def __pow__(self, exponent: int) -> GaussianInt:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("GaussianInt powers must have a nonnegative int exponent")
        result = GaussianInt(1, 0)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> GaussianInt:
        """Complex conjugate."""
        return GaussianInt(self.re, -self.im)

    @property
    def norm(self) -> int:
        """The field norm re**2 + im**2."""
        return self.re * self.re + self.im * self.im

    # -- Euclidean structure ------------------------------------------

    def __divmod__(self, other: int | GaussianInt) -> tuple[GaussianInt, GaussianInt]:
        """Nearest-integer quotient and remainder; norm(r) <= norm(other)/2."""
        other = GaussianInt.from_any(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Gaussian integer")
        n = other.norm
        t = self * other.conj()
        q = GaussianInt(_round_half_up(t.re, n), _round_half_up(t.im, n))
        return q, self - q * other

    def __floordiv__(self, other: int | GaussianInt) -> GaussianInt:
        return divmod(self, other)[0]

    def __mod__(self, other: int | GaussianInt) -> GaussianInt:
        return divmod(self, other)[1]

    # -- predicates and normal forms ----------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm == 1

    def canonical_associate(self) -> tuple[GaussianInt, GaussianInt]:
        """Return (a, u) with a = self*u, u a unit, and a in {re > 0, im >= 0} or a = 0."""
        z, u = self, GaussianInt(1, 0)
        for _ in range(3):
            if z.is_zero() or (z.re > 0 and z.im >= 0):
                return z, u
            z, u = z * GaussianInt(0, 1), u * GaussianInt(0, 1)
        return z, u

    # -- hashing / display --------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianInt):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.re == other and self.im == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self) -> str:
        return format_gaussian_int(self)

    def key(self) -> tuple[int, int]:
        """A deterministic sort key (re, im)."""
        return (self.re, self.im)


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)
UNITS = (GaussianInt(1, 0), GaussianInt(0, 1), GaussianInt(-1, 0), GaussianInt(0, -1))


def _round_half_up(numerator: int, denominator: int) -> int:
    """Nearest integer to numerator/denominator (denominator > 0), ties toward +inf."""
    return (2 * numerator + denominator) // (2 * denominator)


def exact_div(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    """Exact quotient a/b in Z[i]; raises if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero Gaussian integer")
    n = b.norm
    t = a * b.conj()
    if t.re % n or t.im % n:
        raise ValueError(f"{b} does not divide {a} in Z[i]")
    return GaussianInt(t.re // n, t.im // n)


def gauss_gcd(a: int | GaussianInt, b: int | GaussianInt) -> GaussianInt:
    """Greatest common divisor in Z[i], returned as the canonical associate."""
    a = GaussianInt.from_any(a)
    b = GaussianInt.from_any(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        r = a % b
        assert r.norm * 2 <= b.norm, "nearest-integer remainder failed to shrink"
        a, b = b, r
    return a.canonical_associate()[0]


def nearest_gaussian(z: GaussianRational | GaussianInt | int) -> GaussianInt:
    """The nearest Gaussian integer [z], components rounded by floor(x + 1/2)."""
    if isinstance(z, int):
        return GaussianInt(z, 0)
    if isinstance(z, GaussianInt):
        return z
    re, im = z.real, z.imag
    return GaussianInt(
        _round_half_up(re.numerator, re.denominator),
        _round_half_up(im.numerator, im.denominator),
    )


class GaussianRational:
    """An exact fraction of Gaussian integers, kept reduced with canonical denominator."""

    __slots__ = ("num", "den")

    def __init__(
        self,
        num: int | GaussianInt = 0,
        den: int | GaussianInt = 1,
    ) -> None:
        num = GaussianInt.from_any(num)
        den = GaussianInt.from_any(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Gaussian rational")
        if num.is_zero():
            num, den = ZERO, ONE
        else:
            g = gauss_gcd(num, den)
            if not g.is_unit():
                num, den = exact_div(num, g), exact_div(den, g)
            den, u = den.canonical_associate()
            num = num * u
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, num: GaussianInt, den: GaussianInt) -> GaussianRational:
        """Build from a fraction already known to be reduced (skips the gcd)."""
        self = object.__new__(cls)
        if num.is_zero():
            num, den = ZERO, ONE
        else:
            den, u = den.canonical_associate()
            num = num * u
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    @classmethod
    def from_fractions(cls, re: Fraction, im: Fraction) -> GaussianRational:
        """Build from exact rational real and imaginary parts."""
        re, im = Fraction(re), Fraction(im)
        q = _lcm(re.denominator, im.denominator)
        num = GaussianInt(re.numerator * (q // re.denominator), im.numerator * (q // im.denominator))
        return cls(num, GaussianInt(q, 0))

    # -- exact components ---------------------------------------------

    @property
    def real(self) -> Fraction:
        t = self.num * self.den.conj()
        return Fraction(t.re, self.den.norm)

    @property
    def imag(self) -> Fraction:
        t = self.num * self.den.conj()
        return Fraction(t.im, self.den.norm)

    def norm(self) -> Fraction:
        """The exact squared modulus |self|^2."""
        return Fraction(self.num.norm, self.den.norm)

    # -- field structure ----------------------------------------------

    def _coerce(self, other: object) -> GaussianRational | None:
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, GaussianInt)):
            return GaussianRational._raw(GaussianInt.from_any(other), ONE)
        return None

    def __add__(self, other: object) -> GaussianRational:
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return GaussianRational(self.num * w.den + w.num * self.den, self.den * w.den)

    __radd__ = __add__

    def __sub__(self, other: object) -> GaussianRational:
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return GaussianRational(self.num * w.den - w.num * self.den, self.den * w.den)

    def __rsub__(self, other: object) -> GaussianRational:
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return w - self

    def __mul__(self, other: object) -> GaussianRational:
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return GaussianRational(self.num * w.num, self.den * w.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> GaussianRational:
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return GaussianRational(self.num * w.den, self.den * w.num)

    def __rtruediv__(self, other: object) -> GaussianRational:
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return w / self

    def __neg__(self) -> GaussianRational:
        return GaussianRational._raw(-self.num, self.den)

    def reciprocal(self) -> GaussianRational:
        """1/self; exact, stays reduced."""
        if self.num.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        return GaussianRational._raw(self.den, self.num)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_gaussian_int(self) -> bool:
        return self.den == ONE

    def in_fundamental_domain(self) -> bool:
        """Exact membership in F = [-1/2, 1/2) x [-1/2, 1/2)."""
        half = Fraction(1, 2)
        re, im = self.real, self.imag
        return -half <= re < half and -half <= im < half

    # -- hashing / display ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return self.num == w.num and self.den == w.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"GaussianRational({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        return format_gaussian_rational(self)


def format_gaussian_int(z: GaussianInt) -> str:
    """Canonical text form: '0', '-3', 'i', '2-3i', ... (no spaces)."""
    re, im = z.re, z.im
    if im == 0:
        return str(re)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = f"{im}i"
    if re == 0:
        return imag
    sign = "+" if im > 0 else ""
    return f"{re}{sign}{imag}"


def format_gaussian_rational(z: GaussianRational) -> str:
    """Canonical text form 'a+bi / c+di'; integer values print without a denominator."""
    if z.den == ONE:
        return format_gaussian_int(z.num)
    return f"{format_gaussian_int(z.num)} / {format_gaussian_int(z.den)}"


_REAL_RE = _re.compile(r"[+-]?\d+\Z")
_IMAG_RE = _re.compile(r"([+-]?)(\d*)i\Z")
_BOTH_RE = _re.compile(r"([+-]?\d+)([+-])(\d*)i\Z")


def parse_gaussian_int(text: str) -> GaussianInt:
    """Parse 'a+bi' forms: '0', '-3', 'i', '-i', '4i', '2-3i', '-2+i'."""
    s = text.strip().replace(" ", "")
    if _REAL_RE.fullmatch(s):
        return GaussianInt(int(s), 0)
    m = _IMAG_RE.fullmatch(s)
    if m:
        sign = -1 if m.group(1) == "-" else 1
        mag = int(m.group(2)) if m.group(2) else 1
        return GaussianInt(0, sign * mag)
    m = _BOTH_RE.fullmatch(s)
    if m:
        re_part = int(m.group(1))
        sign = -1 if m.group(2) == "-" else 1
        mag = int(m.group(3)) if m.group(3) else 1
        return GaussianInt(re_part, sign * mag)
    raise ValueError(f"cannot parse Gaussian integer: {text!r}")


def parse_gaussian_rational(text: str) -> GaussianRational:
    """Parse 'a+bi / c+di' (spaces optional) or a plain Gaussian integer."""
    parts = text.split("/")
    if len(parts) == 1:
        return GaussianRational(parse_gaussian_int(parts[0]), ONE)
    if len(parts) == 2:
        return GaussianRational(parse_gaussian_int(parts[0]), parse_gaussian_int(parts[1]))
    raise ValueError(f"cannot parse Gaussian rational: {text!r}")
