"""Finite complex continued fractions: convergents, exact evaluation, folding."""

from __future__ import annotations

from dataclasses import dataclass

from .gaussian import ONE, ZERO, GaussianInt, GaussianRational, parse_gaussian_int


class CfUndefinedError(ArithmeticError):
    """Raised when a finite continued fraction hits a zero intermediate value."""


@dataclass(frozen=True)
class CfSequence:
    """A finite continued fraction head + 1/(a_1 + 1/(a_2 + ...))."""

    head: GaussianInt
    tail: tuple[GaussianInt, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "head", GaussianInt.from_any(self.head))
        object.__setattr__(self, "tail", tuple(GaussianInt.from_any(a) for a in self.tail))

    def __str__(self) -> str:
        return format_cf(self)

    def digit(self, n: int) -> GaussianInt:
        """a_n with a_0 = head and a_1.. = tail."""
        return self.head if n == 0 else self.tail[n - 1]


@dataclass(frozen=True)
class ConvergentTable:
    """Numerators and denominators p_n, q_n for n = -1, 0, ..., N."""

    ps: tuple[GaussianInt, ...]
    qs: tuple[GaussianInt, ...]

    def p(self, n: int) -> GaussianInt:
        return self.ps[n + 1]

    def q(self, n: int) -> GaussianInt:
        return self.qs[n + 1]

    @property
    def last_index(self) -> int:
        return len(self.ps) - 2

    def value(self, n: int) -> GaussianRational:
        return GaussianRational._raw(self.p(n), self.q(n))


def convergents(cf: CfSequence) -> ConvergentTable:
    """Run p_n = a_n p_(n-1) + p_(n-2), q_n likewise, from p_(-1) = 1, q_(-1) = 0."""
    ps = [ONE, cf.head]
    qs = [ZERO, ONE]
    for a in cf.tail:
        ps.append(a * ps[-1] + ps[-2])
        qs.append(a * qs[-1] + qs[-2])
    return ConvergentTable(tuple(ps), tuple(qs))


def evaluate(cf: CfSequence) -> GaussianRational:
    """Exact value by back-substitution; raises CfUndefinedError on a zero suffix."""
    num, den = None, None
    n = len(cf.tail)
    for j in range(n, 0, -1):
        a = cf.tail[j - 1]
        if num is None:
            num, den = a, ONE
        else:
            if num.is_zero():
                raise CfUndefinedError(
                    f"undefined finite continued fraction: suffix starting at digit {j + 1} "
                    "evaluates to zero"
                )
            num, den = a * num + den, num
    if num is None:
        return GaussianRational._raw(cf.head, ONE)
    if num.is_zero():
        raise CfUndefinedError(
            "undefined finite continued fraction: suffix starting at digit 1 evaluates to zero"
        )
    return GaussianRational._raw(cf.head * num + den, num)


def mirror(digits: tuple[GaussianInt, ...]) -> tuple[GaussianInt, ...]:
    """Reverse a digit tuple."""
    return tuple(reversed(digits))


def mirror_negate(digits: tuple[GaussianInt, ...]) -> tuple[GaussianInt, ...]:
    """Reverse and negate a digit tuple."""
    return tuple(-d for d in reversed(digits))


def fold(cf: CfSequence, x: GaussianInt | int) -> CfSequence:
    """Append x then the negated mirror of the tail: value rises by (-1)^n/(x*q_n^2)."""
    x = GaussianInt.from_any(x)
    if x.is_zero():
        raise ValueError("fold requires a nonzero middle digit")
    if not cf.tail:
        raise ValueError("fold requires a nonempty tail")
    return CfSequence(cf.head, cf.tail + (x,) + mirror_negate(cf.tail))


def fold_unit(cf: CfSequence) -> CfSequence:
    """The x = +1 fold with the unit absorbed: pivot splits into a_n+1, a_n-1."""
    if not cf.tail:
        raise ValueError("fold_unit requires a nonempty tail")
    body, last = cf.tail[:-1], cf.tail[-1]
    return CfSequence(cf.head, body + (last + 1, last - 1) + mirror(body))


def fold_unit_neg(cf: CfSequence) -> CfSequence:
    """The x = -1 fold with the unit absorbed: pivot splits into a_n-1, a_n+1."""
    if not cf.tail:
        raise ValueError("fold_unit_neg requires a nonempty tail")
    body, last = cf.tail[:-1], cf.tail[-1]
    return CfSequence(cf.head, body + (last - 1, last + 1) + mirror(body))


def fold_sign(n: int) -> int:
    """(-1)^n, the sign of the folding correction for a length-n tail."""
    return -1 if n & 1 else 1


def format_cf(cf: CfSequence) -> str:
    """Text form '[a0; a1, a2, ...]'; an empty tail prints as '[a0;]'."""
    inside = ", ".join(str(a) for a in cf.tail)
    if inside:
        return f"[{cf.head}; {inside}]"
    return f"[{cf.head};]"


def parse_cf(text: str) -> CfSequence:
    """Parse '[a0; a1, a2, ...]' (spaces optional; '[a0]' and '[a0;]' allowed)."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"cannot parse continued fraction: {text!r}")
    s = s[1:-1]
    head_text, _, tail_text = s.partition(";")
    head = parse_gaussian_int(head_text)
    tail_text = tail_text.strip()
    if not tail_text:
        return CfSequence(head, ())
    tail = tuple(parse_gaussian_int(tok) for tok in tail_text.split(","))
    return CfSequence(head, tail)
