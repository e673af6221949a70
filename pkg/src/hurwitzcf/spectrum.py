"""Prescribed-irrationality-exponent numbers built by repeated folding."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .cf import CfSequence, convergents, evaluate, fold, fold_unit, fold_unit_neg, mirror_negate
from .exactreal import ln_brackets
from .gaussian import ONE, ZERO, GaussianInt, GaussianRational, exact_div, gauss_gcd
from .geometry import is_full
from .hcf import hcf_expand

_MAX_BRACKET_BITS = 4096


def _check_base(base: GaussianInt) -> int:
    """Return A for a base of the form -A+i or -A-i with A >= 1."""
    base = GaussianInt.from_any(base)
    if base.re >= 0 or abs(base.im) != 1:
        raise ValueError("base must be -A+i or -A-i with A >= 1")
    return -base.re


@dataclass(frozen=True)
class FoldingSchedule:
    """Exponent schedule v_n = u_n + 2 v_{n-1} driving the folded series."""

    v0: int
    u: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))
        if self.v0 < 1:
            raise ValueError("v0 must be a positive integer")
        if any(x < 0 for x in self.u):
            raise ValueError("schedule increments must be nonnegative")
        for n, vn in enumerate(self.v()):
            if vn < (1 << n):
                raise ValueError("schedule grows too slowly: v_n < 2**n")

    def v(self) -> tuple[int, ...]:
        """The exponents v_0, v_1, ..., v_N."""
        out = [self.v0]
        for x in self.u:
            out.append(x + 2 * out[-1])
        return tuple(out)

    @property
    def stage_count(self) -> int:
        return len(self.u)


def _floor_log(ratio: Fraction, base_ratio: Fraction) -> int:
    """Largest m >= 0 with base_ratio**m <= ratio, or -1 when ratio < 1."""
    if ratio < 1:
        return -1
    m, power = 0, Fraction(1)
    while power * base_ratio <= ratio:
        power *= base_ratio
        m += 1
    return m


def _ceil_log(target: int, base_value: int) -> int:
    """Smallest m >= 0 with base_value**m >= target."""
    m, power = 0, 1
    while power < target:
        power *= base_value
        m += 1
    return m


def schedule_from_tau(tau: Fraction, lam: Fraction, base: GaussianInt, stages: int) -> FoldingSchedule:
    """Schedule with v_n = floor(lam * tau**(n+3+m0)), so v_{n+1}/v_n -> tau."""
    tau, lam = Fraction(tau), Fraction(lam)
    if tau < 2:
        raise ValueError("growth ratio below 2 is not constructible by folding")
    if lam <= 0:
        raise ValueError("scale factor must be positive")
    if stages < 1:
        raise ValueError("need at least one stage")
    norm = _check_base(base) ** 2 + 1
    m0 = 1 + max(0, _floor_log(3 / lam, tau), _ceil_log(9, norm))
    v = [int(lam * tau ** (n + 3 + m0)) for n in range(stages + 1)]
    u = []
    for n in range(1, stages + 1):
        step = v[n] - 2 * v[n - 1]
        if step < 0:
            raise AssertionError("schedule increments must be nonnegative")
        if tau == 2 and step not in (0, 1):
            raise AssertionError("doubling schedule must have 0/1 increments")
        u.append(step)
    return FoldingSchedule(v[0], tuple(u))


@dataclass(frozen=True)
class PsiFunction:
    """Approximation target Psi(x) = x**(-t) * ln(1+x)**(-s), rational t >= 2, s >= 0."""

    t: Fraction
    s: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "s", Fraction(self.s))
        if self.t < 2 or self.s < 0:
            raise ValueError("unsupported Psi shape: require t >= 2 and s >= 0")


def _ln_arg_brackets(norm: int, v: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational bracket of L = ln(1 + norm**(v/2))."""
    if v % 2 == 0:
        arg = 1 + norm ** (v // 2)
        return ln_brackets(Fraction(arg), bits)
    root = isqrt(norm**v)
    lo, _ = ln_brackets(Fraction(1 + root), bits)
    _, hi = ln_brackets(Fraction(2 + root), bits)
    return lo, hi


def _psi_condition(psi: PsiFunction, norm: int, v: int, w: int, slack: int, strict_less: bool) -> bool:
    """Decide 2 * norm**(slack/2) <?> norm**(w/2) * Psi(norm**(v/2)) exactly.

    With strict_less the predicate is `2 * norm**(slack/2) < ...`; otherwise it
    is `... <= 2 * norm**(slack/2)`.  Powers of ln are bracketed to whatever
    precision the comparison needs; ties cannot occur unless s = 0.
    """
    q = psi.t.denominator
    rho = psi.s.denominator
    exponent = (q * w - psi.t.numerator * v - q * slack) * rho
    power = 2 * q * psi.s.numerator
    rhs = Fraction(norm) ** exponent
    two = Fraction(2) ** (2 * q * rho)
    if power == 0:
        return two < rhs if strict_less else rhs <= two
    bits = 64
    while bits <= _MAX_BRACKET_BITS:
        l_lo, l_hi = _ln_arg_brackets(norm, v, bits)
        if two * l_hi**power < rhs:
            return True if strict_less else False
        if two * l_lo**power > rhs:
            return False if strict_less else True
        bits *= 2
    raise ArithmeticError("cannot separate logarithmic comparison")


def schedule_from_psi(psi: PsiFunction, base: GaussianInt, v0: int, stages: int) -> FoldingSchedule:
    """Schedule whose stages squeeze |b|**v_{n+1} * Psi(|b|**v_n) into (2, 2|b|]."""
    if stages < 1:
        raise ValueError("need at least one stage")
    norm = _check_base(base) ** 2 + 1
    v, u = v0, []
    for n in range(1, stages + 1):
        def satisfied(step: int) -> bool:
            return _psi_condition(psi, norm, v, step + 2 * v, 0, True)

        hi = 1
        while not satisfied(hi):
            hi *= 2
        lo = hi // 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if satisfied(mid):
                hi = mid
            else:
                lo = mid
        step = hi
        if step > 1 and satisfied(step - 1):
            raise AssertionError("increment is not minimal")
        if not _psi_condition(psi, norm, v, step + 2 * v, 1, False):
            raise ValueError(f"stage {n}: schedule invariant 2 < |b|^v' Psi(|b|^v) <= 2|b| fails")
        u.append(step)
        v = step + 2 * v
    return FoldingSchedule(v0, tuple(u))


@dataclass(frozen=True)
class XiStage:
    """One stage of the folded series: exact partial sum and its digit stream."""

    index: int
    partial: GaussianRational
    numerator: GaussianInt
    digits: tuple[GaussianInt, ...]


@dataclass(frozen=True)
class XiNumber:
    """Stages of a number whose convergents are pinned to denominators b**v_n."""

    base: GaussianInt
    schedule: FoldingSchedule
    variant: str
    stages: tuple[XiStage, ...] = field(repr=False)

    @property
    def stage_count(self) -> int:
        return len(self.stages) - 1

    def partial(self, m: int) -> GaussianRational:
        return self.stages[m].partial

    def digits(self, m: int) -> tuple[GaussianInt, ...]:
        return self.stages[m].digits


def unit_seed(base: GaussianInt, v0: int) -> tuple[GaussianInt, ...]:
    """Digits of 1/base**v0, the simplest full seed."""
    base = GaussianInt.from_any(base)
    expansion = hcf_expand(GaussianRational(ONE, base**v0))
    if expansion.integer_part != ZERO:
        raise AssertionError("seed fraction should lie in the fundamental domain")
    return expansion.digits


def _seed_checks(seed: tuple[GaussianInt, ...], base: GaussianInt, v0: int) -> GaussianRational:
    try:
        seed_full = is_full(seed) and is_full(mirror_negate(seed))
    except ValueError as exc:
        raise ValueError("seed digits must form an open-valid word") from exc
    if not seed_full:
        raise ValueError("seed word must drive the full state back to itself, forwards and mirrored")
    value = evaluate(CfSequence(ZERO, seed))
    scaled = value * base**v0
    if not scaled.is_gaussian_int():
        raise ValueError("seed value must have denominator base**v0")
    return value


def _canonical_stage(digits: tuple[GaussianInt, ...], value: GaussianRational, n: int) -> None:
    if all(d.norm >= 8 for d in digits):
        return
    expansion = hcf_expand(value)
    if expansion.integer_part != ZERO or expansion.digits != digits:
        raise AssertionError(f"stage {n}: stream is not the canonical expansion")


def build_xi(seed: tuple[GaussianInt, ...], schedule: FoldingSchedule, base: GaussianInt,
             stages: int | None = None) -> XiNumber:
    """Fold the seed along the schedule, pinning stage m to denominator base**v_m."""
    base = GaussianInt.from_any(base)
    _check_base(base)
    seed = tuple(GaussianInt.from_any(d) for d in seed)
    if stages is None:
        stages = schedule.stage_count
    if stages > schedule.stage_count:
        raise ValueError("schedule is shorter than the requested stage count")
    v = schedule.v()
    value = _seed_checks(seed, base, v[0])
    numerator = (value * base ** v[0]).num
    if gauss_gcd(numerator, base).norm != 1:
        raise ValueError("seed numerator must be coprime to the base")
    _canonical_stage(seed, value, 0)
    stage_list = [XiStage(0, value, numerator, seed)]
    digits = seed
    base_norm = base.norm
    table = convergents(CfSequence(ZERO, digits))
    for n in range(1, stages + 1):
        length = table.last_index
        unit = exact_div(table.q(length), base ** v[n - 1])
        if unit.norm != 1:
            raise AssertionError(f"stage {n}: denominator is not an associate of base**v")
        series_sign = -1 if n > 1 or len(seed) % 2 == 1 else 1
        coefficient = GaussianInt(series_sign * (-1) ** length, 0) * unit * unit
        step = schedule.u[n - 1]
        word = CfSequence(ZERO, digits)
        if step == 0:
            folded = fold_unit(word) if coefficient == ONE else fold_unit_neg(word)
        else:
            if base_norm**step < 8:
                raise ValueError(f"stage {n}: middle digit norm {base_norm ** step} is below 8")
            folded = fold(word, coefficient * base**step)
        digits = folded.tail
        if len(digits) != 2 * length + (0 if step == 0 else 1):
            raise AssertionError(f"stage {n}: unexpected stream length")
        numerator = numerator * base ** (v[n] - v[n - 1]) + GaussianInt(series_sign, 0)
        table = convergents(folded)
        # Cross-multiplied stream/series agreement; reducing fractions with
        # denominators this large would swamp the build in gcd time.
        end = table.last_index
        if table.p(end) * base ** v[n] != numerator * table.q(end):
            raise AssertionError(f"stage {n}: folded stream disagrees with the series")
        if divmod(numerator, base)[1] == ZERO:
            raise AssertionError(f"stage {n}: numerator shares a factor with the base")
        partial = GaussianRational._raw(numerator, base ** v[n])
        _canonical_stage(digits, partial, n)
        stage_list.append(XiStage(n, partial, numerator, digits))
    variant = "unit" if all(x == 0 for x in schedule.u[:stages]) else "general"
    return XiNumber(base, schedule, variant, tuple(stage_list))


def check_tail_sandwich(xi: XiNumber, m: int) -> bool:
    """Exact check (1/4) N**-v_{m+1} <= |xi_M - xi_m|**2 <= (9/4) N**-v_{m+1}."""
    top = xi.stage_count
    if not 0 <= m <= top - 3:
        raise ValueError("sandwich needs at least three stages beyond m")
    v = xi.schedule.v()
    gap = xi.stages[top].numerator - xi.stages[m].numerator * xi.base ** (v[top] - v[m])
    scale = xi.base.norm ** (v[top] - v[m + 1])
    return scale <= 4 * gap.norm <= 9 * scale


def estimate_exponent(xi: XiNumber, depth: int | None = None) -> tuple[tuple[Fraction, Fraction], ...]:
    """Rational brackets around -log|xi - d_m/b^v_m| / log|b^v_m| for each stage m."""
    v = xi.schedule.v()
    limit = len(v) - 1
    if depth is not None:
        limit = min(limit, depth)
    lnn_lo = ln_brackets(Fraction(xi.base.norm), 64)[0]
    eta_hi = 2 * ln_brackets(Fraction(3, 2), 64)[1] / lnn_lo
    theta_hi = 2 * ln_brackets(Fraction(2), 64)[1] / lnn_lo
    out = []
    for m in range(limit):
        ratio = Fraction(v[m + 1], v[m])
        out.append((_dyadic_out(ratio - eta_hi / v[m], False), _dyadic_out(ratio + theta_hi / v[m], True)))
    return tuple(out)


def _dyadic_out(x: Fraction, up: bool) -> Fraction:
    """Round to a 64-bit dyadic, outward so the bracket stays an enclosure."""
    scaled = x * (1 << 64)
    n, d = scaled.numerator, scaled.denominator
    return Fraction(-((-n) // d) if up else n // d, 1 << 64)


def w_variant_schedules(schedule: FoldingSchedule, base: GaussianInt, count: int) -> tuple[FoldingSchedule, ...]:
    """Interleave free {1,2} increments between the schedule's, one per choice word."""
    if _check_base(base) < 2:
        raise ValueError("variant requires A >= 2")
    slots = len(schedule.u)
    if count < 1 or count > (1 << slots):
        raise ValueError("choice count must be between 1 and 2**stages")
    out = []
    for pattern in itertools.product((1, 2), repeat=slots):
        if len(out) == count:
            break
        w = [1]
        for extra, x in zip(pattern, schedule.u):
            w.extend((extra, x))
        out.append(FoldingSchedule(schedule.v0, tuple(w)))
    return tuple(out)


@dataclass(frozen=True)
class DigitExpansion:
    """Base -A+i or -A-i digit string, least-significant digit first."""

    base: GaussianInt
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_base(self.base)
        norm = self.base.norm
        if any(not 0 <= d < norm for d in self.digits):
            raise ValueError("digits must lie in range(norm(base))")


def encode_base_b(z: GaussianInt, base: GaussianInt) -> DigitExpansion:
    """Digits of z in base -A+i or -A-i; every Gaussian integer terminates."""
    base = GaussianInt.from_any(base)
    a = _check_base(base)
    norm = base.norm
    z = GaussianInt.from_any(z)
    digits = []
    while z != ZERO:
        d = (z.re + a * z.im) % norm if base.im > 0 else (z.re - a * z.im) % norm
        digits.append(d)
        z = exact_div(z - GaussianInt(d, 0), base)
    return DigitExpansion(base, tuple(digits))


def decode_base_b(expansion: DigitExpansion) -> GaussianInt:
    """Evaluate a digit string back to its Gaussian integer."""
    value = ZERO
    for d in reversed(expansion.digits):
        value = value * expansion.base + GaussianInt(d, 0)
    return value


def encode_fractional(value: GaussianRational, base: GaussianInt) -> tuple[DigitExpansion, int]:
    """Encode r / base**k as (digits of r stretched by k, k); needs a base-power denominator."""
    base = GaussianInt.from_any(base)
    _check_base(base)
    shift = 0
    scaled = value
    bound = value.den.norm.bit_length() + 1
    while not scaled.is_gaussian_int():
        scaled = scaled * base
        shift += 1
        if shift > bound:
            raise ValueError("denominator is not a power of the base")
    return encode_base_b(scaled.num, base), shift
