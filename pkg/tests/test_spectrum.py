"""Folded-series numbers with pinned convergent denominators, schedules, encodings."""

import random
from fractions import Fraction

import pytest

from hurwitzcf.cf import CfSequence, evaluate
from hurwitzcf.gaussian import ONE, ZERO, GaussianInt, GaussianRational
from hurwitzcf.spectrum import (
    DigitExpansion,
    FoldingSchedule,
    PsiFunction,
    build_xi,
    check_tail_sandwich,
    decode_base_b,
    encode_base_b,
    encode_fractional,
    estimate_exponent,
    schedule_from_psi,
    schedule_from_tau,
    unit_seed,
    w_variant_schedules,
)
from hurwitzcf.zaremba import certify

B = GaussianInt(-2, 1)


def g(re, im=0):
    return GaussianInt(re, im)


def test_schedule_recurrence():
    sched = FoldingSchedule(4, (3, 4))
    assert sched.v() == (4, 11, 26)
    assert sched.stage_count == 2
    with pytest.raises(ValueError, match="v0 must be a positive integer"):
        FoldingSchedule(0, ())
    with pytest.raises(ValueError, match="nonnegative"):
        FoldingSchedule(1, (-1,))


def test_schedule_from_tau_five_halves():
    sched = schedule_from_tau(Fraction(5, 2), Fraction(1), B, 9)
    assert sched.v() == (
        244, 610, 1525, 3814, 9536, 23841, 59604, 149011, 372529, 931322,
    )
    assert sched.u == (122, 305, 764, 1908, 4769, 11922, 29803, 74507, 186264)


def test_schedule_from_tau_doubling_and_tripling():
    doubling = schedule_from_tau(Fraction(2), Fraction(1), B, 5)
    assert doubling.v() == (64, 128, 256, 512, 1024, 2048)
    assert doubling.u == (0, 0, 0, 0, 0)
    tripling = schedule_from_tau(Fraction(3), Fraction(1), B, 3)
    assert tripling.v() == (729, 2187, 6561, 19683)
    assert tripling.u == (729, 2187, 6561)


def test_schedule_start_depends_on_base_norm():
    sched = schedule_from_tau(Fraction(5, 2), Fraction(1), g(-3, 1), 1)
    assert sched.v()[0] == 97


def test_schedule_from_tau_rejects():
    with pytest.raises(ValueError, match="growth ratio below 2"):
        schedule_from_tau(Fraction(3, 2), Fraction(1), B, 3)
    with pytest.raises(ValueError, match="scale factor must be positive"):
        schedule_from_tau(Fraction(2), Fraction(0), B, 3)
    with pytest.raises(ValueError, match="at least one stage"):
        schedule_from_tau(Fraction(2), Fraction(1), B, 0)


def test_schedule_from_psi_power_only():
    sched = schedule_from_psi(PsiFunction(Fraction(5, 2), Fraction(0)), B, 8, 8)
    assert sched.v() == (8, 21, 54, 136, 341, 854, 2136, 5341, 13354)
    plain = schedule_from_psi(PsiFunction(Fraction(2), Fraction(0)), B, 4, 8)
    assert plain.u == (1,) * 8


def test_schedule_from_psi_with_log_factor():
    sched = schedule_from_psi(PsiFunction(Fraction(2), Fraction(1)), B, 4, 8)
    assert sched.v() == (4, 11, 26, 57, 120, 247, 502, 1013, 2036)
    assert sched.u == (3, 4, 5, 6, 7, 8, 9, 10)


def test_psi_shape_is_checked():
    with pytest.raises(ValueError, match="unsupported Psi shape"):
        PsiFunction(Fraction(3, 2), Fraction(0))
    with pytest.raises(ValueError, match="unsupported Psi shape"):
        PsiFunction(Fraction(2), Fraction(-1))


def test_unit_seed_expands_reciprocal_power():
    seed = unit_seed(B, 4)
    assert evaluate(CfSequence(ZERO, seed)) == GaussianRational(ONE, B**4)


def test_build_stage_one_frozen():
    seed = certify(B, 4).digits
    xi = build_xi(seed, FoldingSchedule(4, (3, 4)), B, stages=1)
    assert xi.digits(0) == seed
    assert xi.digits(1) == (
        g(2, -3), g(-1, -2), g(-3, 1), g(2, -11), g(3, -1), g(1, 2), g(-2, 3),
    )
    assert xi.partial(1) == evaluate(CfSequence(ZERO, xi.digits(1)))
    assert xi.variant == "general"


def test_build_partials_follow_series():
    seed = certify(B, 4).digits
    sched = FoldingSchedule(4, (3, 4, 9))
    xi = build_xi(seed, sched, B)
    v = sched.v()
    assert xi.stage_count == 3
    for m in range(1, 4):
        step = xi.partial(m) - xi.partial(m - 1)
        assert step == GaussianRational(-ONE, B ** v[m])
        assert (xi.partial(m) * B ** v[m]).is_gaussian_int()
    for m in range(1, 4):
        assert xi.digits(m)[: len(xi.digits(m - 1))] == xi.digits(m - 1)
        assert len(xi.digits(m)) == 2 * len(xi.digits(m - 1)) + 1


def test_build_unit_folds_double_length():
    seed = certify(B, 4).digits
    xi = build_xi(seed, FoldingSchedule(4, (0, 0, 0)), B)
    assert xi.variant == "unit"
    assert [len(xi.digits(m)) for m in range(4)] == [3, 6, 12, 24]
    v = FoldingSchedule(4, (0, 0, 0)).v()
    for m in range(1, 4):
        step = xi.partial(m) - xi.partial(m - 1)
        assert step == GaussianRational(-ONE, B ** v[m])


def test_tail_sandwich_and_exponent_brackets():
    seed = certify(B, 4).digits
    sched = FoldingSchedule(4, (3, 3, 3, 3, 3))
    xi = build_xi(seed, sched, B)
    for m in range(3):
        assert check_tail_sandwich(xi, m)
    with pytest.raises(ValueError, match="three stages beyond"):
        check_tail_sandwich(xi, 3)
    v = sched.v()
    brackets = estimate_exponent(xi)
    assert len(brackets) == 5
    for m, (lo, hi) in enumerate(brackets):
        ratio = Fraction(v[m + 1], v[m])
        assert lo < ratio < hi
        assert hi - lo < Fraction(2)  # widths shrink like 1/v_m
        assert (1 << 64) % lo.denominator == 0
        assert (1 << 64) % hi.denominator == 0
    assert brackets[4][1] - brackets[4][0] < brackets[0][1] - brackets[0][0]
    assert estimate_exponent(xi, depth=2) == brackets[:2]


def test_build_input_validation():
    seed = certify(B, 4).digits
    with pytest.raises(ValueError, match="base must be -A\\+i or -A-i"):
        build_xi(seed, FoldingSchedule(4, (3,)), g(2, 1))
    with pytest.raises(ValueError, match="drive the full state back"):
        build_xi((g(2, 1),), FoldingSchedule(1, (3,)), B)
    with pytest.raises(ValueError, match="open-valid word"):
        build_xi((g(-2), g(1, -1)), FoldingSchedule(1, (3,)), B)
    with pytest.raises(ValueError, match="denominator base\\*\\*v0"):
        build_xi(unit_seed(B, 4), FoldingSchedule(3, (3,)), B)
    with pytest.raises(ValueError, match="coprime to the base"):
        build_xi(unit_seed(B, 4), FoldingSchedule(5, (3,)), B)
    with pytest.raises(ValueError, match="schedule is shorter"):
        build_xi(seed, FoldingSchedule(4, (3,)), B, stages=2)
    with pytest.raises(ValueError, match="below 8"):
        build_xi(seed, FoldingSchedule(4, (1,)), B)


def test_build_with_wider_base():
    base = g(-3, 1)
    seed = unit_seed(base, 2)
    xi = build_xi(seed, FoldingSchedule(2, (1, 2)), base)
    assert xi.variant == "general"
    v = (2, 5, 12)
    for m in range(1, 3):
        assert (xi.partial(m) * base ** v[m]).is_gaussian_int()
        assert len(xi.digits(m)) == 2 * len(xi.digits(m - 1)) + 1


def test_w_variant_schedules():
    sched = FoldingSchedule(4, (3, 4))
    variants = w_variant_schedules(sched, g(-3, 1), 4)
    assert len(variants) == 4
    assert {var.u for var in variants} == {
        (1, 1, 3, 1, 4),
        (1, 1, 3, 2, 4),
        (1, 2, 3, 1, 4),
        (1, 2, 3, 2, 4),
    }
    assert len({var.v() for var in variants}) == 4
    with pytest.raises(ValueError, match="variant requires A >= 2"):
        w_variant_schedules(sched, g(-1, 1), 2)
    with pytest.raises(ValueError, match="choice count"):
        w_variant_schedules(sched, g(-3, 1), 5)


def test_w_variant_builds_disagree():
    base = g(-3, 1)
    sched = FoldingSchedule(2, (2,))
    first, second = w_variant_schedules(sched, base, 2)
    seed = unit_seed(base, 2)
    xi_first = build_xi(seed, first, base, stages=2)
    xi_second = build_xi(seed, second, base, stages=2)
    assert xi_first.partial(2) != xi_second.partial(2)


def test_encode_oracle():
    assert encode_base_b(g(5), B).digits == (0, 1, 3, 1)
    assert encode_base_b(ZERO, B).digits == ()
    assert decode_base_b(DigitExpansion(B, (0, 1, 3, 1))) == g(5)


def test_encode_round_trip_all_small_bases():
    rng = random.Random(11)
    for a in (1, 2, 3):
        for im in (1, -1):
            base = g(-a, im)
            for _ in range(50):
                z = g(rng.randint(-500, 500), rng.randint(-500, 500))
                exp = encode_base_b(z, base)
                assert all(0 <= d < base.norm for d in exp.digits)
                assert decode_base_b(exp) == z


def test_digit_expansion_validation():
    with pytest.raises(ValueError, match="range"):
        DigitExpansion(B, (5,))
    with pytest.raises(ValueError, match="base must be"):
        DigitExpansion(g(2, 1), (0,))


def test_encode_fractional():
    value = certify(B, 4).value()
    expansion, shift = encode_fractional(value, B)
    assert shift == 4
    assert decode_base_b(expansion) == g(5, -6)
    whole, none_needed = encode_fractional(GaussianRational(g(7), ONE), B)
    assert none_needed == 0 and decode_base_b(whole) == g(7)
    with pytest.raises(ValueError, match="not a power of the base"):
        encode_fractional(GaussianRational(ONE, g(3)), B)
