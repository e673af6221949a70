"""Bounded-digit certificates for power denominators, plus an exhaustive search oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .cf import CfSequence, evaluate, fold, fold_unit, fold_unit_neg
from .gaussian import (
    ONE,
    ZERO,
    GaussianInt,
    GaussianRational,
    format_gaussian_int,
    gauss_gcd,
    parse_gaussian_int,
)
from .geometry import Validity, is_valid
from .hcf import digit_in_alphabet, hcf_expand

try:  # pragma: no cover - exercised implicitly by kernel selection
    from numba import njit as _njit
except ImportError:  # pragma: no cover
    _njit = None

DESK_NORM_CAP = 1 << 25

ETA_SQ = {
    (-3, 1): 18,
    (-3, -1): 18,
    (-2, 1): 18,
    (-2, -1): 18,
    (2, 0): 64,
    (3, 0): 64,
    (5, 0): 49,
}


def _gi(re: int, im: int = 0) -> GaussianInt:
    return GaussianInt(re, im)


def _rows(raw) -> dict[int, tuple[GaussianInt, tuple[GaussianInt, ...]]]:
    return {
        power: (_gi(*num), tuple(_gi(*d) for d in digits))
        for power, num, digits in raw
    }


def _conjugate_rows(rows, base):
    # Conjugating a numerator mirrors the fraction, but the half-open domain is
    # not conjugation-symmetric: boundary ties may re-expand.  Store the exact
    # canonical digits of the mirrored fraction.
    out = {}
    for power, (num, _) in rows.items():
        numerator = num.conj()
        expansion = hcf_expand(GaussianRational(numerator, base ** power))
        assert expansion.integer_part == ZERO
        out[power] = (numerator, expansion.digits)
    return out


_SEEDS: dict[tuple[int, int], dict[int, tuple[GaussianInt, tuple[GaussianInt, ...]]]] = {
    (-3, 1): _rows(
        [
            (1, (1, 0), ((-3, 1),)),
            (2, (2, 3), ((0, -3), (-2, -3))),
        ]
    ),
    (-2, 1): _rows(
        [
            (1, (1, 0), ((-2, 1),)),
            (2, (0, 2), ((-2, -1), (0, 2))),
            (3, (2, -4), ((-2, 1), (-2, 1), (2, -1))),
            (4, (5, -6), ((2, -3), (-1, -2), (-3, 1))),
            (5, (13, -11), ((0, 3), (1, -3), (2, -1), (-2, -2))),
            (6, (27, -38), ((-1, -3), (1, -2), (1, -2), (-3, -2), (2, -3))),
            (7, (0, -97), ((0, 3), (3, 1), (-2, -2), (0, 3), (1, -3))),
        ]
    ),
    (2, 0): _rows(
        [
            (1, (-1, 0), ((-2, 0),)),
            (2, (1, 0), ((4, 0),)),
            (3, (3, 0), ((3, 0), (-3, 0))),
            (4, (5, 0), ((3, 0), (5, 0))),
            (5, (9, 0), ((4, 0), (-2, 0), (-4, 0))),
            (6, (17, 0), ((4, 0), (-4, 0), (-4, 0))),
            (7, (19, 0), ((7, 0), (-4, 0), (5, 0))),
            (8, (79, 0), ((3, 0), (4, 0), (6, 0), (3, 0))),
            (9, (71, 0), ((7, 0), (5, 0), (-4, 0), (4, 0))),
            (10, (165, 0), ((6, 0), (5, 0), (-7, 0), (5, 0))),
            (11, (423, 0), ((5, 0), (-6, 0), (-3, 0), (-5, 0), (-4, 0))),
            (12, (557, 0), ((7, 0), (3, 0), (-6, 0), (5, 0), (-7, 0))),
            (13, (1453, 0), ((6, 0), (-3, 0), (4, 0), (5, 0), (-5, 0), (-5, 0))),
        ]
    ),
    (3, 0): _rows(
        [
            (1, (1, 0), ((3, 0),)),
            (2, (4, 0), ((2, 0), (4, 0))),
            (3, (10, 0), ((3, 0), (-3, 0), (-3, 0))),
            (4, (19, 0), ((4, 0), (4, 0), (-5, 0))),
            (5, (50, 0), ((5, 0), (-7, 0), (-7, 0))),
            (6, (107, 0), ((7, 0), (-5, 0), (-3, 0), (7, 0))),
            (7, (323, 0), ((7, 0), (-4, 0), (-3, 0), (4, 0), (-7, 0))),
        ]
    ),
    (5, 0): _rows(
        [
            (1, (1, 0), ((5, 0),)),
            (2, (6, 0), ((4, 0), (6, 0))),
        ]
    ),
}
_SEEDS[(-3, -1)] = _conjugate_rows(_SEEDS[(-3, 1)], _gi(-3, -1))
_SEEDS[(-2, -1)] = _conjugate_rows(_SEEDS[(-2, 1)], _gi(-2, -1))


@dataclass(frozen=True)
class ZarembaCertificate:
    """Numerator over base**power whose expansion keeps every digit norm within eta_sq."""

    base: GaussianInt
    power: int
    numerator: GaussianInt
    eta_sq: int
    digits: tuple[GaussianInt, ...]

    def denominator(self) -> GaussianInt:
        """base**power."""
        return self.base ** self.power

    def value(self) -> GaussianRational:
        """numerator / base**power as a reduced Gaussian rational."""
        return GaussianRational(self.numerator, self.base ** self.power)

    def max_digit_norm(self) -> int:
        """Largest |a_i|^2 over the digit sequence."""
        return max(d.norm for d in self.digits)


class CertificateError(Exception):
    """A certificate check failed; carries the verification transcript as evidence."""

    def __init__(self, message: str, transcript: tuple[tuple[str, bool], ...]) -> None:
        super().__init__(message)
        self.transcript = transcript


def supported_bases() -> tuple[GaussianInt, ...]:
    """Bases with a constructive certificate family."""
    return tuple(_gi(*key) for key in sorted(ETA_SQ))


def verify_certificate(cert: ZarembaCertificate) -> tuple[tuple[str, bool], ...]:
    """Re-run every certificate invariant from scratch; failures are data, not exceptions."""
    den = cert.base ** cert.power
    value = GaussianRational(cert.numerator, den)
    digits_ok = bool(cert.digits) and all(digit_in_alphabet(d) for d in cert.digits)
    try:
        evaluated = evaluate(CfSequence(ZERO, cert.digits)) == value
    except (ArithmeticError, ValueError):
        evaluated = False
    expansion = hcf_expand(value)
    canonical = expansion.integer_part == ZERO and expansion.digits == cert.digits
    valid = digits_ok and is_valid(cert.digits) is not Validity.INVALID
    return (
        ("evaluation", evaluated),
        ("coprime", gauss_gcd(cert.numerator, den) == ONE),
        ("fundamental_domain", value.in_fundamental_domain()),
        ("digit_bound", digits_ok and cert.max_digit_norm() <= cert.eta_sq),
        ("canonical_expansion", canonical),
        ("validity", valid),
    )


def digit_window_ok(cert: ZarembaCertificate) -> bool:
    """Digit-window side conditions preserved by this base family's induction."""
    key = cert.base.key()
    norms = [d.norm for d in cert.digits]
    first, last = cert.digits[0], cert.digits[-1]

    def edge_norms_within(lo: int, hi: int) -> bool:
        return lo <= first.norm <= hi and lo <= last.norm <= hi

    if key in ((-3, 1), (-3, -1)):
        return max(norms) <= 18
    if key in ((-2, 1), (-2, -1)):
        if cert.power < 4:
            return max(norms) <= 18
        edges = all(
            5 <= (d + s).norm <= 18 for d in (first, last) for s in (ONE, -ONE)
        )
        return edges and all(5 <= n <= 18 for n in norms)
    if key == (2, 0):
        if cert.power < 6:
            return max(norms) <= 64
        return max(norms) <= 64 and edge_norms_within(9, 49)
    if key == (3, 0):
        if cert.power < 4:
            return max(norms) <= 64
        return max(norms) <= 64 and edge_norms_within(16, 49)
    return max(norms) <= 49 and edge_norms_within(16, 49)


def certificate_transcript(cert: ZarembaCertificate) -> tuple[tuple[str, bool], ...]:
    """Six core invariant checks plus the family digit window."""
    return verify_certificate(cert) + (("digit_window", digit_window_ok(cert)),)


_CACHE: dict[tuple[tuple[int, int], int], ZarembaCertificate] = {}


def _folded_step(base: GaussianInt, power: int) -> tuple[GaussianInt, tuple[GaussianInt, ...]]:
    key = base.key()
    if key == (2, 0):
        if power % 2 == 0:
            child, middle = certify(base, (power - 2) // 2), _gi(4)
        else:
            child, middle = certify(base, (power - 3) // 2), _gi(8)
    elif key == (3, 0):
        if power % 2 == 0:
            child, middle = certify(base, power // 2), None
        else:
            child, middle = certify(base, (power - 1) // 2), _gi(3)
    elif key == (5, 0):
        if power % 2 == 0:
            child, middle = certify(base, power // 2), None
        else:
            child, middle = certify(base, (power - 1) // 2), _gi(5)
    else:
        if power % 2 == 0:
            child, middle = certify(base, power // 2), None
        else:
            child, middle = certify(base, (power - 1) // 2), base
    cf = CfSequence(ZERO, child.digits)
    if middle is None:
        candidates = (fold_unit(cf), fold_unit_neg(cf))
        expected = 2 * len(child.digits)
    else:
        candidates = (fold(cf, middle), fold(cf, -middle))
        expected = 2 * len(child.digits) + 1
    # Prefer a folded word that is already its own canonical expansion; the
    # mirrored unit / mirrored-sign fold is an equally valid folding step, and
    # if neither word is canonical the folded fraction still is the target, so
    # certify its canonical digits instead.
    for folded in candidates:
        assert len(folded.tail) == expected
        value = evaluate(folded)
        expansion = hcf_expand(value)
        if expansion.integer_part == ZERO and expansion.digits == folded.tail:
            digits = folded.tail
            break
    else:
        value = evaluate(candidates[0])
        digits = hcf_expand(value).digits
    scaled = value * (base ** power)
    assert scaled.is_gaussian_int()
    return scaled.num, digits


def certify(base: GaussianInt | int, power: int) -> ZarembaCertificate:
    """Build, verify, and cache the bounded-digit certificate for base**power."""
    base = GaussianInt.from_any(base)
    key = base.key()
    if key not in ETA_SQ:
        raise ValueError(f"unsupported base: {format_gaussian_int(base)}")
    if power < 1:
        raise ValueError("power must be a positive integer")
    cached = _CACHE.get((key, power))
    if cached is not None:
        return cached
    seed = _SEEDS[key].get(power)
    if seed is not None:
        numerator, digits = seed
    else:
        numerator, digits = _folded_step(base, power)
    cert = ZarembaCertificate(base, power, numerator, ETA_SQ[key], digits)
    transcript = certificate_transcript(cert)
    if not all(ok for _, ok in transcript):
        failing = ", ".join(name for name, ok in transcript if not ok)
        raise CertificateError(
            f"certificate checks failed for base {format_gaussian_int(base)}"
            f" power {power}: {failing}",
            transcript,
        )
    _CACHE[(key, power)] = cert
    return cert


def emit_certificates(certs: Iterable[ZarembaCertificate]) -> str:
    """Render certificates as '[certificate]' records with a stable field order."""
    blocks = []
    for cert in certs:
        lines = [
            "[certificate]",
            f"base = {format_gaussian_int(cert.base)}",
            f"power = {cert.power}",
            f"numerator = {format_gaussian_int(cert.numerator)}",
            "digits = " + ", ".join(format_gaussian_int(d) for d in cert.digits),
            f"eta_sq = {cert.eta_sq}",
        ]
        lines.extend(
            f"check.{name} = {'pass' if ok else 'FAIL'}"
            for name, ok in certificate_transcript(cert)
        )
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def parse_certificates(text: str) -> list[ZarembaCertificate]:
    """Parse records produced by emit_certificates (check lines are recomputable)."""
    certs: list[ZarembaCertificate] = []
    fields: dict[str, str] = {}

    def flush() -> None:
        if not fields:
            return
        certs.append(
            ZarembaCertificate(
                base=parse_gaussian_int(fields["base"]),
                power=int(fields["power"]),
                numerator=parse_gaussian_int(fields["numerator"]),
                eta_sq=int(fields["eta_sq"]),
                digits=tuple(
                    parse_gaussian_int(part.strip())
                    for part in fields["digits"].split(",")
                    if part.strip()
                ),
            )
        )

    for line in text.splitlines():
        line = line.strip()
        if line == "[certificate]":
            flush()
            fields = {}
        elif "=" in line and not line.startswith("check."):
            name, _, value = line.partition("=")
            fields[name.strip()] = value.strip()
    flush()
    return certs


@dataclass(frozen=True)
class BruteResult:
    """Optimal numerator for a denominator: minimal max digit norm, lexicographic tie-break."""

    numerator: GaussianInt
    k_sq: int
    digits: tuple[GaussianInt, ...]


def _brute_scan(dre: int, dim: int, nrm: int, mode: int) -> tuple[int, int, int]:
    bound = int(math.sqrt(nrm / 2.0)) + 2
    best = 1 << 62
    best_re = 0
    best_im = 0
    for are in range(-bound, bound + 1):
        for aim in range(-bound, bound + 1):
            if are == 0 and aim == 0:
                continue
            tre = 2 * (are * dre + aim * dim)
            if tre < -nrm or tre >= nrm:
                continue
            tim = 2 * (aim * dre - are * dim)
            if tim < -nrm or tim >= nrm:
                continue
            if mode == 1:
                if (are + aim) % 2 == 0:
                    continue
            elif mode == 2:
                if (are + 2 * aim) % 5 == 0:
                    continue
            elif mode == 3:
                if (are + 2 * aim) % 5 == 0 or (are - 2 * aim) % 5 == 0:
                    continue
            elif mode == 4:
                if are % 3 == 0 and aim % 3 == 0:
                    continue
            elif mode == 5:
                if (are - 2 * aim) % 5 == 0:
                    continue
            else:
                xre, xim, yre, yim = are, aim, dre, dim
                while yre != 0 or yim != 0:
                    yn = yre * yre + yim * yim
                    tr = xre * yre + xim * yim
                    ti = xim * yre - xre * yim
                    qre = (2 * tr + yn) // (2 * yn)
                    qim = (2 * ti + yn) // (2 * yn)
                    rre = xre - (qre * yre - qim * yim)
                    rim = xim - (qre * yim + qim * yre)
                    xre, xim, yre, yim = yre, yim, rre, rim
                if xre * xre + xim * xim != 1:
                    continue
            nre, nim = are, aim
            cre, cim = dre, dim
            kmax = 0
            pruned = False
            while nre != 0 or nim != 0:
                nn = nre * nre + nim * nim
                tr = cre * nre + cim * nim
                ti = cim * nre - cre * nim
                qre = (2 * tr + nn) // (2 * nn)
                qim = (2 * ti + nn) // (2 * nn)
                dk = qre * qre + qim * qim
                if dk >= best:
                    pruned = True
                    break
                if dk > kmax:
                    kmax = dk
                rre = cre - (qre * nre - qim * nim)
                rim = cim - (qre * nim + qim * nre)
                cre, cim = nre, nim
                nre, nim = rre, rim
            if not pruned and kmax < best:
                best = kmax
                best_re = are
                best_im = aim
    return best_re, best_im, best


_brute_scan_fast = _njit(cache=True)(_brute_scan) if _njit is not None else None


def _is_pure_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _divides(d: GaussianInt, a: GaussianInt) -> bool:
    return (a % d).is_zero()


def _coprime_mode(den: GaussianInt) -> int:
    nrm = den.norm
    if nrm & (nrm - 1) == 0:
        return 1
    if _is_pure_power(nrm, 5):
        plus = _divides(_gi(2, 1), den)
        minus = _divides(_gi(2, -1), den)
        if plus and minus:
            return 3
        return 5 if plus else 2
    if _is_pure_power(nrm, 9):
        return 4
    return 0


def brute_force_min_K(den: GaussianInt | int, cap: int = DESK_NORM_CAP) -> BruteResult:
    """Exhaustive Zaremba optimum over coprime numerators in the fundamental domain."""
    den = GaussianInt.from_any(den)
    nrm = den.norm
    if nrm > cap:
        raise ValueError("oracle restricted to desk scale")
    if nrm <= 1:
        raise ValueError("denominator must have norm at least 2")
    scan = _brute_scan_fast if _brute_scan_fast is not None else _brute_scan
    best_re, best_im, best = scan(den.re, den.im, nrm, _coprime_mode(den))
    assert best < (1 << 62)
    numerator = GaussianInt(best_re, best_im)
    digits = hcf_expand(GaussianRational(numerator, den)).digits
    return BruteResult(numerator, best, digits)
