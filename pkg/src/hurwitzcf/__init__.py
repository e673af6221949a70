"""Exact Hurwitz continued fractions over the Gaussian integers."""

from .cf import (
    CfSequence,
    CfUndefinedError,
    ConvergentTable,
    convergents,
    evaluate,
    fold,
    fold_sign,
    fold_unit,
    fold_unit_neg,
    format_cf,
    mirror,
    mirror_negate,
    parse_cf,
)
from .gaussian import (
    GaussianInt,
    GaussianRational,
    UNITS,
    exact_div,
    format_gaussian_int,
    format_gaussian_rational,
    gauss_gcd,
    nearest_gaussian,
    parse_gaussian_int,
    parse_gaussian_rational,
)
from .geometry import (
    Automaton,
    Region,
    Validity,
    canonicalize,
    closed_cylinder_nonempty,
    cylinder_one,
    explore_automaton,
    export_state_table,
    get_automaton,
    half_open_box_region,
    is_empty,
    is_full,
    is_valid,
    open_box_region,
    prototype_step,
    region_equal,
    region_subset,
    verify_folding_program,
)
from .hcf import (
    HcfExpansion,
    SandwichBound,
    allowed_successors,
    check_error_sandwich,
    classify_endpoint,
    convergent_detector,
    digit_in_alphabet,
    error_sandwich,
    hcf_expand,
    is_reversible_real,
    successor_consistent,
)
from .spectrum import (
    DigitExpansion,
    FoldingSchedule,
    PsiFunction,
    XiNumber,
    XiStage,
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
from .zaremba import (
    BruteResult,
    CertificateError,
    DESK_NORM_CAP,
    ETA_SQ,
    ZarembaCertificate,
    brute_force_min_K,
    certificate_transcript,
    certify,
    digit_window_ok,
    emit_certificates,
    parse_certificates,
    supported_bases,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
