// Divisibility tests are spelled `x % y == 0` throughout.
#![allow(clippy::manual_is_multiple_of)]

//! Exact-arithmetic toolkit for BCH codes over three length families:
//! n = q^m - 1, n = (q^2s - 1)/(q + 1) and n = (q^m - 1)/(q - 1).
//!
//! The crate pairs closed-form results (largest cyclotomic coset leaders,
//! dimension formulas, dually-BCH characterizations) with brute-force oracles
//! (coset enumeration, exhaustive and low-weight distance search) so every
//! formula can be checked against ground truth.

pub mod cosets;
pub mod distance;
pub mod error;
pub mod gf;
pub mod jsonnum;
pub mod leaders;
pub mod numutil;

pub mod codes;

pub use codes::{
    bch_code, bose_distance, defining_set, dimension_closed_form, dualize, dually_bch_closed_form,
    generator_polynomial, is_dually_bch_direct, params_report, prime_power_parts, tilde_code,
    tilde_defining_set, tilde_dual_narrow_sense_closed, tilde_dual_narrow_sense_direct, BchCode,
    DefiningSet, DuallyBchVerdict, Num, ParamsReport, ResidueSet,
};
pub use cosets::{
    coset_leaders, coset_of, k_largest_leaders, leader_of, mult_order, q_digits, rotate_residue,
    run_length_form, CosetContext, CosetLeader, CyclotomicCoset, RunLengthForm, RunLengthOutcome,
    DEFAULT_ENUM_BUDGET,
};
pub use distance::{
    divisor_multiple_exact_distance, exhaustive_min_distance, low_weight_search,
    sphere_packing_max_d, DistanceReport, LowWeightOutcome, LowWeightWitness,
    DEFAULT_CODEWORD_BUDGET, DEFAULT_SYNDROME_BUDGET,
};
pub use error::{Error, Result};
pub use gf::{build_tower, FieldElement, FieldLevel, FieldTower, Poly, PrimePower};
pub use leaders::{
    anti_delta, anti_interval_is_leader, primitive_band_classify, primitive_delta, proj_delta1,
    proj_delta2, proj_digit_profile, proj_leader_necessary, BandClass, DigitProfile, FamilyTag,
    IntervalClass, LeaderResult,
};
