//! Salem number certification from power polynomials.
//!
//! Given a monic self-reciprocal integer polynomial `P`, this crate computes
//! `P_n(x) = det(xI - C^n)` for the companion matrix `C` exactly, decides
//! whether the large root of `P` is a Salem number (through a coefficient
//! inequality on some `P_n`, cross-checked by exact Sturm root counts), and
//! estimates the probability that a random power satisfies the inequality.

pub mod corpus;
pub mod error;
pub mod intpoly;
pub mod numeric;
pub mod powerpoly;
pub mod probability;
pub mod rootcount;
pub mod salem;

pub use error::{Error, Result};
pub use intpoly::{cyclotomic, cyclotomic_free, IntPolynomial};
pub use powerpoly::{companion, power_min_poly, BigIntMatrix, PowerPolyResult, PowerSequence};
pub use probability::{empirical_frequency, prob_d4, prob_d6_integral, prob_grid, GridConfig, ProbEstimate};
pub use rootcount::{count_roots_above_one, trace_transform, unimodular_root_count};
pub use salem::{
    certify_both, certify_direct, certify_power_criterion, detect_cyclotomic_by_periodicity, vieira_condition,
    CertificateReport, Method, Verdict,
};
