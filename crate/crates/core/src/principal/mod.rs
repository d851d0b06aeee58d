//! Analytic continuation in the principal-series parameter: Bernoulli sums, the
//! Continued ring, spectral interpolation of matrix functions and the
//! representations π_{k,u}, π_𝐮 with exact relation checks.

mod bernoulli;
mod continued;
mod sequence;
mod series;
mod spectral;

use thiserror::Error;

use crate::flag::FlagError;

pub use bernoulli::{bernoulli_numbers, bernoulli_sum, binomial_sum, eval_rat_poly, falling_factorial_coeffs, RatPoly};
pub use continued::{Continued, ContinuedOperator, Monomial};
pub use sequence::{uniqueness_holds, uniqueness_matrix, ExpPolySequence, ExpTerm};
pub use series::{
    pairing_hints, ContinuedVector, Correction, CorrectionTerm, DjReport, PrincipalSeries, RelationStatus, SeriesMode, SpecializationReport, SpectralRecord,
};
pub use spectral::{
    brute_geometric, check_geometric_contract, default_sweep, geometric_sum, interpolation_coefficients, matrix_power, minimal_polynomial, newton_exponents,
    split_polynomial, Spectrum, Target,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PrincipalError {
    #[error("spectrum is not of q-power form: {0}")]
    Spectrum(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error(transparent)]
    Flag(#[from] FlagError),
}
