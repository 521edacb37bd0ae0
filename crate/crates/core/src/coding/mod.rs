//! Threshold secret sharing over GF(p) and its error-correcting decoder.

mod field;
mod sharing;
mod welch_berlekamp;

pub use field::{eval_poly, Field, FieldElement, DEFAULT_MODULUS};
pub use sharing::{reconstruct, share, share_with_coefficients, Share, ShareVector};
pub use welch_berlekamp::{correction_budget, decode_wb};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("invalid sharing parameters: need 1 <= d <= k < p, got d={d}, k={k}, p={p}")]
    Parameters { d: usize, k: usize, p: u32 },
    #[error("expected {expected} shares, got {got}")]
    ShareCount { expected: usize, got: usize },
    #[error("duplicate x-coordinate {0}")]
    DuplicateX(u32),
    #[error("share x-coordinate must be nonzero")]
    ZeroX,
    #[error("shares from different fields")]
    MixedFields,
    #[error("decoding failed: corruption exceeds the correction budget")]
    DecodeFailure,
}
