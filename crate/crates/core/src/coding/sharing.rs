use std::collections::BTreeSet;

use rand::Rng;

use super::field::{eval_poly, Field, FieldElement};
use super::CodingError;

/// One evaluation point `(x, f(x))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Share {
    pub x: FieldElement,
    pub y: FieldElement,
}

/// `k` shares of a polynomial of degree `< d`, at `x = 1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareVector {
    pub d: usize,
    pub k: usize,
    pub shares: Vec<Share>,
}

impl ShareVector {
    pub fn field(&self) -> Field {
        self.shares[0].x.field()
    }
}

fn check_params(field: Field, d: usize, k: usize) -> Result<(), CodingError> {
    if d == 0 || d > k || k as u64 >= u64::from(field.modulus()) {
        return Err(CodingError::Parameters { d, k, p: field.modulus() });
    }
    Ok(())
}

/// Shares `secret` with a random polynomial of degree `< d`.
pub fn share<R: Rng + ?Sized>(
    secret: FieldElement,
    d: usize,
    k: usize,
    rng: &mut R,
) -> Result<ShareVector, CodingError> {
    let field = secret.field();
    check_params(field, d, k)?;
    let coeffs: Vec<FieldElement> = (1..d).map(|_| field.random(rng)).collect();
    share_with_coefficients(secret, &coeffs, k)
}

/// Shares `secret` with the fixed higher coefficients `a_1, ..., a_{d-1}`.
pub fn share_with_coefficients(
    secret: FieldElement,
    higher: &[FieldElement],
    k: usize,
) -> Result<ShareVector, CodingError> {
    let field = secret.field();
    let d = higher.len() + 1;
    check_params(field, d, k)?;
    if higher.iter().any(|c| c.field() != field) {
        return Err(CodingError::MixedFields);
    }
    let mut poly = Vec::with_capacity(d);
    poly.push(secret);
    poly.extend_from_slice(higher);
    let shares = (1..=k as u64)
        .map(|i| {
            let x = field.elem(i);
            Share { x, y: eval_poly(&poly, x) }
        })
        .collect();
    Ok(ShareVector { d, k, shares })
}

/// Lagrange interpolation at zero from exactly `d` shares.
pub fn reconstruct(shares: &[Share], d: usize) -> Result<FieldElement, CodingError> {
    if shares.len() != d || d == 0 {
        return Err(CodingError::ShareCount { expected: d, got: shares.len() });
    }
    let field = shares[0].x.field();
    let mut seen = BTreeSet::new();
    for s in shares {
        if s.x.field() != field || s.y.field() != field {
            return Err(CodingError::MixedFields);
        }
        if s.x.is_zero() {
            return Err(CodingError::ZeroX);
        }
        if !seen.insert(s.x.value()) {
            return Err(CodingError::DuplicateX(s.x.value()));
        }
    }
    let mut secret = field.zero();
    for (i, si) in shares.iter().enumerate() {
        // basis_i(0) = prod_{j != i} x_j / (x_j - x_i)
        let mut num = field.one();
        let mut den = field.one();
        for (j, sj) in shares.iter().enumerate() {
            if i != j {
                num *= sj.x;
                den *= sj.x - si.x;
            }
        }
        secret += si.y * num * den.inverse().expect("distinct x-coordinates");
    }
    Ok(secret)
}
