//! Welch-Berlekamp decoding of a Shamir sharing read as a Reed-Solomon
//! codeword.
//!
//! With `k` shares of a degree `< d` polynomial `f` and at most
//! `e = (k - d) / 2` wrong `y`-values, there is a monic error locator `E`
//! of degree `e` and `Q = f * E` of degree `< d + e` with
//! `Q(x_i) = y_i * E(x_i)` for every share. Those `k` equations are linear
//! in the `d + 2e` unknown coefficients; any solution yields `f = Q / E`.

use std::collections::BTreeSet;

use super::field::{eval_poly, Field, FieldElement};
use super::sharing::Share;
use super::CodingError;

/// Maximum number of corrupted shares the decoder corrects.
pub fn correction_budget(d: usize, k: usize) -> usize {
    k.saturating_sub(d) / 2
}

/// Recovers `f(0)` from all `k` shares, tolerating up to
/// [`correction_budget`] corrupted ones.
///
/// Beyond the budget the result is either [`CodingError::DecodeFailure`] or
/// a codeword within distance `e` of the received word.
pub fn decode_wb(shares: &[Share], d: usize) -> Result<FieldElement, CodingError> {
    let k = shares.len();
    if d == 0 || d > k {
        return Err(CodingError::ShareCount { expected: d.max(1), got: k });
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
    let budget = correction_budget(d, k);
    for e in (0..=budget).rev() {
        if let Some(f) = try_decode(field, shares, d, e) {
            let disagreements = shares.iter().filter(|s| eval_poly(&f, s.x) != s.y).count();
            if disagreements <= budget {
                return Ok(f.first().copied().unwrap_or(field.zero()));
            }
        }
    }
    Err(CodingError::DecodeFailure)
}

/// Solves the key equation with an error locator of degree exactly `e` and
/// returns the coefficients of `f` when `E` divides `Q` and `deg f < d`.
fn try_decode(field: Field, shares: &[Share], d: usize, e: usize) -> Option<Vec<FieldElement>> {
    // unknowns: E_0..E_{e-1}, then Q_0..Q_{d+e-1}
    let unknowns = d + 2 * e;
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(shares.len());
    for s in shares {
        let mut row = Vec::with_capacity(unknowns + 1);
        let mut xp = field.one();
        let mut powers = Vec::with_capacity(d + e + 1);
        for _ in 0..=d + e {
            powers.push(xp);
            xp *= s.x;
        }
        for p in powers.iter().take(e) {
            row.push(-(s.y * *p));
        }
        row.extend(powers.iter().take(d + e).copied());
        row.push(s.y * powers[e]);
        rows.push(row);
    }
    let solution = solve(field, rows, unknowns)?;
    let mut locator: Vec<FieldElement> = solution[..e].to_vec();
    locator.push(field.one());
    let q = &solution[e..];
    let (quotient, remainder) = poly_divmod(field, q, &locator);
    if remainder.iter().any(|c| !c.is_zero()) {
        return None;
    }
    let degree = quotient.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
    if degree > d {
        return None;
    }
    Some(quotient)
}

/// Gauss-Jordan elimination on an augmented system; free variables are set
/// to zero. `None` if inconsistent.
fn solve(field: Field, mut rows: Vec<Vec<FieldElement>>, unknowns: usize) -> Option<Vec<FieldElement>> {
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inverse().expect("nonzero pivot");
        for c in col..=unknowns {
            rows[r][c] *= inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col];
                for c in col..=unknowns {
                    let v = rows[r][c];
                    rows[i][c] -= factor * v;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![field.zero(); unknowns];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = rows[i][unknowns];
    }
    Some(x)
}

/// Divides `num` by the monic polynomial `den` (coefficients low to high).
fn poly_divmod(field: Field, num: &[FieldElement], den: &[FieldElement]) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], field.one());
    let mut rem = num.to_vec();
    if num.len() <= dd {
        return (vec![field.zero()], rem);
    }
    let mut quot = vec![field.zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if !c.is_zero() {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    rem.truncate(dd);
    (quot, rem)
}
