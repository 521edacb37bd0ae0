//! Arithmetic in prime fields GF(p) with a runtime modulus.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

use super::CodingError;

/// Field used for byte-oriented sharing: every byte embeds directly.
pub const DEFAULT_MODULUS: u32 = 257;

/// A prime field GF(p), `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Result<Self, CodingError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(CodingError::NotPrime(p));
        }
        Ok(Field { p })
    }

    pub fn default_field() -> Self {
        Field { p: DEFAULT_MODULUS }
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn elem(self, value: u64) -> FieldElement {
        FieldElement { value: (value % u64::from(self.p)) as u32, p: self.p }
    }

    pub fn zero(self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(self) -> FieldElement {
        self.elem(1)
    }

    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> FieldElement {
        FieldElement { value: rng.gen_range(0..self.p), p: self.p }
    }

    /// All elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        let p = self.p;
        (0..p).map(move |value| FieldElement { value, p })
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of GF(p). Mixing elements of different fields is a logic
/// error and panics in debug builds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> Field {
        Field { p: self.p }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut exp: u64) -> FieldElement {
        let mut base = self;
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base *= base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; `None` for zero.
    pub fn inverse(self) -> Option<FieldElement> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(u64::from(self.p) - 2))
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        debug_assert_eq!(self.p, rhs.p, "mixed fields");
        let s = u64::from(self.value) + u64::from(rhs.value);
        FieldElement { value: (s % u64::from(self.p)) as u32, p: self.p }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let value = if self.value == 0 { 0 } else { self.p - self.value };
        FieldElement { value, p: self.p }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        debug_assert_eq!(self.p, rhs.p, "mixed fields");
        let m = u64::from(self.value) * u64::from(rhs.value);
        FieldElement { value: (m % u64::from(self.p)) as u32, p: self.p }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: FieldElement) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

/// Evaluates `coeffs[0] + coeffs[1] x + ...` by Horner's rule.
pub fn eval_poly(coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
    coeffs.iter().rev().fold(x.field().zero(), |acc, &c| acc * x + c)
}
