//! One-time message authentication over GF(p).
//!
//! Messages are first compressed with a keyed polynomial hash, then tagged
//! with the affine map `a * digest + b`. Both families are universal, so
//! the forgery bounds hold without computational assumptions.

use rand::Rng;
use thiserror::Error;

use crate::coding::{Field, FieldElement};
use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuthError {
    #[error("one-time key owned by {owner} has already produced a tag")]
    KeyReuse { owner: Vertex },
}

/// Polynomial evaluation hash `sum_j m_j r^(j+1) + len`, with each byte
/// reduced into the field.
pub fn hash_message(hash_key: FieldElement, message: &[u8]) -> FieldElement {
    let field = hash_key.field();
    let mut acc = field.zero();
    let mut power = hash_key;
    for &byte in message {
        acc += field.elem(u64::from(byte)) * power;
        power *= hash_key;
    }
    acc + field.elem(message.len() as u64)
}

/// A one-time MAC key shared with the neighbor `owner`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacKey {
    pub a: FieldElement,
    pub b: FieldElement,
    pub hash_key: FieldElement,
    pub owner: Vertex,
    uses: u32,
}

impl MacKey {
    pub fn new(a: FieldElement, b: FieldElement, hash_key: FieldElement, owner: Vertex) -> Self {
        MacKey { a, b, hash_key, owner, uses: 0 }
    }

    /// Uniformly random key over the whole field.
    pub fn random<R: Rng + ?Sized>(field: Field, owner: Vertex, rng: &mut R) -> Self {
        let a = field.random(rng);
        let b = field.random(rng);
        let hash_key = field.random(rng);
        MacKey::new(a, b, hash_key, owner)
    }

    pub fn uses(&self) -> u32 {
        self.uses
    }

    pub fn digest(&self, message: &[u8]) -> FieldElement {
        hash_message(self.hash_key, message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tag {
    pub value: FieldElement,
    pub key_owner: Vertex,
}

/// Tags `digest`; a key produces at most one tag.
pub fn mac(key: &mut MacKey, digest: FieldElement) -> Result<Tag, AuthError> {
    if key.uses > 0 {
        return Err(AuthError::KeyReuse { owner: key.owner });
    }
    key.uses += 1;
    Ok(Tag { value: key.a * digest + key.b, key_owner: key.owner })
}

pub fn verify(key: &MacKey, digest: FieldElement, tag: &Tag) -> bool {
    key.a * digest + key.b == tag.value
}
