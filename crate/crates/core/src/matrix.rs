//! Square matrices over a tropical semiring.
//!
//! A `TropicalMatrix` stores its dimension, its semiring tag, and `k*k`
//! entries in row-major order. The matrices over a fixed tag and dimension
//! form a semigroup under `mat_mul`; there is no identity element in play
//! anywhere in this crate, so `mat_pow` requires a positive exponent.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::Error;
use crate::semiring::{scalar_mul, size_of_number, SemiringTag, SizeMode};

/// A `k x k` matrix with entries from the scalar domain of `tag`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropicalMatrix {
    dim: usize,
    tag: SemiringTag,
    entries: Vec<BigUint>,
}

impl TropicalMatrix {
    /// Builds a matrix from row-major entries, validating the domain.
    pub fn new(dim: usize, tag: SemiringTag, entries: Vec<BigUint>) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::BadEntryCount { dim, got: entries.len() });
        }
        for e in &entries {
            tag.check_entry(e)?;
        }
        Ok(TropicalMatrix { dim, tag, entries })
    }

    /// The matrix with every entry equal to the domain minimum.
    pub fn min_matrix(dim: usize, tag: SemiringTag) -> Result<Self, Error> {
        TropicalMatrix::new(dim, tag, vec![tag.domain_min(); dim * dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.dim + j]
    }

    /// Row-major view of all entries.
    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    /// Entrywise partial order: `self <= other` in every position.
    pub fn leq(&self, other: &TropicalMatrix) -> Result<bool, Error> {
        self.check_compatible(other)?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b))
    }

    fn check_compatible(&self, other: &TropicalMatrix) -> Result<(), Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.tag != other.tag {
            return Err(Error::TagMismatch);
        }
        Ok(())
    }
}

/// Tropical matrix product: `(A ⊗ B)_{ij} = max_l A_{il} ⊗ B_{lj}`.
pub fn mat_mul(a: &TropicalMatrix, b: &TropicalMatrix) -> Result<TropicalMatrix, Error> {
    a.check_compatible(b)?;
    let k = a.dim;
    let mut entries = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut best = scalar_mul(a.entry(i, 0), b.entry(0, j), a.tag);
            for l in 1..k {
                let cand = scalar_mul(a.entry(i, l), b.entry(l, j), a.tag);
                if cand > best {
                    best = cand;
                }
            }
            entries.push(best);
        }
    }
    Ok(TropicalMatrix { dim: k, tag: a.tag, entries })
}

/// `A^{⊗e}` for `e >= 1` by binary exponentiation.
///
/// The exponent zero is rejected: the semigroup has no identity, so the
/// empty product is undefined.
pub fn mat_pow(a: &TropicalMatrix, e: &BigUint) -> Result<TropicalMatrix, Error> {
    if e.is_zero() {
        return Err(Error::ZeroExponent);
    }
    let mut result: Option<TropicalMatrix> = None;
    let mut base = a.clone();
    let mut rem = e.clone();
    loop {
        if rem.is_odd() {
            result = Some(match result {
                None => base.clone(),
                Some(r) => mat_mul(&r, &base)?,
            });
        }
        rem >>= 1u32;
        if rem.is_zero() {
            break;
        }
        base = mat_mul(&base, &base)?;
    }
    Ok(result.expect("exponent was positive"))
}

/// Size of a matrix: sum of entry sizes plus `k^2 - 1`.
pub fn size_of_matrix(a: &TropicalMatrix, mode: SizeMode) -> BigUint {
    let mut total = BigUint::from(a.dim * a.dim - 1);
    for e in &a.entries {
        total += size_of_number(e, mode);
    }
    total
}
