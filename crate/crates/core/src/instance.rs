//! Problem instances and candidate certificates.
//!
//! An instance bundles `n` witness matrices `W_1, ..., W_n` and a target
//! matrix `C`, all square of the same dimension over the same semiring. The
//! subset-sum question asks for a nonempty subset of the witnesses whose
//! product (in index order) equals the target; the knapsack question allows
//! each witness to repeat, i.e. it asks for exponents `x_i >= 0`, not all
//! zero, with `W_1^{x_1} ⊗ ... ⊗ W_n^{x_n} = C` (zero exponents mean the
//! factor is absent, not an identity contribution).

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Error;
use crate::matrix::{mat_mul, mat_pow, size_of_matrix, TropicalMatrix};
use crate::semiring::{SemiringTag, SizeMode};

/// Which decision problem is being asked of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Each witness used at most once (binary exponents).
    SubsetSum,
    /// Each witness used any number of times (non-negative exponents).
    Knapsack,
}

/// A tuple `(W_1, ..., W_n; C)` of witnesses and a target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    tag: SemiringTag,
    dim: usize,
    witnesses: Vec<TropicalMatrix>,
    target: TropicalMatrix,
}

impl ProblemInstance {
    /// Builds an instance, checking that every matrix shares the target's
    /// dimension and semiring. An empty witness list is allowed (the answer
    /// to both questions is then trivially no).
    pub fn new(witnesses: Vec<TropicalMatrix>, target: TropicalMatrix) -> Result<Self, Error> {
        for w in &witnesses {
            if w.dim() != target.dim() {
                return Err(Error::DimensionMismatch { left: w.dim(), right: target.dim() });
            }
            if w.tag() != target.tag() {
                return Err(Error::TagMismatch);
            }
        }
        Ok(ProblemInstance { tag: target.tag(), dim: target.dim(), witnesses, target })
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn witness(&self, i: usize) -> &TropicalMatrix {
        &self.witnesses[i]
    }

    pub fn witnesses(&self) -> &[TropicalMatrix] {
        &self.witnesses
    }

    pub fn target(&self) -> &TropicalMatrix {
        &self.target
    }

    /// Evaluates the product selected by a certificate, in witness order.
    ///
    /// Fails if the certificate length differs from the witness count or if
    /// every exponent is zero (there is no empty product in the semigroup).
    pub fn evaluate(&self, cert: &Certificate) -> Result<TropicalMatrix, Error> {
        if cert.exponents().len() != self.witnesses.len() {
            return Err(Error::CertificateLength {
                expected: self.witnesses.len(),
                got: cert.exponents().len(),
            });
        }
        let mut acc: Option<TropicalMatrix> = None;
        for (w, e) in self.witnesses.iter().zip(cert.exponents()) {
            if e.is_zero() {
                continue;
            }
            let factor = mat_pow(w, e)?;
            acc = Some(match acc {
                None => factor,
                Some(p) => mat_mul(&p, &factor)?,
            });
        }
        acc.ok_or(Error::EmptyCertificate)
    }
}

/// Candidate solution: one exponent per witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate(pub Vec<BigUint>);

impl Certificate {
    pub fn exponents(&self) -> &[BigUint] {
        &self.0
    }

    /// True when every exponent is 0 or 1, as subset-sum requires.
    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|e| e <= &BigUint::from(1u32))
    }

    /// True when at least one witness is actually used.
    pub fn is_nonzero(&self) -> bool {
        self.0.iter().any(|e| !e.is_zero())
    }
}

/// Size of an instance: the matrix sizes summed, plus the witness count.
pub fn size_of_instance(instance: &ProblemInstance, mode: SizeMode) -> BigUint {
    let mut total = BigUint::from(instance.len());
    for w in instance.witnesses() {
        total += size_of_matrix(w, mode);
    }
    total += size_of_matrix(instance.target(), mode);
    total
}
