//! Scalar layer of the two tropical semirings.
//!
//! Both semirings use `max` as addition. Multiplication is integer addition
//! over `Z >= 0` (max-plus) or integer multiplication over `Z >= 1`
//! (max-times). The domain minimum doubles as the smallest value an entry of
//! a matrix may take.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;

/// Selects one of the two scalar semirings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiringTag {
    /// `max` / `+` over the non-negative integers.
    MaxPlus,
    /// `max` / `*` over the positive integers.
    MaxTimes,
}

impl SemiringTag {
    /// Smallest scalar in the domain: 0 for max-plus, 1 for max-times.
    pub fn domain_min(&self) -> BigUint {
        match self {
            SemiringTag::MaxPlus => BigUint::zero(),
            SemiringTag::MaxTimes => BigUint::one(),
        }
    }

    /// Whether `a` lies in the scalar domain.
    pub fn contains(&self, a: &BigUint) -> bool {
        match self {
            SemiringTag::MaxPlus => true,
            SemiringTag::MaxTimes => !a.is_zero(),
        }
    }

    pub(crate) fn check_entry(&self, a: &BigUint) -> Result<(), Error> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::EntryOutOfDomain { entry: a.to_string(), tag: self.name() })
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SemiringTag::MaxPlus => "max-plus",
            SemiringTag::MaxTimes => "max-times",
        }
    }
}

/// Scalar `a ⊗ b`: integer sum for max-plus, integer product for max-times.
pub fn scalar_mul(a: &BigUint, b: &BigUint, tag: SemiringTag) -> BigUint {
    match tag {
        SemiringTag::MaxPlus => a + b,
        SemiringTag::MaxTimes => a * b,
    }
}

/// Selects the unary or binary size function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeMode {
    /// Size of a number is the number itself.
    Unary,
    /// Size of a number is its bit length, with size(0) = 0.
    Binary,
}

/// Size of a non-negative integer in the chosen mode.
pub fn size_of_number(a: &BigUint, mode: SizeMode) -> BigUint {
    match mode {
        SizeMode::Unary => a.clone(),
        SizeMode::Binary => BigUint::from(a.bits()),
    }
}
