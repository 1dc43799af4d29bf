use std::fmt;

/// Errors reported by fallible operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two matrices were combined but their dimensions differ.
    DimensionMismatch { left: usize, right: usize },
    /// Two matrices were combined but they live over different semirings.
    TagMismatch,
    /// A scalar lies outside the domain of the chosen semiring.
    EntryOutOfDomain { entry: String, tag: &'static str },
    /// A matrix was constructed with an entry count that is not `dim * dim`.
    BadEntryCount { dim: usize, got: usize },
    /// `dim` must be at least 1.
    ZeroDimension,
    /// Matrix powers start at exponent 1; the semigroups have no identity.
    ZeroExponent,
    /// A certificate's length does not match the instance's witness count.
    CertificateLength { expected: usize, got: usize },
    /// A subset-sum certificate contains an exponent other than 0 or 1.
    NonBinaryCertificate,
    /// A certificate selects no witness at all (the empty product).
    EmptyCertificate,
    /// An exhaustive census enumeration would exceed the caller's cap.
    SearchSpaceExceeded { space: String, cap: u64 },
    /// A sampling request targeted a stratum that contains no instances.
    EmptyStratum { m: u64, dim: usize },
    /// An exact-cover instance is malformed (ground size or triples).
    InvalidX3c(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "matrix dimensions differ: {left} vs {right}")
            }
            Error::TagMismatch => write!(f, "matrices belong to different semirings"),
            Error::EntryOutOfDomain { entry, tag } => {
                write!(f, "entry {entry} is outside the {tag} domain")
            }
            Error::BadEntryCount { dim, got } => {
                write!(f, "expected {}x{} = {} entries, got {got}", dim, dim, dim * dim)
            }
            Error::ZeroDimension => write!(f, "matrix dimension must be at least 1"),
            Error::ZeroExponent => {
                write!(f, "matrix power requires exponent >= 1 (no identity matrix)")
            }
            Error::CertificateLength { expected, got } => {
                write!(f, "certificate has {got} exponents, instance has {expected} witnesses")
            }
            Error::NonBinaryCertificate => {
                write!(f, "subset-sum certificates must have exponents in {{0, 1}}")
            }
            Error::EmptyCertificate => {
                write!(f, "certificate must use at least one witness")
            }
            Error::SearchSpaceExceeded { space, cap } => {
                write!(f, "exhaustive search space {space} exceeds cap {cap}")
            }
            Error::EmptyStratum { m, dim } => {
                write!(f, "no {dim}x{dim} instance has binary size {m}")
            }
            Error::InvalidX3c(msg) => write!(f, "invalid exact-cover instance: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
