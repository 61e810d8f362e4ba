//! Exact summability in multivariate difference fields with scaling
//! automorphisms.
//!
//! The ambient field is `F(a1, ..., an)` where `F` is `Q` or a simple number
//! field `Q(theta)`, equipped with an automorphism `sigma` that fixes `F` and
//! scales each generator: `sigma(ai) = lambda_i * ai` for nonzero multipliers
//! `lambda_i` in `F`. The central question answered by this crate: given a
//! rational function `f` and a nonzero `c` in `F`, decide whether some `g`
//! satisfies
//!
//! ```text
//!     c * sigma(g) - g = f,
//! ```
//!
//! produce such a `g` when it exists (every returned witness is re-verified by
//! substitution), explain why none exists otherwise, and describe the full
//! solution set over the constant field of `sigma`.
//!
//! Module map:
//! - [`field`]: exact coefficient arithmetic, sparse multivariate polynomials,
//!   normalized rational functions, and the `sigma` action.
//! - [`lattice`]: integer matrices, Hermite/Smith normal forms, linear
//!   Diophantine systems, and arithmetic progressions.
//! - [`explattice`]: multiplicative relation lattices of tuples of field
//!   elements, exact over `Q` and bounded-search otherwise.
//! - [`constants`]: the constant field of `sigma`, described by Laurent
//!   monomial generators.
//! - [`factor`]: polynomial factorization (univariate over `Q` and
//!   `Q(theta)`, multivariate with respect to the last variable).
//! - [`spread`]: shift sets `Spr(p, q) = {k : sigma^k(p) = u * q}`.
//! - [`orbital`]: partial fraction decompositions grouped by `sigma`-orbits
//!   of irreducible denominator factors.
//! - [`summability`]: the summability decision procedure with certificates.
//! - [`solution`]: full solution sets of `c*sigma(g) - g = f`.
//! - [`companion`]: recurrence systems given by companion or general
//!   invertible matrices, solved by transport onto a scaling system or by a
//!   graded polynomial ansatz.
//! - [`cli`]: expression and problem-file parsing plus the command front end.

pub mod cli;
pub mod companion;
pub mod constants;
pub mod explattice;
pub mod factor;
pub mod field;
pub mod lattice;
pub mod orbital;
pub mod solution;
pub mod spread;
pub mod summability;

use thiserror::Error;

/// Tunable limits for relation searches and factorization.
#[derive(Clone, Debug)]
pub struct Config {
    /// Box bound for multiplicative relation searches when some multiplier is
    /// not rational; relations with any exponent exceeding the bound are
    /// missed and results are flagged as inexact.
    pub search_bound: u32,
    /// Cap on the total degree of a multivariate factorization input.
    pub degree_cap: u32,
    /// Cap on the number of variables appearing in a factorization input.
    pub var_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { search_bound: 10, degree_cap: 12, var_cap: 3 }
    }
}

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("total degree {degree} exceeds the factorization cap {cap} (raise --degree-cap)")]
    DegreeCap { degree: u64, cap: u32 },
    #[error("{vars} variables in the factorization input exceed the cap {cap}")]
    VarCap { vars: usize, cap: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("expected a nonzero polynomial")]
    ZeroPolynomial,
    #[error("the minimal polynomial must be irreducible over Q of degree at least 2")]
    BadMinimalPolynomial,
    #[error("sigma multipliers and the equation multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("matrix must be square and invertible")]
    SingularMatrix,
    #[error("characteristic polynomial does not split over the coefficient field ({0} remains)")]
    DoesNotSplit(String),
    #[error("matrix is not diagonalizable (eigenvalue {0} is defective)")]
    NotDiagonalizable(String),
    #[error("shift {0} is not in the spread of the polynomial with itself")]
    NotInSelfSpread(i64),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Process exit code used by the CLI: 1 parse/input, 2 capability.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Invalid(_) | Error::ZeroDenominator
            | Error::ZeroPolynomial | Error::ZeroMultiplier | Error::BadMinimalPolynomial => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
