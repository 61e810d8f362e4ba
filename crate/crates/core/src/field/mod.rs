//! Exact arithmetic for the coefficient field and the difference field.
//!
//! Re-exports:
//! - [`FieldElement`], [`NumberFieldCtx`]: elements of `Q` or a simple number
//!   field `Q(theta)` given by an irreducible minimal polynomial.
//! - [`Monomial`], [`MultiPoly`]: sparse multivariate polynomials ordered by
//!   graded lexicographic order with `a1 > a2 > ... > an`.
//! - [`RatFunc`]: rational functions in canonical form (coprime numerator and
//!   denominator, monic denominator).
//! - [`SigmaSpec`], [`sigma_apply`]: the scaling automorphism and its powers.
//! - [`LastVarPoly`]: polynomials in the last variable with rational-function
//!   coefficients in the remaining ones, the working shape for partial
//!   fraction numerators.
//! - [`poly_gcd`]: multivariate gcd by primitive remainder sequences.

mod element;
pub mod gcd;
mod lastvar;
mod poly;
pub(crate) mod qx;
mod ratfunc;
mod sigma;

pub use element::{FieldElement, NumberFieldCtx};
pub use gcd::poly_gcd;
pub use lastvar::LastVarPoly;
pub use poly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;
pub use sigma::{sigma_apply, sigma_poly, SigmaSpec};
