//! The scaling automorphism `sigma(ai) = lambda_i * ai`.
//!
//! Each scale factor is a nonzero field constant, so sigma maps monomials to
//! scalar multiples of themselves. Powers `sigma^k` for any integer `k`
//! follow by raising the scale factors to `k`.

use super::{FieldElement, Monomial, MultiPoly, RatFunc};
use crate::{Error, Result};

/// Defining data of the automorphism: the scale factor per variable.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaSpec {
    lambdas: Vec<FieldElement>,
}

impl SigmaSpec {
    pub fn new(lambdas: Vec<FieldElement>) -> Result<SigmaSpec> {
        if lambdas.iter().any(FieldElement::is_zero) {
            return Err(Error::Invalid("scale factors must be nonzero".into()));
        }
        Ok(SigmaSpec { lambdas })
    }

    pub fn nvars(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[FieldElement] {
        &self.lambdas
    }

    pub fn lambda(&self, idx: usize) -> &FieldElement {
        &self.lambdas[idx]
    }

    /// Restriction to the first `m` variables.
    pub fn restrict(&self, m: usize) -> SigmaSpec {
        SigmaSpec { lambdas: self.lambdas[..m].to_vec() }
    }

    /// The factor picked up by a monomial under `sigma^k`: the product of
    /// `lambda_i^(k * e_i)`.
    pub fn monomial_factor(&self, m: &Monomial, k: i64) -> FieldElement {
        let mut acc = FieldElement::one();
        for (l, &e) in self.lambdas.iter().zip(m.exps()) {
            if e > 0 {
                acc = &acc * &l.pow(k * e as i64);
            }
        }
        acc
    }

    /// `prod lambda_i^(e_i)` for a signed exponent vector.
    pub fn signed_power(&self, exps: &[i64]) -> FieldElement {
        let mut acc = FieldElement::one();
        for (l, &e) in self.lambdas.iter().zip(exps) {
            if e != 0 {
                acc = &acc * &l.pow(e);
            }
        }
        acc
    }
}

/// Applies `sigma^k` to a polynomial.
pub fn sigma_poly(p: &MultiPoly, sigma: &SigmaSpec, k: i64) -> MultiPoly {
    assert_eq!(p.nvars(), sigma.nvars(), "variable count mismatch");
    if k == 0 {
        return p.clone();
    }
    let mut out = MultiPoly::zero(p.nvars());
    for (m, c) in p.terms() {
        let factored = c * &sigma.monomial_factor(m, k);
        out = &out + &MultiPoly::monomial(p.nvars(), m.exps().to_vec(), factored);
    }
    out
}

/// Applies `sigma^k` to a rational function.
///
/// Since sigma scales monomials, coprimality and the denominator's support
/// are preserved; only a rescaling keeps the denominator monic.
pub fn sigma_apply(f: &RatFunc, sigma: &SigmaSpec, k: i64) -> RatFunc {
    assert_eq!(f.nvars(), sigma.nvars(), "variable count mismatch");
    if k == 0 {
        return f.clone();
    }
    let num = sigma_poly(f.num(), sigma, k);
    let den = sigma_poly(f.den(), sigma, k);
    let (den, lc) = den.monic();
    RatFunc::from_reduced_unchecked(num.scale(&lc.inv()), den)
}
