//! The fixed subfield of the scaling endomorphism.
//!
//! A Laurent monomial in the scaled variables is fixed exactly when its
//! exponent vector is a relation of the scale tuple, so the fixed rational
//! functions are generated over the ground field by one monomial per basis
//! row of the relation lattice. Rank zero means the only fixed elements are
//! the ground-field scalars.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::explattice::exponent_lattice;
use crate::field::{sigma_apply, FieldElement, MultiPoly, RatFunc, SigmaSpec};
use crate::{Config, Result};

/// Generators of the fixed subfield, one Laurent monomial per relation.
#[derive(Clone, Debug)]
pub struct ConstantFieldDescription {
    nvars: usize,
    generators: Vec<Vec<BigInt>>,
    exact: bool,
}

impl ConstantFieldDescription {
    /// Generator exponent vectors, a lattice basis in Hermite normal form.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// True when the generator list is provably complete.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// The generator at `idx` as a rational function: positive exponents in
    /// the numerator, negated negative ones in the denominator.
    pub fn generator_ratfunc(&self, idx: usize) -> RatFunc {
        laurent_monomial(self.nvars, &self.generators[idx])
    }
}

/// Renders an exponent vector as a monomial quotient.
pub fn laurent_monomial(nvars: usize, exps: &[BigInt]) -> RatFunc {
    assert_eq!(exps.len(), nvars, "dimension mismatch");
    let mut pos = vec![0u32; nvars];
    let mut neg = vec![0u32; nvars];
    for (j, e) in exps.iter().enumerate() {
        let mag = u32::try_from(e.abs()).expect("exponent fits in a monomial");
        if e.is_negative() {
            neg[j] = mag;
        } else {
            pos[j] = mag;
        }
    }
    let num = MultiPoly::monomial(nvars, pos, FieldElement::one());
    let den = MultiPoly::monomial(nvars, neg, FieldElement::one());
    RatFunc::new(num, den).expect("monomial denominator is nonzero")
}

/// Describes the fixed subfield for the given scale tuple.
pub fn constant_generators(spec: &SigmaSpec, cfg: &Config) -> Result<ConstantFieldDescription> {
    let lat = exponent_lattice(spec.lambdas(), cfg)?;
    Ok(ConstantFieldDescription {
        nvars: spec.nvars(),
        generators: lat.basis().to_vec(),
        exact: lat.is_exact(),
    })
}

/// Whether `f` is fixed by the scaling endomorphism.
pub fn is_constant(f: &RatFunc, spec: &SigmaSpec) -> bool {
    sigma_apply(f, spec, 1) == *f
}
