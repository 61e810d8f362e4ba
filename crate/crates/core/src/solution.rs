//! The full rational solution set of `c*sigma(g) - g = f`.
//!
//! Solutions differ by solutions of the homogeneous equation
//! `c*sigma(g) = g`. A nonzero homogeneous solution exists exactly when
//! `1/c` is a product of powers of the scale factors, and then one can be
//! taken to be a Laurent monomial; the whole set is that monomial times the
//! constant field, translated by any particular solution.

use crate::constants::{constant_generators, laurent_monomial, ConstantFieldDescription};
use crate::explattice::multiplicative_decompose;
use crate::field::{FieldElement, RatFunc, SigmaSpec};
use crate::summability::{delta, is_summable, Obstruction, SummabilityOutcome};
use crate::{Config, Result};

/// What the homogeneous equation `c*sigma(g) = g` admits.
#[derive(Clone, Debug)]
pub enum HomogeneousPart {
    /// Proven: `1/c` is not a product of scale-factor powers, so only the
    /// zero solution exists and the full equation has at most one solution.
    OnlyZero,
    /// A verified nonzero Laurent monomial solution.
    Monomial(RatFunc),
    /// The bounded relation search found no exponent vector but cannot rule
    /// one out.
    Unknown,
}

/// Symbolic description of every rational solution: `F*gen + particular`
/// with `F` running over the constant field.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    /// One verified solution.
    pub particular: RatFunc,
    /// Generator of the homogeneous solutions, when one exists.
    pub homogeneous: HomogeneousPart,
    /// Generators of the constant field the coefficient `F` ranges over.
    pub constants: ConstantFieldDescription,
}

impl SolutionSet {
    /// The member `F * gen + particular` for a constant `F`; with no
    /// homogeneous generator the particular solution is the only member.
    pub fn member(&self, f_const: &RatFunc) -> RatFunc {
        match &self.homogeneous {
            HomogeneousPart::Monomial(gen) => &(f_const * gen) + &self.particular,
            _ => self.particular.clone(),
        }
    }
}

/// Result of solving for the full solution set.
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solved(SolutionSet),
    NotSummable(Obstruction),
    Unknown(String),
}

/// Finds a Laurent monomial `a^i` with `lambda^i = 1/c`, which solves the
/// homogeneous equation; `OnlyZero` is only reported from an exact lattice.
pub fn homogeneous_solution(
    c: &FieldElement,
    lambdas: &[FieldElement],
    cfg: &Config,
) -> Result<HomogeneousPart> {
    assert!(!c.is_zero(), "multiplier must be nonzero");
    let dec = multiplicative_decompose(&c.inv(), lambdas, cfg)?;
    match dec.exponents {
        Some(exps) => {
            let gen = laurent_monomial(lambdas.len(), &exps);
            let spec = SigmaSpec::new(lambdas.to_vec())?;
            assert!(delta(&gen, c, &spec).is_zero(), "homogeneous solution verifies");
            Ok(HomogeneousPart::Monomial(gen))
        }
        None if dec.exact => Ok(HomogeneousPart::OnlyZero),
        None => Ok(HomogeneousPart::Unknown),
    }
}

/// Solves `c*sigma(g) - g = f` completely: a particular solution, the
/// homogeneous generator if any, and the constant field it pairs with.
pub fn solve_all(
    f: &RatFunc,
    c: &FieldElement,
    spec: &SigmaSpec,
    cfg: &Config,
) -> Result<SolveOutcome> {
    assert!(!c.is_zero(), "multiplier must be nonzero");
    Ok(match is_summable(f, c, spec, cfg)? {
        SummabilityOutcome::Summable(particular) => {
            let homogeneous = homogeneous_solution(c, spec.lambdas(), cfg)?;
            let constants = constant_generators(spec, cfg)?;
            SolveOutcome::Solved(SolutionSet { particular, homogeneous, constants })
        }
        SummabilityOutcome::NotSummable(cert) => SolveOutcome::NotSummable(cert),
        SummabilityOutcome::Unknown(reason) => SolveOutcome::Unknown(reason),
    })
}
