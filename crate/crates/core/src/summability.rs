//! Deciding `c*sigma(g) - g = f` and constructing a witness `g`.
//!
//! The decision runs along the orbital decomposition: Laurent terms recurse
//! on one variable fewer with multiplier `c*lambda_n^i`, orbit components
//! first collapse to a single remainder over the representative power, then
//! either vanish (aperiodic orbit) or reduce coefficientwise through the
//! period. Every witness returned anywhere is verified by substitution.

use std::fmt;

use crate::field::{
    sigma_apply, sigma_poly, FieldElement, LastVarPoly, MultiPoly, RatFunc, SigmaSpec,
};
use crate::lattice::Progression;
use crate::orbital::{orbital_decompose, OrbitComponent};
use crate::spread::{orbit_unit, spread};
use crate::{Config, Result};

/// Why a function is not summable, naming the failing component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The Laurent term at this power of the last variable has no solution;
    /// at the base of the recursion this is the excluded case
    /// `lambda^i = 1/c`.
    Laurent { index: i64 },
    /// The component over this representative power keeps a nonzero
    /// remainder that no shift pattern can cancel.
    Orbit { representative: MultiPoly, multiplicity: u32 },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Laurent { index } => {
                write!(f, "Laurent term at power {index} of the last variable admits no solution")
            }
            Obstruction::Orbit { representative, multiplicity } => write!(
                f,
                "orbit component over ({representative})^{multiplicity} has a nonzero remainder"
            ),
        }
    }
}

/// Result of a summability decision.
#[derive(Clone, Debug)]
pub enum SummabilityOutcome {
    /// A witness `g` with `c*sigma(g) - g = f`, verified by substitution.
    Summable(RatFunc),
    /// Provably no witness exists; the certificate names the obstruction.
    NotSummable(Obstruction),
    /// An inexact relation lattice was involved, so a missed relation could
    /// still make the function summable.
    Unknown(String),
}

impl SummabilityOutcome {
    pub fn witness(&self) -> Option<&RatFunc> {
        match self {
            SummabilityOutcome::Summable(g) => Some(g),
            _ => None,
        }
    }

    pub fn is_summable(&self) -> bool {
        matches!(self, SummabilityOutcome::Summable(_))
    }
}

/// The difference operator `c*sigma(g) - g`.
pub fn delta(g: &RatFunc, c: &FieldElement, spec: &SigmaSpec) -> RatFunc {
    &sigma_apply(g, spec, 1).scale(c) - g
}

/// `(c*sigma)^m` for any integer `m`, so `m = -1` inverts the operator.
fn apply_cs(x: &RatFunc, m: i64, c: &FieldElement, spec: &SigmaSpec) -> RatFunc {
    sigma_apply(x, spec, m).scale(&c.pow(m))
}

/// Multiplies a coefficient one variable down by a signed power of the
/// last variable.
fn attach_power(q: &RatFunc, i: i64, nvars: usize) -> RatFunc {
    let lifted = q.extend_vars(1);
    if i == 0 {
        return lifted;
    }
    let mut exps = vec![0u32; nvars];
    exps[nvars - 1] = u32::try_from(i.unsigned_abs()).expect("Laurent power fits");
    let mono = RatFunc::from_poly(MultiPoly::monomial(nvars, exps, FieldElement::one()));
    if i > 0 {
        &lifted * &mono
    } else {
        &lifted / &mono
    }
}

/// Value of a constant rational function.
fn scalar_of(f: &RatFunc) -> FieldElement {
    let num = f.num().leading().map(|(_, v)| v.clone()).unwrap_or_else(FieldElement::zero);
    let den = f.den().leading().map(|(_, v)| v.clone()).expect("nonzero denominator");
    &num / &den
}

/// The value an orbit component stands for.
pub fn component_value(comp: &OrbitComponent, spec: &SigmaSpec) -> RatFunc {
    let n = spec.nvars();
    let mut acc = RatFunc::zero(n);
    for (&l, numer) in &comp.terms {
        let den = sigma_poly(&comp.representative, spec, l).monic().0.pow(comp.multiplicity);
        acc = &acc + &(&numer.to_ratfunc() / &RatFunc::from_poly(den));
    }
    acc
}

/// Collapses an orbit component onto its representative: returns
/// `(g_partial, a)` with `component = c*sigma(g_partial) - g_partial + a/d^j`
/// and the remainder `a` of smaller degree in the last variable than `d`.
pub fn shift_reduce(
    comp: &OrbitComponent,
    c: &FieldElement,
    spec: &SigmaSpec,
) -> (RatFunc, LastVarPoly) {
    let n = spec.nvars();
    let d = &comp.representative;
    let j = comp.multiplicity;
    let lead = d.leading().expect("nonzero representative").0.clone();
    let mut g = RatFunc::zero(n);
    let mut rem = RatFunc::zero(n);
    for (&l, numer) in &comp.terms {
        // numerator over sigma^l(d)^j instead of over the monic shift
        let w = spec.monomial_factor(&lead, l);
        let a_l = numer.to_ratfunc().scale(&w.pow(j as i64));
        rem = &rem + &apply_cs(&a_l, -l, c, spec);
        if l > 0 {
            for i in 0..l {
                let den = RatFunc::from_poly(sigma_poly(d, spec, i).pow(j));
                g = &g + &(&apply_cs(&a_l, i - l, c, spec) / &den);
            }
        } else {
            for i in 0..(-l) {
                let den = RatFunc::from_poly(sigma_poly(d, spec, l + i).pow(j));
                g = &g - &(&apply_cs(&a_l, i, c, spec) / &den);
            }
        }
    }
    let rem = LastVarPoly::try_from_ratfunc(&rem).expect("remainder is polynomial in the last variable");
    if let Some(deg) = rem.degree() {
        assert!((deg as u32) < d.degree_in(n - 1).unwrap(), "remainder degree dropped below d");
    }
    let back = &delta(&g, c, spec) + &(&rem.to_ratfunc() / &RatFunc::from_poly(d.pow(j)));
    assert!(back == component_value(comp, spec), "shift reduction identity");
    (g, rem)
}

/// Decides summability of the simple fraction `a/d^j` inside its orbit
/// space; `d` is monic irreducible with positive degree in the last
/// variable and `a` has smaller degree than `d` there.
pub fn fraction_summable(
    a: &LastVarPoly,
    d: &MultiPoly,
    j: u32,
    c: &FieldElement,
    spec: &SigmaSpec,
    cfg: &Config,
) -> Result<SummabilityOutcome> {
    let n = spec.nvars();
    assert!(j >= 1, "power must be positive");
    let d_deg = d.degree_in(n - 1).expect("denominator involves the last variable");
    assert!(d_deg >= 1);
    if let Some(deg) = a.degree() {
        assert!((deg as u32) < d_deg, "numerator degree must stay below the denominator");
    }
    if a.is_zero() {
        return Ok(SummabilityOutcome::Summable(RatFunc::zero(n)));
    }
    let own = spread(d, d, spec, cfg)?;
    let obstruction = || Obstruction::Orbit { representative: d.clone(), multiplicity: j };
    let k = match own.set {
        Progression::Single(0) => {
            return Ok(if own.exact {
                SummabilityOutcome::NotSummable(obstruction())
            } else {
                SummabilityOutcome::Unknown(format!(
                    "inexact exponent lattice: the self spread of {d} may be larger than computed"
                ))
            });
        }
        Progression::Arith { offset: 0, step } => step,
        other => unreachable!("self spread is a subgroup of the integers, got {other:?}"),
    };
    let u = orbit_unit(d, k, spec)?;
    let eps = &c.pow(k) * &u.pow(-(j as i64));
    let sub_spec =
        SigmaSpec::new(spec.lambdas()[..n - 1].iter().map(|l| l.pow(k)).collect())?;
    let lam_n = spec.lambda(n - 1);
    let mut b = RatFunc::zero(n);
    for i in 0..=a.degree().expect("nonzero numerator") {
        let p_i = a.coeff(i);
        if p_i.is_zero() {
            continue;
        }
        let p_low = p_i.drop_last_var().expect("coefficient is free of the last variable");
        let eps_i = &eps * &lam_n.pow(k * i as i64);
        match is_summable(&p_low, &eps_i, &sub_spec, cfg)? {
            SummabilityOutcome::Summable(b_i) => {
                b = &b + &attach_power(&b_i, i as i64, n);
            }
            SummabilityOutcome::NotSummable(_) => {
                return Ok(if own.exact {
                    SummabilityOutcome::NotSummable(obstruction())
                } else {
                    SummabilityOutcome::Unknown(format!(
                        "inexact exponent lattice: the orbit period of {d} may be a proper divisor"
                    ))
                });
            }
            SummabilityOutcome::Unknown(reason) => {
                return Ok(SummabilityOutcome::Unknown(reason));
            }
        }
    }
    // telescoping: (c sigma - 1) sum of (c sigma)^m = (c sigma)^k - 1
    let base = &b / &RatFunc::from_poly(d.pow(j));
    let mut g = RatFunc::zero(n);
    for m in 0..k {
        g = &g + &apply_cs(&base, m, c, spec);
    }
    let value = &a.to_ratfunc() / &RatFunc::from_poly(d.pow(j));
    assert!(delta(&g, c, spec) == value, "fraction witness verifies by substitution");
    Ok(SummabilityOutcome::Summable(g))
}

/// Decides summability of the Laurent term `p * an^i` where `p` lives one
/// variable down; a witness is returned in the full variable set.
pub fn laurent_summable(
    p: &RatFunc,
    i: i64,
    c: &FieldElement,
    spec: &SigmaSpec,
    cfg: &Config,
) -> Result<SummabilityOutcome> {
    let n = spec.nvars();
    assert_eq!(p.nvars() + 1, n, "coefficient lives one variable down");
    let c_next = c * &spec.lambda(n - 1).pow(i);
    match is_summable(p, &c_next, &spec.restrict(n - 1), cfg)? {
        SummabilityOutcome::Summable(q) => {
            let g = attach_power(&q, i, n);
            let value = attach_power(p, i, n);
            assert!(delta(&g, c, spec) == value, "Laurent witness verifies by substitution");
            Ok(SummabilityOutcome::Summable(g))
        }
        SummabilityOutcome::NotSummable(_) => {
            Ok(SummabilityOutcome::NotSummable(Obstruction::Laurent { index: i }))
        }
        SummabilityOutcome::Unknown(reason) => Ok(SummabilityOutcome::Unknown(reason)),
    }
}

/// Decides whether `f = c*sigma(g) - g` has a rational solution and returns
/// one when it does.
pub fn is_summable(
    f: &RatFunc,
    c: &FieldElement,
    spec: &SigmaSpec,
    cfg: &Config,
) -> Result<SummabilityOutcome> {
    assert!(!c.is_zero(), "multiplier must be nonzero");
    assert_eq!(f.nvars(), spec.nvars(), "variable count mismatch");
    let n = f.nvars();
    if n == 0 {
        // sigma is the identity on the ground field
        let v = scalar_of(f);
        let denom = c - &FieldElement::one();
        return Ok(if !denom.is_zero() {
            SummabilityOutcome::Summable(RatFunc::constant(0, &v / &denom))
        } else if v.is_zero() {
            SummabilityOutcome::Summable(RatFunc::zero(0))
        } else {
            SummabilityOutcome::NotSummable(Obstruction::Laurent { index: 0 })
        });
    }

    let dec = orbital_decompose(f, spec, cfg)?;
    // with an inexact lattice the grouping itself is unreliable, so no
    // negative certificate may be issued from it
    let trusted = dec.exact;
    let mut g = RatFunc::zero(n);
    let mut unknown: Option<String> = None;
    let note = |reason: String, unknown: &mut Option<String>| {
        unknown.get_or_insert(reason);
    };

    for (&i, p) in &dec.laurent {
        match laurent_summable(p, i, c, spec, cfg)? {
            SummabilityOutcome::Summable(gi) => g = &g + &gi,
            SummabilityOutcome::NotSummable(cert) => {
                if trusted {
                    return Ok(SummabilityOutcome::NotSummable(cert));
                }
                note("inexact exponent lattice: orbit grouping unverified".into(), &mut unknown);
            }
            SummabilityOutcome::Unknown(reason) => note(reason, &mut unknown),
        }
    }
    for comp in &dec.components {
        let (g_partial, rem) = shift_reduce(comp, c, spec);
        match fraction_summable(&rem, &comp.representative, comp.multiplicity, c, spec, cfg)? {
            SummabilityOutcome::Summable(gr) => g = &(&g + &g_partial) + &gr,
            SummabilityOutcome::NotSummable(cert) => {
                if trusted {
                    return Ok(SummabilityOutcome::NotSummable(cert));
                }
                note("inexact exponent lattice: orbit grouping unverified".into(), &mut unknown);
            }
            SummabilityOutcome::Unknown(reason) => note(reason, &mut unknown),
        }
    }
    if let Some(reason) = unknown {
        return Ok(SummabilityOutcome::Unknown(reason));
    }
    assert!(delta(&g, c, spec) == *f, "assembled witness verifies by substitution");
    Ok(SummabilityOutcome::Summable(g))
}
