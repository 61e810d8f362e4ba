//! Spread sets: the integers `k` with `sigma^k(p) = c*q` for some scalar.
//!
//! Under a scaling endomorphism a power product is an eigenvector, so the
//! spread of two polynomials is empty unless their supports agree, and then
//! it is the intersection of the spreads of the two-term subproblems pairing
//! the leading term with each lower term. Each subproblem reduces through a
//! multiplicative decomposition of the coefficient ratio to an integer
//! linear system over the relation lattice, whose solution set projects to
//! an arithmetic progression in `k`. The self spread is always a subgroup
//! of the integers, and a nonempty spread is a coset of it.

use num_bigint::BigInt;

use crate::explattice::{exponent_lattice, multiplicative_decompose, ExponentLattice};
use crate::field::{sigma_poly, FieldElement, Monomial, MultiPoly, SigmaSpec};
use crate::lattice::{IntMatrix, Progression};
use crate::{Config, Error, Result};

/// A spread set together with a verified witness at its representative.
#[derive(Clone, Debug)]
pub struct SpreadResult {
    /// The set of shifts, empty or an arithmetic progression.
    pub set: Progression,
    /// The scalar `u` with `sigma^{k0}(p) = u*q` at the representative
    /// `k0 = set.smallest()`, present when the set is nonempty.
    pub witness_unit: Option<FieldElement>,
    /// False when an inexact relation lattice may have hidden further
    /// shifts; membership of every reported shift is verified regardless.
    pub exact: bool,
}

/// Computes the spread set of `p` and `q`.
pub fn spread(
    p: &MultiPoly,
    q: &MultiPoly,
    spec: &SigmaSpec,
    cfg: &Config,
) -> Result<SpreadResult> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = spec.nvars();
    assert!(p.nvars() == n && q.nvars() == n, "variable count mismatch");

    if !p.terms().map(|(m, _)| m).eq(q.terms().map(|(m, _)| m)) {
        return Ok(SpreadResult { set: Progression::Empty, witness_unit: None, exact: true });
    }
    let (lead, p_lc) = p.leading().expect("nonzero polynomial has a leading term");
    let lead = lead.clone();
    let p_lc = p_lc.clone();
    let q_lc = q.leading().unwrap().1.clone();

    if p.num_terms() == 1 {
        let u = &p_lc / &q_lc;
        debug_assert_eq!(p, &q.scale(&u));
        return Ok(SpreadResult {
            set: Progression::full(),
            witness_unit: Some(u),
            exact: true,
        });
    }

    let lat = exponent_lattice(spec.lambdas(), cfg)?;
    let mut exact = lat.is_exact();
    let p_monic = p.scale(&p_lc.inv());
    let q_monic = q.scale(&q_lc.inv());

    let mut acc = Progression::full();
    let lowers: Vec<Monomial> =
        p_monic.terms().rev().skip(1).map(|(m, _)| m.clone()).collect();
    for mono in &lowers {
        let p_i = p_monic.coeff(mono);
        let q_i = q_monic.coeff(mono);
        // keep the running coset when it already solves this subproblem
        let (k0, l0) = match acc {
            Progression::Arith { offset, step } => (offset, step),
            Progression::Single(k) => (k, 0),
            Progression::Empty => unreachable!("empty sets return early"),
        };
        if pair_shift_holds(k0, &lead, mono, &p_i, &q_i, spec)
            && pair_shift_holds(l0, &lead, mono, &p_i, &p_i, spec)
        {
            continue;
        }
        let s = two_term_set(&lead, mono, &p_i, &q_i, spec, &lat, cfg, &mut exact)?;
        acc = acc.intersect(&s);
        if acc.is_empty() {
            return Ok(SpreadResult { set: acc, witness_unit: None, exact });
        }
    }

    let k0 = acc.smallest().expect("nonempty progression has a representative");
    let u = &(&spec.monomial_factor(&lead, k0) * &p_lc) / &q_lc;
    assert!(
        sigma_poly(p, spec, k0) == q.scale(&u),
        "spread representative must verify by substitution"
    );
    Ok(SpreadResult { set: acc, witness_unit: Some(u), exact })
}

/// Whether shifting by `k` maps `lead + p_i*mono` onto a scalar multiple of
/// `lead + q_i*mono`: the lower coefficient must keep pace with the leading
/// eigenvalue.
fn pair_shift_holds(
    k: i64,
    lead: &Monomial,
    mono: &Monomial,
    p_i: &FieldElement,
    q_i: &FieldElement,
    spec: &SigmaSpec,
) -> bool {
    &(p_i * &spec.monomial_factor(mono, k)) == &(q_i * &spec.monomial_factor(lead, k))
}

/// Spread of the two-term pair `lead + p_i*mono` versus `lead + q_i*mono`:
/// shifts `k` with `lambda^{k(lead - mono)} = p_i/q_i`, solved as an integer
/// linear system in `k` and the relation-lattice coordinates.
#[allow(clippy::too_many_arguments)]
fn two_term_set(
    lead: &Monomial,
    mono: &Monomial,
    p_i: &FieldElement,
    q_i: &FieldElement,
    spec: &SigmaSpec,
    lat: &ExponentLattice,
    cfg: &Config,
    exact: &mut bool,
) -> Result<Progression> {
    let ratio = p_i / q_i;
    let dec = multiplicative_decompose(&ratio, spec.lambdas(), cfg)?;
    *exact &= dec.exact;
    let Some(target) = dec.exponents else {
        return Ok(Progression::Empty);
    };
    let n = spec.nvars();
    let r = lat.rank();
    let mut data = Vec::with_capacity(n * (r + 1));
    for row in 0..n {
        data.push(BigInt::from(lead.exps()[row] as i64 - mono.exps()[row] as i64));
        for basis_row in lat.basis() {
            data.push(-&basis_row[row]);
        }
    }
    let sys = IntMatrix::new(n, r + 1, data);
    Ok(sys.solve_integer(&target).project(0))
}

/// The scalar `u` with `sigma^k(d) = u*d`, which exists exactly when `k`
/// lies in the self spread of `d` and then equals the leading eigenvalue
/// power.
pub fn orbit_unit(d: &MultiPoly, k: i64, spec: &SigmaSpec) -> Result<FieldElement> {
    if d.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (lead, _) = d.leading().unwrap();
    let u = spec.monomial_factor(lead, k);
    if sigma_poly(d, spec, k) == d.scale(&u) {
        Ok(u)
    } else {
        Err(Error::NotInSelfSpread(k))
    }
}
