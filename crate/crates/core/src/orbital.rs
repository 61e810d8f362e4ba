//! Orbital partial fraction decomposition with respect to the last variable.
//!
//! A rational function splits uniquely into Laurent terms `p_i * an^i` with
//! coefficients free of `an`, plus proper fractions grouped by the shift
//! orbit of their denominator: each component collects the numerators over
//! `sigma^l(d)^j` for one canonical representative `d` and one power `j`.
//! The split is exact and reversible; `recompose` is its inverse.

use std::collections::BTreeMap;

use crate::factor::factor_last_var;
use crate::field::{sigma_poly, LastVarPoly, MultiPoly, RatFunc, SigmaSpec};
use crate::spread::spread;
use crate::{Config, Result};

/// All fractions of one orbit and one power of the denominator.
#[derive(Clone, Debug)]
pub struct OrbitComponent {
    /// Canonical orbit representative: monic irreducible with positive
    /// degree in the last variable and not a power product.
    pub representative: MultiPoly,
    /// The power `j` of the denominator.
    pub multiplicity: u32,
    /// Numerators keyed by shift: the summand at key `l` is
    /// `terms[l] / monic(sigma^l(representative))^j`, with every numerator
    /// of smaller degree in the last variable than the representative.
    pub terms: BTreeMap<i64, LastVarPoly>,
}

/// A rational function split into Laurent terms and orbit components.
#[derive(Clone, Debug)]
pub struct OrbitalDecomposition {
    nvars: usize,
    /// Coefficient of `an^i` keyed by `i`, one variable short.
    pub laurent: BTreeMap<i64, RatFunc>,
    /// Proper-fraction parts with distinct (orbit, power) keys.
    pub components: Vec<OrbitComponent>,
    /// False when an inexact relation lattice may have merged or split
    /// orbits incompletely.
    pub exact: bool,
}

impl OrbitalDecomposition {
    /// Number of variables of the decomposed function.
    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

/// Splits `f` into Laurent terms and orbit components.
pub fn orbital_decompose(
    f: &RatFunc,
    spec: &SigmaSpec,
    cfg: &Config,
) -> Result<OrbitalDecomposition> {
    let n = f.nvars();
    assert!(n >= 1, "needs at least one variable");
    assert_eq!(n, spec.nvars(), "variable count mismatch");
    if f.is_zero() {
        return Ok(OrbitalDecomposition {
            nvars: n,
            laurent: BTreeMap::new(),
            components: Vec::new(),
            exact: true,
        });
    }

    let fact = factor_last_var(f.den(), cfg)?;
    let num = LastVarPoly::from_poly(f.num());
    let den = LastVarPoly::from_poly(f.den());
    let (poly_part, rem) = num.divrem(&den);

    let mut laurent: BTreeMap<i64, RatFunc> = BTreeMap::new();
    for (i, c) in poly_part.coeffs().iter().enumerate() {
        if !c.is_zero() {
            laurent.insert(i as i64, restrict(c));
        }
    }

    // moduli of the proper part, monic in the last variable
    struct Slot {
        base: LastVarPoly,
        mult: u32,
        modulus: LastVarPoly,
        factor_idx: Option<usize>,
        lead_unit: RatFunc,
    }
    let mut slots: Vec<Slot> = Vec::new();
    if fact.power > 0 {
        let x = LastVarPoly::from_poly(&MultiPoly::var(n, n - 1));
        slots.push(Slot {
            modulus: x.pow(fact.power),
            base: x,
            mult: fact.power,
            factor_idx: None,
            lead_unit: RatFunc::one(n),
        });
    }
    for (idx, (d, m)) in fact.factors.iter().enumerate() {
        let (base, lead_unit) = LastVarPoly::from_poly(d).monic();
        slots.push(Slot {
            modulus: base.pow(*m),
            base,
            mult: *m,
            factor_idx: Some(idx),
            lead_unit,
        });
    }

    // strip the scalar unit so the denominator is the product of the moduli
    let gamma = den.leading().expect("nonzero denominator").clone();
    let mut h = rem.scale(&gamma.inv());

    // pieces[idx][j] is the numerator over factors[idx]^j
    let mut pieces: Vec<BTreeMap<u32, LastVarPoly>> = vec![BTreeMap::new(); fact.factors.len()];
    for (pos, slot) in slots.iter().enumerate() {
        let numer = if pos + 1 == slots.len() {
            std::mem::replace(&mut h, LastVarPoly::zero(n))
        } else {
            let mut rest = LastVarPoly::one(n);
            for other in &slots[pos + 1..] {
                rest = &rest * &other.modulus;
            }
            // h/(M*rest) = a/M + h'/rest with a = h * rest^{-1} mod M
            let (g, s, _) = LastVarPoly::ext_gcd(&rest, &slot.modulus);
            assert!(g.degree() == Some(0), "moduli are pairwise coprime");
            let (_, a) = (&h * &s).divrem(&slot.modulus);
            let (next, z) = (&h - &(&a * &rest)).divrem(&slot.modulus);
            assert!(z.is_zero(), "exact split");
            h = next;
            a
        };
        // expand along powers of the base
        let mut cur = numer;
        let mut unit_pow = RatFunc::one(n);
        let mut unit_by_level: Vec<RatFunc> = Vec::new();
        for _ in 0..slot.mult {
            unit_pow = &unit_pow * &slot.lead_unit;
            unit_by_level.push(unit_pow.clone());
        }
        for j in (1..=slot.mult).rev() {
            let (q, r) = cur.divrem(&slot.base);
            cur = q;
            if r.is_zero() {
                continue;
            }
            match slot.factor_idx {
                Some(idx) => {
                    // numerator over the graded-lex monic factor power
                    let scaled = r.scale(&unit_by_level[j as usize - 1]);
                    pieces[idx].insert(j, scaled);
                }
                None => {
                    laurent.insert(-(j as i64), restrict(&r.coeff(0)));
                }
            }
        }
        assert!(cur.is_zero(), "expansion consumes the numerator");
    }

    // group the factors into shift orbits
    struct Group {
        base: MultiPoly,
        members: Vec<(usize, i64)>,
        period: Option<i64>,
    }
    let mut exact = true;
    let mut groups: Vec<Group> = Vec::new();
    'factors: for (idx, (d, _)) in fact.factors.iter().enumerate() {
        for group in &mut groups {
            let s = spread(&group.base, d, spec, cfg)?;
            exact &= s.exact;
            if let Some(k) = s.set.smallest() {
                group.members.push((idx, k));
                continue 'factors;
            }
        }
        let own = spread(d, d, spec, cfg)?;
        exact &= own.exact;
        let period = match own.set {
            crate::lattice::Progression::Arith { step, .. } => Some(step),
            _ => None,
        };
        groups.push(Group { base: d.clone(), members: vec![(idx, 0)], period });
    }

    // canonical representative and shifts relative to it
    let mut components: Vec<OrbitComponent> = Vec::new();
    for group in &groups {
        let (rep, rel) = match group.period {
            Some(step) => {
                let mut best: Option<(MultiPoly, i64)> = None;
                for l in 0..step {
                    let cand = sigma_poly(&group.base, spec, l).monic().0;
                    if best
                        .as_ref()
                        .map(|(b, _)| cand.cmp_canonical(b) == std::cmp::Ordering::Less)
                        .unwrap_or(true)
                    {
                        best = Some((cand, l));
                    }
                }
                let (rep, delta) = best.expect("positive period");
                let rel: Vec<(usize, i64)> = group
                    .members
                    .iter()
                    .map(|&(idx, k)| (idx, (k - delta).rem_euclid(step)))
                    .collect();
                (rep, rel)
            }
            None => {
                let &(_, base_shift) = group
                    .members
                    .iter()
                    .min_by(|a, b| fact.factors[a.0].0.cmp_canonical(&fact.factors[b.0].0))
                    .expect("groups are nonempty");
                let rep_idx = group
                    .members
                    .iter()
                    .find(|&&(_, k)| k == base_shift)
                    .unwrap()
                    .0;
                let rel: Vec<(usize, i64)> = group
                    .members
                    .iter()
                    .map(|&(idx, k)| (idx, k - base_shift))
                    .collect();
                (fact.factors[rep_idx].0.clone(), rel)
            }
        };
        let mut by_power: BTreeMap<u32, BTreeMap<i64, LastVarPoly>> = BTreeMap::new();
        for &(idx, shift) in &rel {
            for (&j, numer) in &pieces[idx] {
                let prev = by_power.entry(j).or_default().insert(shift, numer.clone());
                assert!(prev.is_none(), "shifts are distinct inside an orbit");
            }
        }
        for (j, terms) in by_power {
            components.push(OrbitComponent {
                representative: rep.clone(),
                multiplicity: j,
                terms,
            });
        }
    }
    components.sort_by(|a, b| {
        a.representative
            .cmp_canonical(&b.representative)
            .then(a.multiplicity.cmp(&b.multiplicity))
    });

    let dec = OrbitalDecomposition { nvars: n, laurent, components, exact };
    assert!(recompose(&dec, spec) == *f, "decomposition must recompose to the input");
    Ok(dec)
}

/// Sums a decomposition back into a single rational function.
pub fn recompose(dec: &OrbitalDecomposition, spec: &SigmaSpec) -> RatFunc {
    let n = dec.nvars;
    let mut acc = RatFunc::zero(n);
    for (&i, c) in &dec.laurent {
        let mut exps = vec![0u32; n];
        exps[n - 1] = i.unsigned_abs() as u32;
        let mono = RatFunc::from_poly(MultiPoly::monomial(n, exps, crate::field::FieldElement::one()));
        let coeff = c.extend_vars(1);
        let term = if i >= 0 { &coeff * &mono } else { &coeff / &mono };
        acc = &acc + &term;
    }
    for comp in &dec.components {
        for (&l, numer) in &comp.terms {
            let den = sigma_poly(&comp.representative, spec, l).monic().0.pow(comp.multiplicity);
            acc = &acc + &(&numer.to_ratfunc() / &RatFunc::from_poly(den));
        }
    }
    acc
}

/// Drops the unused last variable of a coefficient.
fn restrict(f: &RatFunc) -> RatFunc {
    f.drop_last_var().expect("coefficient is free of the last variable")
}
