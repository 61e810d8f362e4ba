//! Lattices of multiplicative relations among nonzero scalars.
//!
//! For a tuple `l = (l1, ..., ln)` the integer vectors `i` with
//! `l1^i1 * ... * ln^in = 1` form a lattice. Rational tuples get an exact
//! basis out of prime factorizations and a sign-parity condition; tuples
//! from an extension field get every relation inside a bounded box and the
//! result is flagged as possibly incomplete. Downstream decisions consult
//! that flag so a missed long relation can never flip an answer silently.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::factor::zint;
use crate::field::FieldElement;
use crate::lattice::{reduce_mod_lattice, IntMatrix};
use crate::{Config, Error, Result};

/// Basis of the multiplicative relation lattice of a scalar tuple.
#[derive(Clone, Debug)]
pub struct ExponentLattice {
    dims: usize,
    basis: Vec<Vec<BigInt>>,
    exact: bool,
}

impl ExponentLattice {
    /// Number of coordinates, one per scalar.
    pub fn dims(&self) -> usize {
        self.dims
    }

    /// Number of independent relations.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis rows in Hermite normal form.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// True when the basis provably spans every relation; false when it only
    /// collects relations found inside the search box.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Membership of an exponent vector in the lattice.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dims, "dimension mismatch");
        reduce_mod_lattice(v, &self.basis).iter().all(Zero::is_zero)
    }
}

/// Computes a basis of the relation lattice `{i : l^i = 1}`.
///
/// Rational entries are handled exactly; entries from an extension field are
/// searched in the box `|ij| <= cfg.search_bound` and the result carries
/// `is_exact() == false`.
pub fn exponent_lattice(lambdas: &[FieldElement], cfg: &Config) -> Result<ExponentLattice> {
    if lambdas.iter().any(FieldElement::is_zero) {
        return Err(Error::Invalid("relation lattice needs nonzero scalars".into()));
    }
    let rationals: Option<Vec<BigRational>> =
        lambdas.iter().map(FieldElement::as_rational).collect();
    let (basis, exact) = match rationals {
        Some(vals) => (rational_lattice(&vals), true),
        None => (box_search(lambdas, cfg.search_bound), false),
    };
    for row in &basis {
        assert!(eval_power(lambdas, row).is_one(), "basis row is not a relation");
    }
    Ok(ExponentLattice { dims: lambdas.len(), basis, exact })
}

/// Evaluates `l1^e1 * ... * ln^en` exactly.
pub fn eval_power(lambdas: &[FieldElement], exps: &[BigInt]) -> FieldElement {
    assert_eq!(lambdas.len(), exps.len(), "dimension mismatch");
    let mut acc = FieldElement::one();
    for (l, e) in lambdas.iter().zip(exps) {
        acc = &acc * &pow_big(l, e);
    }
    acc
}

fn pow_big(base: &FieldElement, e: &BigInt) -> FieldElement {
    let mag = e.magnitude();
    let bits = mag.bits();
    let mut acc = FieldElement::one();
    let mut sq = base.clone();
    for bit in 0..bits {
        if mag.bit(bit) {
            acc = &acc * &sq;
        }
        if bit + 1 < bits {
            sq = &sq * &sq;
        }
    }
    if e.is_negative() {
        acc.inv()
    } else {
        acc
    }
}

/// Exact basis for rational scalars. Magnitude relations are the integer
/// kernel of the prime-exponent matrix; the sign of each scalar is an
/// exponent of -1, so a relation additionally needs an even sign total,
/// imposed as a second kernel over the candidate combinations with an
/// auxiliary doubling column.
fn rational_lattice(vals: &[BigRational]) -> Vec<Vec<BigInt>> {
    let n = vals.len();
    let mut primes: BTreeMap<BigInt, Vec<BigInt>> = BTreeMap::new();
    for (j, v) in vals.iter().enumerate() {
        for (side, part) in [(1i64, v.numer()), (-1i64, v.denom())] {
            let mag = part.abs();
            if mag.is_one() {
                continue;
            }
            for (p, mult) in zint::factor_bigint(&mag) {
                let row = primes.entry(p).or_insert_with(|| vec![BigInt::zero(); n]);
                row[j] += BigInt::from(side * mult as i64);
            }
        }
    }

    let prime_rows: Vec<Vec<BigInt>> = primes.into_values().collect();
    let mat = IntMatrix::new(
        prime_rows.len(),
        n,
        prime_rows.into_iter().flatten().collect(),
    );
    let magnitude = mat.kernel();

    // parity of the sign exponents along each candidate row
    let signs: Vec<BigInt> = vals
        .iter()
        .map(|v| if v.is_negative() { BigInt::one() } else { BigInt::zero() })
        .collect();
    let m = magnitude.len();
    let mut parity = Vec::with_capacity(m + 1);
    for row in &magnitude {
        parity.push(row.iter().zip(&signs).map(|(a, b)| a * b).sum::<BigInt>());
    }
    parity.push(BigInt::from(2));
    let combos = IntMatrix::new(1, m + 1, parity).kernel();

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for combo in combos {
        let mut r = vec![BigInt::zero(); n];
        for (c, krow) in combo[..m].iter().zip(&magnitude) {
            if !c.is_zero() {
                for (ri, ki) in r.iter_mut().zip(krow) {
                    *ri += c * ki;
                }
            }
        }
        if r.iter().any(|x| !x.is_zero()) {
            rows.push(r);
        }
    }
    let k = rows.len();
    IntMatrix::new(k, n, rows.into_iter().flatten().collect()).row_basis()
}

/// Collects every relation with `|ij| <= bound` and returns a basis of the
/// lattice they span. Partial products are carried down the coordinate walk
/// so each candidate costs one multiplication.
fn box_search(lambdas: &[FieldElement], bound: u32) -> Vec<Vec<BigInt>> {
    let n = lambdas.len();
    let b = bound as i64;
    let mut pows: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
    for l in lambdas {
        pows.push((-b..=b).map(|e| l.pow(e)).collect());
    }

    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut coords: Vec<i64> = Vec::with_capacity(n);
    walk_box(&pows, b, &FieldElement::one(), &mut coords, &mut basis);
    basis
}

fn walk_box(
    pows: &[Vec<FieldElement>],
    b: i64,
    acc: &FieldElement,
    coords: &mut Vec<i64>,
    basis: &mut Vec<Vec<BigInt>>,
) {
    let Some(table) = pows.first() else {
        if !acc.is_one() || coords.iter().all(|&c| c == 0) {
            return;
        }
        let v: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        if !reduce_mod_lattice(&v, basis).iter().all(Zero::is_zero) {
            let mut rows = basis.clone();
            rows.push(v);
            let k = rows.len();
            let n = coords.len();
            *basis = IntMatrix::new(k, n, rows.into_iter().flatten().collect()).row_basis();
        }
        return;
    };
    for e in -b..=b {
        coords.push(e);
        walk_box(&pows[1..], b, &(acc * &table[(e + b) as usize]), coords, basis);
        coords.pop();
    }
}

/// Outcome of solving `l^I = beta` for an integer exponent vector.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// An exponent vector with `l^I = beta`, when one was found, reduced to
    /// the canonical representative modulo the relation lattice of `l`.
    pub exponents: Option<Vec<BigInt>>,
    /// False when an absent vector may only mean the bounded search missed
    /// it; a miss with `exact == true` is conclusive.
    pub exact: bool,
}

/// Solves `l1^I1 * ... * ln^In = beta` over the integers.
///
/// The relation lattice of the extended tuple `(l1, ..., ln, beta)` contains
/// a vector with last coordinate -1 exactly when such an `I` exists; its
/// first `n` coordinates are the exponents.
pub fn multiplicative_decompose(
    beta: &FieldElement,
    lambdas: &[FieldElement],
    cfg: &Config,
) -> Result<Decomposition> {
    if beta.is_zero() {
        return Err(Error::Invalid("multiplicative decomposition needs a nonzero target".into()));
    }
    let n = lambdas.len();
    let mut ext = lambdas.to_vec();
    ext.push(beta.clone());
    let lat = exponent_lattice(&ext, cfg)?;

    // write -1 as an integer combination of the last coordinates
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::new();
    for row in lat.basis() {
        let e = row[n].extended_gcd(&g);
        for c in coeffs.iter_mut() {
            *c *= &e.y;
        }
        coeffs.push(e.x);
        g = e.gcd;
    }
    if !g.is_one() {
        return Ok(Decomposition { exponents: None, exact: lat.is_exact() });
    }

    let mut v = vec![BigInt::zero(); n + 1];
    for (c, row) in coeffs.iter().zip(lat.basis()) {
        for (vi, ri) in v.iter_mut().zip(row) {
            *vi += c * ri;
        }
    }
    debug_assert!(v[n].is_one(), "combination reaches the target coordinate");
    let raw: Vec<BigInt> = v[..n].iter().map(|x| -x).collect();

    // canonical representative: any two answers differ by a relation of l
    let base = exponent_lattice(lambdas, cfg)?;
    let reduced = reduce_mod_lattice(&raw, base.basis());
    assert!(&eval_power(lambdas, &reduced) == beta, "decomposition must verify");
    Ok(Decomposition { exponents: Some(reduced), exact: lat.is_exact() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::field::NumberFieldCtx;

    fn fe(n: i64, d: i64) -> FieldElement {
        FieldElement::from_fraction(n, d)
    }

    fn rows(lat: &ExponentLattice) -> Vec<Vec<i64>> {
        lat.basis()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    fn golden() -> Arc<NumberFieldCtx> {
        let mp = vec![
            BigRational::from_integer((-1).into()),
            BigRational::from_integer((-1).into()),
            BigRational::from_integer(1.into()),
        ];
        NumberFieldCtx::new(mp, "t").unwrap()
    }

    fn gauss() -> Arc<NumberFieldCtx> {
        let mp = vec![
            BigRational::from_integer(1.into()),
            BigRational::from_integer(0.into()),
            BigRational::from_integer(1.into()),
        ];
        NumberFieldCtx::new(mp, "t").unwrap()
    }

    #[test]
    fn scaling_tuple_has_the_known_basis() {
        let cfg = Config::default();
        let lat = exponent_lattice(&[fe(-1, 1), fe(1, 2), fe(-4, 1)], &cfg).unwrap();
        assert!(lat.is_exact());
        assert_eq!(lat.rank(), 2);
        assert_eq!(rows(&lat), vec![vec![1, 2, 1], vec![0, 4, 2]]);
    }

    #[test]
    fn small_rational_tuples() {
        let cfg = Config::default();
        assert_eq!(exponent_lattice(&[fe(2, 1)], &cfg).unwrap().rank(), 0);
        assert_eq!(rows(&exponent_lattice(&[fe(2, 1), fe(4, 1)], &cfg).unwrap()), vec![vec![2, -1]]);
        assert_eq!(rows(&exponent_lattice(&[fe(4, 1), fe(8, 1)], &cfg).unwrap()), vec![vec![3, -2]]);
        assert_eq!(rows(&exponent_lattice(&[fe(1, 1)], &cfg).unwrap()), vec![vec![1]]);
        assert_eq!(
            rows(&exponent_lattice(&[fe(-1, 1), fe(-1, 1)], &cfg).unwrap()),
            vec![vec![1, 1], vec![0, 2]]
        );
        assert_eq!(rows(&exponent_lattice(&[fe(-2, 1), fe(2, 1)], &cfg).unwrap()), vec![vec![2, -2]]);
        assert_eq!(exponent_lattice(&[fe(6, 1), fe(10, 1), fe(15, 1)], &cfg).unwrap().rank(), 0);
        assert!(exponent_lattice(&[fe(0, 1)], &cfg).is_err());
    }

    #[test]
    fn rational_box_oracle_finds_nothing_outside() {
        let cfg = Config::default();
        let tuples: Vec<Vec<FieldElement>> = vec![
            vec![fe(-1, 1), fe(1, 2), fe(-4, 1)],
            vec![fe(2, 1), fe(4, 1)],
            vec![fe(-2, 1), fe(2, 1)],
            vec![fe(9, 1), fe(1, 3)],
            vec![fe(6, 1), fe(10, 1), fe(15, 1)],
            vec![fe(-3, 2), fe(9, 4), fe(-1, 1)],
        ];
        for lambdas in tuples {
            let lat = exponent_lattice(&lambdas, &cfg).unwrap();
            let n = lambdas.len();
            let mut coords = vec![-5i64; n];
            'boxes: loop {
                let exps: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
                let hit = eval_power(&lambdas, &exps).is_one();
                assert_eq!(hit, lat.contains(&exps), "box point {coords:?}");
                for slot in coords.iter_mut() {
                    *slot += 1;
                    if *slot <= 5 {
                        continue 'boxes;
                    }
                    *slot = -5;
                }
                break;
            }
        }
    }

    #[test]
    fn extension_scalars_use_the_bounded_search() {
        let cfg = Config::default();
        let phi = FieldElement::generator(&golden());
        let lat = exponent_lattice(&[phi.clone()], &cfg).unwrap();
        assert!(!lat.is_exact());
        assert_eq!(lat.rank(), 0);

        let lat = exponent_lattice(&[phi.clone(), &FieldElement::zero() - &phi], &cfg).unwrap();
        assert!(!lat.is_exact());
        assert_eq!(rows(&lat), vec![vec![2, -2]]);

        let i = FieldElement::generator(&gauss());
        let lat = exponent_lattice(&[i], &cfg).unwrap();
        assert_eq!(rows(&lat), vec![vec![4]]);
    }

    #[test]
    fn decompose_known_scaling_targets() {
        let cfg = Config::default();
        let lambdas = [fe(-1, 1), fe(1, 2), fe(-4, 1)];
        let lat = exponent_lattice(&lambdas, &cfg).unwrap();

        let d = multiplicative_decompose(&fe(1, 8), &lambdas, &cfg).unwrap();
        assert!(d.exact);
        let got = d.exponents.unwrap();
        assert_eq!(eval_power(&lambdas, &got), fe(1, 8));
        // agrees with the hand answer (0, -1, -2) up to a relation
        let hand = vec![BigInt::from(0), BigInt::from(-1), BigInt::from(-2)];
        let diff: Vec<BigInt> = got.iter().zip(&hand).map(|(a, b)| a - b).collect();
        assert!(lat.contains(&diff));

        let d = multiplicative_decompose(&fe(-1, 1), &lambdas, &cfg).unwrap();
        let got = d.exponents.unwrap();
        assert_eq!(eval_power(&lambdas, &got), fe(-1, 1));
        let hand = vec![BigInt::from(-1), BigInt::from(0), BigInt::from(0)];
        let diff: Vec<BigInt> = got.iter().zip(&hand).map(|(a, b)| a - b).collect();
        assert!(lat.contains(&diff));

        let d = multiplicative_decompose(&fe(3, 1), &[fe(2, 1)], &cfg).unwrap();
        assert!(d.exponents.is_none());
        assert!(d.exact);

        assert!(multiplicative_decompose(&fe(0, 1), &lambdas, &cfg).is_err());
    }

    #[test]
    fn decompose_in_an_extension() {
        let cfg = Config::default();
        let phi = FieldElement::generator(&golden());
        let phi2 = &phi * &phi;
        let d = multiplicative_decompose(&phi2, &[phi.clone()], &cfg).unwrap();
        assert!(!d.exact);
        assert_eq!(d.exponents.unwrap(), vec![BigInt::from(2)]);

        let i = FieldElement::generator(&gauss());
        let d = multiplicative_decompose(&i, &[i.clone()], &cfg).unwrap();
        assert_eq!(d.exponents.unwrap(), vec![BigInt::from(1)]);
    }
}
