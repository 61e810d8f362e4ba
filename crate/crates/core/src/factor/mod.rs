//! Factorization with respect to the last variable.
//!
//! The denominator-side normal form everything downstream relies on is
//!
//! `p = content * an^power * prod factors[i]^mult[i]`
//!
//! with `content` free of `an` and each factor monic, irreducible, and of
//! positive degree in `an`. Multivariate irreducibility is decided by a
//! degree-preserving substitution into one variable (exponent digits in a
//! radix exceeding every per-variable degree), univariate factorization over
//! `Q` or `Q(theta)`, and subset recombination, guarded by configurable
//! degree and variable caps.

pub(crate) mod trager;
pub(crate) mod upoly;
pub(crate) mod zint;

use num_rational::BigRational;

use crate::field::gcd::squarefree_wrt;
use crate::field::{poly_gcd, FieldElement, MultiPoly};
use crate::{Config, Error, Result};

/// Factorization of a polynomial relative to its last variable.
#[derive(Clone, Debug)]
pub struct LastVarFactorization {
    /// Part free of the last variable, including the scalar unit.
    pub content: MultiPoly,
    /// Exponent of the bare last variable.
    pub power: u32,
    /// Monic irreducible factors of positive degree in the last variable,
    /// with multiplicities, in a deterministic order.
    pub factors: Vec<(MultiPoly, u32)>,
}

impl LastVarFactorization {
    /// Multiplies the parts back together (for verification).
    pub fn expand(&self) -> MultiPoly {
        let n = self.content.nvars();
        let mut exps = vec![0u32; n];
        exps[n - 1] = self.power;
        let mut acc = &self.content * &MultiPoly::monomial(n, exps, FieldElement::one());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

/// Factors `p` with respect to its last variable.
pub fn factor_last_var(p: &MultiPoly, cfg: &Config) -> Result<LastVarFactorization> {
    let n = p.nvars();
    assert!(n >= 1, "needs at least one variable");
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let last = n - 1;

    let power = p.min_degree_in(last).unwrap();
    let mut shift = vec![0u32; n];
    shift[last] = power;
    let reduced = p
        .div_exact(&MultiPoly::monomial(n, shift, FieldElement::one()))
        .expect("minimal power divides");

    let coeffs = reduced.as_var_coeffs(last);
    let mut content = MultiPoly::zero(n);
    for c in &coeffs {
        if !c.is_zero() {
            content = poly_gcd(&content, c);
        }
    }
    let prim = reduced.div_exact(&content).expect("content divides");

    if prim.degree_in(last).unwrap_or(0) == 0 {
        // free of the last variable: everything is content
        let c = prim.as_constant().expect("primitive part collapses to its unit");
        return Ok(LastVarFactorization { content: content.scale(&c), power, factors: Vec::new() });
    }

    let (prim_monic, lc) = prim.monic();
    let mut factors: Vec<(MultiPoly, u32)> = Vec::new();
    for (idx, part) in squarefree_wrt(&prim_monic, last).into_iter().enumerate() {
        let mult = idx as u32 + 1;
        if part.total_degree().unwrap_or(0) == 0 {
            continue;
        }
        for irr in kronecker_factor(&part, cfg)? {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp_canonical(&b.0)));
    Ok(LastVarFactorization { content: content.scale(&lc), power, factors })
}

/// Factors a monic polynomial, squarefree with respect to the last variable
/// and primitive in it, into monic irreducible parts.
fn kronecker_factor(q: &MultiPoly, cfg: &Config) -> Result<Vec<MultiPoly>> {
    let n = q.nvars();
    let support = q.support_vars();
    if support.len() > cfg.var_cap {
        return Err(Error::VarCap { vars: support.len(), cap: cfg.var_cap });
    }
    let degree = q.total_degree().unwrap_or(0);
    if degree > cfg.degree_cap as u64 {
        return Err(Error::DegreeCap { degree, cap: cfg.degree_cap });
    }
    if degree == 1 {
        return Ok(vec![q.clone()]);
    }

    // radix exceeding every per-variable degree keeps exponent digits from
    // interacting under multiplication, so the substitution respects factors
    let radix = support.iter().map(|&v| q.degree_in(v).unwrap_or(0)).max().unwrap_or(0) + 1;
    let image = kronecker_image(q, &support, radix);

    let mut parts: Vec<Vec<FieldElement>> = Vec::new();
    for (p, m) in factor_univariate(&image)? {
        for _ in 0..m {
            parts.push(p.clone());
        }
    }
    if parts.len() == 1 {
        return Ok(vec![q.clone()]);
    }

    let mut rest = q.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= parts.len() {
        let idxs: Vec<usize> = (0..parts.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut cand_u = vec![FieldElement::one()];
            for &i in &combo {
                cand_u = upoly::mul(&cand_u, &parts[i]);
            }
            let cand = kronecker_preimage(&cand_u, n, &support, radix).monic().0;
            if let Some(quot) = rest.div_exact(&cand) {
                out.push(cand);
                rest = quot;
                let del: std::collections::BTreeSet<usize> = combo.into_iter().collect();
                parts = parts
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !del.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.total_degree().unwrap_or(0) > 0 {
        out.push(rest);
    }
    out.sort_by(MultiPoly::cmp_canonical);
    Ok(out)
}

fn kronecker_image(q: &MultiPoly, support: &[usize], radix: u32) -> Vec<FieldElement> {
    let mut size = 1usize;
    for _ in support {
        size *= radix as usize;
    }
    let mut dense = vec![FieldElement::zero(); size];
    for (m, c) in q.terms() {
        let mut e = 0usize;
        let mut base = 1usize;
        for &v in support {
            e += m.exps()[v] as usize * base;
            base *= radix as usize;
        }
        dense[e] = c.clone();
    }
    upoly::trim(dense)
}

fn kronecker_preimage(u: &[FieldElement], nvars: usize, support: &[usize], radix: u32) -> MultiPoly {
    let mut acc = MultiPoly::zero(nvars);
    for (e, c) in u.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut exps = vec![0u32; nvars];
        let mut rest = e;
        for &v in support {
            exps[v] = (rest % radix as usize) as u32;
            rest /= radix as usize;
        }
        acc = &acc + &MultiPoly::monomial(nvars, exps, c.clone());
    }
    acc
}

fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if pool.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in pool.iter().enumerate() {
        for mut tail in combinations(&pool[i + 1..], k - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Factors a univariate polynomial (dense, little endian) over its
/// coefficient field into monic irreducible parts with multiplicities.
pub fn factor_univariate(f: &[FieldElement]) -> Result<Vec<(Vec<FieldElement>, u32)>> {
    let f = upoly::trim(f.to_vec());
    if f.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if f.len() == 1 {
        return Ok(Vec::new());
    }
    let ctx = f.iter().find_map(|c| c.context()).cloned();
    let mut out: Vec<(Vec<FieldElement>, u32)> = Vec::new();
    for (mult, part) in upoly::squarefree(&f) {
        match &ctx {
            None => {
                let rational: Vec<BigRational> =
                    part.iter().map(|c| c.as_rational().expect("rational context")).collect();
                let (_, factors) = zint::factor_q(&rational);
                for (zf, m) in factors {
                    debug_assert_eq!(m, 1, "squarefree part");
                    let fe: Vec<FieldElement> =
                        zf.into_iter().map(FieldElement::from_bigint).collect();
                    out.push((upoly::monic(&fe), mult));
                }
            }
            Some(ctx) => {
                for nf in trager::factor_squarefree_nf(&part, ctx) {
                    out.push((nf, mult));
                }
            }
        }
    }
    Ok(out)
}
