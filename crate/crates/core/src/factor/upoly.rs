//! Dense univariate polynomial helpers over the coefficient field.
//!
//! Vectors are little endian with no trailing zeros; the coefficient type is
//! [`FieldElement`], so the same routines serve the rationals and a number
//! field. Used for characteristic polynomials, norms, and factoring over an
//! extension.

use crate::field::FieldElement;

pub(crate) fn trim(mut f: Vec<FieldElement>) -> Vec<FieldElement> {
    while f.last().is_some_and(FieldElement::is_zero) {
        f.pop();
    }
    f
}

pub(crate) fn degree(f: &[FieldElement]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub(crate) fn add(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let zero = FieldElement::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect())
}

pub(crate) fn sub(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let zero = FieldElement::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

pub(crate) fn scale(f: &[FieldElement], c: &FieldElement) -> Vec<FieldElement> {
    if c.is_zero() {
        return Vec::new();
    }
    f.iter().map(|x| x * c).collect()
}

pub(crate) fn mul(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElement::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

pub(crate) fn divrem(a: &[FieldElement], b: &[FieldElement]) -> (Vec<FieldElement>, Vec<FieldElement>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let lead_inv = b.last().unwrap().inv();
    let mut rem = a.to_vec();
    let mut quot = vec![FieldElement::zero(); a.len().saturating_sub(db)];
    while rem.len() > db {
        let q = rem.last().unwrap() * &lead_inv;
        let shift = rem.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &(&q * bc);
        }
        quot[shift] = q;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Scales to leading coefficient one; zero passes through.
pub(crate) fn monic(f: &[FieldElement]) -> Vec<FieldElement> {
    match f.last() {
        None => Vec::new(),
        Some(lc) => scale(f, &lc.inv()),
    }
}

pub(crate) fn gcd(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    while !r1.is_empty() {
        let r2 = divrem(&r0, &r1).1;
        r0 = r1;
        r1 = r2;
    }
    monic(&r0)
}

pub(crate) fn derivative(f: &[FieldElement]) -> Vec<FieldElement> {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &FieldElement::from_integer(i as i64))
            .collect(),
    )
}

pub(crate) fn eval(f: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = FieldElement::zero();
    for c in f.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// `f(x + c)` by Horner recomposition.
pub(crate) fn compose_shift(f: &[FieldElement], c: &FieldElement) -> Vec<FieldElement> {
    let mut acc: Vec<FieldElement> = Vec::new();
    let shift = vec![c.clone(), FieldElement::one()];
    for coeff in f.iter().rev() {
        acc = add(&mul(&acc, &shift), &[coeff.clone()]);
    }
    trim(acc)
}

/// Yun's squarefree decomposition: `(multiplicity, monic part)` pairs with
/// `f = lc * prod part^mult`, parts squarefree and pairwise coprime.
pub(crate) fn squarefree(f: &[FieldElement]) -> Vec<(u32, Vec<FieldElement>)> {
    let f = monic(f);
    assert!(f.len() >= 2, "squarefree split needs degree >= 1");
    let df = derivative(&f);
    let g = gcd(&f, &df);
    let mut w = divrem(&f, &g).0;
    let mut y = divrem(&df, &g).0;
    let mut out = Vec::new();
    let mut mult = 1u32;
    loop {
        let z = sub(&y, &derivative(&w));
        if z.is_empty() {
            if w.len() > 1 {
                out.push((mult, w));
            }
            break;
        }
        let fi = gcd(&w, &z);
        if fi.len() > 1 {
            out.push((mult, fi.clone()));
        }
        w = divrem(&w, &fi).0;
        y = divrem(&z, &fi).0;
        mult += 1;
    }
    out
}

/// Resultant of two nonzero polynomials by the Euclidean recurrence.
pub(crate) fn resultant(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let da = a.len() as i64 - 1;
    let db = b.len() as i64 - 1;
    assert!(da >= 0 && db >= 0, "resultant of zero polynomial");
    if db == 0 {
        return b[0].pow(da);
    }
    if da == 0 {
        return a[0].pow(db);
    }
    let r = divrem(a, b).1;
    if r.is_empty() {
        return FieldElement::zero();
    }
    let dr = r.len() as i64 - 1;
    let sign = if (da * db) % 2 == 1 { -FieldElement::one() } else { FieldElement::one() };
    let lead = b.last().unwrap().pow(da - dr);
    &(&sign * &lead) * &resultant(b, &r)
}
