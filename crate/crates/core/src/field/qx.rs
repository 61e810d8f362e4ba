//! Minimal dense arithmetic in `Q[x]`, used for number-field element
//! inversion. Polynomials are little-endian coefficient vectors with no
//! trailing zeros; the zero polynomial is the empty vector.

use num_rational::BigRational;
use num_traits::Zero;

pub(crate) fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn is_zero(p: &[BigRational]) -> bool {
    p.iter().all(Zero::is_zero)
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    trim(out)
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(out)
}

/// Euclidean division `a = q*b + r` with `deg r < deg b`. Panics if `b = 0`.
pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    let lc = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let coef = r.last().unwrap() / &lc;
        q[shift] = coef.clone();
        for (i, bi) in b.iter().enumerate() {
            let v = bi * &coef;
            r[shift + i] -= v;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
        if r.len() < b.len() {
            break;
        }
    }
    (trim(q), r)
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g` and `g` monic
/// (or zero when both inputs are zero).
pub(crate) fn ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let one = || vec![BigRational::from_integer(1.into())];
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (one(), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one());
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        let t = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let lc = r0.last().unwrap().clone();
    let norm = |p: Vec<BigRational>| p.into_iter().map(|c| c / &lc).collect::<Vec<_>>();
    (norm(r0), norm(s0), norm(t0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn divrem_splits_correctly() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let a = vec![q(-1), q(0), q(0), q(1)];
        let b = vec![q(-1), q(1)];
        let (quot, rem) = divrem(&a, &b);
        assert_eq!(quot, vec![q(1), q(1), q(1)]);
        assert!(rem.is_empty());
    }

    #[test]
    fn ext_gcd_bezout_identity() {
        let a = vec![q(-1), q(0), q(1)]; // x^2 - 1
        let b = vec![q(2), q(1)]; // x + 2
        let (g, s, t) = ext_gcd(&a, &b);
        assert_eq!(g, vec![q(1)]);
        let lhs = sub(&mul(&s, &a), &mul(&t, &b).iter().map(|c| -c).collect::<Vec<_>>());
        assert_eq!(trim(lhs), g);
    }
}
