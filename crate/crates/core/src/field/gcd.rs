//! Polynomial gcd over the coefficient field.
//!
//! Univariate inputs take a dense Euclidean fast path; genuinely multivariate
//! inputs use the primitive polynomial remainder sequence with respect to the
//! highest occurring variable, recursing on contents. Results are monic.

use super::{FieldElement, MultiPoly};

/// Monic gcd of two polynomials over the field.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert_eq!(a.nvars(), b.nvars(), "variable count mismatch");
    if a.is_zero() {
        return b.monic().0;
    }
    if b.is_zero() {
        return a.monic().0;
    }
    let mut vars = a.support_vars();
    for v in b.support_vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    let v = match vars.iter().max() {
        None => return MultiPoly::one(a.nvars()),
        Some(&v) => v,
    };
    if vars.len() == 1 {
        return euclid_gcd(a, b, v);
    }

    let (ca, pa) = content_and_primitive(a, v);
    let (cb, pb) = content_and_primitive(b, v);
    let content_gcd = poly_gcd(&ca, &cb);

    // primitive PRS on the primitive parts
    let mut r0 = pa;
    let mut r1 = pb;
    if r0.degree_in(v) < r1.degree_in(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        if r1.is_zero() {
            break;
        }
        if r1.degree_in(v).unwrap_or(0) == 0 {
            // a nonzero remainder free of v means the primitive gcd is trivial
            r0 = MultiPoly::one(a.nvars());
            break;
        }
        let rem = pseudo_rem(&r0, &r1, v);
        r0 = r1;
        r1 = content_and_primitive(&rem, v).1;
    }
    let prim_gcd = content_and_primitive(&r0, v).1;
    (&content_gcd * &prim_gcd).monic().0
}

/// Monic lcm, via `a*b / gcd(a,b)`.
pub fn poly_lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(a.nvars());
    }
    let g = poly_gcd(a, b);
    (a * b).div_exact(&g).expect("gcd divides product").monic().0
}

/// Content (gcd of coefficients with respect to `var`) and primitive part.
pub fn content_and_primitive(p: &MultiPoly, var: usize) -> (MultiPoly, MultiPoly) {
    if p.is_zero() {
        return (MultiPoly::zero(p.nvars()), MultiPoly::zero(p.nvars()));
    }
    let coeffs = p.as_var_coeffs(var);
    let mut content = MultiPoly::zero(p.nvars());
    for c in &coeffs {
        if c.is_zero() {
            continue;
        }
        content = poly_gcd(&content, c);
        if content.is_one() {
            break;
        }
    }
    let prim = p.div_exact(&content).expect("content divides");
    (content, prim)
}

/// Dense Euclidean gcd when both inputs involve only variable `v`.
fn euclid_gcd(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let to_dense = |p: &MultiPoly| -> Vec<FieldElement> {
        p.as_var_coeffs(v)
            .into_iter()
            .map(|c| c.as_constant().expect("univariate fast path"))
            .collect()
    };
    let mut r0 = to_dense(a);
    let mut r1 = to_dense(b);
    while !r1.is_empty() {
        let r2 = dense_rem(&r0, &r1);
        r0 = r1;
        r1 = r2;
    }
    let lead = r0.last().expect("nonzero input").clone();
    let mut exps_template = vec![0u32; a.nvars()];
    let mut out = MultiPoly::zero(a.nvars());
    for (k, c) in r0.iter().enumerate() {
        exps_template[v] = k as u32;
        out = &out + &MultiPoly::monomial(a.nvars(), exps_template.clone(), c / &lead);
    }
    out
}

fn dense_rem(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let q = r.last().unwrap() / lb;
        let shift = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&q * bc);
        }
        while r.last().is_some_and(FieldElement::is_zero) {
            r.pop();
        }
    }
    r
}

/// Squarefree decomposition by Yun's method with respect to one variable:
/// returns `(f1, f2, ...)` with `p = lc * prod fi^i`, each `fi` monic and
/// squarefree, pairwise coprime. Valid in characteristic zero.
pub fn squarefree_wrt(p: &MultiPoly, var: usize) -> Vec<MultiPoly> {
    let p = p.monic().0;
    let dp = p.derivative(var);
    if dp.is_zero() {
        // constant in var (characteristic zero): nothing to split
        return Vec::new();
    }
    let mut out = Vec::new();
    let g = poly_gcd(&p, &dp);
    let mut w = p.div_exact(&g).expect("gcd divides").monic().0;
    let mut y = dp.div_exact(&g).expect("gcd divides");
    loop {
        let z = &y - &w.derivative(var);
        if z.is_zero() {
            out.push(w);
            break;
        }
        let f = poly_gcd(&w, &z);
        y = z.div_exact(&f).expect("gcd divides");
        w = w.div_exact(&f).expect("gcd divides").monic().0;
        out.push(f);
    }
    out
}

fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v).expect("nonzero divisor with v present") as i64;
    let bc = b.as_var_coeffs(v);
    let lb = bc.last().unwrap().clone();
    let mut r = a.clone();
    loop {
        let da = match r.degree_in(v) {
            None => return r,
            Some(d) => d as i64,
        };
        if da < db {
            return r;
        }
        let rc = r.as_var_coeffs(v);
        let lr = rc.last().unwrap().clone();
        let mut shift = vec![0u32; a.nvars()];
        shift[v] = (da - db) as u32;
        let shift_mono = MultiPoly::monomial(a.nvars(), shift, FieldElement::one());
        r = &(&r * &lb) - &(&(&lr * &shift_mono) * b);
    }
}
