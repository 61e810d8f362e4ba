//! Factoring univariate polynomials over a number field `Q(theta)`.
//!
//! Norm-based reduction: shift `f(x - s*theta)` until its norm (a resultant
//! against the minimal polynomial, taken over `Q`) is squarefree, factor the
//! norm over the rationals, and pull each rational factor back through a gcd
//! in `Q(theta)[x]`.

use std::sync::Arc;

use num_rational::BigRational;

use super::{upoly, zint};
use crate::field::{FieldElement, NumberFieldCtx};

/// Factors a squarefree polynomial over `Q(theta)` into monic irreducible
/// parts (no multiplicities: the input must be squarefree).
pub(crate) fn factor_squarefree_nf(
    f: &[FieldElement],
    ctx: &Arc<NumberFieldCtx>,
) -> Vec<Vec<FieldElement>> {
    let f = upoly::monic(f);
    assert!(f.len() >= 2, "factoring needs degree >= 1");
    if f.len() == 2 {
        return vec![f];
    }
    let theta = FieldElement::generator(ctx);

    let mut s = 0i64;
    loop {
        let shift = &FieldElement::from_integer(-s) * &theta;
        let g = upoly::compose_shift(&f, &shift);
        let norm = norm_poly(&g, ctx);
        let dn = upoly::derivative(&norm);
        if upoly::gcd(&norm, &dn).len() == 1 {
            let back = &FieldElement::from_integer(s) * &theta;
            return split_by_norm(&f, &norm, &back);
        }
        s += 1;
    }
}

fn split_by_norm(
    f: &[FieldElement],
    norm: &[FieldElement],
    back_shift: &FieldElement,
) -> Vec<Vec<FieldElement>> {
    let rational: Vec<BigRational> = norm
        .iter()
        .map(|c| c.as_rational().expect("norm has rational coefficients"))
        .collect();
    let (_, parts) = zint::factor_q(&rational);
    if parts.len() == 1 {
        return vec![f.to_vec()];
    }
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    for (h, _) in parts {
        let h_fe: Vec<FieldElement> = h.into_iter().map(FieldElement::from_bigint).collect();
        let shifted = upoly::compose_shift(&h_fe, back_shift);
        let factor = upoly::gcd(&rest, &shifted);
        if factor.len() > 1 {
            rest = upoly::divrem(&rest, &factor).0;
            out.push(factor);
        }
    }
    debug_assert!(rest.len() == 1, "norm factors must exhaust f");
    out.sort_by(|a, b| {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b.iter()).rev() {
                match x.cmp_key(y) {
                    std::cmp::Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    out
}

/// The norm of `g` (coefficients in `Q(theta)`) down to `Q[x]`: the resultant
/// in `y` of the minimal polynomial `m(y)` and `g` with `theta` replaced by
/// `y`, computed by evaluation at rational points and Lagrange interpolation.
fn norm_poly(g: &[FieldElement], ctx: &Arc<NumberFieldCtx>) -> Vec<FieldElement> {
    let d = ctx.degree();
    let m: Vec<FieldElement> = ctx
        .min_poly()
        .iter()
        .map(|c| FieldElement::from_rational(c.clone()))
        .collect();

    // coefficient table: row j holds the rational coefficients of theta^j in
    // each coefficient of g, i.e. G(x, y) = sum_j row_j(x) y^j
    let rows: Vec<Vec<FieldElement>> = (0..d)
        .map(|j| {
            upoly::trim(
                g.iter()
                    .map(|c| {
                        let v = c.coeff_vector();
                        let r = v.get(j).cloned().unwrap_or_else(num_traits::Zero::zero);
                        FieldElement::from_rational(r)
                    })
                    .collect(),
            )
        })
        .collect();

    let target_deg = (g.len() - 1) * d;
    let mut points = Vec::with_capacity(target_deg + 1);
    let mut candidate = 0i64;
    while points.len() < target_deg + 1 {
        let x0 = FieldElement::from_integer(candidate);
        candidate = if candidate > 0 { -candidate } else { -candidate + 1 };
        // specialize G at x0; degree in y must not drop for the resultant
        // to specialize cleanly, so skip roots of the leading row
        let gy: Vec<FieldElement> = rows.iter().map(|row| upoly::eval(row, &x0)).collect();
        let gy = upoly::trim(gy);
        if gy.len() != rows.iter().rposition(|r| !r.is_empty()).map_or(0, |i| i + 1) {
            continue;
        }
        if gy.is_empty() {
            continue;
        }
        let value = upoly::resultant(&m, &gy);
        points.push((x0, value));
    }
    lagrange(&points)
}

/// Interpolating polynomial through distinct points.
fn lagrange(points: &[(FieldElement, FieldElement)]) -> Vec<FieldElement> {
    let mut acc: Vec<FieldElement> = Vec::new();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![FieldElement::one()];
        let mut denom = FieldElement::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = upoly::mul(&basis, &[-xj, FieldElement::one()]);
            denom = &denom * &(xi - xj);
        }
        acc = upoly::add(&acc, &upoly::scale(&basis, &(yi / &denom)));
    }
    acc
}
