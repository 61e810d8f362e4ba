//! Elements of the coefficient field: rationals and simple number fields.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::qx;
use crate::{Error, Result};

/// A simple extension `Q(theta)` described by the monic irreducible minimal
/// polynomial of `theta` over `Q`.
#[derive(Debug)]
pub struct NumberFieldCtx {
    /// Monic minimal polynomial, little-endian, length `degree + 1`.
    min_poly: Vec<BigRational>,
    /// Printable name of the generator, e.g. `t`.
    generator: String,
}

impl NumberFieldCtx {
    /// Builds a context after normalizing the minimal polynomial to monic
    /// form and checking irreducibility over `Q`. Degree must be at least 2;
    /// a degree-1 "extension" is just `Q` and is rejected.
    pub fn new(min_poly: Vec<BigRational>, generator: &str) -> Result<Arc<NumberFieldCtx>> {
        let mut p = qx::trim(min_poly);
        if p.len() < 3 {
            return Err(Error::BadMinimalPolynomial);
        }
        let lc = p.last().unwrap().clone();
        for c in &mut p {
            *c /= &lc;
        }
        if !crate::factor::zint::is_irreducible_q(&p) {
            return Err(Error::BadMinimalPolynomial);
        }
        Ok(Arc::new(NumberFieldCtx { min_poly: p, generator: generator.to_string() }))
    }

    /// Extension degree over `Q`.
    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// Monic minimal polynomial, little-endian coefficients.
    pub fn min_poly(&self) -> &[BigRational] {
        &self.min_poly
    }

    /// The generator's printable name.
    pub fn generator(&self) -> &str {
        &self.generator
    }

    fn same_field(&self, other: &NumberFieldCtx) -> bool {
        self.min_poly == other.min_poly && self.generator == other.generator
    }
}

#[derive(Clone, Debug)]
struct NfElem {
    /// Coefficients of `1, theta, ..., theta^(d-1)`; always length `d`.
    coeffs: Vec<BigRational>,
    ctx: Arc<NumberFieldCtx>,
}

impl NfElem {
    fn zero(ctx: &Arc<NumberFieldCtx>) -> NfElem {
        NfElem { coeffs: vec![BigRational::zero(); ctx.degree()], ctx: ctx.clone() }
    }

    fn from_rational(r: &BigRational, ctx: &Arc<NumberFieldCtx>) -> NfElem {
        let mut e = NfElem::zero(ctx);
        e.coeffs[0] = r.clone();
        e
    }

    /// Reduces an arbitrary-length coefficient vector modulo the minimal
    /// polynomial back to length `d`.
    fn reduce(mut raw: Vec<BigRational>, ctx: &Arc<NumberFieldCtx>) -> NfElem {
        let d = ctx.degree();
        let m = &ctx.min_poly;
        while raw.len() > d {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = raw.len() - d;
            for (i, mi) in m.iter().take(d).enumerate() {
                let v = mi * &top;
                raw[shift + i] -= v;
            }
        }
        raw.resize(d, BigRational::zero());
        NfElem { coeffs: raw, ctx: ctx.clone() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn mul(&self, other: &NfElem) -> NfElem {
        let raw = qx::mul(&self.coeffs, &other.coeffs);
        NfElem::reduce(raw, &self.ctx)
    }

    fn inv(&self) -> NfElem {
        assert!(!self.is_zero(), "inverse of zero");
        let (g, s, _) = qx::ext_gcd(&qx::trim(self.coeffs.clone()), &self.ctx.min_poly);
        // The minimal polynomial is irreducible, so the gcd is the constant 1
        // and `s` is the inverse modulo the minimal polynomial.
        assert!(g.len() == 1, "minimal polynomial shares a factor with a nonzero element");
        NfElem::reduce(s, &self.ctx)
    }
}

/// An exact element of the coefficient field `F`: a rational number or an
/// element of a simple number field `Q(theta)`.
///
/// Mixed-variant arithmetic promotes rationals into the number field. Mixing
/// two distinct number fields panics: it is a programming error, callers
/// construct all elements of one computation from a single context.
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rational(BigRational),
    Extension(NfElemOpaque),
}

/// Opaque wrapper so the enum variant stays constructible only in this module.
#[derive(Clone, Debug)]
pub struct NfElemOpaque(NfElem);

impl FieldElement {
    pub fn zero() -> FieldElement {
        FieldElement::Rational(BigRational::zero())
    }

    pub fn one() -> FieldElement {
        FieldElement::Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> FieldElement {
        FieldElement::Rational(BigRational::from_integer(n.into()))
    }

    /// Builds the fraction `n/d`. Panics if `d = 0`.
    pub fn from_fraction(n: i64, d: i64) -> FieldElement {
        FieldElement::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(r: BigRational) -> FieldElement {
        FieldElement::Rational(r)
    }

    pub fn from_bigint(n: BigInt) -> FieldElement {
        FieldElement::Rational(BigRational::from_integer(n))
    }

    /// The generator `theta` of the given number field.
    pub fn generator(ctx: &Arc<NumberFieldCtx>) -> FieldElement {
        let mut e = NfElem::zero(ctx);
        e.coeffs[1] = BigRational::one();
        FieldElement::Extension(NfElemOpaque(e))
    }

    /// An extension element from coefficients of `1, theta, ...`; shorter
    /// vectors are zero padded, longer ones reduced.
    pub fn from_coeffs(coeffs: Vec<BigRational>, ctx: &Arc<NumberFieldCtx>) -> FieldElement {
        FieldElement::Extension(NfElemOpaque(NfElem::reduce(coeffs, ctx)))
    }

    /// Coefficient vector over `Q` (length = extension degree, or 1 for
    /// rationals).
    pub fn coeff_vector(&self) -> Vec<BigRational> {
        match self {
            FieldElement::Rational(r) => vec![r.clone()],
            FieldElement::Extension(e) => e.0.coeffs.clone(),
        }
    }

    /// The number-field context, when this element is an extension element.
    pub fn context(&self) -> Option<&Arc<NumberFieldCtx>> {
        match self {
            FieldElement::Rational(_) => None,
            FieldElement::Extension(e) => Some(&e.0.ctx),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Extension(e) => e.0.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The rational value when the element lies in `Q` (including extension
    /// elements whose non-constant coordinates vanish).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r.clone()),
            FieldElement::Extension(e) => {
                if e.0.coeffs[1..].iter().all(Zero::is_zero) {
                    Some(e.0.coeffs[0].clone())
                } else {
                    None
                }
            }
        }
    }

    /// Embeds the element into the given number field (rationals promote,
    /// extension elements must already belong to it).
    pub fn promote(&self, ctx: &Arc<NumberFieldCtx>) -> FieldElement {
        match self {
            FieldElement::Rational(r) => {
                FieldElement::Extension(NfElemOpaque(NfElem::from_rational(r, ctx)))
            }
            FieldElement::Extension(e) => {
                assert!(e.0.ctx.same_field(ctx), "mixed number fields");
                self.clone()
            }
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElement {
        match self {
            FieldElement::Rational(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                FieldElement::Rational(r.recip())
            }
            FieldElement::Extension(e) => FieldElement::Extension(NfElemOpaque(e.0.inv())),
        }
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, k: i64) -> FieldElement {
        if k == 0 {
            return FieldElement::one();
        }
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = FieldElement::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// A deterministic total order used for canonical representative
    /// choices. Consistent with equality; otherwise arbitrary but fixed.
    pub fn cmp_key(&self, other: &FieldElement) -> Ordering {
        let a = self.coeff_vector();
        let b = other.coeff_vector();
        let n = a.len().max(b.len());
        let zero = BigRational::zero();
        for i in 0..n {
            let x = a.get(i).unwrap_or(&zero);
            let y = b.get(i).unwrap_or(&zero);
            match x.cmp(y) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Renders the element; extension elements use the generator's name.
    /// The output re-parses under the expression grammar.
    pub fn render(&self) -> String {
        match self {
            FieldElement::Rational(r) => render_rational(r),
            FieldElement::Extension(e) => {
                let gen = e.0.ctx.generator.clone();
                let mut parts: Vec<String> = Vec::new();
                for (i, c) in e.0.coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let var = match i {
                        0 => String::new(),
                        1 => gen.clone(),
                        _ => format!("{gen}^{i}"),
                    };
                    let piece = if var.is_empty() {
                        render_rational(c)
                    } else if c.is_one() {
                        var
                    } else if (-c).is_one() {
                        format!("-{var}")
                    } else {
                        format!("{}*{var}", render_rational(c))
                    };
                    if parts.is_empty() {
                        parts.push(piece);
                    } else if let Some(rest) = piece.strip_prefix('-') {
                        parts.push(format!("- {rest}"));
                    } else {
                        parts.push(format!("+ {piece}"));
                    }
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" ")
                }
            }
        }
    }

    fn binop(
        &self,
        other: &FieldElement,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        ext: impl Fn(&NfElem, &NfElem) -> NfElem,
    ) -> FieldElement {
        use FieldElement::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Rational(rat(a, b)),
            (Extension(a), Extension(b)) => {
                assert!(a.0.ctx.same_field(&b.0.ctx), "mixed number fields");
                Extension(NfElemOpaque(ext(&a.0, &b.0)))
            }
            (Rational(a), Extension(b)) => {
                Extension(NfElemOpaque(ext(&NfElem::from_rational(a, &b.0.ctx), &b.0)))
            }
            (Extension(a), Rational(b)) => {
                Extension(NfElemOpaque(ext(&a.0, &NfElem::from_rational(b, &a.0.ctx))))
            }
        }
    }
}

fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &FieldElement) -> bool {
        self.cmp_key(other) == Ordering::Equal
            && match (self.context(), other.context()) {
                (Some(a), Some(b)) => a.same_field(b),
                _ => true,
            }
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn nf_add(a: &NfElem, b: &NfElem) -> NfElem {
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
    NfElem { coeffs, ctx: a.ctx.clone() }
}

fn nf_sub(a: &NfElem, b: &NfElem) -> NfElem {
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
    NfElem { coeffs, ctx: a.ctx.clone() }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, other: &FieldElement) -> FieldElement {
        self.binop(other, |a, b| a + b, nf_add)
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, other: &FieldElement) -> FieldElement {
        self.binop(other, |a, b| a - b, nf_sub)
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, other: &FieldElement) -> FieldElement {
        self.binop(other, |a, b| a * b, NfElem::mul)
    }
}

impl std::ops::Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, other: &FieldElement) -> FieldElement {
        self * &other.inv()
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(-r),
            FieldElement::Extension(e) => {
                let coeffs = e.0.coeffs.iter().map(|c| -c).collect();
                FieldElement::Extension(NfElemOpaque(NfElem { coeffs, ctx: e.0.ctx.clone() }))
            }
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, other: FieldElement) -> FieldElement {
                (&self).$method(&other)
            }
        }
        impl std::ops::$trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, other: &FieldElement) -> FieldElement {
                (&self).$method(other)
            }
        }
        impl std::ops::$trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, other: FieldElement) -> FieldElement {
                self.$method(&other)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
