//! Rational functions in `a1, ..., an` over the coefficient field.
//!
//! Values are kept in canonical reduced form: numerator and denominator
//! coprime, denominator monic under graded lexicographic order. Equality is
//! therefore structural.

use std::fmt;

use super::gcd::poly_gcd;
use super::{FieldElement, MultiPoly};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Builds `num/den`, reducing to canonical form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFunc::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc { den: MultiPoly::one(num.nvars()), num };
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = poly_gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let (den, lc) = den.monic();
        let num = num.scale(&lc.inv());
        RatFunc { num, den }
    }

    /// Wraps coprime parts with monic denominator without re-reducing.
    pub(crate) fn from_reduced_unchecked(num: MultiPoly, den: MultiPoly) -> RatFunc {
        debug_assert!(den.leading().is_some_and(|(_, c)| c.is_one()));
        debug_assert!(poly_gcd(&num, &den).is_one() || num.is_zero());
        RatFunc { num, den }
    }

    pub fn from_poly(p: MultiPoly) -> RatFunc {
        let den = MultiPoly::one(p.nvars());
        RatFunc { num: p, den }
    }

    pub fn zero(nvars: usize) -> RatFunc {
        RatFunc::from_poly(MultiPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> RatFunc {
        RatFunc::from_poly(MultiPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: FieldElement) -> RatFunc {
        RatFunc::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn var(nvars: usize, idx: usize) -> RatFunc {
        RatFunc::from_poly(MultiPoly::var(nvars, idx))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        self.den.is_one().then(|| self.num.as_constant()).flatten()
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        let (den, lc) = self.num.monic();
        RatFunc { num: self.den.scale(&lc.inv()), den }
    }

    pub fn pow(&self, k: i64) -> RatFunc {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let mut acc = RatFunc::one(self.nvars());
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &FieldElement) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Reinterprets in `nvars + extra` variables.
    pub fn extend_vars(&self, extra: usize) -> RatFunc {
        RatFunc { num: self.num.extend_vars(extra), den: self.den.extend_vars(extra) }
    }

    /// Removes an unused trailing variable; `None` if either side uses it.
    pub fn drop_last_var(&self) -> Option<RatFunc> {
        let num = self.num.drop_last_var()?;
        let den = self.den.drop_last_var()?;
        Some(RatFunc { num, den })
    }

    /// Renders re-parseably with the given variable names.
    pub fn render(&self, names: &[&str]) -> String {
        // clear coefficient denominators first: the canonical monic form
        // `-1/2*a1 + 1/2*a3` reads better as `(-a1 + a3)/2`
        let scale = FieldElement::from_bigint(self.coeff_denominator_lcm());
        let num_scaled = self.num.scale(&scale);
        let den_scaled = self.den.scale(&scale);
        if den_scaled.is_one() {
            return num_scaled.render(names);
        }
        let num = if num_scaled.num_terms() > 1 {
            format!("({})", num_scaled.render(names))
        } else {
            num_scaled.render(names)
        };
        // A single-term denominator still needs parens when it carries a
        // `*` (several variables), or `a/b*c` would re-parse as `(a/b)*c`.
        let den_raw = den_scaled.render(names);
        let den = if den_scaled.num_terms() > 1 || den_raw.contains('*') {
            format!("({den_raw})")
        } else {
            den_raw
        };
        format!("{num}/{den}")
    }

    /// Least common multiple of every coefficient denominator on both sides.
    fn coeff_denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        let mut acc = num_bigint::BigInt::from(1);
        let mut absorb = |c: &FieldElement| {
            let denoms: Vec<num_bigint::BigInt> = match c.as_rational() {
                Some(r) => vec![r.denom().clone()],
                None => c.coeff_vector().iter().map(|r| r.denom().clone()).collect(),
            };
            for d in denoms {
                acc = acc.lcm(&d);
            }
        };
        for (_, c) in self.num.terms() {
            absorb(c);
        }
        for (_, c) in self.den.terms() {
            absorb(c);
        }
        acc
    }

    fn default_names(&self) -> Vec<String> {
        (1..=self.nvars()).map(|i| format!("a{i}")).collect()
    }
}

impl std::ops::Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc::reduce(&self.num + &other.num, self.den.clone());
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFunc::reduce(num, &self.den * &other.den)
    }
}

impl std::ops::Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, other: &RatFunc) -> RatFunc {
        self + &(-other)
    }
}

impl std::ops::Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        // cross-reduce so the final gcd is trivial
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let (den, lc) = den.monic();
        RatFunc { num: num.scale(&lc.inv()), den }
    }
}

impl std::ops::Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, other: &RatFunc) -> RatFunc {
        self * &other.inv()
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_rat_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, other: RatFunc) -> RatFunc {
                (&self).$method(&other)
            }
        }
        impl std::ops::$trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, other: &RatFunc) -> RatFunc {
                (&self).$method(other)
            }
        }
        impl std::ops::$trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, other: RatFunc) -> RatFunc {
                self.$method(&other)
            }
        }
    };
}

forward_rat_binop!(Add, add);
forward_rat_binop!(Sub, sub);
forward_rat_binop!(Mul, mul);
forward_rat_binop!(Div, div);

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_integer(n)
    }

    #[test]
    fn reduction_to_canonical_form() {
        // (2x^2 - 2) / (4x - 4) reduces to (x + 1)/2 with monic denominator 1
        let x = MultiPoly::var(1, 0);
        let num = (&(&x * &x) - &MultiPoly::one(1)).scale(&fe(2));
        let den = (&x - &MultiPoly::one(1)).scale(&fe(4));
        let r = RatFunc::new(num, den).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(*r.num(), (&x + &MultiPoly::one(1)).scale(&FieldElement::from_fraction(1, 2)));
    }

    #[test]
    fn zero_denominator_rejected() {
        let x = MultiPoly::var(1, 0);
        assert!(matches!(RatFunc::new(x, MultiPoly::zero(1)), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn field_axioms_on_samples() {
        let x = RatFunc::var(2, 0);
        let y = RatFunc::var(2, 1);
        let f = &(&x + &y) / &(&x - &y);
        let g = &x / &y;
        // f * g / g == f, f - f == 0, f * f.inv() == 1
        assert_eq!(&(&f * &g) / &g, f);
        assert!((&f - &f).is_zero());
        assert!((&f * &f.inv()).is_one());
        let sum = &f + &g;
        assert_eq!(&sum - &g, f);
    }

    #[test]
    fn denominator_stays_monic() {
        // 1 / (2x + 2) has monic denominator x + 1 and numerator 1/2
        let x = MultiPoly::var(1, 0);
        let den = (&x + &MultiPoly::one(1)).scale(&fe(2));
        let r = RatFunc::new(MultiPoly::one(1), den).unwrap();
        assert_eq!(*r.den(), &x + &MultiPoly::one(1));
        assert_eq!(r.num().as_constant().unwrap(), FieldElement::from_fraction(1, 2));
    }

    #[test]
    fn render_round_structure() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let r = RatFunc::new(&x + &y, &x - &y).unwrap();
        assert_eq!(r.render(&["a1", "a2"]), "(a1 + a2)/(a1 - a2)");
    }
}
