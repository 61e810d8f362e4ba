//! Dense univariate view: polynomials in the last variable whose
//! coefficients are rational functions in the remaining variables.
//!
//! This is the arena for partial fraction work: the last variable plays the
//! role of the distinguished indeterminate and everything below it is treated
//! as a coefficient field.

use super::{MultiPoly, RatFunc};

/// A polynomial in `an` with coefficients free of `an`. Stored densely,
/// lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct LastVarPoly {
    nvars: usize,
    coeffs: Vec<RatFunc>,
}

impl LastVarPoly {
    pub fn zero(nvars: usize) -> LastVarPoly {
        assert!(nvars >= 1);
        LastVarPoly { nvars, coeffs: Vec::new() }
    }

    pub fn one(nvars: usize) -> LastVarPoly {
        LastVarPoly::from_coeffs(nvars, vec![RatFunc::one(nvars)])
    }

    pub fn from_coeffs(nvars: usize, coeffs: Vec<RatFunc>) -> LastVarPoly {
        assert!(nvars >= 1);
        let mut p = LastVarPoly { nvars, coeffs };
        p.trim();
        for c in &p.coeffs {
            debug_assert_eq!(c.num().degree_in(nvars - 1).unwrap_or(0), 0);
            debug_assert_eq!(c.den().degree_in(nvars - 1).unwrap_or(0), 0);
        }
        p
    }

    pub fn from_poly(p: &MultiPoly) -> LastVarPoly {
        let nvars = p.nvars();
        let coeffs = p
            .as_var_coeffs(nvars - 1)
            .into_iter()
            .map(RatFunc::from_poly)
            .collect();
        LastVarPoly::from_coeffs(nvars, coeffs)
    }

    /// Splits a rational function whose denominator is free of the last
    /// variable; `None` when the denominator involves it.
    pub fn try_from_ratfunc(f: &RatFunc) -> Option<LastVarPoly> {
        let nvars = f.nvars();
        if f.den().degree_in(nvars - 1).unwrap_or(0) != 0 {
            return None;
        }
        let den = RatFunc::from_poly(f.den().clone());
        let coeffs = f
            .num()
            .as_var_coeffs(nvars - 1)
            .into_iter()
            .map(|c| &RatFunc::from_poly(c) / &den)
            .collect();
        Some(LastVarPoly::from_coeffs(nvars, coeffs))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(RatFunc::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_else(|| RatFunc::zero(self.nvars))
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&RatFunc> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &RatFunc) -> LastVarPoly {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        LastVarPoly::from_coeffs(self.nvars, coeffs)
    }

    /// Scales to leading coefficient 1; returns the removed unit.
    pub fn monic(&self) -> (LastVarPoly, RatFunc) {
        match self.leading() {
            None => (self.clone(), RatFunc::one(self.nvars)),
            Some(lc) => {
                let lc = lc.clone();
                (self.scale(&lc.inv()), lc)
            }
        }
    }

    /// Quotient and remainder with `deg r < deg d`.
    pub fn divrem(&self, d: &LastVarPoly) -> (LastVarPoly, LastVarPoly) {
        assert!(!d.is_zero(), "division by zero");
        let dd = d.coeffs.len() - 1;
        let lead = d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatFunc::zero(self.nvars); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let q = rem.last().unwrap() / lead;
            let shift = rem.len() - 1 - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&q * dc);
            }
            quot[shift] = q;
            while rem.last().is_some_and(RatFunc::is_zero) {
                rem.pop();
            }
        }
        (LastVarPoly::from_coeffs(self.nvars, quot), LastVarPoly::from_coeffs(self.nvars, rem))
    }

    /// Extended gcd: returns monic `g` and `(s, t)` with `s*a + t*b = g`.
    pub fn ext_gcd(a: &LastVarPoly, b: &LastVarPoly) -> (LastVarPoly, LastVarPoly, LastVarPoly) {
        let n = a.nvars;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (LastVarPoly::one(n), LastVarPoly::zero(n));
        let (mut t0, mut t1) = (LastVarPoly::zero(n), LastVarPoly::one(n));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let (g, unit) = r0.monic();
        (g, s0.scale(&unit.inv()), t0.scale(&unit.inv()))
    }

    pub fn pow(&self, k: u32) -> LastVarPoly {
        let mut acc = LastVarPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Collapses back to a rational function `sum coeffs[k] * an^k`.
    pub fn to_ratfunc(&self) -> RatFunc {
        let mut acc = RatFunc::zero(self.nvars);
        let an = RatFunc::var(self.nvars, self.nvars - 1);
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &(c * &an.pow(k as i64));
        }
        acc
    }

    /// The underlying polynomial when every coefficient is one.
    pub fn to_poly(&self) -> Option<MultiPoly> {
        let mut acc = MultiPoly::zero(self.nvars);
        let mut exps = vec![0u32; self.nvars];
        for (k, c) in self.coeffs.iter().enumerate() {
            let p = c.as_poly()?;
            exps[self.nvars - 1] = k as u32;
            let shift = MultiPoly::monomial(self.nvars, exps.clone(), super::FieldElement::one());
            acc = &acc + &(p * &shift);
        }
        Some(acc)
    }
}

impl std::ops::Add for &LastVarPoly {
    type Output = LastVarPoly;
    fn add(self, other: &LastVarPoly) -> LastVarPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &other.coeff(k));
        }
        LastVarPoly::from_coeffs(self.nvars, coeffs)
    }
}

impl std::ops::Sub for &LastVarPoly {
    type Output = LastVarPoly;
    fn sub(self, other: &LastVarPoly) -> LastVarPoly {
        self + &(-other)
    }
}

impl std::ops::Mul for &LastVarPoly {
    type Output = LastVarPoly;
    fn mul(self, other: &LastVarPoly) -> LastVarPoly {
        if self.is_zero() || other.is_zero() {
            return LastVarPoly::zero(self.nvars);
        }
        let mut coeffs = vec![RatFunc::zero(self.nvars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LastVarPoly::from_coeffs(self.nvars, coeffs)
    }
}

impl std::ops::Neg for &LastVarPoly {
    type Output = LastVarPoly;
    fn neg(self) -> LastVarPoly {
        LastVarPoly { nvars: self.nvars, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
