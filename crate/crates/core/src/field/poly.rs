//! Sparse multivariate polynomials over the coefficient field.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under graded
//! lexicographic order with `a1 > a2 > ... > an`, so the maximal key is the
//! leading term. The zero polynomial has no terms; stored coefficients are
//! never zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::FieldElement;

/// An exponent vector; always exactly as long as the polynomial's variable
/// count. Ordered by total degree, ties broken lexicographically with the
/// first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Component-wise quotient, `None` when some exponent would go negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial with exact field coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> MultiPoly {
        MultiPoly::constant(nvars, FieldElement::one())
    }

    pub fn constant(nvars: usize, c: FieldElement) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(nvars), c);
        }
        MultiPoly { nvars, terms }
    }

    /// The variable `a{idx+1}`.
    pub fn var(nvars: usize, idx: usize) -> MultiPoly {
        assert!(idx < nvars);
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        MultiPoly::monomial(nvars, exps, FieldElement::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: FieldElement) -> MultiPoly {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Monomial::new(exps), coeff);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms(
        nvars: usize,
        it: impl IntoIterator<Item = (Vec<u32>, FieldElement)>,
    ) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for (exps, c) in it {
            p.add_term(Monomial::new(exps), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value when no variable occurs; zero counts.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(FieldElement::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term when the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &FieldElement)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps()[var]).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps()[var]).min()
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.terms.keys().any(|m| m.exps()[v] > 0)).collect()
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// Scales so the leading coefficient is 1, returning the old leading
    /// coefficient; zero stays zero with unit 1.
    pub fn monic(&self) -> (MultiPoly, FieldElement) {
        match self.leading() {
            None => (self.clone(), FieldElement::one()),
            Some((_, lc)) => {
                let lc = lc.clone();
                (self.scale(&lc.inv()), lc)
            }
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; `None` when the divisor does not divide exactly.
    pub fn div_exact(&self, div: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.nvars, div.nvars);
        assert!(!div.is_zero(), "division by zero polynomial");
        let (dm, dc) = div.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            let qterm = MultiPoly::monomial(self.nvars, qm.exps().to_vec(), qc.clone());
            rem = &rem - &div.mul_monomial(&qm, &qc);
            quot = &quot + &qterm;
        }
        Some(quot)
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] = e - 1;
            out.add_term(Monomial::new(exps), c * &FieldElement::from_integer(e as i64));
        }
        out
    }

    /// Dense coefficient list with respect to one variable; entry `k` is the
    /// coefficient of `var^k`, a polynomial free of `var` (same nvars).
    pub fn as_var_coeffs(&self, var: usize) -> Vec<MultiPoly> {
        let deg = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut out = vec![MultiPoly::zero(self.nvars); deg as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exps()[var] as usize;
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            out[e].add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    pub fn from_var_coeffs(nvars: usize, var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                debug_assert_eq!(m.exps()[var], 0);
                let mut exps = m.exps().to_vec();
                exps[var] += k as u32;
                out.add_term(Monomial::new(exps), v.clone());
            }
        }
        out
    }

    /// Forgets the last variable; `None` if the polynomial depends on it.
    pub fn drop_last_var(&self) -> Option<MultiPoly> {
        assert!(self.nvars >= 1);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if *m.exps().last().unwrap() != 0 {
                return None;
            }
            terms.insert(Monomial::new(m.exps()[..self.nvars - 1].to_vec()), c.clone());
        }
        Some(MultiPoly { nvars: self.nvars - 1, terms })
    }

    /// Reinterprets in `nvars + extra` variables, the new trailing ones unused.
    pub fn extend_vars(&self, extra: usize) -> MultiPoly {
        let n = self.nvars + extra;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                exps.resize(n, 0);
                (Monomial::new(exps), c.clone())
            })
            .collect();
        MultiPoly { nvars: n, terms }
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars);
        let mut acc = FieldElement::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = &term * &point[v].pow(e as i64);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Substitutes each variable by a polynomial (all images share a variable
    /// count, which becomes the result's).
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let out_n = images.first().map_or(0, MultiPoly::nvars);
        let mut acc = MultiPoly::zero(out_n);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(out_n, c.clone());
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = &term * &images[v].pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Applies a map to every coefficient (zero results are dropped).
    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Deterministic total order on polynomials (graded-lex on monomials,
    /// then coefficient order), used for canonical representative choices.
    pub fn cmp_canonical(&self, other: &MultiPoly) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    Ordering::Equal => match ca.cmp_key(cb) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    },
                    ord => return ord,
                },
            }
        }
    }

    /// Renders with the given variable names; re-parses under the expression
    /// grammar. Extension coefficients are parenthesized.
    pub fn render(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { names[v].to_string() } else { format!("{}^{e}", names[v]) })
                .collect();
            let varpart = vars.join("*");
            let coeff_str = match c.as_rational() {
                Some(r) => {
                    if varpart.is_empty() {
                        c.render()
                    } else if r.is_one() {
                        String::new()
                    } else if (-&r).is_one() {
                        "-".to_string()
                    } else {
                        format!("{}*", c.render())
                    }
                }
                None => {
                    if varpart.is_empty() {
                        format!("({})", c.render())
                    } else {
                        format!("({})*", c.render())
                    }
                }
            };
            let piece = format!("{coeff_str}{varpart}");
            if parts.is_empty() {
                parts.push(piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                parts.push(format!("- {rest}"));
            } else {
                parts.push(format!("+ {piece}"));
            }
        }
        parts.join(" ")
    }

    fn default_names(&self) -> Vec<String> {
        (1..=self.nvars).map(|i| format!("a{i}")).collect()
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        MultiPoly { nvars: self.nvars, terms }
    }
}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, other: MultiPoly) -> MultiPoly {
                (&self).$method(&other)
            }
        }
        impl std::ops::$trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, other: &MultiPoly) -> MultiPoly {
                (&self).$method(other)
            }
        }
        impl std::ops::$trait<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, other: MultiPoly) -> MultiPoly {
                self.$method(&other)
            }
        }
    };
}

forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
