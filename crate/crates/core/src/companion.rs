//! Recurrence systems given by an invertible matrix action.
//!
//! The automorphism here sends the variable row vector to itself times a
//! matrix: `phi(a_j) = sum_i A[i][j] * a_i`. When the matrix is
//! diagonalizable over the coefficient field, conjugating by an eigenbasis
//! turns `phi` into a scaling automorphism and the summability machinery
//! applies verbatim; witnesses transport back through the basis change.
//! Companion matrices of integer recurrences often do not split over `Q`,
//! so a direct solver works degree by degree on polynomial inputs, using
//! that a linear substitution preserves total degree.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::factor::factor_univariate;
use crate::field::{FieldElement, Monomial, MultiPoly, NumberFieldCtx, RatFunc, SigmaSpec};
use crate::summability::{is_summable, SummabilityOutcome};
use crate::{Config, Error, Result};

/// A dense square matrix over the coefficient field, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(n: usize, data: Vec<FieldElement>) -> Matrix {
        assert_eq!(data.len(), n * n, "row-major entries of an n by n matrix");
        Matrix { n, data }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix { n, data: vec![FieldElement::zero(); n * n] };
        for i in 0..n {
            *m.at_mut(i, i) = FieldElement::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "square matrix");
            data.extend(row.into_iter().map(FieldElement::from_integer));
        }
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut FieldElement {
        &mut self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let mut out = Matrix { n: self.n, data: vec![FieldElement::zero(); self.n * self.n] };
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    let add = a * other.at(k, j);
                    *out.at_mut(i, j) = &*out.at(i, j) + &add;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|e| e * c).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn trace(&self) -> FieldElement {
        let mut t = FieldElement::zero();
        for i in 0..self.n {
            t = &t + self.at(i, i);
        }
        t
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.at(i, j).is_zero()))
    }

    /// Exact inverse by Gauss elimination; `None` for a singular matrix.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let p = a.at(col, col).inv();
            for j in 0..n {
                *a.at_mut(col, j) = &*a.at(col, j) * &p;
                *inv.at_mut(col, j) = &*inv.at(col, j) * &p;
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for j in 0..n {
                    let ax = &*a.at(r, j) - &(&factor * a.at(col, j));
                    *a.at_mut(r, j) = ax;
                    let ix = &*inv.at(r, j) - &(&factor * inv.at(col, j));
                    *inv.at_mut(r, j) = ix;
                }
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial `det(xI - A)`, dense little endian, monic.
    pub fn char_poly(&self) -> Vec<FieldElement> {
        let n = self.n;
        let mut coeffs = vec![FieldElement::zero(); n + 1];
        coeffs[n] = FieldElement::one();
        let mut m = Matrix::identity(n);
        for k in 1..=n {
            let am = self.mul(&m);
            let c = &(-&am.trace()) / &FieldElement::from_integer(k as i64);
            coeffs[n - k] = c.clone();
            m = am;
            for i in 0..n {
                *m.at_mut(i, i) = &*m.at(i, i) + &c;
            }
        }
        coeffs
    }

    /// Basis of the right kernel.
    fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let n = self.n;
        let mut a = self.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| !a.at(r, col).is_zero()) else { continue };
            if p != row {
                for j in 0..n {
                    a.data.swap(row * n + j, p * n + j);
                }
            }
            let inv = a.at(row, col).inv();
            for j in 0..n {
                *a.at_mut(row, j) = &*a.at(row, j) * &inv;
            }
            for r in 0..n {
                if r == row || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for j in 0..n {
                    let x = &*a.at(r, j) - &(&factor * a.at(row, j));
                    *a.at_mut(r, j) = x;
                }
            }
            pivots.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..n {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![FieldElement::zero(); n];
            v[free] = FieldElement::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&*a.at(r, free);
            }
            basis.push(v);
        }
        basis
    }
}

/// The recurrence shape of the matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    /// Shifted-basis form: `phi(a_j) = a_{j+1}` and the last image is the
    /// recurrence combination.
    Companion,
    /// Any invertible matrix.
    General,
}

/// An automorphism given by `phi(a_j) = sum_i A[i][j] a_i`.
#[derive(Clone, Debug)]
pub struct MatrixSystem {
    a: Matrix,
    kind: SystemKind,
}

impl MatrixSystem {
    /// System of an order-n recurrence `t(m+n) = u_n t(m+n-1) + ... + u_1 t(m)`;
    /// `u_1` must be nonzero so the matrix is invertible.
    pub fn companion(u: Vec<FieldElement>) -> Result<MatrixSystem> {
        let n = u.len();
        if n == 0 || u[0].is_zero() {
            return Err(Error::SingularMatrix);
        }
        let mut a = Matrix { n, data: vec![FieldElement::zero(); n * n] };
        for j in 0..n - 1 {
            *a.at_mut(j + 1, j) = FieldElement::one();
        }
        for i in 0..n {
            *a.at_mut(i, n - 1) = u[i].clone();
        }
        Ok(MatrixSystem { a, kind: SystemKind::Companion })
    }

    pub fn general(a: Matrix) -> Result<MatrixSystem> {
        if a.inverse().is_none() {
            return Err(Error::SingularMatrix);
        }
        Ok(MatrixSystem { a, kind: SystemKind::General })
    }

    pub fn dim(&self) -> usize {
        self.a.n
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    /// The image polynomial of each variable under `phi`.
    fn images(&self) -> Vec<MultiPoly> {
        let n = self.a.n;
        (0..n)
            .map(|j| {
                let mut p = MultiPoly::zero(n);
                for i in 0..n {
                    if !self.a.at(i, j).is_zero() {
                        let mut exps = vec![0u32; n];
                        exps[i] = 1;
                        p = &p + &MultiPoly::monomial(n, exps, self.a.at(i, j).clone());
                    }
                }
                p
            })
            .collect()
    }

    /// Applies `phi` to a polynomial.
    pub fn apply_poly(&self, p: &MultiPoly) -> MultiPoly {
        assert_eq!(p.nvars(), self.a.n, "variable count mismatch");
        p.substitute(&self.images())
    }

    /// Applies `phi` to a rational function.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let images = self.images();
        RatFunc::new(f.num().substitute(&images), f.den().substitute(&images))
            .expect("an automorphism keeps the denominator nonzero")
    }
}

/// The matrix-side difference operator `c*phi(g) - g`.
pub fn matrix_delta(sys: &MatrixSystem, g: &RatFunc, c: &FieldElement) -> RatFunc {
    &sys.apply(g).scale(c) - g
}

/// An exact eigenbasis: `x_inv * A * x = diag(eigenvalues)`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub eigenvalues: Vec<FieldElement>,
    pub x: Matrix,
    pub x_inv: Matrix,
}

impl Diagonalization {
    fn substitution(&self, m: &Matrix, f: &RatFunc) -> RatFunc {
        let n = m.n;
        let images: Vec<MultiPoly> = (0..n)
            .map(|j| {
                let mut p = MultiPoly::zero(n);
                for i in 0..n {
                    if !m.at(i, j).is_zero() {
                        let mut exps = vec![0u32; n];
                        exps[i] = 1;
                        p = &p + &MultiPoly::monomial(n, exps, m.at(i, j).clone());
                    }
                }
                p
            })
            .collect();
        RatFunc::new(f.num().substitute(&images), f.den().substitute(&images))
            .expect("basis change keeps the denominator nonzero")
    }

    /// The isomorphism onto matrix coordinates: variables map through the
    /// eigenvector matrix.
    pub fn tau(&self, f: &RatFunc) -> RatFunc {
        self.substitution(&self.x, f)
    }

    /// Inverse isomorphism into scaling coordinates.
    pub fn tau_inv(&self, f: &RatFunc) -> RatFunc {
        self.substitution(&self.x_inv, f)
    }
}

fn upoly_string(f: &[FieldElement]) -> String {
    let mut parts = Vec::new();
    for (e, c) in f.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let var = match e {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{e}"),
        };
        let part = if var.is_empty() {
            format!("{c}")
        } else if c.is_one() {
            var
        } else {
            format!("({c})*{var}")
        };
        parts.push(part);
    }
    if parts.is_empty() { "0".into() } else { parts.join(" + ") }
}

/// Finds an exact eigenbasis over the coefficient field, or over the
/// supplied extension when the characteristic polynomial needs one.
pub fn diagonalize(
    sys: &MatrixSystem,
    field: Option<&Arc<NumberFieldCtx>>,
) -> Result<Diagonalization> {
    let n = sys.dim();
    if sys.a.is_diagonal() {
        let eigenvalues: Vec<FieldElement> = (0..n).map(|i| sys.a.at(i, i).clone()).collect();
        if eigenvalues.iter().any(FieldElement::is_zero) {
            return Err(Error::SingularMatrix);
        }
        return Ok(Diagonalization { eigenvalues, x: Matrix::identity(n), x_inv: Matrix::identity(n) });
    }
    let mut coeffs = sys.a.char_poly();
    if let Some(ctx) = field {
        // land the coefficients in the extension so factorization runs there
        let embed_zero = FieldElement::from_coeffs(Vec::new(), ctx);
        for c in &mut coeffs {
            *c = &*c + &embed_zero;
        }
    }
    let factors = factor_univariate(&coeffs)?;
    let mut pairs: Vec<(FieldElement, u32)> = Vec::new();
    for (f, mult) in &factors {
        if crate::factor::upoly::degree(f) != Some(1) {
            return Err(Error::DoesNotSplit(upoly_string(f)));
        }
        pairs.push((-&f[0], *mult));
    }
    let mut eigenvalues = Vec::new();
    let mut columns: Vec<Vec<FieldElement>> = Vec::new();
    for (lam, mult) in &pairs {
        if lam.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let shifted = sys.a.sub(&Matrix::identity(n).scale(lam));
        let space = shifted.nullspace();
        if (space.len() as u32) < *mult {
            return Err(Error::NotDiagonalizable(lam.to_string()));
        }
        for v in space.into_iter().take(*mult as usize) {
            eigenvalues.push(lam.clone());
            columns.push(v);
        }
    }
    assert_eq!(columns.len(), n, "algebraic multiplicities sum to the dimension");
    let mut x = Matrix { n, data: vec![FieldElement::zero(); n * n] };
    for (j, col) in columns.iter().enumerate() {
        for i in 0..n {
            *x.at_mut(i, j) = col[i].clone();
        }
    }
    let x_inv = x.inverse().expect("eigenvectors of distinct eigenvalues are independent");
    let conj = x_inv.mul(&sys.a).mul(&x);
    assert!(conj.is_diagonal(), "conjugation lands on a diagonal matrix");
    for (i, lam) in eigenvalues.iter().enumerate() {
        assert!(conj.at(i, i) == lam, "diagonal entries are the eigenvalues");
    }
    Ok(Diagonalization { eigenvalues, x, x_inv })
}

/// Solves `c*phi(g) - g = f` by moving to scaling coordinates and back;
/// any returned witness satisfies the matrix equation exactly.
pub fn transport_solve(
    sys: &MatrixSystem,
    f: &RatFunc,
    c: &FieldElement,
    field: Option<&Arc<NumberFieldCtx>>,
    cfg: &Config,
) -> Result<SummabilityOutcome> {
    let diag = diagonalize(sys, field)?;
    let spec = SigmaSpec::new(diag.eigenvalues.clone())?;
    let f_diag = diag.tau_inv(f);
    Ok(match is_summable(&f_diag, c, &spec, cfg)? {
        SummabilityOutcome::Summable(h) => {
            let g = diag.tau(&h);
            assert!(matrix_delta(sys, &g, c) == *f, "transported witness verifies");
            SummabilityOutcome::Summable(g)
        }
        other => other,
    })
}

/// All monomials of the given total degree, graded-lex order.
fn monomials_of_degree(nvars: usize, degree: u64) -> Vec<Monomial> {
    fn rec(nvars: usize, pos: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == nvars {
            cur.push(left as u32);
            out.push(Monomial::new(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u32);
            rec(nvars, pos + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, 0, degree, &mut Vec::new(), &mut out);
    out
}

/// Gauss elimination for a dense square-or-rectangular exact system; free
/// variables are set to zero, `None` when inconsistent.
fn solve_linear(mut m: Vec<Vec<FieldElement>>, mut rhs: Vec<FieldElement>) -> Option<Vec<FieldElement>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        rhs.swap(row, p);
        let inv = m[row][col].inv();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        rhs[row] = &rhs[row] * &inv;
        for r in 0..rows {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for cc in 0..cols {
                m[r][cc] = &m[r][cc] - &(&factor * &m[row][cc]);
            }
            rhs[r] = &rhs[r] - &(&factor * &rhs[row]);
        }
        pivots.push((row, col));
        row += 1;
        if row == rows {
            break;
        }
    }
    for r in row..rows {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    let mut sol = vec![FieldElement::zero(); cols];
    for &(r, c) in &pivots {
        sol[c] = rhs[r].clone();
    }
    Some(sol)
}

/// Solves `c*phi(g) - g = f` for polynomial `f` degree by degree without
/// leaving the coefficient field; `None` when some graded component has no
/// solution.
pub fn solve_polynomial_graded(
    sys: &MatrixSystem,
    f: &MultiPoly,
    c: &FieldElement,
) -> Option<MultiPoly> {
    let n = sys.dim();
    assert_eq!(f.nvars(), n, "variable count mismatch");
    assert!(!c.is_zero(), "multiplier must be nonzero");
    if f.is_zero() {
        return Some(MultiPoly::zero(n));
    }
    let mut by_degree: BTreeMap<u64, Vec<(Monomial, FieldElement)>> = BTreeMap::new();
    for (m, coeff) in f.terms() {
        by_degree.entry(m.total_degree()).or_default().push((m.clone(), coeff.clone()));
    }
    let mut g = MultiPoly::zero(n);
    for (degree, terms) in by_degree {
        let basis = monomials_of_degree(n, degree);
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = basis.len();
        let mut mat = vec![vec![FieldElement::zero(); dim]; dim];
        for (col, m) in basis.iter().enumerate() {
            let mono = MultiPoly::monomial(n, m.exps().to_vec(), FieldElement::one());
            let image = &sys.apply_poly(&mono).scale(c) - &mono;
            for (mm, cc) in image.terms() {
                mat[index[mm]][col] = cc.clone();
            }
        }
        let mut rhs = vec![FieldElement::zero(); dim];
        for (m, coeff) in terms {
            rhs[index[&m]] = coeff;
        }
        let sol = solve_linear(mat, rhs)?;
        for (j, coeff) in sol.into_iter().enumerate() {
            if !coeff.is_zero() {
                g = &g + &MultiPoly::monomial(n, basis[j].exps().to_vec(), coeff);
            }
        }
    }
    let check = &sys.apply_poly(&g).scale(c) - &g;
    assert!(check == *f, "graded witness verifies by substitution");
    Some(g)
}
