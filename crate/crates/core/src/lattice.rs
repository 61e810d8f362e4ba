//! Exact integer linear algebra: Hermite normal form, integer solutions of
//! linear systems, and arithmetic-progression set algebra.
//!
//! Matrices are tiny here (dimensions on the order of the variable count), so
//! the classic gcd-based row reduction is used throughout, with arbitrary
//! precision entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> IntMatrix {
        assert_eq!(data.len(), rows * cols, "shape mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// `row[dst] -= q * row[src]`
    fn submul_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = self.at(dst, c) - q * self.at(src, c);
            *self.at_mut(dst, c) = v;
        }
    }

    /// Row Hermite normal form: positive pivots in staircase order, entries
    /// above each pivot reduced into `[0, pivot)`, zero rows at the bottom.
    /// The row span over the integers is preserved.
    pub fn hnf(&self) -> IntMatrix {
        self.hnf_with_transform().0
    }

    /// HNF `H` with a unimodular `U` such that `U * self = H`.
    pub fn hnf_with_transform(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            // gcd-reduce the column below pivot_row until one entry remains
            loop {
                let mut best: Option<usize> = None;
                for r in pivot_row..self.rows {
                    if h.at(r, col).is_zero() {
                        continue;
                    }
                    if best.is_none_or(|b| h.at(r, col).abs() < h.at(b, col).abs()) {
                        best = Some(r);
                    }
                }
                let Some(b) = best else { break };
                h.swap_rows(pivot_row, b);
                u.swap_rows(pivot_row, b);
                let mut others = false;
                for r in pivot_row + 1..self.rows {
                    if h.at(r, col).is_zero() {
                        continue;
                    }
                    others = true;
                    let q = div_round(h.at(r, col), h.at(pivot_row, col));
                    h.submul_row(r, pivot_row, &q);
                    u.submul_row(r, pivot_row, &q);
                }
                if !others {
                    break;
                }
            }
            if h.at(pivot_row, col).is_zero() {
                continue;
            }
            if h.at(pivot_row, col).is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            for r in 0..pivot_row {
                let q = h.at(r, col).div_floor(h.at(pivot_row, col));
                if !q.is_zero() {
                    h.submul_row(r, pivot_row, &q);
                    u.submul_row(r, pivot_row, &q);
                }
            }
            pivot_row += 1;
        }
        (h, u)
    }

    /// Nonzero rows of the HNF: a canonical basis of the row lattice.
    pub fn row_basis(&self) -> Vec<Vec<BigInt>> {
        let h = self.hnf();
        (0..h.rows)
            .map(|r| h.row(r).to_vec())
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect()
    }

    /// Basis of `{x : self * x = 0}` over the integers.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let (h, u) = self.transpose().hnf_with_transform();
        (0..h.rows)
            .filter(|&r| h.row(r).iter().all(Zero::is_zero))
            .map(|r| u.row(r).to_vec())
            .collect()
    }

    /// All integer solutions of `self * x = v`.
    pub fn solve_integer(&self, v: &[BigInt]) -> AffineLattice {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        // with U * self^T = H (row HNF), solutions are x = U^T z where
        // H^T z = v; the staircase makes z determined on pivot rows and
        // free exactly on the zero rows of H
        let (h, u) = self.transpose().hnf_with_transform();
        let n = self.cols;
        let mut b = v.to_vec();
        let mut z = vec![BigInt::zero(); n];
        let mut consistent = true;
        for j in 0..h.rows {
            let Some(c) = (0..h.cols).find(|&c| !h.at(j, c).is_zero()) else { continue };
            let (q, r) = b[c].div_rem(h.at(j, c));
            if !r.is_zero() {
                consistent = false;
                break;
            }
            z[j] = q;
            for col in 0..h.cols {
                let sub = &z[j] * h.at(j, col);
                b[col] -= sub;
            }
        }
        if consistent && b.iter().any(|x| !x.is_zero()) {
            consistent = false;
        }

        let kernel_basis: Vec<Vec<BigInt>> = (0..h.rows)
            .filter(|&r| h.row(r).iter().all(Zero::is_zero))
            .map(|r| u.row(r).to_vec())
            .collect();
        let particular = consistent.then(|| {
            let mut x = vec![BigInt::zero(); n];
            for j in 0..n {
                if z[j].is_zero() {
                    continue;
                }
                for (xi, uj) in x.iter_mut().zip(u.row(j)) {
                    *xi += &z[j] * uj;
                }
            }
            x
        });
        AffineLattice { particular, kernel_basis }
    }
}

/// Quotient rounded to nearest (ties toward zero), which keeps the gcd
/// reduction steps small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Canonical residue of `v` modulo the lattice spanned by HNF rows: integer
/// multiples of the rows are subtracted so that every pivot-column entry
/// lands in `[0, pivot)`. The residue is zero exactly when `v` lies in the
/// lattice, and equal vectors mod the lattice share one residue.
pub fn reduce_mod_lattice(v: &[BigInt], rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut r = v.to_vec();
    for row in rows {
        let pivot = row
            .iter()
            .position(|x| !x.is_zero())
            .expect("lattice basis rows are nonzero");
        let q = r[pivot].div_floor(&row[pivot]);
        if !q.is_zero() {
            for (ri, bi) in r.iter_mut().zip(row) {
                *ri -= &q * bi;
            }
        }
    }
    r
}

/// The integer solution set of a linear system: `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLattice {
    /// One solution, absent when the system has no integer solution.
    pub particular: Option<Vec<BigInt>>,
    /// Basis of the homogeneous solutions.
    pub kernel_basis: Vec<Vec<BigInt>>,
}

impl AffineLattice {
    /// Image of the solution set under projection to one coordinate: an
    /// arithmetic progression (the kernel contributes its coordinate gcd).
    pub fn project(&self, coord: usize) -> Progression {
        let Some(base) = &self.particular else {
            return Progression::Empty;
        };
        let mut step = BigInt::zero();
        for k in &self.kernel_basis {
            step = step.gcd(&k[coord]);
        }
        if step.is_zero() {
            return Progression::single(big_to_i64(&base[coord]));
        }
        Progression::arith(big_to_i64(&base[coord]), big_to_i64(&step))
    }
}

fn big_to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("shift exponent exceeds i64")
}

/// A set of integers of the form `{}`, `{k0}`, or `k0 + l0 Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Progression {
    Empty,
    Single(i64),
    /// Canonical: `step >= 1` and `0 <= offset < step`.
    Arith { offset: i64, step: i64 },
}

impl Progression {
    pub fn single(k: i64) -> Progression {
        Progression::Single(k)
    }

    /// `offset + step Z`, canonicalized; `step = 0` collapses to a single
    /// point.
    pub fn arith(offset: i64, step: i64) -> Progression {
        if step == 0 {
            return Progression::Single(offset);
        }
        let step = step.abs();
        Progression::Arith { offset: offset.rem_euclid(step), step }
    }

    /// All integers.
    pub fn full() -> Progression {
        Progression::Arith { offset: 0, step: 1 }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Progression::Empty)
    }

    pub fn contains(&self, k: i64) -> bool {
        match *self {
            Progression::Empty => false,
            Progression::Single(k0) => k == k0,
            Progression::Arith { offset, step } => (k - offset).rem_euclid(step) == 0,
        }
    }

    /// Some element, preferring the smallest nonnegative one.
    pub fn smallest(&self) -> Option<i64> {
        match *self {
            Progression::Empty => None,
            Progression::Single(k0) => Some(k0),
            Progression::Arith { offset, step: _ } => Some(offset),
        }
    }

    /// Exact set intersection (CRT for two genuine progressions).
    pub fn intersect(&self, other: &Progression) -> Progression {
        match (*self, *other) {
            (Progression::Empty, _) | (_, Progression::Empty) => Progression::Empty,
            (Progression::Single(a), _) => {
                if other.contains(a) {
                    Progression::Single(a)
                } else {
                    Progression::Empty
                }
            }
            (_, Progression::Single(b)) => {
                if self.contains(b) {
                    Progression::Single(b)
                } else {
                    Progression::Empty
                }
            }
            (
                Progression::Arith { offset: a, step: m },
                Progression::Arith { offset: b, step: n },
            ) => {
                let (g, s, _) = ext_gcd_i128(m as i128, n as i128);
                let diff = b as i128 - a as i128;
                if diff % g != 0 {
                    return Progression::Empty;
                }
                let lcm = (m as i128 / g) * n as i128;
                // x = a + m * t with t = (diff/g) * s mod (n/g)
                let t = (diff / g % (n as i128 / g)) * (s % (n as i128 / g)) % (n as i128 / g);
                let x = (a as i128 + m as i128 * t).rem_euclid(lcm);
                Progression::arith(
                    i64::try_from(x).expect("intersection offset exceeds i64"),
                    i64::try_from(lcm).expect("intersection step exceeds i64"),
                )
            }
        }
    }
}

impl std::fmt::Display for Progression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Progression::Empty => write!(f, "{{}}"),
            Progression::Single(k) => write!(f, "{{{k}}}"),
            Progression::Arith { offset, step } => {
                if offset == 0 && step == 1 {
                    write!(f, "Z")
                } else if offset == 0 {
                    write!(f, "{step}Z")
                } else {
                    write!(f, "{offset} + {step}Z")
                }
            }
        }
    }
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        return (a.abs(), s, 0);
    }
    let (g, s, t) = ext_gcd_i128(b, a.rem_euclid(b));
    (g, t, s - (a.div_euclid(b)) * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn bigvec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_fixed_cases() {
        assert_eq!(m(&[vec![2, 0], vec![0, 2]]).hnf(), m(&[vec![2, 0], vec![0, 2]]));
        assert_eq!(
            m(&[vec![1, 2, 1], vec![0, 4, 2]]).hnf(),
            m(&[vec![1, 2, 1], vec![0, 4, 2]])
        );
        assert_eq!(
            m(&[vec![0, 4, 2], vec![1, 2, 1]]).hnf(),
            m(&[vec![1, 2, 1], vec![0, 4, 2]])
        );
    }

    #[test]
    fn hnf_idempotent_and_span_preserving() {
        let a = m(&[vec![6, 4, 2], vec![2, 8, 4], vec![4, -4, -2]]);
        let h = a.hnf();
        assert_eq!(h.hnf(), h);
        // mutual membership: each row of one lies in the span of the other
        for r in 0..a.rows() {
            let sol = h_rows_solve(&h, a.row(r));
            assert!(sol, "row {r} of A not in span of H");
        }
        for r in 0..h.rows() {
            if h.row(r).iter().all(num_traits::Zero::is_zero) {
                continue;
            }
            let sol = h_rows_solve(&a, h.row(r));
            assert!(sol, "row {r} of H not in span of A");
        }
    }

    /// Whether `target` is an integer combination of the rows of `mat`.
    fn h_rows_solve(mat: &IntMatrix, target: &[BigInt]) -> bool {
        mat.transpose().solve_integer(target).particular.is_some()
    }

    #[test]
    fn transform_is_unimodular_witness() {
        let a = m(&[vec![0, 4, 2], vec![1, 2, 1]]);
        let (h, u) = a.hnf_with_transform();
        // U * A = H, checked entrywise
        for r in 0..h.rows() {
            for c in 0..h.cols() {
                let mut acc = BigInt::zero();
                for k in 0..a.rows() {
                    acc += u.at(r, k) * a.at(k, c);
                }
                assert_eq!(&acc, h.at(r, c));
            }
        }
    }

    #[test]
    fn solve_paper_systems() {
        // first shifted-pair system: particular (1,1,0), kernel (2,0,1)
        let a = m(&[vec![0, -1, 0], vec![2, -2, -4], vec![1, -1, -2]]);
        let sol = a.solve_integer(&bigvec(&[-1, 0, 0]));
        let part = sol.particular.clone().unwrap();
        assert_eq!(a.mul_vec(&part), bigvec(&[-1, 0, 0]));
        assert_eq!(sol.kernel_basis.len(), 1);
        let k = &sol.kernel_basis[0];
        assert_eq!(a.mul_vec(k), bigvec(&[0, 0, 0]));
        // the kernel is spanned by (2,0,1) up to sign
        assert!(k == &bigvec(&[2, 0, 1]) || k == &bigvec(&[-2, 0, -1]));
        // and the projection to the first coordinate is 1 + 2Z
        assert_eq!(sol.project(0), Progression::arith(1, 2));

        // second system: unique solution (3,0,1)
        let b = m(&[vec![0, -1, 0], vec![1, -2, -4], vec![0, -1, -2]]);
        let sol = b.solve_integer(&bigvec(&[0, -1, -2]));
        assert_eq!(sol.particular, Some(bigvec(&[3, 0, 1])));
        assert!(sol.kernel_basis.is_empty());
        assert_eq!(sol.project(0), Progression::Single(3));

        // parity obstruction: 2x = 1
        let c = m(&[vec![2]]);
        let sol = c.solve_integer(&bigvec(&[1]));
        assert!(sol.particular.is_none());
        assert_eq!(sol.project(0), Progression::Empty);
    }

    #[test]
    fn solve_reproduces_rhs_under_kernel_shifts() {
        let a = m(&[vec![3, 6, -3], vec![2, 4, -2]]);
        let v = bigvec(&[9, 6]);
        let sol = a.solve_integer(&v);
        let part = sol.particular.clone().unwrap();
        for combo in [[0i64, 0], [1, 0], [0, 1], [2, -3], [-1, 4]] {
            let mut x = part.clone();
            for (ci, k) in combo.iter().zip(&sol.kernel_basis) {
                for (xi, ki) in x.iter_mut().zip(k) {
                    *xi += BigInt::from(*ci) * ki;
                }
            }
            assert_eq!(a.mul_vec(&x), v);
        }
    }

    #[test]
    fn kernel_matches_solve_homogeneous() {
        let a = m(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn progression_intersections() {
        let a = Progression::arith(1, 2);
        assert_eq!(a.intersect(&Progression::Single(3)), Progression::Single(3));
        assert_eq!(Progression::full().intersect(&a), a);
        assert_eq!(
            Progression::arith(1, 6).intersect(&Progression::arith(4, 9)),
            Progression::arith(13, 18)
        );
        assert_eq!(
            Progression::arith(0, 2).intersect(&Progression::arith(1, 2)),
            Progression::Empty
        );
        assert_eq!(a.intersect(&Progression::Single(2)), Progression::Empty);
        assert_eq!(a.intersect(&Progression::Empty), Progression::Empty);
    }

    #[test]
    fn progression_intersection_matches_brute_force() {
        let cases = [
            Progression::Empty,
            Progression::Single(-7),
            Progression::Single(4),
            Progression::arith(0, 1),
            Progression::arith(2, 5),
            Progression::arith(-3, 4),
            Progression::arith(7, 12),
            Progression::arith(1, 9),
        ];
        for a in &cases {
            for b in &cases {
                let got = a.intersect(b);
                for k in -100..=100 {
                    assert_eq!(
                        got.contains(k),
                        a.contains(k) && b.contains(k),
                        "a={a:?} b={b:?} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_offsets() {
        assert_eq!(Progression::arith(7, 3), Progression::Arith { offset: 1, step: 3 });
        assert_eq!(Progression::arith(-1, 4), Progression::Arith { offset: 3, step: 4 });
        assert_eq!(Progression::arith(5, 0), Progression::Single(5));
        assert_eq!(Progression::arith(2, -3), Progression::Arith { offset: 2, step: 3 });
    }

    #[test]
    fn residue_detects_membership() {
        let basis = vec![bigvec(&[1, 2, 1]), bigvec(&[0, 4, 2])];
        // members reduce to zero
        for v in [vec![1, 2, 1], vec![0, 4, 2], vec![2, 0, 0], vec![-1, 2, 1]] {
            assert!(reduce_mod_lattice(&bigvec(&v), &basis).iter().all(|x| x.is_zero()));
        }
        // equal vectors mod the lattice share one residue
        assert_eq!(
            reduce_mod_lattice(&bigvec(&[0, -1, -2]), &basis),
            reduce_mod_lattice(&bigvec(&[0, 3, 0]), &basis),
        );
        assert!(!reduce_mod_lattice(&bigvec(&[1, 0, 0]), &basis).iter().all(|x| x.is_zero()));
    }
}
