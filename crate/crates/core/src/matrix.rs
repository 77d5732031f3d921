//! Dense exact matrices over any scalar backend or over Laurent
//! polynomials.
//!
//! A [`Matrix`] is parametrized by the ring of its entries and carries a
//! handle to it. Structural operations (products, transpose, blocks,
//! congruence) need only [`Ring`]; elimination-based operations (rank,
//! kernel, solve, inverse, basis completion) need [`Field`] and are exact.
//! Shapes are validated with panics in the arithmetic building blocks
//! (programmer errors) and with `Result`s in the public entry points that
//! face deserialized data.
//!
//! Sizes stay in the dozens; everything is O(n^3) dense with no pivoting
//! heuristics beyond first-nonzero.

use crate::error::{Error, Result};
use crate::field::{Field, Ring};

#[derive(Clone, Debug)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for Matrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<R: Ring> Matrix<R> {
    pub fn new(ring: R, rows: usize, cols: usize, data: Vec<R::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Matrix { ring, rows, cols, data }
    }

    pub fn from_fn(ring: R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring, rows, cols, data }
    }

    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let data = (0..rows * cols).map(|_| ring.zero()).collect();
        Matrix { ring, rows, cols, data }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        Matrix::from_fn(ring.clone(), n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &R::Elem {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: R::Elem) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.data[i * self.cols + j] = e;
    }

    pub fn entries(&self) -> impl Iterator<Item = &R::Elem> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        let data =
            self.data.iter().zip(&other.data).map(|(a, b)| self.ring.add(a, b)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub: shape mismatch");
        let data =
            self.data.iter().zip(&other.data).map(|(a, b)| self.ring.sub(a, b)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.ring.neg(a)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let data = self.data.iter().map(|a| self.ring.mul(a, c)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul: inner dimensions differ");
        let mut out = Matrix::zeros(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if self.ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if self.ring.is_zero(b) {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    out.set(i, j, self.ring.mul_add(&cur, a, b));
                }
            }
        }
        out
    }

    /// Copy of the block with rows r0..r1, cols c0..c1 (half-open).
    pub fn block(&self, r0: usize, c0: usize, r1: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Matrix::from_fn(self.ring.clone(), r1 - r0, c1 - c0, |i, j| self.at(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Self) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "block out of range");
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.at(i, j).clone());
            }
        }
    }

    /// Block-diagonal sum: self in the leading corner, `other` trailing.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out =
            Matrix::zeros(self.ring.clone(), self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// Columns of `other` appended to the right.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack: row counts differ");
        let mut out = Matrix::zeros(self.ring.clone(), self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    /// Rows of `other` appended below.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack: column counts differ");
        let mut out = Matrix::zeros(self.ring.clone(), self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.ring.is_zero(self.at(i, i))
                    && (0..i).all(|j| *self.at(i, j) == self.ring.neg(self.at(j, i)))
            })
    }

    /// Entrywise change of ring.
    pub fn map_ring<S: Ring>(&self, ring: S, mut f: impl FnMut(&R::Elem) -> S::Elem) -> Matrix<S> {
        let data = self.data.iter().map(|e| f(e)).collect();
        Matrix { ring, rows: self.rows, cols: self.cols, data }
    }
}

/// The congruence action g . m = g m g^T. This is the group action the
/// whole crate revolves around; it preserves symmetry, skewness and rank.
pub fn congruence_apply<R: Ring>(g: &Matrix<R>, m: &Matrix<R>) -> Result<Matrix<R>> {
    if g.rows() != g.cols() || m.rows() != m.cols() || g.cols() != m.rows() {
        return Err(Error::Shape(format!(
            "congruence needs square g and m of equal size, got {}x{} and {}x{}",
            g.rows(),
            g.cols(),
            m.rows(),
            m.cols()
        )));
    }
    Ok(g.mul(m).mul(&g.transpose()))
}

/// Splits m into its symmetric and skew parts: m = S + A with S = (m +
/// m^T)/2, A = (m - m^T)/2. Unique, and well-defined because the
/// characteristic is never 2.
pub fn sym_skew_decompose<F: Field>(m: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    if m.rows() != m.cols() {
        return Err(Error::Shape(format!("decompose needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let f = m.ring().clone();
    let half = f.half();
    let mt = m.transpose();
    let s = m.add(&mt).scale(&half);
    let a = m.sub(&mt).scale(&half);
    Ok((s, a))
}

impl<F: Field> Matrix<F> {
    pub fn rank(&self) -> usize {
        self.ring.rank_slice(self.rows, self.cols, &self.data)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(f: &F, m: &mut Vec<Vec<F::Elem>>, cols: usize) -> Vec<usize> {
        let rows = m.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
                continue;
            };
            m.swap(r, p);
            let inv = f.inv(&m[r][c]).expect("pivot is nonzero");
            for j in c..cols {
                m[r][j] = f.mul(&m[r][j], &inv);
            }
            for i in 0..rows {
                if i != r && !f.is_zero(&m[i][c]) {
                    let factor = m[i][c].clone();
                    for j in c..cols {
                        let t = f.mul(&factor, &m[r][j]);
                        m[i][j] = f.sub(&m[i][j], &t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    /// Basis of the right kernel, returned as the columns of an
    /// n x (n - rank) matrix (zero columns when the kernel is trivial).
    pub fn kernel(&self) -> Matrix<F> {
        let f = self.ring.clone();
        let mut m = self.to_rows();
        let pivots = Self::rref(&f, &mut m, self.cols);
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut out = Matrix::zeros(f.clone(), self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(&m[r][fc]));
            }
        }
        out
    }

    /// One solution X of self * X = rhs (free variables set to zero).
    pub fn solve(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if rhs.rows() != self.rows {
            return Err(Error::Shape(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows,
                rhs.rows()
            )));
        }
        let f = self.ring.clone();
        let aug = self.hstack(rhs);
        let mut m = aug.to_rows();
        let pivots = Self::rref(&f, &mut m, aug.cols);
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut out = Matrix::zeros(f, self.cols, rhs.cols());
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols() {
                out.set(pc, j, m[r][self.cols + j].clone());
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Matrix<F>> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse needs a square matrix".into()));
        }
        let f = self.ring.clone();
        let aug = self.hstack(&Matrix::identity(f.clone(), self.rows));
        let mut m = aug.to_rows();
        let pivots = Self::rref(&f, &mut m, aug.cols);
        if pivots.len() < self.rows || pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(f, self.rows, self.rows, |i, j| m[i][self.cols + j].clone()))
    }

    /// Determinant by forward elimination with sign tracking.
    pub fn det(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::Shape("det needs a square matrix".into()));
        }
        let f = self.ring.clone();
        let mut m = self.to_rows();
        let n = self.rows;
        let mut acc = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(&m[i][c])) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap(p, c);
                acc = f.neg(&acc);
            }
            acc = f.mul(&acc, &m[c][c]);
            let inv = f.inv(&m[c][c])?;
            for i in c + 1..n {
                if f.is_zero(&m[i][c]) {
                    continue;
                }
                let factor = f.mul(&m[i][c], &inv);
                for j in c..n {
                    let t = f.mul(&factor, &m[c][j]);
                    m[i][j] = f.sub(&m[i][j], &t);
                }
            }
        }
        Ok(acc)
    }
}

/// Where the prescribed columns sit in the completed basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GivenPosition {
    First,
    Last,
}

/// Completes the columns of `given` (n x k, independent) to an
/// invertible n x n matrix by greedily appending standard basis vectors
/// in index order. Deterministic; fails on dependent input.
pub fn basis_completion<F: Field>(given: &Matrix<F>, pos: GivenPosition) -> Result<Matrix<F>> {
    let f = given.ring().clone();
    let n = given.rows();
    if given.cols() > n {
        return Err(Error::DependentColumns);
    }
    // incremental elimination state: rows are accepted vectors, reduced
    let mut reduced: Vec<(usize, Vec<F::Elem>)> = Vec::new(); // (pivot index, vector)
    let accept = |v: Vec<F::Elem>, reduced: &mut Vec<(usize, Vec<F::Elem>)>| -> bool {
        let mut w = v;
        for (p, r) in reduced.iter() {
            if !f.is_zero(&w[*p]) {
                let factor = w[*p].clone();
                for j in 0..n {
                    let t = f.mul(&factor, &r[j]);
                    w[j] = f.sub(&w[j], &t);
                }
            }
        }
        match w.iter().position(|x| !f.is_zero(x)) {
            None => false,
            Some(p) => {
                let inv = f.inv(&w[p]).expect("nonzero");
                let norm: Vec<F::Elem> = w.iter().map(|x| f.mul(x, &inv)).collect();
                reduced.push((p, norm));
                true
            }
        }
    };
    for j in 0..given.cols() {
        if !accept(given.column(j), &mut reduced) {
            return Err(Error::DependentColumns);
        }
    }
    let mut extension: Vec<usize> = Vec::new();
    for i in 0..n {
        if reduced.len() == n {
            break;
        }
        let mut e = vec![f.zero(); n];
        e[i] = f.one();
        if accept(e, &mut reduced) {
            extension.push(i);
        }
    }
    debug_assert_eq!(reduced.len() + 0, n);
    let mut out = Matrix::zeros(f.clone(), n, n);
    let (ext_off, given_off) = match pos {
        GivenPosition::First => (given.cols(), 0),
        GivenPosition::Last => (0, n - given.cols()),
    };
    out.set_block(0, given_off, given);
    for (k, &i) in extension.iter().enumerate() {
        out.set(i, ext_off + k, f.one());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::laurent::LaurentRing;
    use crate::tower::Tower;
    use num::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qm(rows: usize, cols: usize, vals: &[i64]) -> Matrix<Rationals> {
        let f = Rationals;
        Matrix::new(f, rows, cols, vals.iter().map(|&v| f.from_i64(v)).collect())
    }

    #[test]
    fn shear_congruence_on_hyperbolic_pair() {
        // g = Id + c E_12 acting on [[0,1],[1,0]] gives [[2c,1],[1,0]]
        let f = Rationals;
        let c = 3i64;
        let g = qm(2, 2, &[1, c, 0, 1]);
        let m = qm(2, 2, &[0, 1, 1, 0]);
        let out = congruence_apply(&g, &m).unwrap();
        assert_eq!(out, qm(2, 2, &[2 * c, 1, 1, 0]));
        let _ = f;
    }

    #[test]
    fn decompose_splits_into_symmetric_and_skew() {
        let m = qm(2, 2, &[0, 1, 0, 0]);
        let (s, a) = sym_skew_decompose(&m).unwrap();
        assert!(s.is_symmetric());
        assert!(a.is_skew());
        assert_eq!(s.add(&a), m);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(*s.at(0, 1), half);
        assert_eq!(*a.at(1, 0), -half);
        // uniqueness: any (S', A') pair with the same sum matches
        let (s2, a2) = sym_skew_decompose(&m).unwrap();
        assert_eq!(s, s2);
        assert_eq!(a, a2);
    }

    #[test]
    fn rank_kernel_and_solve_over_rationals() {
        let m = qm(3, 3, &[1, 2, 3, 2, 4, 6, 1, 1, 1]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        // inconsistent system: rows 1 and 2 are proportional
        let bad = qm(3, 1, &[1, 3, 0]);
        assert_eq!(m.solve(&bad), Err(Error::Inconsistent));
        let good = qm(3, 1, &[6, 12, 3]);
        let x = m.solve(&good).unwrap();
        assert_eq!(m.mul(&x), good);
    }

    #[test]
    fn solve_over_the_tower() {
        let t = Tower::new(5).unwrap();
        let two = Matrix::new(t.clone(), 1, 1, vec![t.from_i64(2)]);
        let one = Matrix::new(t.clone(), 1, 1, vec![t.from_i64(1)]);
        let x = two.solve(&one).unwrap();
        assert_eq!(*x.at(0, 0), t.from_i64(3), "2 * 3 = 6 = 1 mod 5");
    }

    #[test]
    fn inverse_roundtrip_and_singularity() {
        let m = qm(2, 2, &[1, 2, 3, 4]);
        let mi = m.inverse().unwrap();
        assert_eq!(m.mul(&mi), Matrix::identity(Rationals, 2));
        assert_eq!(mi.mul(&m), Matrix::identity(Rationals, 2));
        let s = qm(2, 2, &[1, 2, 2, 4]);
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn basis_completion_is_deterministic_and_invertible() {
        let e2 = qm(3, 1, &[0, 1, 0]);
        let b = basis_completion(&e2, GivenPosition::First).unwrap();
        assert_eq!(b.rank(), 3);
        assert_eq!(b.block(0, 0, 3, 1), e2);
        // greedy picks e1 then e3
        assert_eq!(b, qm(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]));
        let b_last = basis_completion(&e2, GivenPosition::Last).unwrap();
        assert_eq!(b_last.block(0, 2, 3, 3), e2);
        assert_eq!(b_last.rank(), 3);
        let dep = qm(3, 2, &[1, 2, 1, 2, 0, 0]);
        assert_eq!(basis_completion(&dep, GivenPosition::First), Err(Error::DependentColumns));
    }

    #[test]
    fn congruence_preserves_rank_symmetry_and_skewness() {
        let t = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let n = rng.random_range(2..=6);
            // random symmetric and skew matrices
            let mut sym = Matrix::zeros(t.clone(), n, n);
            let mut skew = Matrix::zeros(t.clone(), n, n);
            for i in 0..n {
                for j in 0..=i {
                    let a = t.from_i64(rng.random_range(0..5));
                    sym.set(i, j, a.clone());
                    sym.set(j, i, a);
                    if i != j {
                        let b = t.from_i64(rng.random_range(0..5));
                        skew.set(i, j, b.clone());
                        skew.set(j, i, t.neg(&b));
                    }
                }
            }
            // random invertible g by rejection
            let g = loop {
                let cand = Matrix::from_fn(t.clone(), n, n, |_, _| t.from_i64(rng.random_range(0..5)));
                if cand.rank() == n {
                    break cand;
                }
            };
            let gs = congruence_apply(&g, &sym).unwrap();
            let gk = congruence_apply(&g, &skew).unwrap();
            assert!(gs.is_symmetric());
            assert!(gk.is_skew());
            assert_eq!(gs.rank(), sym.rank());
            assert_eq!(gk.rank(), skew.rank());
        }
    }

    #[test]
    fn congruence_is_a_group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = Tower::new(5).unwrap();
        let n = 4;
        let m = Matrix::from_fn(t.clone(), n, n, |_, _| t.from_i64(rng.random_range(0..5)));
        let g = qm_like(&t, n, &mut rng);
        let h = qm_like(&t, n, &mut rng);
        let lhs = congruence_apply(&g.mul(&h), &m).unwrap();
        let rhs = congruence_apply(&g, &congruence_apply(&h, &m).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let id = Matrix::identity(t.clone(), n);
        assert_eq!(congruence_apply(&id, &m).unwrap(), m);
    }

    fn qm_like(t: &Tower, n: usize, rng: &mut ChaCha8Rng) -> Matrix<Tower> {
        loop {
            let cand = Matrix::from_fn(t.clone(), n, n, |_, _| t.from_i64(rng.random_range(0..5)));
            if cand.rank() == n {
                return cand;
            }
        }
    }

    #[test]
    fn laurent_diagonal_congruence_rescales_blocks() {
        let r = LaurentRing::new(Rationals);
        let f = Rationals;
        // diag(1/t, t) . [[0, b], [c, d]]
        let mut g = Matrix::zeros(r.clone(), 2, 2);
        g.set(0, 0, r.t_pow(-1));
        g.set(1, 1, r.t_pow(1));
        let m = qm(2, 2, &[0, 7, 3, 5]).map_ring(r.clone(), |e| r.constant(e.clone()));
        let out = congruence_apply(&g, &m).unwrap();
        assert!(out.at(0, 0).is_zero());
        assert_eq!(*out.at(0, 1), r.constant(f.from_i64(7)));
        assert_eq!(*out.at(1, 0), r.constant(f.from_i64(3)));
        assert_eq!(*out.at(1, 1), r.monomial(f.from_i64(5), 2));
    }

    #[test]
    fn kernel_of_full_rank_matrix_is_empty() {
        let m = qm(2, 2, &[1, 0, 0, 1]);
        assert_eq!(m.kernel().cols(), 0);
        let wide = qm(1, 3, &[1, 2, 3]);
        let k = wide.kernel();
        assert_eq!(k.cols(), 2);
        assert!(wide.mul(&k).is_zero());
    }
}
