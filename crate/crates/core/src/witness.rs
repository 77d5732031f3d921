//! Limit-curve witnesses: one-parameter congruence curves whose limit at
//! t = 0 pins prescribed corners of a matrix tuple.
//!
//! An instance is a [`TuplePoint`]: p symmetric and q skew N x N
//! matrices plus an N x n column block. A [`TargetCorner`] prescribes
//! the leading l x l corner of every component and the leading l x n
//! rows of the column block. When the tuple rank of the instance is at
//! least [`required_rank`], [`witness_full`] produces an invertible
//! Laurent curve G(t) such that every corner of G M_i G^T and of
//! G x_col has no pole and evaluates at t = 0 to the target. The curve
//! ships with its exact inverse and a determinant certificate
//! det G = c t^k, and [`verify_witness`] re-checks everything from
//! scratch without trusting the construction.
//!
//! Pipeline: a column normalizer moves the column block to the last n
//! coordinates and empties the bottom rows over the working window; the
//! block normal form drives the window into the staggered pattern; a
//! diagonal scaling curve kills everything an order of t away from the
//! corners; a final constant shear writes the targets into them.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::free::find_free_subspace;
use crate::laurent::LaurentRing;
use crate::matrix::{congruence_apply, Matrix};
use crate::normal_form::block_normal_form;
use crate::tuple::MatrixTuple;

/// An instance: symmetric components, skew components, column block.
/// Everywhere in this module the components are ordered symmetric
/// first, then skew.
#[derive(Debug, Clone)]
pub struct TuplePoint<F: Field> {
    pub syms: Vec<Matrix<F>>,
    pub alts: Vec<Matrix<F>>,
    /// N x n column block; n = 0 for pure tuple instances.
    pub col: Matrix<F>,
}

impl<F: Field> TuplePoint<F> {
    pub fn size(&self) -> usize {
        self.col.rows()
    }

    pub fn s(&self) -> usize {
        self.syms.len() + self.alts.len()
    }

    pub fn n(&self) -> usize {
        self.col.cols()
    }

    /// All components, symmetric first, as a tuple.
    pub fn combined(&self) -> Result<MatrixTuple<F>> {
        let f = self.col.ring().clone();
        let mats: Vec<Matrix<F>> =
            self.syms.iter().chain(self.alts.iter()).cloned().collect();
        MatrixTuple::new(f, mats)
    }
}

/// Prescribed corner values: l x l per component plus l x n for the
/// column block. Symmetric targets must be symmetric, skew targets skew;
/// corners of congruence images cannot be anything else.
#[derive(Debug, Clone)]
pub struct TargetCorner<F: Field> {
    pub syms: Vec<Matrix<F>>,
    pub alts: Vec<Matrix<F>>,
    pub col: Matrix<F>,
}

impl<F: Field> TargetCorner<F> {
    pub fn l(&self) -> usize {
        self.col.rows()
    }
}

/// The produced curve with its self-certifying data.
#[derive(Debug, Clone)]
pub struct WitnessCurve<F: Field> {
    /// G(t), an N x N matrix over the Laurent ring.
    pub g: Matrix<LaurentRing<F>>,
    /// Exact inverse curve; `g * g_inv = Id` certifies invertibility.
    pub g_inv: Matrix<LaurentRing<F>>,
    /// det G = det_coeff * t^det_power.
    pub det_coeff: F::Elem,
    pub det_power: i64,
    /// Construction log: window sizes, subspace dimensions.
    pub report: Vec<String>,
}

/// Tuple rank that guarantees a witness exists for every target with
/// p + q = s components, column width n, and corner size l.
pub fn required_rank(p: usize, q: usize, n: usize, l: usize) -> usize {
    let s = p + q;
    s * (1usize << s) * l + 2 * (s + 1) * n
}

struct Dims {
    size: usize,
    s: usize,
    n: usize,
    l: usize,
    window: usize,
}

/// Shape and symmetry validation shared by the builder and the
/// verifier. Errors here mean the request is malformed, not that the
/// witness search failed.
fn validate_shapes<F: Field>(point: &TuplePoint<F>, target: &TargetCorner<F>) -> Result<Dims> {
    let size = point.size();
    let n = point.n();
    let l = target.l();
    let s = point.s();
    for m in point.syms.iter().chain(point.alts.iter()) {
        if m.rows() != size || m.cols() != size {
            return Err(Error::Shape(format!(
                "components must be {size}x{size}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    for m in &point.syms {
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
    }
    for m in &point.alts {
        if !m.is_skew() {
            return Err(Error::NotSkew);
        }
    }
    if target.syms.len() != point.syms.len() || target.alts.len() != point.alts.len() {
        return Err(Error::Shape(format!(
            "target has {}+{} corners for {}+{} components",
            target.syms.len(),
            target.alts.len(),
            point.syms.len(),
            point.alts.len()
        )));
    }
    for m in target.syms.iter().chain(target.alts.iter()) {
        if m.rows() != l || m.cols() != l {
            return Err(Error::Shape(format!(
                "corner targets must be {l}x{l}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    for m in &target.syms {
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
    }
    for m in &target.alts {
        if !m.is_skew() {
            return Err(Error::NotSkew);
        }
    }
    if target.col.cols() != n {
        return Err(Error::Shape(format!(
            "column target must have {n} columns, got {}",
            target.col.cols()
        )));
    }
    let needed = (s + 1) * n + ((s + 1) * l).max((1usize << s) * l);
    if size < needed {
        return Err(Error::Infeasible(format!(
            "size {size} too small for s={s}, n={n}, l={l}; need at least {needed}"
        )));
    }
    Ok(Dims { size, s, n, l, window: size - (s + 1) * n })
}

/// Greedy extension of the columns of `given` by columns of `pool`
/// until the joint span stops growing. `given` must be independent.
fn greedy_extend<F: Field>(f: &F, given: &Matrix<F>, pool: &Matrix<F>) -> Result<Matrix<F>> {
    let rows = given.rows();
    let mut reduced: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    let insert = |v: Vec<F::Elem>, reduced: &mut Vec<(usize, Vec<F::Elem>)>| -> bool {
        let mut v = v;
        for (p, row) in reduced.iter() {
            if !f.is_zero(&v[*p]) {
                let c = f.neg(&v[*p]);
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.mul_add(x, &c, y);
                }
            }
        }
        let Some(p) = v.iter().position(|e| !f.is_zero(e)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero entry");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        reduced.push((p, v));
        true
    };
    let mut cols: Vec<Vec<F::Elem>> = Vec::new();
    for j in 0..given.cols() {
        let v = given.column(j);
        if !insert(v.clone(), &mut reduced) {
            return Err(Error::DependentColumns);
        }
        cols.push(v);
    }
    for j in 0..pool.cols() {
        let v = pool.column(j);
        if insert(v.clone(), &mut reduced) {
            cols.push(v);
        }
    }
    let mut out = Matrix::zeros(f.clone(), rows, cols.len());
    for (j, v) in cols.iter().enumerate() {
        for (i, e) in v.iter().enumerate() {
            out.set(i, j, e.clone());
        }
    }
    Ok(out)
}

/// Constant g moving the column block to [0; Id_n] such that the
/// transformed components have zero bottom-row entries across the whole
/// working window. Rows of g: a basis of the joint annihilator
/// {v : x_col^T v = 0, z_k^T M_i v = 0}, then more kernel vectors of
/// x_col^T, then the columns of a right inverse Z of x_col^T.
fn column_normalizer<F: Field>(f: &F, point: &TuplePoint<F>) -> Result<Matrix<F>> {
    let size = point.size();
    let n = point.n();
    let xt = point.col.transpose();
    let z = xt.solve(&Matrix::identity(f.clone(), n))?;
    let zt = z.transpose();
    let mut cond = xt.clone();
    for m in point.syms.iter().chain(point.alts.iter()) {
        cond = cond.vstack(&zt.mul(m));
    }
    let p_basis = cond.kernel();
    let ker = xt.kernel();
    let head = greedy_extend(f, &p_basis, &ker)?;
    let gamma = head.hstack(&z);
    if gamma.rows() != size || gamma.cols() != size || gamma.rank() != size {
        return Err(Error::Invalid("column normalizer is degenerate".into()));
    }
    Ok(gamma.transpose())
}

/// Constant matrices as degree-zero Laurent curves.
pub fn to_laurent<F: Field>(ring: &LaurentRing<F>, m: &Matrix<F>) -> Matrix<LaurentRing<F>> {
    m.map_ring(ring.clone(), |e| ring.constant(e.clone()))
}

/// Entrywise limit at t = 0; fails on any pole.
pub fn eval_matrix_at_zero<F: Field>(
    ring: &LaurentRing<F>,
    m: &Matrix<LaurentRing<F>>,
) -> Result<Matrix<F>> {
    let f = ring.base.clone();
    let mut out = Matrix::zeros(f, m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, ring.eval_at_zero(m.at(i, j))?);
        }
    }
    Ok(out)
}

/// Entrywise evaluation at a nonzero point.
pub fn eval_matrix_at<F: Field>(
    ring: &LaurentRing<F>,
    m: &Matrix<LaurentRing<F>>,
    x: &F::Elem,
) -> Result<Matrix<F>> {
    let f = ring.base.clone();
    let mut out = Matrix::zeros(f, m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, ring.eval_at(m.at(i, j), x)?);
        }
    }
    Ok(out)
}

/// Witness curve for an instance with a column block. See the module
/// header for the pipeline. Fails with `RankPrecondition` when no free
/// subspace of the required dimension can be found.
pub fn witness_full<F: Field>(
    f: &F,
    point: &TuplePoint<F>,
    target: &TargetCorner<F>,
    rng: &mut dyn RngCore,
    retries: u32,
) -> Result<WitnessCurve<F>> {
    let Dims { size, s, n, l, window } = validate_shapes(point, target)?;
    if n > 0 && point.col.rank() != n {
        return Err(Error::RankPrecondition(format!(
            "column block must have full rank {n}, has {}",
            point.col.rank()
        )));
    }
    let mut report = Vec::new();
    report.push(format!("size {size}, components {s}, columns {n}, corner {l}"));

    // stage 0: column normalization
    let g0 = if n > 0 {
        column_normalizer(f, point)?
    } else {
        Matrix::identity(f.clone(), size)
    };
    let z: Vec<Matrix<F>> = point
        .syms
        .iter()
        .chain(point.alts.iter())
        .map(|m| congruence_apply(&g0, m))
        .collect::<Result<_>>()?;
    report.push(format!("working window {window} of {size}"));

    // stages 1-3: block normal form on the window
    let m_dim = (1usize << s) * l;
    let trunc =
        MatrixTuple::new(f.clone(), z.iter().map(|m| m.block(0, 0, window, window)).collect())?;
    let free = match find_free_subspace(&trunc, m_dim, rng, retries) {
        Ok(v) => v,
        Err(Error::NotFound(msg)) => {
            return Err(Error::RankPrecondition(format!(
                "no free subspace of dimension {m_dim} ({msg}); tuple rank may be below {}",
                required_rank(point.syms.len(), point.alts.len(), n, l)
            )))
        }
        Err(e) => return Err(e),
    };
    report.push(format!("free subspace of dimension {m_dim} found"));
    let g_window = block_normal_form(f, &trunc, &free, l)?;
    let g1 = g_window.direct_sum(&Matrix::identity(f.clone(), size - window));
    let z: Vec<Matrix<F>> =
        z.iter().map(|m| congruence_apply(&g1, m)).collect::<Result<_>>()?;

    // stage 4: scaling curve, geometric t-degrees per coordinate block
    let ring = LaurentRing::new(f.clone());
    let mut c = Matrix::zeros(ring.clone(), size, size);
    let mut c_inv = Matrix::zeros(ring.clone(), size, size);
    for i in 0..size {
        let e: i64 = if i < l {
            -1
        } else if i < (s + 1) * l {
            1
        } else {
            0
        };
        c.set(i, i, ring.monomial(f.one(), e));
        c_inv.set(i, i, ring.monomial(f.one(), -e));
    }

    // stage 5: constant shear writing the targets into the corners
    let half = f.half();
    let targets: Vec<&Matrix<F>> = target.syms.iter().chain(target.alts.iter()).collect();
    let mut strict = Matrix::zeros(f.clone(), size, size);
    for (i, tgt) in targets.iter().enumerate() {
        let mhat = z[i].block(size - n, size - n, size, size);
        let correction = target.col.mul(&mhat).mul(&target.col.transpose());
        let block = tgt.sub(&correction).scale(&half);
        strict.set_block(0, (i + 1) * l, &block);
    }
    strict.set_block(0, size - n, &target.col);
    let u = Matrix::identity(f.clone(), size).add(&strict);
    let u_inv = Matrix::identity(f.clone(), size).sub(&strict);

    let g01 = g1.mul(&g0);
    let g_curve = to_laurent(&ring, &u).mul(&c).mul(&to_laurent(&ring, &g01));
    let g01_inv = g01.inverse()?;
    let h_curve = to_laurent(&ring, &g01_inv).mul(&c_inv).mul(&to_laurent(&ring, &u_inv));
    let det_coeff = g01.det()?;
    let det_power = (s as i64 - 1) * l as i64;
    report.push(format!("determinant certificate: c * t^{det_power}"));
    Ok(WitnessCurve { g: g_curve, g_inv: h_curve, det_coeff, det_power, report })
}

/// Witness for pure tuple instances (no column block). Same pipeline
/// with the column stages degenerate.
pub fn witness_sym<F: Field>(
    f: &F,
    point: &TuplePoint<F>,
    target: &TargetCorner<F>,
    rng: &mut dyn RngCore,
    retries: u32,
) -> Result<WitnessCurve<F>> {
    if point.n() != 0 {
        return Err(Error::Shape(format!(
            "pure tuple witness takes no column block, got {} columns",
            point.n()
        )));
    }
    witness_full(f, point, target, rng, retries)
}

/// Independent verification outcome. `ok` is false when the curve
/// exists but fails a check; malformed inputs error instead.
#[derive(Debug, Clone)]
pub struct VerifyOutcome<F: Field> {
    pub ok: bool,
    pub failures: Vec<String>,
    /// Constant coefficient of each corner, symmetric components first.
    pub corners: Vec<Matrix<F>>,
    pub col_corner: Matrix<F>,
}

/// Re-checks a witness from scratch: the carried inverse certifies that
/// the curve is invertible over the Laurent ring (hence its determinant
/// is c t^k for some c, k), two evaluations pin the claimed c and k via
/// an element of verified multiplicative order, and every corner entry
/// must be pole-free and hit the target at t = 0.
pub fn verify_witness<F: Field>(
    f: &F,
    point: &TuplePoint<F>,
    target: &TargetCorner<F>,
    curve: &WitnessCurve<F>,
) -> Result<VerifyOutcome<F>> {
    let Dims { size, n, l, .. } = validate_shapes(point, target)?;
    let ring = LaurentRing::new(f.clone());
    for m in [&curve.g, &curve.g_inv] {
        if m.rows() != size || m.cols() != size {
            return Err(Error::Shape(format!(
                "curve must be {size}x{size}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    let mut failures = Vec::new();

    // invertibility over the Laurent ring; this alone forces the
    // determinant to be a unit c t^k
    let prod = curve.g.mul(&curve.g_inv);
    if prod != Matrix::identity(ring.clone(), size) {
        failures.push("curve times claimed inverse is not the identity".into());
    }

    // determinant certificate: bound the possible power from the entry
    // degrees, then pin coefficient and power by evaluation
    let mut span = 0i64;
    for i in 0..size {
        for j in 0..size {
            let e = curve.g.at(i, j);
            if let (Some(lo), Some(hi)) = (e.min_degree(), e.max_degree()) {
                span = span.max(lo.abs()).max(hi.abs());
            }
        }
    }
    let bound = (size as i64) * span;
    if f.is_zero(&curve.det_coeff) {
        failures.push("determinant coefficient is zero".into());
    }
    if curve.det_power.abs() > bound {
        failures.push(format!(
            "determinant power {} outside the degree window {}",
            curve.det_power, bound
        ));
    }
    if failures.is_empty() {
        let at_one = eval_matrix_at(&ring, &curve.g, &f.one())?;
        if at_one.det()? != curve.det_coeff {
            failures.push("determinant coefficient mismatch at t = 1".into());
        }
        let a = f.elem_of_order_gt((2 * bound + 1) as u64)?;
        let at_a = eval_matrix_at(&ring, &curve.g, &a)?;
        let expect = f.mul(&curve.det_coeff, &f.pow_i64(&a, curve.det_power)?);
        if at_a.det()? != expect {
            failures.push("determinant power mismatch at the order-checked point".into());
        }
    }

    // corners: rows 0..l of G suffice for G M G^T and G x_col
    let top = curve.g.block(0, 0, l, size);
    let mut corners = Vec::new();
    let targets: Vec<&Matrix<F>> = target.syms.iter().chain(target.alts.iter()).collect();
    for (comp, (m, tgt)) in
        point.syms.iter().chain(point.alts.iter()).zip(&targets).enumerate()
    {
        let r = top.mul(&to_laurent(&ring, m)).mul(&top.transpose());
        let mut value = Matrix::zeros(f.clone(), l, l);
        for i in 0..l {
            for j in 0..l {
                let e = r.at(i, j);
                if let Some(d) = e.min_degree() {
                    if d < 0 {
                        failures.push(format!(
                            "component {comp} corner ({i},{j}): pole of degree {d}"
                        ));
                    }
                }
                let c0 = e.coeff(0).cloned().unwrap_or_else(|| f.zero());
                if c0 != *tgt.at(i, j) {
                    failures
                        .push(format!("component {comp} corner ({i},{j}): value mismatch"));
                }
                value.set(i, j, c0);
            }
        }
        corners.push(value);
    }
    let colm = top.mul(&to_laurent(&ring, &point.col));
    let mut col_value = Matrix::zeros(f.clone(), l, n);
    for i in 0..l {
        for j in 0..n {
            let e = colm.at(i, j);
            if let Some(d) = e.min_degree() {
                if d < 0 {
                    failures.push(format!("column corner ({i},{j}): pole of degree {d}"));
                }
            }
            let c0 = e.coeff(0).cloned().unwrap_or_else(|| f.zero());
            if c0 != *target.col.at(i, j) {
                failures.push(format!("column corner ({i},{j}): value mismatch"));
            }
            col_value.set(i, j, c0);
        }
    }
    Ok(VerifyOutcome { ok: failures.is_empty(), failures, corners, col_corner: col_value })
}

/// Tuple of p symmetric matrices whose tuple rank is at most rank(low):
/// all components but the pivot are free parameters, and the pivot
/// component is solved from mu so that sum(mu_i M_i) = low. The whole
/// tuple is then moved by the congruence g.
pub fn phi_parametrize<F: Field>(
    f: &F,
    mu: &[F::Elem],
    parts: &[Matrix<F>],
    low: &Matrix<F>,
    g: &Matrix<F>,
) -> Result<MatrixTuple<F>> {
    let p = mu.len();
    if parts.len() + 1 != p {
        return Err(Error::Shape(format!(
            "{} coefficients need {} free components, got {}",
            p,
            p.saturating_sub(1),
            parts.len()
        )));
    }
    let d = low.rows();
    if !low.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    for m in parts {
        if m.rows() != d || m.cols() != d {
            return Err(Error::Shape("component sizes differ".into()));
        }
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
    }
    if g.rows() != d || g.cols() != d {
        return Err(Error::Shape("congruence size differs".into()));
    }
    if g.rank() != d {
        return Err(Error::Singular);
    }
    let pivot = match mu.iter().rposition(|c| !f.is_zero(c)) {
        Some(k) => k,
        None => return Err(Error::ZeroCoefficients),
    };
    let mut acc = low.clone();
    let mut comps: Vec<Option<Matrix<F>>> = vec![None; p];
    let mut supply = parts.iter();
    for (i, coeff) in mu.iter().enumerate() {
        if i == pivot {
            continue;
        }
        let b = supply.next().expect("p-1 parts");
        acc = acc.sub(&b.scale(coeff));
        comps[i] = Some(b.clone());
    }
    let inv = f.inv(&mu[pivot])?;
    comps[pivot] = Some(acc.scale(&inv));
    let mats: Vec<Matrix<F>> = comps
        .into_iter()
        .map(|m| congruence_apply(g, &m.expect("filled")))
        .collect::<Result<_>>()?;
    MatrixTuple::new(f.clone(), mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Ring;
    use crate::fixtures::{
        planted_rank_skew, planted_rank_symmetric, random_invertible, random_symmetric,
    };
    use crate::tower::Tower;
    use crate::tuple::tuple_rank_exhaustive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn full_rank_col(f: &Tower, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix<Tower> {
        loop {
            let m = Matrix::from_fn(f.clone(), rows, cols, |_, _| f.sample(rng, 64).unwrap());
            if m.rank() == cols {
                return m;
            }
        }
    }

    #[test]
    fn required_rank_frozen_values() {
        assert_eq!(required_rank(1, 0, 0, 1), 2);
        assert_eq!(required_rank(1, 1, 1, 1), 14);
        assert_eq!(required_rank(0, 0, 3, 5), 6);
        assert_eq!(required_rank(1, 1, 0, 2), 16);
    }

    #[test]
    fn single_symmetric_corner_witness_verifies() {
        let f = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let m = planted_rank_symmetric(&f, 5, 5, &mut rng).unwrap();
        let point =
            TuplePoint { syms: vec![m], alts: vec![], col: Matrix::zeros(f.clone(), 5, 0) };
        let tgt = Matrix::from_fn(f.clone(), 1, 1, |_, _| f.from_i64(3));
        let target =
            TargetCorner { syms: vec![tgt.clone()], alts: vec![], col: Matrix::zeros(f.clone(), 1, 0) };
        let w = witness_sym(&f, &point, &target, &mut rng, 16).unwrap();
        // s = 1 makes the scaling exponents cancel in the determinant
        assert_eq!(w.det_power, 0);
        let out = verify_witness(&f, &point, &target, &w).unwrap();
        assert!(out.ok, "{:?}", out.failures);
        assert_eq!(out.corners[0], tgt);
    }

    #[test]
    fn mixed_pair_with_column_block_verifies() {
        let f = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let nn = 16;
        let sym = planted_rank_symmetric(&f, nn, nn, &mut rng).unwrap();
        let alt = planted_rank_skew(&f, nn, nn, &mut rng).unwrap();
        let col = full_rank_col(&f, nn, 1, &mut rng);
        let point = TuplePoint { syms: vec![sym], alts: vec![alt], col };
        let target = TargetCorner {
            syms: vec![Matrix::from_fn(f.clone(), 1, 1, |_, _| f.from_i64(2))],
            alts: vec![Matrix::zeros(f.clone(), 1, 1)],
            col: Matrix::from_fn(f.clone(), 1, 1, |_, _| f.from_i64(4)),
        };
        let w = witness_full(&f, &point, &target, &mut rng, 16).unwrap();
        let out = verify_witness(&f, &point, &target, &w).unwrap();
        assert!(out.ok, "{:?}", out.failures);
        assert_eq!(out.corners[0], target.syms[0]);
        assert_eq!(out.corners[1], target.alts[0]);
        assert_eq!(out.col_corner, target.col);
    }

    #[test]
    fn two_by_two_corners_without_columns_verify() {
        let f = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let nn = 17;
        let sym = planted_rank_symmetric(&f, nn, nn, &mut rng).unwrap();
        let alt = planted_rank_skew(&f, nn, 16, &mut rng).unwrap();
        let point = TuplePoint {
            syms: vec![sym],
            alts: vec![alt],
            col: Matrix::zeros(f.clone(), nn, 0),
        };
        let tgt_sym = Matrix::from_fn(f.clone(), 2, 2, |i, j| f.from_i64((i + j) as i64 + 1));
        let mut tgt_alt = Matrix::zeros(f.clone(), 2, 2);
        tgt_alt.set(0, 1, f.from_i64(3));
        tgt_alt.set(1, 0, f.from_i64(-3));
        let target = TargetCorner {
            syms: vec![tgt_sym.clone()],
            alts: vec![tgt_alt.clone()],
            col: Matrix::zeros(f.clone(), 2, 0),
        };
        let w = witness_sym(&f, &point, &target, &mut rng, 16).unwrap();
        let out = verify_witness(&f, &point, &target, &w).unwrap();
        assert!(out.ok, "{:?}", out.failures);
        assert_eq!(out.corners[0], tgt_sym);
        assert_eq!(out.corners[1], tgt_alt);
    }

    #[test]
    fn witness_is_stable_under_congruence_motion_of_the_instance() {
        let f = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let m = planted_rank_symmetric(&f, 5, 5, &mut rng).unwrap();
        let h = random_invertible(&f, 5, &mut rng).unwrap();
        let moved = congruence_apply(&h, &m).unwrap();
        let point =
            TuplePoint { syms: vec![moved], alts: vec![], col: Matrix::zeros(f.clone(), 5, 0) };
        let tgt = Matrix::from_fn(f.clone(), 1, 1, |_, _| f.from_i64(1));
        let target =
            TargetCorner { syms: vec![tgt], alts: vec![], col: Matrix::zeros(f.clone(), 1, 0) };
        let w = witness_sym(&f, &point, &target, &mut rng, 16).unwrap();
        let out = verify_witness(&f, &point, &target, &w).unwrap();
        assert!(out.ok, "{:?}", out.failures);
    }

    #[test]
    fn tampered_curve_fails_verification() {
        let f = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let m = planted_rank_symmetric(&f, 5, 5, &mut rng).unwrap();
        let point =
            TuplePoint { syms: vec![m], alts: vec![], col: Matrix::zeros(f.clone(), 5, 0) };
        let tgt = Matrix::from_fn(f.clone(), 1, 1, |_, _| f.from_i64(3));
        let target =
            TargetCorner { syms: vec![tgt], alts: vec![], col: Matrix::zeros(f.clone(), 1, 0) };
        let mut w = witness_sym(&f, &point, &target, &mut rng, 16).unwrap();
        let ring = LaurentRing::new(f.clone());
        let bumped = ring.add(w.g.at(2, 2), &ring.monomial(f.one(), 1));
        w.g.set(2, 2, bumped);
        let out = verify_witness(&f, &point, &target, &w).unwrap();
        assert!(!out.ok);
        assert!(out
            .failures
            .iter()
            .any(|s| s.contains("inverse is not the identity")));
    }

    #[test]
    fn wrong_determinant_power_fails_verification() {
        let f = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let m = planted_rank_symmetric(&f, 5, 5, &mut rng).unwrap();
        let point =
            TuplePoint { syms: vec![m], alts: vec![], col: Matrix::zeros(f.clone(), 5, 0) };
        let tgt = Matrix::from_fn(f.clone(), 1, 1, |_, _| f.from_i64(3));
        let target =
            TargetCorner { syms: vec![tgt], alts: vec![], col: Matrix::zeros(f.clone(), 1, 0) };
        let mut w = witness_sym(&f, &point, &target, &mut rng, 16).unwrap();
        w.det_power += 1;
        let out = verify_witness(&f, &point, &target, &w).unwrap();
        assert!(!out.ok);
        assert!(out.failures.iter().any(|s| s.contains("determinant")));
    }

    #[test]
    fn mismatched_target_fails_verification_per_entry() {
        let f = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let m = planted_rank_symmetric(&f, 5, 5, &mut rng).unwrap();
        let point =
            TuplePoint { syms: vec![m], alts: vec![], col: Matrix::zeros(f.clone(), 5, 0) };
        let tgt = Matrix::from_fn(f.clone(), 1, 1, |_, _| f.from_i64(3));
        let target = TargetCorner {
            syms: vec![tgt],
            alts: vec![],
            col: Matrix::zeros(f.clone(), 1, 0),
        };
        let w = witness_sym(&f, &point, &target, &mut rng, 16).unwrap();
        let other = TargetCorner {
            syms: vec![Matrix::from_fn(f.clone(), 1, 1, |_, _| f.from_i64(4))],
            alts: vec![],
            col: Matrix::zeros(f.clone(), 1, 0),
        };
        let out = verify_witness(&f, &point, &other, &w).unwrap();
        assert!(!out.ok);
        assert!(out.failures.iter().any(|s| s.contains("value mismatch")));
    }

    #[test]
    fn rank_deficient_instance_reports_the_precondition() {
        let f = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(38);
        let point = TuplePoint {
            syms: vec![Matrix::zeros(f.clone(), 5, 5)],
            alts: vec![],
            col: Matrix::zeros(f.clone(), 5, 0),
        };
        let target = TargetCorner {
            syms: vec![Matrix::from_fn(f.clone(), 1, 1, |_, _| f.one())],
            alts: vec![],
            col: Matrix::zeros(f.clone(), 1, 0),
        };
        assert!(matches!(
            witness_sym(&f, &point, &target, &mut rng, 4),
            Err(Error::RankPrecondition(_))
        ));
    }

    #[test]
    fn phi_tuples_have_bounded_tuple_rank() {
        let f = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(39);
        for _ in 0..5 {
            let mu = vec![f.sample(&mut rng, 64).unwrap(), f.one()];
            let parts = vec![random_symmetric(&f, 4, &mut rng).unwrap()];
            let low = planted_rank_symmetric(&f, 4, 1, &mut rng).unwrap();
            let g = random_invertible(&f, 4, &mut rng).unwrap();
            let tuple = phi_parametrize(&f, &mu, &parts, &low, &g).unwrap();
            let cert = tuple_rank_exhaustive(&tuple, 1 << 22).unwrap();
            assert!(cert.certified);
            let r = cert.value.finite().expect("two components cannot be free");
            assert!(r <= 1, "tuple rank {r} exceeds the planted bound");
        }
    }

    #[test]
    fn phi_rejects_all_zero_coefficients() {
        let f = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let parts = vec![random_symmetric(&f, 3, &mut rng).unwrap()];
        let low = planted_rank_symmetric(&f, 3, 1, &mut rng).unwrap();
        let g = Matrix::identity(f.clone(), 3);
        assert!(matches!(
            phi_parametrize(&f, &[f.zero(), f.zero()], &parts, &low, &g),
            Err(Error::ZeroCoefficients)
        ));
    }
}
