//! Free vectors and free subspaces of a matrix tuple.
//!
//! A subspace V of the domain is free for the tuple (M_1, ..., M_s) when
//! the joint image span of its basis columns has full dimension
//! s * dim V. Existence under tuple-rank preconditions is the caller's
//! business; this module only searches and verifies exactly, so a
//! returned object is always correct and a failed search reports
//! NotFound instead of guessing.
//!
//! The search is randomized with seeded draws (success fails only on a
//! proper subvariety, so a pool quadratic in the dimension makes retries
//! reliable), followed by a deterministic sweep: standard basis vectors,
//! pairwise sums, then a fixed-seed series. Subspaces of dimension m are
//! built inductively: find a free vector, quotient both sides, recurse,
//! lift through the completion matrix.

use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{basis_completion, GivenPosition, Matrix};
use crate::tuple::MatrixTuple;

pub const DEFAULT_RETRIES: u32 = 16;

/// Verified free subspace: `basis` columns are independent and their
/// images under the tuple components are jointly independent.
#[derive(Clone, Debug)]
pub struct FreeSubspace<F: Field> {
    pub basis: Matrix<F>,
}

/// The joint image matrix [M_1 V | M_2 V | ... | M_s V].
pub fn images_matrix<F: Field>(tuple: &MatrixTuple<F>, basis: &Matrix<F>) -> Matrix<F> {
    let f = tuple.field().clone();
    let mut out = Matrix::zeros(f, tuple.rows(), tuple.len() * basis.cols());
    for (i, m) in tuple.components().iter().enumerate() {
        out.set_block(0, i * basis.cols(), &m.mul(basis));
    }
    out
}

/// Exact check of the freeness property.
pub fn verify_free<F: Field>(tuple: &MatrixTuple<F>, basis: &Matrix<F>) -> bool {
    basis.rank() == basis.cols()
        && images_matrix(tuple, basis).rank() == tuple.len() * basis.cols()
}

fn vector_is_free<F: Field>(tuple: &MatrixTuple<F>, v: &[F::Elem]) -> bool {
    let f = tuple.field().clone();
    let vm = Matrix::new(f, v.len(), 1, v.to_vec());
    images_matrix(tuple, &vm).rank() == tuple.len()
}

/// A domain vector whose images under all components are independent.
///
/// `retries` seeded random draws from a pool of at least max(64, 2 d^2)
/// elements, then the deterministic sweep. Every candidate is verified
/// exactly before being returned.
pub fn find_free_vector<F: Field>(
    tuple: &MatrixTuple<F>,
    rng: &mut dyn rand::RngCore,
    retries: u32,
) -> Result<Vec<F::Elem>> {
    let f = tuple.field().clone();
    let d = tuple.cols();
    if tuple.is_empty() {
        // no components, no constraints: the empty image set is free
        let mut v = vec![f.zero(); d];
        if d > 0 {
            v[0] = f.one();
        }
        return Ok(v);
    }
    if tuple.len() > tuple.rows() {
        return Err(Error::NotFound(format!(
            "{} images cannot be independent in dimension {}",
            tuple.len(),
            tuple.rows()
        )));
    }
    let pool = 64u64.max(2 * (d as u64) * (d as u64));
    for _ in 0..retries {
        let v: Vec<F::Elem> =
            (0..d).map(|_| f.sample(rng, pool)).collect::<Result<_>>()?;
        if vector_is_free(tuple, &v) {
            return Ok(v);
        }
    }
    // deterministic fallback: basis vectors, pairwise sums, fixed-seed series
    let mut candidates: Vec<Vec<F::Elem>> = Vec::new();
    for i in 0..d {
        let mut v = vec![f.zero(); d];
        v[i] = f.one();
        candidates.push(v);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut v = vec![f.zero(); d];
            v[i] = f.one();
            v[j] = f.one();
            candidates.push(v);
        }
    }
    for v in candidates {
        if vector_is_free(tuple, &v) {
            return Ok(v);
        }
    }
    let mut fixed = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED_FA11);
    for _ in 0..4 * d * d {
        let v: Vec<F::Elem> =
            (0..d).map(|_| f.sample(&mut fixed, pool)).collect::<Result<_>>()?;
        if vector_is_free(tuple, &v) {
            return Ok(v);
        }
    }
    Err(Error::NotFound("no free vector after retries and deterministic sweep".into()))
}

/// Quotient of a tuple by a domain subspace V'' and a codomain subspace
/// W'': complete both to bases (given columns first), transport each
/// component, delete the leading dim W'' rows and dim V'' columns.
#[derive(Clone, Debug)]
pub struct QuotientData<F: Field> {
    pub tuple: MatrixTuple<F>,
    /// Domain completion; lifts quotient-domain vectors via
    /// `p * (0_(del_cols) ++ v)`.
    pub p: Matrix<F>,
    pub del_rows: usize,
    pub del_cols: usize,
}

pub fn quotient_tuple<F: Field>(
    tuple: &MatrixTuple<F>,
    v_basis: &Matrix<F>,
    w_basis: &Matrix<F>,
) -> Result<QuotientData<F>> {
    if v_basis.rows() != tuple.cols() || w_basis.rows() != tuple.rows() {
        return Err(Error::Shape("quotient basis shapes must match the tuple sides".into()));
    }
    let f = tuple.field().clone();
    let p = basis_completion(v_basis, GivenPosition::First)?;
    let q = basis_completion(w_basis, GivenPosition::First)?;
    let qi = q.inverse().expect("completion is invertible");
    let del_rows = w_basis.cols();
    let del_cols = v_basis.cols();
    let mats: Vec<Matrix<F>> = tuple
        .components()
        .iter()
        .map(|m| {
            let t = qi.mul(m).mul(&p);
            t.block(del_rows, del_cols, t.rows(), t.cols())
        })
        .collect();
    Ok(QuotientData { tuple: MatrixTuple::new(f, mats)?, p, del_rows, del_cols })
}

/// Free subspace of dimension m, built inductively and verified as a
/// whole before returning.
pub fn find_free_subspace<F: Field>(
    tuple: &MatrixTuple<F>,
    m: usize,
    rng: &mut dyn rand::RngCore,
    retries: u32,
) -> Result<FreeSubspace<F>> {
    let f = tuple.field().clone();
    let cols = collect_free_columns(tuple, m, rng, retries)?;
    let mut basis = Matrix::zeros(f.clone(), tuple.cols(), m);
    for (j, v) in cols.iter().enumerate() {
        for (i, e) in v.iter().enumerate() {
            basis.set(i, j, e.clone());
        }
    }
    if !verify_free(tuple, &basis) {
        return Err(Error::NotFound("free subspace candidate failed verification".into()));
    }
    Ok(FreeSubspace { basis })
}

fn collect_free_columns<F: Field>(
    tuple: &MatrixTuple<F>,
    m: usize,
    rng: &mut dyn rand::RngCore,
    retries: u32,
) -> Result<Vec<Vec<F::Elem>>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    let f = tuple.field().clone();
    let v = find_free_vector(tuple, rng, retries)?;
    if m == 1 {
        return Ok(vec![v]);
    }
    let vm = Matrix::new(f.clone(), v.len(), 1, v.clone());
    let wm = images_matrix(tuple, &vm);
    let qd = quotient_tuple(tuple, &vm, &wm)?;
    let rest = collect_free_columns(&qd.tuple, m - 1, rng, retries)?;
    let mut out = vec![v];
    for vb in rest {
        // lift: prepend zeros for the deleted coordinates, map through P
        let mut padded = vec![f.zero(); qd.del_cols];
        padded.extend(vb);
        let lifted = qd.p.mul(&Matrix::new(f.clone(), padded.len(), 1, padded));
        out.push(lifted.column(0));
    }
    Ok(out)
}
