//! Shared helpers for the acceptance suite: a naive rank oracle and
//! planted instance builders. The oracle walks every nonzero
//! coefficient vector directly so it cannot share a bug with the
//! library's projective enumeration.

use congruence_core::fixtures::{
    planted_rank_skew, planted_rank_symmetric, random_skew, random_symmetric,
};
use congruence_core::{Error, Field, Matrix, MatrixTuple, Result, TargetCorner, TuplePoint};
use rand::RngCore;

/// Minimum of rank over every combination with coefficients drawn from
/// `scalars`, skipping the all-zero vector; None for the empty tuple.
pub fn naive_tuple_rank<F: Field>(tuple: &MatrixTuple<F>, scalars: &[F::Elem]) -> Option<usize> {
    let s = tuple.len();
    if s == 0 {
        return None;
    }
    let f = tuple.field().clone();
    let mut idx = vec![0usize; s];
    let mut best: Option<usize> = None;
    loop {
        let coeffs: Vec<F::Elem> = idx.iter().map(|&i| scalars[i].clone()).collect();
        if coeffs.iter().any(|c| !f.is_zero(c)) {
            let combo = tuple.linear_combination(&coeffs).expect("matching length");
            let r = combo.rank();
            best = Some(best.map_or(r, |b| b.min(r)));
        }
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < scalars.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == s {
                return best;
            }
        }
    }
}

/// Point whose matrix components have planted rank `rank` (rounded down
/// to even for alternating components) and whose column block has full
/// column rank.
pub fn planted_point<F: Field>(
    f: &F,
    p: usize,
    q: usize,
    n: usize,
    size: usize,
    rank: usize,
    rng: &mut dyn RngCore,
) -> Result<TuplePoint<F>> {
    let rank = rank.min(size);
    let mut syms = Vec::with_capacity(p);
    for _ in 0..p {
        syms.push(planted_rank_symmetric(f, size, rank, rng)?);
    }
    let mut alts = Vec::with_capacity(q);
    for _ in 0..q {
        alts.push(planted_rank_skew(f, size, rank & !1, rng)?);
    }
    let col = full_rank_cols(f, size, n, rng)?;
    Ok(TuplePoint { syms, alts, col })
}

pub fn full_rank_cols<F: Field>(
    f: &F,
    rows: usize,
    n: usize,
    rng: &mut dyn RngCore,
) -> Result<Matrix<F>> {
    if n == 0 {
        return Ok(Matrix::zeros(f.clone(), rows, 0));
    }
    let pool = 64.max(4 * (rows as u64) * (n as u64));
    for _ in 0..64 {
        let mut m = Matrix::zeros(f.clone(), rows, n);
        for i in 0..rows {
            for j in 0..n {
                m.set(i, j, f.sample(rng, pool)?);
            }
        }
        if m.rank() == n {
            return Ok(m);
        }
    }
    Err(Error::NotFound("could not sample a full-rank column block".into()))
}

pub fn random_target<F: Field>(
    f: &F,
    p: usize,
    q: usize,
    n: usize,
    l: usize,
    rng: &mut dyn RngCore,
) -> Result<TargetCorner<F>> {
    let mut syms = Vec::with_capacity(p);
    for _ in 0..p {
        syms.push(random_symmetric(f, l, rng)?);
    }
    let mut alts = Vec::with_capacity(q);
    for _ in 0..q {
        alts.push(random_skew(f, l, rng)?);
    }
    let pool = 64;
    let mut col = Matrix::zeros(f.clone(), l, n);
    for i in 0..l {
        for j in 0..n {
            col.set(i, j, f.sample(rng, pool)?);
        }
    }
    Ok(TargetCorner { syms, alts, col })
}
