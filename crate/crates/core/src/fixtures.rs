//! Seeded instance generators: random matrices with planted structure
//! (known rank, known free subspaces), used by the test suites and the
//! `gen` / `experiment` drivers. Everything is deterministic in the
//! caller's RNG.

use rand::RngCore;

use crate::error::Result;
use crate::field::Field;
use crate::free::FreeSubspace;
use crate::matrix::{congruence_apply, Matrix};
use crate::normal_form::MatKind;
use crate::tuple::MatrixTuple;

/// Invertible matrix by rejection sampling from a pool big enough to
/// make rejection rare.
pub fn random_invertible<F: Field>(
    f: &F,
    n: usize,
    rng: &mut dyn RngCore,
) -> Result<Matrix<F>> {
    let pool = 64u64.max(2 * (n as u64) * (n as u64));
    loop {
        let mut data = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            data.push(f.sample(rng, pool)?);
        }
        let cand = Matrix::new(f.clone(), n, n, data);
        if cand.rank() == n {
            return Ok(cand);
        }
    }
}

pub fn random_symmetric<F: Field>(f: &F, n: usize, rng: &mut dyn RngCore) -> Result<Matrix<F>> {
    let pool = 64u64.max(2 * (n as u64) * (n as u64));
    let mut m = Matrix::zeros(f.clone(), n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = f.sample(rng, pool)?;
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    Ok(m)
}

pub fn random_skew<F: Field>(f: &F, n: usize, rng: &mut dyn RngCore) -> Result<Matrix<F>> {
    let pool = 64u64.max(2 * (n as u64) * (n as u64));
    let mut m = Matrix::zeros(f.clone(), n, n);
    for i in 0..n {
        for j in 0..i {
            let v = f.sample(rng, pool)?;
            m.set(i, j, v.clone());
            m.set(j, i, f.neg(&v));
        }
    }
    Ok(m)
}

/// Symmetric matrix of exact rank r: Id_r + 0 moved by a random
/// congruence. The rank is planted, not searched for.
pub fn planted_rank_symmetric<F: Field>(
    f: &F,
    n: usize,
    r: usize,
    rng: &mut dyn RngCore,
) -> Result<Matrix<F>> {
    assert!(r <= n);
    let mut core = Matrix::zeros(f.clone(), n, n);
    for i in 0..r {
        core.set(i, i, f.one());
    }
    let g = random_invertible(f, n, rng)?;
    congruence_apply(&g, &core)
}

/// Skew matrix of exact even rank r: symplectic blocks moved by a random
/// congruence.
pub fn planted_rank_skew<F: Field>(
    f: &F,
    n: usize,
    r: usize,
    rng: &mut dyn RngCore,
) -> Result<Matrix<F>> {
    assert!(r <= n && r % 2 == 0, "skew rank must be even");
    let mut core = Matrix::zeros(f.clone(), n, n);
    for t in 0..r / 2 {
        core.set(2 * t, 2 * t + 1, f.one());
        core.set(2 * t + 1, 2 * t, f.neg(&f.one()));
    }
    let g = random_invertible(f, n, rng)?;
    congruence_apply(&g, &core)
}

/// Instance with a planted free subspace of dimension m = 2^s l for the
/// block normal form: component i pairs the first m coordinates with the
/// block at rows (i+1)m.., so V_0 = <e_0..e_(m-1)> is free with jointly
/// independent images; optional random junk lives strictly in the
/// trailing (size - (s+1)m) block and cannot touch the images. The whole
/// instance is then moved by a random congruence, carrying V_0 along.
pub fn planted_free_instance<F: Field>(
    f: &F,
    kinds: &[MatKind],
    l: usize,
    extra: usize,
    rng: &mut dyn RngCore,
) -> Result<(MatrixTuple<F>, FreeSubspace<F>)> {
    let s = kinds.len();
    let m = (1usize << s) * l;
    let size = (s + 1) * m + extra;
    let mut mats = Vec::with_capacity(s);
    for (i, kind) in kinds.iter().enumerate() {
        let mut mat = Matrix::zeros(f.clone(), size, size);
        for j in 0..m {
            mat.set((i + 1) * m + j, j, f.one());
            let eps = match kind {
                MatKind::Symmetric => f.one(),
                MatKind::Skew => f.neg(&f.one()),
            };
            mat.set(j, (i + 1) * m + j, eps);
        }
        if extra > 0 {
            let junk = match kind {
                MatKind::Symmetric => random_symmetric(f, extra, rng)?,
                MatKind::Skew => random_skew(f, extra, rng)?,
            };
            mat.set_block((s + 1) * m, (s + 1) * m, &junk);
        }
        mats.push(mat);
    }
    let g = random_invertible(f, size, rng)?;
    let moved: Vec<Matrix<F>> =
        mats.iter().map(|mat| congruence_apply(&g, mat)).collect::<Result<_>>()?;
    // V_0 moves contravariantly: images of g^-T V_0 are g (M V_0)
    let gti = g.transpose().inverse().expect("invertible");
    let basis = gti.block(0, 0, size, m);
    Ok((MatrixTuple::new(f.clone(), moved)?, FreeSubspace { basis }))
}
