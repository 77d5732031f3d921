//! Scalar abstraction and the exact rational backend.
//!
//! Every algorithm in this crate is generic over [`Field`]. Fields are
//! small value objects passed explicitly (the ring-object pattern):
//! elements are plain data, and all arithmetic goes through the field so
//! that backends with shared state (the extension tower) can consult it
//! without globals. Elements are kept in canonical form by construction,
//! so `PartialEq` on elements is semantic equality.

use std::cmp::Ordering;

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Commutative ring operations over plain-data elements.
pub trait Ring: Clone + std::fmt::Debug {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc + a * b`, the inner-product building block.
    fn mul_add(&self, acc: &Self::Elem, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(acc, &self.mul(a, b))
    }
}

/// A field of characteristic different from 2, with the extra hooks the
/// search and normal-form layers need: deterministic ordering, square
/// roots, seeded sampling, and (for finite backends) exhaustive
/// enumeration of the subfield spanned by given elements.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Total order on canonical forms. Deterministic across runs; used
    /// for documented scans and tie-breaking.
    fn canonical_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// A square root of `a`, with a deterministic sign choice. Rational
    /// backends fail on non-squares; the tower backend always succeeds,
    /// growing its extension state when needed.
    fn sqrt(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Uniformly random element from a pool of at least `min_pool`
    /// elements when the backend can guarantee one (growing its state if
    /// needed); infinite backends draw small representatives instead.
    fn sample(&self, rng: &mut dyn rand::RngCore, min_pool: u64) -> Result<Self::Elem>;

    /// Number of elements in the smallest subfield containing `elems`,
    /// or None when that subfield is infinite.
    fn enumeration_size(&self, elems: &[Self::Elem]) -> Option<u128>;

    /// All elements of that subfield, in the documented canonical order.
    fn enumerate(&self, elems: &[Self::Elem]) -> Option<Vec<Self::Elem>>;

    /// An element of multiplicative order greater than `bound`, verified
    /// exactly. Finite backends may grow their extension state to find one.
    fn elem_of_order_gt(&self, bound: u64) -> Result<Self::Elem>;

    /// 1/2; exists because the characteristic is not 2.
    fn half(&self) -> Self::Elem {
        self.inv(&self.from_i64(2)).expect("characteristic 2 is rejected at construction")
    }

    fn pow_i64(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = self.one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            n >>= 1;
        }
        Ok(acc)
    }

    /// Rank of a `rows x cols` row-major slice. The default is plain
    /// Gaussian elimination; backends may substitute a fraction-free
    /// scheme with better coefficient growth.
    fn rank_slice(&self, rows: usize, cols: usize, data: &[Self::Elem]) -> usize {
        gaussian_rank(self, rows, cols, data)
    }
}

/// Row-echelon rank by ordinary Gaussian elimination, first-nonzero
/// pivoting. Exact over any [`Field`].
pub(crate) fn gaussian_rank<F: Field>(f: &F, rows: usize, cols: usize, data: &[F::Elem]) -> usize {
    assert_eq!(data.len(), rows * cols, "rank_slice: bad data length");
    let mut m: Vec<Vec<F::Elem>> =
        (0..rows).map(|i| data[i * cols..(i + 1) * cols].to_vec()).collect();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !f.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(rank, p);
        let inv = f.inv(&m[rank][col]).expect("pivot is nonzero");
        for i in rank + 1..rows {
            if f.is_zero(&m[i][col]) {
                continue;
            }
            let factor = f.mul(&m[i][col], &inv);
            for j in col..cols {
                let t = f.mul(&factor, &m[rank][j]);
                m[i][j] = f.sub(&m[i][j], &t);
            }
        }
        rank += 1;
    }
    rank
}

/// The field of rationals with arbitrary-precision representation.
///
/// Elements are always reduced (`num` keeps them canonical), so equality
/// and ordering are the usual ones. There is no exhaustive enumeration
/// and square roots exist for perfect squares only.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn canonical_cmp(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }

    /// Exact square root of a perfect square; the nonnegative root is the
    /// canonical one.
    fn sqrt(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_negative() {
            return Err(Error::NonSquareRational(a.to_string()));
        }
        let num = a.numer().sqrt();
        let den = a.denom().sqrt();
        if &(&num * &num) != a.numer() || &(&den * &den) != a.denom() {
            return Err(Error::NonSquareRational(a.to_string()));
        }
        Ok(BigRational::new(num, den))
    }

    /// Small integers: keeps fraction-free elimination on sampled data
    /// cheap. The pool request is moot over an infinite field.
    fn sample(&self, rng: &mut dyn rand::RngCore, _min_pool: u64) -> Result<BigRational> {
        Ok(self.from_i64(rng.random_range(-9..=9)))
    }

    fn enumeration_size(&self, _elems: &[BigRational]) -> Option<u128> {
        None
    }

    fn enumerate(&self, _elems: &[BigRational]) -> Option<Vec<BigRational>> {
        None
    }

    fn elem_of_order_gt(&self, _bound: u64) -> Result<BigRational> {
        Ok(self.from_i64(2))
    }

    /// Fraction-free (Bareiss) elimination on the denominator-cleared
    /// integer matrix; all divisions are exact, coefficient growth stays
    /// polynomial.
    fn rank_slice(&self, rows: usize, cols: usize, data: &[BigRational]) -> usize {
        assert_eq!(data.len(), rows * cols, "rank_slice: bad data length");
        let mut m: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| {
                let row = &data[i * cols..(i + 1) * cols];
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()));
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..rows {
                for j in col + 1..cols {
                    let t = &m[i][j] * &m[rank][col] - &m[i][col] * &m[rank][j];
                    debug_assert!((&t % &prev).is_zero(), "Bareiss division must be exact");
                    m[i][j] = t / &prev;
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }
}
