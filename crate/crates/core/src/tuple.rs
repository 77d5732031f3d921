//! Rank of matrix tuples: the minimum rank of a nonzero linear
//! combination of the components.
//!
//! Over the tower backend the minimum is found by exhaustive enumeration
//! of projective coefficient vectors (first nonzero coordinate
//! normalized to 1) over the smallest level containing every entry, and
//! the result is a certificate: the value, a witnessing combination, and
//! the search domain. A budget guard keeps the enumeration honest:
//! field_size^s must not exceed the caller's budget. Over the rationals
//! there is no enumeration; a clearly-flagged heuristic reduces mod
//! several primes instead.

use crate::error::{Error, Result};
use crate::field::{Field, Rationals, Ring};
use crate::matrix::Matrix;
use crate::tower::Tower;

/// Tuple of equal-shape matrices over one field. Rectangular shapes are
/// allowed: column truncations of square tuples appear throughout the
/// search pipeline.
#[derive(Clone, Debug)]
pub struct MatrixTuple<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    mats: Vec<Matrix<F>>,
}

impl<F: Field> MatrixTuple<F> {
    pub fn new(field: F, mats: Vec<Matrix<F>>) -> Result<Self> {
        let (rows, cols) = match mats.first() {
            Some(m) => (m.rows(), m.cols()),
            None => (0, 0),
        };
        if mats.iter().any(|m| m.rows() != rows || m.cols() != cols) {
            return Err(Error::Shape("tuple components must share one shape".into()));
        }
        Ok(MatrixTuple { field, rows, cols, mats })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn component(&self, i: usize) -> &Matrix<F> {
        &self.mats[i]
    }

    pub fn components(&self) -> &[Matrix<F>] {
        &self.mats
    }

    /// Sum of lambda_i * M_i; lambda must be nonzero somewhere.
    pub fn linear_combination(&self, lambda: &[F::Elem]) -> Result<Matrix<F>> {
        if lambda.len() != self.mats.len() {
            return Err(Error::Shape(format!(
                "{} coefficients for {} components",
                lambda.len(),
                self.mats.len()
            )));
        }
        if lambda.iter().all(|c| self.field.is_zero(c)) {
            return Err(Error::ZeroCoefficients);
        }
        let mut acc = Matrix::zeros(self.field.clone(), self.rows, self.cols);
        for (c, m) in lambda.iter().zip(&self.mats) {
            if !self.field.is_zero(c) {
                acc = acc.add(&m.scale(c));
            }
        }
        Ok(acc)
    }

    /// Keeps the first k columns of every component.
    pub fn truncate_cols(&self, k: usize) -> MatrixTuple<F> {
        assert!(k <= self.cols);
        MatrixTuple {
            field: self.field.clone(),
            rows: self.rows,
            cols: k,
            mats: self.mats.iter().map(|m| m.block(0, 0, self.rows, k)).collect(),
        }
    }

    /// All entries of all components; defines the enumeration level.
    pub fn all_entries(&self) -> Vec<F::Elem> {
        self.mats.iter().flat_map(|m| m.entries().cloned()).collect()
    }
}

/// Rank of the combination given by `lambda`.
pub fn rank_at<F: Field>(tuple: &MatrixTuple<F>, lambda: &[F::Elem]) -> Result<usize> {
    Ok(tuple.linear_combination(lambda)?.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd)]
pub enum RankValue {
    Finite(usize),
    /// The empty tuple: the minimum over an empty set of combinations.
    Infinite,
}

impl RankValue {
    pub fn at_least(&self, r: usize) -> bool {
        match self {
            RankValue::Finite(v) => *v >= r,
            RankValue::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            RankValue::Finite(v) => Some(*v),
            RankValue::Infinite => None,
        }
    }
}

/// Result of a tuple-rank computation. `certified` is true only when
/// every projective combination over the stated domain was checked.
#[derive(Clone, Debug)]
pub struct RankCertificate<F: Field> {
    pub value: RankValue,
    /// A combination attaining the minimum (first one in scan order).
    pub witness: Option<Vec<F::Elem>>,
    pub certified: bool,
    pub search_domain: String,
    pub points_checked: u64,
}

/// Exhaustive certified tuple rank over a finite scalar backend.
///
/// Enumerates representatives of P^(s-1) over the smallest tower level
/// containing every entry: for each leading position the coefficient
/// there is 1, earlier ones are 0, later ones range over the whole
/// level. Errors: RationalEnumeration over infinite backends,
/// BudgetExceeded when field_size^s > budget.
pub fn tuple_rank_exhaustive<F: Field>(
    tuple: &MatrixTuple<F>,
    budget: u128,
) -> Result<RankCertificate<F>> {
    let s = tuple.len();
    if s == 0 {
        return Ok(RankCertificate {
            value: RankValue::Infinite,
            witness: None,
            certified: true,
            search_domain: "empty tuple".into(),
            points_checked: 0,
        });
    }
    let f = tuple.field().clone();
    let entries = tuple.all_entries();
    let Some(size) = f.enumeration_size(&entries) else {
        return Err(Error::RationalEnumeration);
    };
    let needed = size.checked_pow(s as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let elems = f.enumerate(&entries).expect("finite backend enumerates");
    let mut best: Option<(usize, Vec<F::Elem>)> = None;
    let mut points = 0u64;
    'outer: for lead in 0..s {
        let free = s - lead - 1;
        let mut idx = vec![0usize; free];
        loop {
            let mut lambda = vec![f.zero(); s];
            lambda[lead] = f.one();
            for (k, &i) in idx.iter().enumerate() {
                lambda[lead + 1 + k] = elems[i].clone();
            }
            let r = rank_at(tuple, &lambda)?;
            points += 1;
            if best.as_ref().map_or(true, |(b, _)| r < *b) {
                let done = r == 0;
                best = Some((r, lambda));
                if done {
                    // a vanishing combination: nothing smaller exists
                    break 'outer;
                }
            }
            // odometer over the free coordinates
            let mut pos = free;
            loop {
                if pos == 0 {
                    break;
                }
                idx[pos - 1] += 1;
                if idx[pos - 1] < elems.len() {
                    break;
                }
                idx[pos - 1] = 0;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
    }
    let (value, witness) = best.expect("at least one projective point");
    Ok(RankCertificate {
        value: RankValue::Finite(value),
        witness: Some(witness),
        certified: true,
        search_domain: format!("P^{}(F_{})", s - 1, size),
        points_checked: points,
    })
}

/// Heuristic tuple rank over the rationals: reduce mod each usable probe
/// prime (skipping those dividing a denominator), take the largest
/// certified mod-p value. Never certified: ranks can drop mod p, so this
/// is only an estimate.
pub fn tuple_rank_heuristic_mod_primes(
    tuple: &MatrixTuple<Rationals>,
    primes: &[u64],
    budget: u128,
) -> Result<RankCertificate<Rationals>> {
    if tuple.is_empty() {
        return Ok(RankCertificate {
            value: RankValue::Infinite,
            witness: None,
            certified: true,
            search_domain: "empty tuple".into(),
            points_checked: 0,
        });
    }
    let mut best: Option<usize> = None;
    let mut used = Vec::new();
    let mut points = 0u64;
    for &p in primes {
        let tower = Tower::new(p)?;
        let entries = tuple.all_entries();
        let divides = entries.iter().any(|e| {
            (e.denom() % num::BigInt::from(p)) == num::BigInt::from(0)
        });
        if divides {
            continue;
        }
        let mats = tuple
            .components()
            .iter()
            .map(|m| {
                m.map_ring(tower.clone(), |e| {
                    let n = big_mod(e.numer(), p);
                    let d = big_mod(e.denom(), p);
                    let di = tower.inv(&tower.from_i64(d as i64)).expect("p does not divide d");
                    tower.mul(&tower.from_i64(n as i64), &di)
                })
            })
            .collect();
        let reduced = MatrixTuple::new(tower, mats)?;
        let cert = tuple_rank_exhaustive(&reduced, budget)?;
        points += cert.points_checked;
        let v = cert.value.finite().expect("nonempty tuple has finite value");
        if best.map_or(true, |b| v > b) {
            best = Some(v);
        }
        used.push(p);
    }
    if used.is_empty() {
        return Err(Error::Invalid("every probe prime divides a denominator".into()));
    }
    Ok(RankCertificate {
        value: RankValue::Finite(best.expect("at least one usable prime")),
        witness: None,
        certified: false,
        search_domain: format!("heuristic mod {used:?}"),
        points_checked: points,
    })
}

fn big_mod(x: &num::BigInt, p: u64) -> u64 {
    use num::ToPrimitive;
    let r = x % num::BigInt::from(p);
    let r = if r < num::BigInt::from(0) { r + num::BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits")
}

/// Least k such that the tuple of first-k-column truncations still has
/// tuple rank at least r. Requires the full tuple to clear r.
pub fn minimal_truncation<F: Field>(
    tuple: &MatrixTuple<F>,
    r: usize,
    budget: u128,
) -> Result<usize> {
    if r == 0 {
        return Ok(0);
    }
    // a combination of N x k matrices has rank at most k
    for k in r..=tuple.cols() {
        let cert = tuple_rank_exhaustive(&tuple.truncate_cols(k), budget)?;
        if cert.value.at_least(r) {
            return Ok(k);
        }
    }
    Err(Error::RankPrecondition(format!(
        "tuple rank below {r}, no truncation suffices"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::congruence_apply;
    use num::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn diag<F: Field>(f: &F, vals: &[i64]) -> Matrix<F> {
        Matrix::from_fn(f.clone(), vals.len(), vals.len(), |i, j| {
            if i == j {
                f.from_i64(vals[i])
            } else {
                f.zero()
            }
        })
    }

    #[test]
    fn empty_tuple_has_infinite_rank() {
        let t = Tower::new(5).unwrap();
        let tuple = MatrixTuple::new(t, vec![]).unwrap();
        let cert = tuple_rank_exhaustive(&tuple, 1).unwrap();
        assert_eq!(cert.value, RankValue::Infinite);
        assert!(cert.certified);
    }

    #[test]
    fn two_diagonal_projectors_over_f3() {
        let t = Tower::new(3).unwrap();
        let tuple =
            MatrixTuple::new(t.clone(), vec![diag(&t, &[1, 0]), diag(&t, &[0, 1])]).unwrap();
        let cert = tuple_rank_exhaustive(&tuple, 100).unwrap();
        assert_eq!(cert.value, RankValue::Finite(1));
        // first minimal point in scan order: lambda = (1, 0)
        assert_eq!(cert.witness.unwrap(), vec![t.one(), t.zero()]);
        assert_eq!(cert.search_domain, "P^1(F_3)");
        assert_eq!(cert.points_checked, 4, "P^1(F_3) has 4 points");
    }

    #[test]
    fn zero_combination_is_rejected() {
        let t = Tower::new(5).unwrap();
        let tuple = MatrixTuple::new(t.clone(), vec![diag(&t, &[1, 2])]).unwrap();
        assert_eq!(rank_at(&tuple, &[t.zero()]), Err(Error::ZeroCoefficients));
        assert_eq!(rank_at(&tuple, &[t.one(), t.one()]).unwrap_err(), Error::Shape("2 coefficients for 1 components".into()));
    }

    #[test]
    fn budget_guard_trips_before_enumerating() {
        let t = Tower::new(5).unwrap();
        let m = diag(&t, &[1, 2]);
        let tuple = MatrixTuple::new(t, vec![m.clone(), m.clone(), m]).unwrap();
        let err = tuple_rank_exhaustive(&tuple, 100).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { needed: 125, budget: 100 });
    }

    #[test]
    fn rationals_refuse_exhaustive_search() {
        let f = Rationals;
        let tuple = MatrixTuple::new(f.clone(), vec![diag(&f, &[1, 0])]).unwrap();
        assert_eq!(tuple_rank_exhaustive(&tuple, 1 << 20).unwrap_err(), Error::RationalEnumeration);
    }

    #[test]
    fn heuristic_mod_primes_is_flagged_uncertified() {
        let f = Rationals;
        let tuple =
            MatrixTuple::new(f.clone(), vec![diag(&f, &[1, 0]), diag(&f, &[0, 1])]).unwrap();
        let cert = tuple_rank_heuristic_mod_primes(&tuple, &[5, 7, 11], 1 << 20).unwrap();
        assert_eq!(cert.value, RankValue::Finite(1));
        assert!(!cert.certified);
        assert!(cert.witness.is_none());
        // a denominator of 5 knocks out that prime but not the others
        let half_fifth = Matrix::from_fn(f.clone(), 1, 1, |_, _| BigRational::new(1.into(), 5.into()));
        let tuple2 = MatrixTuple::new(f.clone(), vec![half_fifth]).unwrap();
        let cert2 = tuple_rank_heuristic_mod_primes(&tuple2, &[5, 7], 1 << 20).unwrap();
        assert_eq!(cert2.search_domain, "heuristic mod [7]");
        assert_eq!(tuple_rank_heuristic_mod_primes(&tuple2, &[5], 1 << 20).unwrap_err(),
            Error::Invalid("every probe prime divides a denominator".into()));
    }

    #[test]
    fn certificate_lower_bounds_every_combination() {
        let t = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let n = rng.random_range(2..=4);
            let s = rng.random_range(1..=2);
            let mats: Vec<_> = (0..s)
                .map(|_| Matrix::from_fn(t.clone(), n, n, |_, _| t.from_i64(rng.random_range(0..5))))
                .collect();
            let tuple = MatrixTuple::new(t.clone(), mats).unwrap();
            let cert = tuple_rank_exhaustive(&tuple, 1 << 20).unwrap();
            let v = cert.value.finite().unwrap();
            // sample a handful of random nonzero combinations
            for _ in 0..10 {
                let lambda: Vec<_> = (0..s).map(|_| t.from_i64(rng.random_range(0..5))).collect();
                if lambda.iter().all(|c| t.is_zero(c)) {
                    continue;
                }
                assert!(rank_at(&tuple, &lambda).unwrap() >= v);
            }
            // and the witness attains it
            assert_eq!(rank_at(&tuple, &cert.witness.unwrap()).unwrap(), v);
        }
    }

    #[test]
    fn tuple_rank_is_congruence_invariant() {
        let t = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..10 {
            let n = 4;
            let mats: Vec<_> = (0..2)
                .map(|_| Matrix::from_fn(t.clone(), n, n, |_, _| t.from_i64(rng.random_range(0..5))))
                .collect();
            let tuple = MatrixTuple::new(t.clone(), mats.clone()).unwrap();
            let g = loop {
                let cand =
                    Matrix::from_fn(t.clone(), n, n, |_, _| t.from_i64(rng.random_range(0..5)));
                if cand.rank() == n {
                    break cand;
                }
            };
            let moved: Vec<_> =
                mats.iter().map(|m| congruence_apply(&g, m).unwrap()).collect();
            let tuple_g = MatrixTuple::new(t.clone(), moved).unwrap();
            let a = tuple_rank_exhaustive(&tuple, 1 << 20).unwrap();
            let b = tuple_rank_exhaustive(&tuple_g, 1 << 20).unwrap();
            assert_eq!(a.value, b.value);
        }
    }

    /// Dropping components can only raise the minimum.
    #[test]
    fn subtuples_have_at_least_the_rank() {
        let t = Tower::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let n = 4;
            let mats: Vec<_> = (0..3)
                .map(|_| Matrix::from_fn(t.clone(), n, n, |_, _| t.from_i64(rng.random_range(0..5))))
                .collect();
            let full = MatrixTuple::new(t.clone(), mats.clone()).unwrap();
            let sub = MatrixTuple::new(t.clone(), mats[..2].to_vec()).unwrap();
            let vf = tuple_rank_exhaustive(&full, 1 << 20).unwrap().value.finite().unwrap();
            let vs = tuple_rank_exhaustive(&sub, 1 << 20).unwrap().value.finite().unwrap();
            assert!(vs >= vf);
        }
    }

    #[test]
    fn minimal_truncation_on_identity() {
        let t = Tower::new(5).unwrap();
        let tuple = MatrixTuple::new(t.clone(), vec![Matrix::identity(t.clone(), 5)]).unwrap();
        assert_eq!(minimal_truncation(&tuple, 3, 1 << 20).unwrap(), 3);
        assert_eq!(minimal_truncation(&tuple, 0, 1 << 20).unwrap(), 0);
        assert_eq!(minimal_truncation(&tuple, 5, 1 << 20).unwrap(), 5);
        assert!(matches!(
            minimal_truncation(&tuple, 6, 1 << 20),
            Err(Error::RankPrecondition(_))
        ));
    }
}
