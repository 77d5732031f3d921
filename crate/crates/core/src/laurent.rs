//! Laurent polynomials in one variable over a scalar backend.
//!
//! These are the coordinates of orbit-closure curves: a limit at t -> 0
//! is never taken numerically, it is the constant term of a polynomial
//! whose negative part vanished for structural reasons, and
//! [`LaurentRing::eval_at_zero`] fails loudly when it did not.
//!
//! [`LaurentPoly`] is plain data (a sorted degree -> coefficient map with
//! no zero values stored), so derived equality is semantic; arithmetic
//! goes through [`LaurentRing`], which carries the coefficient field.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Ring};

/// Finitely many terms `c * t^k`, k possibly negative. Invariant: no
/// stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<E> {
    terms: BTreeMap<i64, E>,
}

impl<E> LaurentPoly<E> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest degree with a nonzero coefficient; None for the zero
    /// polynomial.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, k: i64) -> Option<&E> {
        self.terms.get(&k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &E)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// The ring F[t, 1/t] for a scalar field F.
#[derive(Clone, Debug)]
pub struct LaurentRing<F: Field> {
    pub base: F,
}

impl<F: Field> LaurentRing<F> {
    pub fn new(base: F) -> Self {
        LaurentRing { base }
    }

    fn normalized(&self, terms: BTreeMap<i64, F::Elem>) -> LaurentPoly<F::Elem> {
        let terms = terms.into_iter().filter(|(_, c)| !self.base.is_zero(c)).collect();
        LaurentPoly { terms }
    }

    pub fn monomial(&self, c: F::Elem, k: i64) -> LaurentPoly<F::Elem> {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    pub fn constant(&self, c: F::Elem) -> LaurentPoly<F::Elem> {
        self.monomial(c, 0)
    }

    /// t^k (k may be negative).
    pub fn t_pow(&self, k: i64) -> LaurentPoly<F::Elem> {
        self.monomial(self.base.one(), k)
    }

    pub fn scale(&self, a: &LaurentPoly<F::Elem>, c: &F::Elem) -> LaurentPoly<F::Elem> {
        self.mul(a, &self.constant(c.clone()))
    }

    /// Multiply by t^k.
    pub fn shift(&self, a: &LaurentPoly<F::Elem>, k: i64) -> LaurentPoly<F::Elem> {
        LaurentPoly { terms: a.terms.iter().map(|(d, c)| (d + k, c.clone())).collect() }
    }

    /// The value at t = 0: the degree-0 coefficient, provided no term of
    /// negative degree survives.
    pub fn eval_at_zero(&self, a: &LaurentPoly<F::Elem>) -> Result<F::Elem> {
        if let Some(d) = a.min_degree() {
            if d < 0 {
                return Err(Error::NegativeDegree(d));
            }
        }
        Ok(a.coeff(0).cloned().unwrap_or_else(|| self.base.zero()))
    }

    /// Full evaluation at a nonzero point of the coefficient field.
    pub fn eval_at(&self, a: &LaurentPoly<F::Elem>, x: &F::Elem) -> Result<F::Elem> {
        let mut acc = self.base.zero();
        for (k, c) in a.terms() {
            let xk = self.base.pow_i64(x, k)?;
            acc = self.base.mul_add(&acc, c, &xk);
        }
        Ok(acc)
    }

    /// Units of F[t, 1/t] are exactly the single-term polynomials.
    pub fn is_unit(&self, a: &LaurentPoly<F::Elem>) -> bool {
        a.num_terms() == 1
    }
}

impl<F: Field> Ring for LaurentRing<F> {
    type Elem = LaurentPoly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        LaurentPoly { terms: BTreeMap::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = a.terms.clone();
        for (k, c) in &b.terms {
            let entry = terms.entry(*k).or_insert_with(|| self.base.zero());
            *entry = self.base.add(entry, c);
        }
        self.normalized(terms)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        LaurentPoly { terms: a.terms.iter().map(|(k, c)| (*k, self.base.neg(c))).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms: BTreeMap<i64, F::Elem> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k = ka + kb;
                let prod = self.base.mul(ca, cb);
                match terms.entry(k) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = self.base.add(e.get(), &prod);
                        e.insert(s);
                    }
                }
            }
        }
        self.normalized(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use num::BigRational;

    fn lr() -> LaurentRing<Rationals> {
        LaurentRing::new(Rationals)
    }

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn eval_at_zero_takes_the_constant_term() {
        let r = lr();
        // 3t^2 + 2
        let a = r.add(&r.monomial(q(3), 2), &r.constant(q(2)));
        assert_eq!(r.eval_at_zero(&a).unwrap(), q(2));
        // t alone evaluates to 0
        assert_eq!(r.eval_at_zero(&r.t_pow(1)).unwrap(), q(0));
        assert_eq!(r.eval_at_zero(&r.zero()).unwrap(), q(0));
    }

    #[test]
    fn eval_at_zero_rejects_surviving_poles() {
        let r = lr();
        // 2/t + 1
        let a = r.add(&r.monomial(q(2), -1), &r.one());
        assert_eq!(r.eval_at_zero(&a), Err(Error::NegativeDegree(-1)));
        // but a cancelled pole is fine: (2/t + 1) - 2/t
        let b = r.sub(&a, &r.monomial(q(2), -1));
        assert_eq!(r.eval_at_zero(&b).unwrap(), q(1));
    }

    #[test]
    fn units_are_single_terms() {
        let r = lr();
        assert!(r.is_unit(&r.monomial(q(2), -3)));
        assert!(r.is_unit(&r.one()));
        assert!(!r.is_unit(&r.add(&r.t_pow(1), &r.one())));
        assert!(!r.is_unit(&r.zero()));
    }

    #[test]
    fn product_collects_and_cancels() {
        let r = lr();
        // (1/t + 1)(t - 1) = 1/t * t - 1/t + t - 1 = t - 1/t
        let a = r.add(&r.t_pow(-1), &r.one());
        let b = r.sub(&r.t_pow(1), &r.one());
        let p = r.mul(&a, &b);
        assert_eq!(p, r.sub(&r.t_pow(1), &r.t_pow(-1)));
        assert_eq!(p.min_degree(), Some(-1));
        assert_eq!(p.max_degree(), Some(1));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn no_zero_coefficients_survive_arithmetic() {
        let r = lr();
        let a = r.add(&r.t_pow(2), &r.one());
        let b = r.neg(&r.t_pow(2));
        let s = r.add(&a, &b);
        assert_eq!(s.num_terms(), 1);
        assert_eq!(s.coeff(2), None);
        let z = r.sub(&a, &a);
        assert!(z.is_zero());
        assert_eq!(z.min_degree(), None);
    }

    #[test]
    fn degrees_add_under_multiplication() {
        let r = lr();
        let a = r.add(&r.monomial(q(2), -2), &r.monomial(q(1), 3));
        let b = r.add(&r.monomial(q(5), -1), &r.monomial(q(7), 4));
        let p = r.mul(&a, &b);
        // over a field there is no cancellation at the extreme degrees
        assert_eq!(p.min_degree(), Some(-3));
        assert_eq!(p.max_degree(), Some(7));
    }

    #[test]
    fn full_evaluation_handles_negative_degrees() {
        let r = lr();
        let a = r.add(&r.monomial(q(3), -1), &r.monomial(q(4), 2));
        // at x = 2: 3/2 + 16
        assert_eq!(r.eval_at(&a, &q(2)).unwrap(), BigRational::new(35.into(), 2.into()));
        assert_eq!(r.eval_at(&a, &q(0)), Err(Error::DivisionByZero));
        // shift by t^1 clears the pole
        let b = r.shift(&a, 1);
        assert_eq!(b.min_degree(), Some(0));
        assert_eq!(r.eval_at_zero(&b).unwrap(), q(3));
    }

    #[test]
    fn unit_flag_is_multiplicative_on_nonzero_inputs() {
        let r = lr();
        let u = r.monomial(q(2), -3);
        let v = r.monomial(q(3), 5);
        let w = r.add(&r.t_pow(1), &r.one());
        assert!(r.is_unit(&r.mul(&u, &v)));
        assert!(!r.is_unit(&r.mul(&u, &w)));
        assert!(!r.is_unit(&r.mul(&w, &w)));
    }
}
