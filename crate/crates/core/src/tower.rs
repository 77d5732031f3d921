//! Iterated quadratic extension tower over a small odd prime p.
//!
//! Level k is the field with p^(2^k) elements, built as
//! F(k) = F(k-1)[T]/(T^2 - d(k-1)) where d(k-1) is a quadratic
//! non-residue of F(k-1). The list of adjoined non-residues is the whole
//! state of a [`Tower`]; it grows on demand (square roots of
//! non-residues, forced growth for sampling pools) and growth is
//! monotone: elements created earlier keep their meaning and their
//! canonical form.
//!
//! An element of level k is a vector of 2^k coefficients in F_p over the
//! multi-quadratic basis (index bitmask S picks the product of the
//! adjoined roots in S). Canonical form trims the level while the top
//! half of the vector is zero, so every field element has exactly one
//! representation and derived equality on [`TowerElem`] is semantic.
//! The canonical order compares (level, coefficient vector) lexically;
//! deterministic scans (non-residue search, order search) walk it
//! restricted to vectors outside proper subfields, which is sound
//! because every element of a proper subfield is a square one level up.
//!
//! Extensions take the single write lock; all arithmetic takes read
//! locks, so concurrent readers are safe and writers are serialized.

use std::cmp::Ordering;
use std::sync::{Arc, RwLock};

use num::{BigUint, One};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Ring};

/// Levels beyond this are rejected outright; 2^20 coefficients per
/// element is far past anything the search layers can drive.
const MAX_LEVEL: u32 = 20;

/// Canonical tower element: `coeffs.len() == 1 << level` and, unless
/// level is 0, the top half of `coeffs` is not all zero.
///
/// The derived `Ord` is exactly the documented canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TowerElem {
    level: u32,
    coeffs: Vec<u64>,
}

impl TowerElem {
    /// Trims to canonical form.
    fn make(mut level: u32, mut coeffs: Vec<u64>) -> Self {
        assert_eq!(coeffs.len(), 1usize << level);
        while level > 0 {
            let h = coeffs.len() / 2;
            if coeffs[h..].iter().all(|&c| c == 0) {
                coeffs.truncate(h);
                level -= 1;
            } else {
                break;
            }
        }
        TowerElem { level, coeffs }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn lifted(&self, level: u32) -> Vec<u64> {
        let mut v = self.coeffs.clone();
        v.resize(1usize << level, 0);
        v
    }
}

struct Adjoined {
    elem: TowerElem,
    /// Same element padded to length 2^i for use inside level-(i+1) products.
    lifted: Vec<u64>,
}

struct TowerInner {
    p: u64,
    adjoined: RwLock<Vec<Adjoined>>,
}

/// Shared handle to one extension tower. Cloning shares state: growth
/// through any clone is visible to all of them.
#[derive(Clone)]
pub struct Tower {
    inner: Arc<TowerInner>,
}

impl std::fmt::Debug for Tower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tower")
            .field("p", &self.inner.p)
            .field("levels", &self.top_level())
            .finish()
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Tower {
    /// Base field F_p. Rejects 2 (the whole pipeline needs 1/2) and
    /// non-primes.
    pub fn new(p: u64) -> Result<Tower> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if p >= 1 << 31 || !is_odd_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(Tower { inner: Arc::new(TowerInner { p, adjoined: RwLock::new(Vec::new()) }) })
    }

    pub fn prime(&self) -> u64 {
        self.inner.p
    }

    /// Highest level currently constructed (0 = just the base field).
    pub fn top_level(&self) -> u32 {
        self.inner.adjoined.read().unwrap().len() as u32
    }

    pub fn adjoined_snapshot(&self) -> Vec<TowerElem> {
        self.inner.adjoined.read().unwrap().iter().map(|a| a.elem.clone()).collect()
    }

    /// Number of elements at `level`, when it fits in u128.
    pub fn field_size(&self, level: u32) -> Result<u128> {
        if level > MAX_LEVEL {
            return Err(Error::Infeasible(format!("tower level {level} exceeds cap {MAX_LEVEL}")));
        }
        let mut size = self.inner.p as u128;
        for _ in 0..level {
            size = size
                .checked_mul(size)
                .ok_or_else(|| Error::Infeasible(format!("field size at level {level} overflows")))?;
        }
        Ok(size)
    }

    /// Validated element from raw parts; used by the JSON boundary.
    pub fn elem_from_parts(&self, level: u32, coeffs: Vec<u64>) -> Result<TowerElem> {
        if level > MAX_LEVEL || coeffs.len() != 1usize << level {
            return Err(Error::Invalid(format!(
                "tower element needs 2^level coefficients, got {} at level {level}",
                coeffs.len()
            )));
        }
        if level > self.top_level() {
            return Err(Error::Invalid(format!(
                "element level {level} exceeds tower top level {}",
                self.top_level()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::Invalid(format!("coefficient out of range mod {}", self.inner.p)));
        }
        Ok(TowerElem::make(level, coeffs))
    }

    /// Rebuilds a tower from its serialized adjoined chain, revalidating
    /// that every entry is a genuine non-residue at its step.
    pub fn from_adjoined(p: u64, chain: &[(u32, Vec<u64>)]) -> Result<Tower> {
        let tower = Tower::new(p)?;
        for (level, coeffs) in chain {
            let elem = tower.elem_from_parts(*level, coeffs.clone())?;
            if tower.is_residue(&elem) {
                return Err(Error::Invalid(format!(
                    "adjoined entry {elem:?} is a residue at level {}",
                    tower.top_level()
                )));
            }
            let top = tower.top_level();
            let lifted = elem.lifted(top);
            tower.inner.adjoined.write().unwrap().push(Adjoined { elem, lifted });
        }
        Ok(tower)
    }

    // ----- coefficient-vector arithmetic (length = 2^level) -----

    fn subv(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.inner.p;
        a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
    }

    fn negv(&self, a: &[u64]) -> Vec<u64> {
        let p = self.inner.p;
        a.iter().map(|&x| (p - x) % p).collect()
    }

    /// Product at the level given by slice length. One recursive step is
    /// Karatsuba on the quadratic split plus one product by the adjoined
    /// non-residue. Writes into `out` (same length as the inputs) and uses
    /// `scratch` (at least 4x that length) instead of allocating.
    fn mul_flat(&self, a: &[u64], b: &[u64], adj: &[Adjoined], out: &mut [u64], scratch: &mut [u64]) {
        let p = self.inner.p;
        debug_assert_eq!(a.len(), b.len());
        debug_assert_eq!(a.len(), out.len());
        if a.len() == 1 {
            out[0] = (a[0] * b[0]) % p;
            return;
        }
        let h = a.len() / 2;
        let level = a.len().trailing_zeros() as usize;
        let (a0, a1) = a.split_at(h);
        let (b0, b1) = b.split_at(h);
        let (s, rest) = scratch.split_at_mut(4 * h);
        let (s0, s) = s.split_at_mut(h);
        let (s1, s) = s.split_at_mut(h);
        let (s2, s3) = s.split_at_mut(h);
        self.mul_flat(a0, b0, adj, s0, rest);
        self.mul_flat(a1, b1, adj, s1, rest);
        for i in 0..h {
            s2[i] = (a0[i] + a1[i]) % p;
            s3[i] = (b0[i] + b1[i]) % p;
        }
        let (out0, out1) = out.split_at_mut(h);
        self.mul_flat(s2, s3, adj, out1, rest);
        // cross term (a0+a1)(b0+b1) - a0b0 - a1b1; operands are < p so the
        // 2p offset keeps the subtraction in range
        for i in 0..h {
            out1[i] = (out1[i] + 2 * p - s0[i] - s1[i]) % p;
        }
        let d = &adj[level - 1].lifted;
        self.mul_flat(s1, d, adj, s2, rest);
        for i in 0..h {
            out0[i] = (s0[i] + s2[i]) % p;
        }
    }

    /// Full product written into `out`, which must have the length of the
    /// higher operand level. A level-0 operand degenerates to coefficient
    /// scaling, and a genuinely lower one multiplies each basis chunk of
    /// the higher independently, so nothing is lifted or cloned.
    fn mul_into(&self, a: &TowerElem, b: &TowerElem, out: &mut [u64]) {
        let p = self.inner.p;
        debug_assert_eq!(out.len(), 1usize << a.level.max(b.level));
        let (lo, hi) = if a.level <= b.level { (a, b) } else { (b, a) };
        if lo.level == 0 {
            let c = lo.coeffs[0];
            for (o, &x) in out.iter_mut().zip(&hi.coeffs) {
                *o = c * x % p;
            }
            return;
        }
        let m = lo.coeffs.len();
        let mut stack = [0u64; 256];
        let mut heap;
        let scratch = if 4 * m <= stack.len() {
            &mut stack[..]
        } else {
            heap = vec![0u64; 4 * m];
            &mut heap[..]
        };
        let adj = self.inner.adjoined.read().unwrap();
        for (oc, hc) in out.chunks_mut(m).zip(hi.coeffs.chunks(m)) {
            self.mul_flat(&lo.coeffs, hc, &adj, oc, scratch);
        }
    }

    fn mulv(&self, a: &[u64], b: &[u64], adj: &[Adjoined]) -> Vec<u64> {
        let mut out = vec![0u64; a.len()];
        let mut stack = [0u64; 256];
        let mut heap;
        let scratch = if 4 * a.len() <= stack.len() {
            &mut stack[..]
        } else {
            heap = vec![0u64; 4 * a.len()];
            &mut heap[..]
        };
        self.mul_flat(a, b, adj, &mut out, scratch);
        out
    }

    /// Inverse by norm descent: (a0 + a1 T)^-1 = (a0 - a1 T) / (a0^2 - a1^2 d).
    /// The norm is nonzero for nonzero input precisely because d is a
    /// non-residue one level down.
    fn invv(&self, a: &[u64], adj: &[Adjoined]) -> Result<Vec<u64>> {
        let p = self.inner.p;
        if a.len() == 1 {
            if a[0] == 0 {
                return Err(Error::DivisionByZero);
            }
            return Ok(vec![pow_mod(a[0], p - 2, p)]);
        }
        let h = a.len() / 2;
        let level = a.len().trailing_zeros() as usize;
        let (a0, a1) = a.split_at(h);
        let a0sq = self.mulv(a0, a0, adj);
        let a1sq = self.mulv(a1, a1, adj);
        let d = &adj[level - 1].lifted;
        let norm = self.subv(&a0sq, &self.mulv(&a1sq, d, adj));
        let ninv = self.invv(&norm, adj)?;
        let mut out = self.mulv(a0, &ninv, adj);
        out.extend(self.negv(&self.mulv(a1, &ninv, adj)));
        Ok(out)
    }

    fn powv_big(&self, a: &[u64], e: &BigUint, adj: &[Adjoined]) -> Vec<u64> {
        let mut acc = onev(a.len());
        let mut sq = a.to_vec();
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = self.mulv(&acc, &sq, adj);
            }
            if i + 1 < e.bits() {
                sq = self.mulv(&sq, &sq, adj);
            }
        }
        acc
    }

    // ----- residues and square roots -----

    /// Euler criterion for `a` viewed inside `level` (which must be at
    /// least the canonical level of `a`).
    fn is_residue_at(&self, a: &TowerElem, level: u32) -> bool {
        debug_assert!(a.level <= level);
        if a.coeffs.iter().all(|&c| c == 0) {
            return true;
        }
        let adj = self.inner.adjoined.read().unwrap();
        let q = BigUint::from(self.inner.p).pow(1u32 << level);
        let e = (&q - BigUint::one()) / BigUint::from(2u32);
        let r = self.powv_big(&a.lifted(level), &e, &adj);
        is_onev(&r)
    }

    /// Euler criterion at the element's own level.
    pub fn is_residue(&self, a: &TowerElem) -> bool {
        self.is_residue_at(a, a.level)
    }

    /// Tonelli-Shanks inside level `level`; `a` must be a residue there.
    fn tonelli_shanks(&self, a: &TowerElem, level: u32) -> TowerElem {
        let adj = self.inner.adjoined.read().unwrap();
        let av = a.lifted(level);
        let q = BigUint::from(self.inner.p).pow(1u32 << level);
        let q1 = &q - BigUint::one();
        let e2 = q1.trailing_zeros().expect("q - 1 > 0") as u32;
        let m = &q1 >> e2;

        let z = self
            .scan_level(level, |cand| !self.is_onev_pow_half(cand, &q1, &adj))
            .expect("half of all elements are non-residues");
        let mut c = self.powv_big(&z, &m, &adj);
        let mut x = self.powv_big(&av, &((&m + BigUint::one()) >> 1), &adj);
        let mut t = self.powv_big(&av, &m, &adj);
        let mut e = e2;
        while !is_onev(&t) {
            let mut i = 0u32;
            let mut s = t.clone();
            while !is_onev(&s) {
                s = self.mulv(&s, &s, &adj);
                i += 1;
            }
            debug_assert!(i < e, "input must be a residue");
            let mut b = c.clone();
            for _ in 0..e - i - 1 {
                b = self.mulv(&b, &b, &adj);
            }
            x = self.mulv(&x, &b, &adj);
            c = self.mulv(&b, &b, &adj);
            t = self.mulv(&t, &c, &adj);
            e = i;
        }
        drop(adj);
        self.canonical_sign(TowerElem::make(level, x))
    }

    fn is_onev_pow_half(&self, v: &[u64], q1: &BigUint, adj: &[Adjoined]) -> bool {
        let r = self.powv_big(v, &(q1 >> 1), adj);
        is_onev(&r)
    }

    /// Walks level-`level` coefficient vectors in canonical order,
    /// restricted to elements outside every proper subfield (top half
    /// nonzero), and returns the first one satisfying `pred`. Level 0
    /// walks 1..p.
    fn scan_level(&self, level: u32, pred: impl Fn(&[u64]) -> bool) -> Option<Vec<u64>> {
        let len = 1usize << level;
        let h = len / 2;
        let mut v = vec![0u64; len];
        loop {
            let genuine = if level == 0 {
                v[0] != 0
            } else {
                v[h..].iter().any(|&c| c != 0)
            };
            if genuine && pred(&v) {
                return Some(v);
            }
            if !increment(&mut v, self.inner.p) {
                return None;
            }
        }
    }

    /// The smaller of b and -b in canonical order.
    fn canonical_sign(&self, b: TowerElem) -> TowerElem {
        let nb = TowerElem::make(b.level, self.negv(&b.coeffs));
        if nb < b {
            nb
        } else {
            b
        }
    }

    /// Adjoins a verified non-residue, creating one new level.
    fn push_extension(&self, elem: TowerElem) {
        let mut adj = self.inner.adjoined.write().unwrap();
        let top = adj.len() as u32;
        debug_assert!(elem.level <= top);
        let lifted = elem.lifted(top);
        adj.push(Adjoined { elem, lifted });
    }

    /// Adds one level using the first non-residue at the current top, in
    /// canonical scan order.
    pub fn grow_one_level(&self) -> Result<()> {
        let top = self.top_level();
        if top >= MAX_LEVEL {
            return Err(Error::Infeasible(format!("tower level cap {MAX_LEVEL} reached")));
        }
        let q1 = &BigUint::from(self.inner.p).pow(1u32 << top) - BigUint::one();
        let z = {
            let adj = self.inner.adjoined.read().unwrap();
            self.scan_level(top, |cand| !self.is_onev_pow_half(cand, &q1, &adj))
                .expect("non-residues exist at every level")
        };
        self.push_extension(TowerElem::make(top, z));
        Ok(())
    }

    /// Grows until the top level holds at least `min_size` elements.
    pub fn grow_to_size(&self, min_size: u128) -> Result<()> {
        while self.field_size(self.top_level())? < min_size {
            self.grow_one_level()?;
        }
        Ok(())
    }

    /// Uniform element of the smallest level whose field size reaches
    /// `min_size`, growing the tower if that level does not exist yet.
    pub fn sample_with_min_size(
        &self,
        min_size: u128,
        rng: &mut dyn rand::RngCore,
    ) -> Result<TowerElem> {
        let mut level = 0u32;
        while self.field_size(level)? < min_size {
            level += 1;
        }
        while self.top_level() < level {
            self.grow_one_level()?;
        }
        let p = self.inner.p;
        let coeffs = (0..1usize << level).map(|_| rng.random_range(0..p)).collect();
        Ok(TowerElem::make(level, coeffs))
    }
}

fn onev(len: usize) -> Vec<u64> {
    let mut v = vec![0u64; len];
    v[0] = 1;
    v
}

fn is_onev(v: &[u64]) -> bool {
    v[0] == 1 && v[1..].iter().all(|&c| c == 0)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Odometer step in canonical (lexicographic) order: the last index is
/// least significant. Returns false on wrap-around.
fn increment(v: &mut [u64], p: u64) -> bool {
    for c in v.iter_mut().rev() {
        *c += 1;
        if *c < p {
            return true;
        }
        *c = 0;
    }
    false
}

impl Ring for Tower {
    type Elem = TowerElem;

    fn zero(&self) -> TowerElem {
        TowerElem { level: 0, coeffs: vec![0] }
    }

    fn one(&self) -> TowerElem {
        TowerElem { level: 0, coeffs: vec![1] }
    }

    fn from_i64(&self, n: i64) -> TowerElem {
        let p = self.inner.p as i128;
        TowerElem { level: 0, coeffs: vec![(n as i128).rem_euclid(p) as u64] }
    }

    fn is_zero(&self, a: &TowerElem) -> bool {
        a.level == 0 && a.coeffs[0] == 0
    }

    fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        let p = self.inner.p;
        let (lo, hi) = if a.level <= b.level { (a, b) } else { (b, a) };
        let mut out = hi.coeffs.clone();
        for (o, &x) in out.iter_mut().zip(&lo.coeffs) {
            *o = (*o + x) % p;
        }
        TowerElem::make(hi.level, out)
    }

    fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        let p = self.inner.p;
        let level = a.level.max(b.level);
        let mut out = a.lifted(level);
        for (o, &x) in out.iter_mut().zip(&b.coeffs) {
            *o = (*o + p - x) % p;
        }
        TowerElem::make(level, out)
    }

    fn neg(&self, a: &TowerElem) -> TowerElem {
        TowerElem::make(a.level, self.negv(&a.coeffs))
    }

    fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        let level = a.level.max(b.level);
        let mut out = vec![0u64; 1usize << level];
        self.mul_into(a, b, &mut out);
        TowerElem::make(level, out)
    }

    /// Accumulation without the intermediate element: one allocation for
    /// `acc + a * b` instead of two.
    fn mul_add(&self, acc: &TowerElem, a: &TowerElem, b: &TowerElem) -> TowerElem {
        if self.is_zero(a) || self.is_zero(b) {
            return acc.clone();
        }
        let p = self.inner.p;
        let prod_level = a.level.max(b.level);
        let level = prod_level.max(acc.level);
        let mut out = vec![0u64; 1usize << level];
        self.mul_into(a, b, &mut out[..1usize << prod_level]);
        for (o, &x) in out.iter_mut().zip(&acc.coeffs) {
            *o = (*o + x) % p;
        }
        TowerElem::make(level, out)
    }
}

impl Field for Tower {
    fn inv(&self, a: &TowerElem) -> Result<TowerElem> {
        let adj = self.inner.adjoined.read().unwrap();
        let out = self.invv(&a.coeffs, &adj)?;
        drop(adj);
        Ok(TowerElem::make(a.level, out))
    }

    fn canonical_cmp(&self, a: &TowerElem, b: &TowerElem) -> Ordering {
        a.cmp(b)
    }

    /// Always succeeds. Residues take a Tonelli-Shanks root at the
    /// smallest level containing one; a non-residue at its own level is a
    /// residue one level up when that level exists, and otherwise the
    /// element itself is adjoined, making T the root. The returned root
    /// is the canonically smaller of the pair.
    fn sqrt(&self, a: &TowerElem) -> Result<TowerElem> {
        if self.is_zero(a) {
            return Ok(self.zero());
        }
        let root = if self.is_residue_at(a, a.level) {
            self.tonelli_shanks(a, a.level)
        } else if a.level < self.top_level() {
            // A non-residue of F(k) is a residue of F(k+1): Euler's
            // criterion gives (-1)^(q+1) = 1 there.
            self.tonelli_shanks(a, a.level + 1)
        } else {
            if a.level >= MAX_LEVEL {
                return Err(Error::Infeasible(format!("tower level cap {MAX_LEVEL} reached")));
            }
            self.push_extension(a.clone());
            let top = self.top_level();
            let mut coeffs = vec![0u64; 1usize << top];
            coeffs[1usize << (top - 1)] = 1;
            self.canonical_sign(TowerElem::make(top, coeffs))
        };
        debug_assert_eq!(self.mul(&root, &root), *a);
        Ok(root)
    }

    /// Uniform element of the smallest level with at least `min_pool`
    /// elements; keeps element size tied to the caller's need rather
    /// than to whatever the tower has grown to.
    fn sample(&self, rng: &mut dyn rand::RngCore, min_pool: u64) -> Result<TowerElem> {
        self.sample_with_min_size(u128::from(min_pool), rng)
    }

    fn enumeration_size(&self, elems: &[TowerElem]) -> Option<u128> {
        let level = elems.iter().map(|e| e.level).max().unwrap_or(0);
        self.field_size(level).ok()
    }

    /// Every element of the smallest level containing `elems`, in
    /// canonical order: by canonical level, then lexicographically.
    fn enumerate(&self, elems: &[TowerElem]) -> Option<Vec<TowerElem>> {
        let level = elems.iter().map(|e| e.level).max().unwrap_or(0);
        let size = self.field_size(level).ok()?;
        let mut out = Vec::with_capacity(usize::try_from(size).ok()?);
        for cl in 0..=level {
            let len = 1usize << cl;
            let h = len / 2;
            let mut v = vec![0u64; len];
            loop {
                if cl == 0 || v[h..].iter().any(|&c| c != 0) {
                    out.push(TowerElem { level: cl, coeffs: v.clone() });
                }
                if !increment(&mut v, self.inner.p) {
                    break;
                }
            }
        }
        Some(out)
    }

    /// First element in canonical scan order whose order exceeds `bound`,
    /// verified by checking all powers up to `bound`; looks at the
    /// smallest level with more than `bound + 1` elements, growing the
    /// tower to it when necessary.
    fn elem_of_order_gt(&self, bound: u64) -> Result<TowerElem> {
        let mut level = 0u32;
        loop {
            let size = self.field_size(level)?;
            if size > u128::from(bound) + 1 {
                while self.top_level() < level {
                    self.grow_one_level()?;
                }
                let adj = self.inner.adjoined.read().unwrap();
                let found = self.scan_level(level, |cand| {
                    let mut pow = cand.to_vec();
                    for _ in 1..=bound {
                        if is_onev(&pow) {
                            return false;
                        }
                        pow = self.mulv(&pow, cand, &adj);
                    }
                    !is_onev(&pow)
                });
                drop(adj);
                if let Some(v) = found {
                    return Ok(TowerElem::make(level, v));
                }
            }
            level += 1;
            if level > MAX_LEVEL {
                return Err(Error::Infeasible(format!(
                    "no element of order > {bound} below the level cap"
                )));
            }
        }
    }

    fn rank_slice(&self, rows: usize, cols: usize, data: &[TowerElem]) -> usize {
        crate::field::gaussian_rank(self, rows, cols, data)
    }
}
