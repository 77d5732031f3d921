//! Canonical forms under congruence and the staged block normal form.
//!
//! Over a field where every element has a square root the canonical
//! symmetric form is Id_r + 0 and the canonical skew form is a run of
//! 2x2 symplectic blocks. Over the rationals the symmetric form stays
//! diagonal (each pivot is normalized only when its square root is
//! rational) and the diagonal is reported as square-class data.
//!
//! `block_normal_form` drives a tuple with a planted or discovered free
//! subspace into the staggered pattern checked by [`BlockPattern`]: the
//! leading l x l corner of every component is zero, component i carries
//! Id_l in block row i+1 of the first l columns, and all other entries
//! of those columns vanish. The first l rows mirror the columns with the
//! component's sign.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::free::{verify_free, FreeSubspace};
use crate::laurent::LaurentRing;
use crate::matrix::{basis_completion, congruence_apply, GivenPosition, Matrix};
use crate::tuple::MatrixTuple;

/// Bilinear-form symmetry type of a tuple component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatKind {
    Symmetric,
    Skew,
}

impl MatKind {
    /// Sign of the mirrored block: +1 for symmetric, -1 for skew.
    pub fn sign<F: Field>(&self, f: &F) -> F::Elem {
        match self {
            MatKind::Symmetric => f.one(),
            MatKind::Skew => f.neg(&f.one()),
        }
    }

    pub fn detect<F: Field>(m: &Matrix<F>) -> Result<MatKind> {
        if m.is_symmetric() {
            Ok(MatKind::Symmetric)
        } else if m.is_skew() {
            Ok(MatKind::Skew)
        } else {
            Err(Error::Invalid("matrix is neither symmetric nor skew".into()))
        }
    }
}

/// Result of a congruence canonicalization: `g * input * g^T == form`.
#[derive(Debug, Clone)]
pub struct Canonicalized<F: Field> {
    pub g: Matrix<F>,
    pub form: Matrix<F>,
    pub rank: usize,
    /// Diagonal entries of the form for the symmetric case (all ones
    /// when every pivot had a square root); empty for skew.
    pub diag: Vec<F::Elem>,
}

/// Congruence sweep state; maintains `a == g * a0 * g^T`.
struct Sweep<F: Field> {
    f: F,
    a: Matrix<F>,
    g: Matrix<F>,
}

impl<F: Field> Sweep<F> {
    fn new(f: &F, m: &Matrix<F>) -> Self {
        Sweep { f: f.clone(), a: m.clone(), g: Matrix::identity(f.clone(), m.rows()) }
    }

    /// Swap basis vectors x and y.
    fn swap(&mut self, x: usize, y: usize) {
        if x == y {
            return;
        }
        let n = self.a.rows();
        for j in 0..n {
            let t = self.a.at(x, j).clone();
            self.a.set(x, j, self.a.at(y, j).clone());
            self.a.set(y, j, t);
        }
        for i in 0..n {
            let t = self.a.at(i, x).clone();
            self.a.set(i, x, self.a.at(i, y).clone());
            self.a.set(i, y, t);
        }
        for j in 0..self.g.cols() {
            let t = self.g.at(x, j).clone();
            self.g.set(x, j, self.g.at(y, j).clone());
            self.g.set(y, j, t);
        }
    }

    /// Basis op e_dst += c * e_src (dst != src).
    fn add(&mut self, dst: usize, src: usize, c: F::Elem) {
        debug_assert_ne!(dst, src);
        if self.f.is_zero(&c) {
            return;
        }
        let n = self.a.rows();
        for j in 0..n {
            let v = self.f.mul_add(self.a.at(dst, j), &c, self.a.at(src, j));
            self.a.set(dst, j, v);
        }
        for i in 0..n {
            let v = self.f.mul_add(self.a.at(i, dst), &c, self.a.at(i, src));
            self.a.set(i, dst, v);
        }
        for j in 0..self.g.cols() {
            let v = self.f.mul_add(self.g.at(dst, j), &c, self.g.at(src, j));
            self.g.set(dst, j, v);
        }
    }

    /// Basis op e_k *= c (c nonzero).
    fn scale(&mut self, k: usize, c: F::Elem) {
        let n = self.a.rows();
        for j in 0..n {
            let v = self.f.mul(self.a.at(k, j), &c);
            self.a.set(k, j, v);
        }
        for i in 0..n {
            let v = self.f.mul(self.a.at(i, k), &c);
            self.a.set(i, k, v);
        }
        for j in 0..self.g.cols() {
            let v = self.f.mul(self.g.at(k, j), &c);
            self.g.set(k, j, v);
        }
    }
}

/// Diagonalizes a symmetric matrix by congruence and normalizes each
/// pivot by its square root where one exists. Needs characteristic != 2
/// (guaranteed by the supported fields).
pub fn symmetric_canonical<F: Field>(f: &F, m: &Matrix<F>) -> Result<Canonicalized<F>> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows();
    let mut sw = Sweep::new(f, m);
    let mut k = 0;
    while k < n {
        if f.is_zero(sw.a.at(k, k)) {
            if let Some(t) = (k + 1..n).find(|&t| !f.is_zero(sw.a.at(t, t))) {
                sw.swap(k, t);
            } else {
                // all remaining diagonal entries are zero; a nonzero
                // off-diagonal pair (i,j) yields the pivot 2 a_ij
                let mut found = None;
                'search: for i in k..n {
                    for j in i + 1..n {
                        if !f.is_zero(sw.a.at(i, j)) {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                match found {
                    Some((i, j)) => {
                        sw.add(i, j, f.one());
                        sw.swap(k, i);
                    }
                    None => break,
                }
            }
        }
        let pinv = f.inv(sw.a.at(k, k))?;
        for t in k + 1..n {
            let c = f.neg(&f.mul(sw.a.at(t, k), &pinv));
            sw.add(t, k, c);
        }
        k += 1;
    }
    let rank = k;
    for i in 0..rank {
        let d = sw.a.at(i, i).clone();
        match f.sqrt(&d) {
            Ok(root) => {
                let c = f.inv(&root)?;
                sw.scale(i, c);
            }
            Err(Error::NonSquareRational(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let diag = (0..rank).map(|i| sw.a.at(i, i).clone()).collect();
    Ok(Canonicalized { g: sw.g, form: sw.a, rank, diag })
}

/// Reduces a skew matrix to symplectic 2x2 blocks followed by zeros.
/// Works over any field of characteristic != 2; no square roots needed.
pub fn skew_canonical<F: Field>(f: &F, m: &Matrix<F>) -> Result<Canonicalized<F>> {
    if !m.is_skew() {
        return Err(Error::NotSkew);
    }
    let n = m.rows();
    let mut sw = Sweep::new(f, m);
    let mut k = 0;
    while k + 1 < n {
        let mut found = None;
        'search: for i in k..n {
            for j in i + 1..n {
                if !f.is_zero(sw.a.at(i, j)) {
                    found = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = found else { break };
        sw.swap(k, i);
        // j > i >= k survives the first swap untouched
        sw.swap(k + 1, j);
        let c = f.inv(sw.a.at(k, k + 1))?;
        sw.scale(k + 1, c);
        for t in k + 2..n {
            let alpha = f.neg(sw.a.at(t, k + 1));
            sw.add(t, k, alpha);
            let beta = sw.a.at(t, k).clone();
            sw.add(t, k + 1, beta);
        }
        k += 2;
    }
    Ok(Canonicalized { g: sw.g, form: sw.a, rank: k, diag: Vec::new() })
}

/// Canonicalization dispatched on the symmetry kind.
pub fn canonical_form<F: Field>(f: &F, kind: MatKind, m: &Matrix<F>) -> Result<Canonicalized<F>> {
    match kind {
        MatKind::Symmetric => symmetric_canonical(f, m),
        MatKind::Skew => skew_canonical(f, m),
    }
}

/// A matrix of the given symmetry kind with exact rank `r` whose leading
/// `corner x corner` block is zero. Uses as many hyperbolic pairs
/// between corner and off-corner coordinates as possible, then unit
/// diagonal entries (symmetric) or off-corner pairs (skew).
///
/// Feasible iff r <= size, r <= 2*(size - corner), and r is even in the
/// skew case.
pub fn rank_r_zero_corner_witness<F: Field>(
    f: &F,
    kind: MatKind,
    size: usize,
    corner: usize,
    r: usize,
) -> Result<Matrix<F>> {
    if corner > size {
        return Err(Error::Shape(format!("corner {corner} exceeds size {size}")));
    }
    if r > size {
        return Err(Error::Infeasible(format!("rank {r} exceeds size {size}")));
    }
    if r > 2 * (size - corner) {
        return Err(Error::Infeasible(format!(
            "rank {r} impossible with a zero {corner}-corner in size {size}"
        )));
    }
    if kind == MatKind::Skew && r % 2 != 0 {
        return Err(Error::Infeasible(format!("skew rank must be even, got {r}")));
    }
    let mut m = Matrix::zeros(f.clone(), size, size);
    let pairs = (r / 2).min(corner).min(size - corner);
    for i in 0..pairs {
        m.set(i, corner + i, f.one());
        let lower = kind.sign(f);
        m.set(corner + i, i, lower);
    }
    match kind {
        MatKind::Symmetric => {
            // unit diagonal entries on unused off-corner coordinates
            for u in 0..r - 2 * pairs {
                m.set(corner + pairs + u, corner + pairs + u, f.one());
            }
        }
        MatKind::Skew => {
            // remaining rank in symplectic pairs of off-corner coords
            for t in 0..r / 2 - pairs {
                let x = corner + pairs + 2 * t;
                m.set(x, x + 1, f.one());
                m.set(x + 1, x, f.neg(&f.one()));
            }
        }
    }
    debug_assert!(m.rank() == r);
    Ok(m)
}

/// Expected value of a single pattern position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Zero,
    One,
    NegOne,
    Any,
}

/// The staggered block pattern delivered by [`block_normal_form`]:
/// per component, a zero l x l corner, Id_l in block row i+1 of the
/// first l columns (zero in every other row), and the mirrored first l
/// rows with the component's sign. With `strengthened` set, every block
/// inside rows/cols l..(s+1)l must vanish as well; that variant is
/// reached in the limit of the scaling curve, not by a single group
/// element.
#[derive(Debug, Clone, Copy)]
pub struct BlockPattern {
    pub s: usize,
    pub l: usize,
    pub strengthened: bool,
}

impl BlockPattern {
    pub fn expected(&self, comp: usize, kind: MatKind, a: usize, b: usize) -> Expected {
        let (s, l) = (self.s, self.l);
        if a < l && b < l {
            return Expected::Zero;
        }
        if b < l {
            // first l columns: Id_l in block row comp+1, zero elsewhere
            if a >= (s + 1) * l {
                return Expected::Zero;
            }
            let block = a / l;
            if block == comp + 1 {
                return if a % l == b { Expected::One } else { Expected::Zero };
            }
            return Expected::Zero;
        }
        if a < l {
            if b >= (s + 1) * l {
                return Expected::Zero;
            }
            let block = b / l;
            if block == comp + 1 {
                return if b % l == a {
                    match kind {
                        MatKind::Symmetric => Expected::One,
                        MatKind::Skew => Expected::NegOne,
                    }
                } else {
                    Expected::Zero
                };
            }
            return Expected::Zero;
        }
        if self.strengthened && a < (s + 1) * l && b < (s + 1) * l {
            return Expected::Zero;
        }
        Expected::Any
    }

    /// Violations of the pattern across all components; empty means the
    /// pattern holds.
    pub fn check<F: Field>(&self, f: &F, mats: &[Matrix<F>], kinds: &[MatKind]) -> Vec<String> {
        let mut out = Vec::new();
        if mats.len() != self.s || kinds.len() != self.s {
            out.push(format!("expected {} components, got {}", self.s, mats.len()));
            return out;
        }
        for (comp, (m, kind)) in mats.iter().zip(kinds).enumerate() {
            if m.rows() != m.cols() || m.rows() < (self.s + 1) * self.l {
                out.push(format!(
                    "component {comp}: size {}x{} below pattern size {}",
                    m.rows(),
                    m.cols(),
                    (self.s + 1) * self.l
                ));
                continue;
            }
            for a in 0..m.rows() {
                for b in 0..m.cols() {
                    let want = match self.expected(comp, *kind, a, b) {
                        Expected::Zero => f.zero(),
                        Expected::One => f.one(),
                        Expected::NegOne => f.neg(&f.one()),
                        Expected::Any => continue,
                    };
                    if *m.at(a, b) != want {
                        out.push(format!(
                            "component {comp}: entry ({a},{b}) is {:?}, expected {:?}",
                            m.at(a, b),
                            want
                        ));
                    }
                }
            }
        }
        out
    }
}

/// Drives `tuple` into the [`BlockPattern`] using a free subspace of
/// dimension 2^s * l. Returns g with `g M_i g^T` in the pattern for
/// every component.
///
/// Three stages: the free subspace is moved to the leading coordinates;
/// then for each component in turn a rank-preserving transport replaces
/// its active corner with a same-rank matrix whose half-size corner is
/// zero, halving the active window; finally a block map fixes the first
/// l columns of every component to the staggered identity blocks.
pub fn block_normal_form<F: Field>(
    f: &F,
    tuple: &MatrixTuple<F>,
    free: &FreeSubspace<F>,
    l: usize,
) -> Result<Matrix<F>> {
    let s = tuple.len();
    let d = tuple.rows();
    if tuple.cols() != d {
        return Err(Error::Shape(format!("tuple must be square, got {}x{}", d, tuple.cols())));
    }
    let kinds: Vec<MatKind> =
        tuple.components().iter().map(MatKind::detect).collect::<Result<_>>()?;
    let m_dim = free.basis.cols();
    if m_dim != (1usize << s) * l {
        return Err(Error::Invalid(format!(
            "free subspace has dimension {m_dim}, the pattern needs {}",
            (1usize << s) * l
        )));
    }
    if free.basis.rows() != d {
        return Err(Error::Shape(format!(
            "subspace lives in dimension {}, tuple in {}",
            free.basis.rows(),
            d
        )));
    }
    if d < (s + 1) * l {
        return Err(Error::Infeasible(format!(
            "pattern needs size at least {}, tuple has {d}",
            (s + 1) * l
        )));
    }
    if !verify_free(tuple, &free.basis) {
        return Err(Error::Invalid("subspace is not free for the tuple".into()));
    }

    // stage 1: the subspace becomes the span of the leading coordinates
    let p = basis_completion(&free.basis, GivenPosition::First)?;
    let mut g = p.transpose();
    let mut z: Vec<Matrix<F>> = tuple
        .components()
        .iter()
        .map(|mat| congruence_apply(&g, mat))
        .collect::<Result<_>>()?;

    // stage 2: per component, transport the active corner to a same-rank
    // form with zero half corner; the window halves each step, so
    // earlier components' zero corners are preserved
    for comp in 0..s {
        let active = (1usize << (s - comp)) * l;
        let corner = active / 2;
        let w = z[comp].block(0, 0, active, active);
        let c1 = canonical_form(f, kinds[comp], &w)?;
        let wit = rank_r_zero_corner_witness(f, kinds[comp], active, corner, c1.rank)?;
        let c2 = canonical_form(f, kinds[comp], &wit)?;
        if c1.form != c2.form {
            return Err(Error::Infeasible(
                "square classes obstruct the corner transport over this field".into(),
            ));
        }
        let h = c2.g.inverse()?.mul(&c1.g);
        let h_full = h.direct_sum(&Matrix::identity(f.clone(), d - active));
        for mat in &mut z {
            *mat = congruence_apply(&h_full, mat)?;
        }
        g = h_full.mul(&g);
        debug_assert!(z[comp].block(0, 0, corner, corner).is_zero());
    }

    // stage 3: send the joint images of the first l basis vectors to the
    // staggered identity blocks. With rows 0..l of g3 pinned to [Id 0],
    // the new first l columns of each component are g3 * (old columns),
    // so an invertible block Y with Y * Jbar = [Id_sl; 0] finishes.
    let mut jmat = Matrix::zeros(f.clone(), d, s * l);
    for (i, zi) in z.iter().enumerate() {
        jmat.set_block(0, i * l, &zi.block(0, 0, d, l));
    }
    debug_assert!(jmat.block(0, 0, l, s * l).is_zero());
    let jbar = jmat.block(l, 0, d, s * l);
    let abar = basis_completion(&jbar, GivenPosition::First)?;
    // the target [Id_sl; 0] completes to the identity, so Y = abar^-1
    let y = abar.inverse()?;
    let g3 = Matrix::identity(f.clone(), l).direct_sum(&y);
    g = g3.mul(&g);
    Ok(g)
}

/// Scaling curve diag(t^-1 Id_l, t Id_(size-l)) over the Laurent ring.
/// Conjugation multiplies the leading corner by t^-2 (legal only where
/// it already vanishes), the mirrored off-corner blocks by 1, and
/// everything else by t or t^2, which dies in the limit at t = 0.
pub fn closure_scaling_curve<F: Field>(
    f: &F,
    l: usize,
    size: usize,
) -> Result<Matrix<LaurentRing<F>>> {
    if l > size {
        return Err(Error::Shape(format!("corner {l} exceeds size {size}")));
    }
    let ring = LaurentRing::new(f.clone());
    let mut c = Matrix::zeros(ring.clone(), size, size);
    for i in 0..size {
        let e = if i < l { -1 } else { 1 };
        c.set(i, i, ring.monomial(f.one(), e));
    }
    Ok(c)
}
