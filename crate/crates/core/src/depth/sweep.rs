//! Angular sweep for planar colorful depth.
//!
//! A colorful triangle misses `q` exactly when its three vertices lie in an
//! open half-plane bounded by a line through `q`; such a triple is counted
//! once, at its angularly first vertex. Angles are never computed: points are
//! ordered by half-plane and then by exact cross products.
//!
//! The sweep also runs around a symbolic query `v + εu` with `ε → 0+`. Every
//! predicate is then a polynomial of degree one in `ε`, whose sign is the
//! sign of its first nonzero coefficient. This is how the arrangement search
//! scores the cells around a vertex without picking a concrete `ε`.

use crate::geometry::kernel::Ring;

/// Sign of `c0 + c1·ε` for infinitesimal `ε > 0`.
#[inline]
fn sym_sign<T: Ring>(c0: &T, c1: &T) -> i8 {
    match c0.sign() {
        0 => c1.sign(),
        s => s,
    }
}

/// The vector `w - εu`, with `k = cross(u, w)` cached.
pub(crate) struct SymVec<T> {
    w: [T; 2],
    k: T,
    neg_u: [T; 2],
    color: usize,
}

impl<T: Ring> SymVec<T> {
    pub(crate) fn new(w: [T; 2], u: &[T; 2], color: usize) -> Self {
        let k = u[0].mul(&w[1]).sub(&u[1].mul(&w[0]));
        SymVec { w, k, neg_u: [u[0].neg(), u[1].neg()], color }
    }

    fn upper(&self) -> bool {
        match sym_sign(&self.w[1], &self.neg_u[1]) {
            1 => true,
            -1 => false,
            _ => sym_sign(&self.w[0], &self.neg_u[0]) > 0,
        }
    }

    /// Sign of `cross(self, other)`.
    fn cross_sign(&self, other: &Self) -> i8 {
        let c0 = self.w[0].mul(&other.w[1]).sub(&self.w[1].mul(&other.w[0]));
        let c1 = self.k.sub(&other.k);
        sym_sign(&c0, &c1)
    }

    fn is_zero(&self) -> bool {
        self.w.iter().chain(&self.neg_u).all(|c| c.sign() == 0)
    }
}

/// Whether any vector vanishes or two are parallel; general position of the
/// query forbids both.
pub(crate) fn has_degeneracy<T: Ring>(vs: &[SymVec<T>]) -> bool {
    vs.iter().enumerate().any(|(i, a)| a.is_zero() || vs[i + 1..].iter().any(|b| a.cross_sign(b) == 0))
}

/// Number of colorful triples (one vertex per color, three colors) whose
/// closed hull contains the (possibly symbolic) query, given the points'
/// positions relative to it. Requires no vanishing or parallel vectors.
pub(crate) fn sweep_count<T: Ring>(mut vs: Vec<SymVec<T>>, class_sizes: [u64; 3]) -> u64 {
    let n = vs.len();
    vs.sort_by(|a, b| match (a.upper(), b.upper()) {
        (true, false) => std::cmp::Ordering::Less,
        (false, true) => std::cmp::Ordering::Greater,
        _ => 0.cmp(&a.cross_sign(b)),
    });

    let total: u64 = class_sizes.iter().product();
    let mut avoiding = 0u64;
    let mut window = [0u64; 3];
    let mut end = 1usize;
    for i in 0..n {
        if end <= i {
            end = i + 1;
        }
        while end < i + n && vs[i].cross_sign(&vs[end % n]) > 0 {
            window[vs[end % n].color] += 1;
            end += 1;
        }
        let c = vs[i].color;
        avoiding += window[(c + 1) % 3] * window[(c + 2) % 3];
        if end > i + 1 {
            window[vs[(i + 1) % n].color] -= 1;
        }
    }
    total - avoiding
}
