//! Integer kernels behind the exact predicates.
//!
//! Rational inputs are scaled by a common positive denominator, which keeps
//! every orientation sign intact, and the signs are then evaluated over
//! integers. `i128` is used whenever the caller has checked that the
//! magnitudes cannot overflow; `BigInt` otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Point;

pub(crate) trait Ring: Clone + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn from_big(v: &BigInt) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sign(&self) -> i8;
    /// Exact quotient; only called when `o` divides `self`.
    fn div_exact(&self, o: &Self) -> Self;
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn from_big(v: &BigInt) -> Self {
        v.to_i128().expect("caller checked the i128 range")
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self) -> i8 {
        self.signum() as i8
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_big(v: &BigInt) -> Self {
        v.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

/// Lcm of all coordinate denominators.
pub(crate) fn common_denominator<'a>(points: impl IntoIterator<Item = &'a Point>) -> BigInt {
    points
        .into_iter()
        .flat_map(|p| p.coords())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Scales all points by the lcm of their coordinate denominators.
pub(crate) fn integer_coords<'a>(points: impl IntoIterator<Item = &'a Point> + Clone) -> Vec<Vec<BigInt>> {
    let lcm = common_denominator(points.clone());
    points
        .into_iter()
        .map(|p| {
            p.coords()
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect()
        })
        .collect()
}

/// Largest coordinate bit length in an integer point list.
pub(crate) fn max_bits(coords: &[Vec<BigInt>]) -> u64 {
    coords
        .iter()
        .flatten()
        .map(|c| c.bits())
        .max()
        .unwrap_or(0)
}

/// Whether determinants of order `d` over coordinates of `bits` bits can be
/// evaluated in `i128` without overflow (Bareiss intermediates included).
pub(crate) fn fits_i128(bits: u64, d: usize) -> bool {
    let log_fact: f64 = (2..=d).map(|k| (k as f64).log2()).sum();
    (2 * d as u64 * (bits + 1)) as f64 + 2.0 * log_fact + 4.0 <= 126.0
}

pub(crate) fn convert<T: Ring>(coords: &[Vec<BigInt>]) -> Vec<Vec<T>> {
    coords
        .iter()
        .map(|p| p.iter().map(T::from_big).collect())
        .collect()
}

/// 2D cross product `(b - a) x (c - a)`.
#[inline]
pub(crate) fn cross3<T: Ring>(a: &[T], b: &[T], c: &[T]) -> T {
    let (ux, uy) = (b[0].sub(&a[0]), b[1].sub(&a[1]));
    let (vx, vy) = (c[0].sub(&a[0]), c[1].sub(&a[1]));
    ux.mul(&vy).sub(&uy.mul(&vx))
}

/// Sign of `det(rows)` by fraction-free (Bareiss) elimination.
pub(crate) fn det_sign<T: Ring>(mut m: Vec<Vec<T>>) -> i8 {
    let n = m.len();
    let mut sign = 1i8;
    let mut prev = None::<T>;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| m[r][k].sign() != 0) else {
            return 0;
        };
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = match &prev {
                    Some(p) => v.div_exact(p),
                    None => v,
                };
            }
            m[i][k] = T::zero();
        }
        prev = Some(m[k][k].clone());
    }
    sign * m[n - 1][n - 1].sign()
}

/// Orientation sign of `d + 1` points in `R^d`.
pub(crate) fn orient<T: Ring>(pts: &[&[T]]) -> i8 {
    let d = pts.len() - 1;
    match d {
        1 => pts[1][0].sub(&pts[0][0]).sign(),
        2 => cross3(pts[0], pts[1], pts[2]).sign(),
        _ => {
            let rows = pts[1..]
                .iter()
                .map(|p| p.iter().zip(pts[0]).map(|(x, o)| x.sub(o)).collect())
                .collect();
            det_sign(rows)
        }
    }
}

/// Closed-hull membership. `None` when the simplex is degenerate.
pub(crate) fn contains<T: Ring>(simplex: &[&[T]], q: &[T]) -> Option<bool> {
    let base = orient(simplex);
    if base == 0 {
        return None;
    }
    let mut verts: Vec<&[T]> = simplex.to_vec();
    for i in 0..simplex.len() {
        verts[i] = q;
        let s = orient(&verts);
        verts[i] = simplex[i];
        if s == -base {
            return Some(false);
        }
    }
    Some(true)
}

/// Index of a facet (the vertex it omits) whose supporting hyperplane
/// strictly separates `q` from the simplex.
pub(crate) fn separating_facet<T: Ring>(simplex: &[&[T]], q: &[T]) -> Option<usize> {
    let base = orient(simplex);
    let mut verts: Vec<&[T]> = simplex.to_vec();
    (0..simplex.len()).find(|&i| {
        verts[i] = q;
        let s = orient(&verts);
        verts[i] = simplex[i];
        s == -base
    })
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order; stops
/// early when `f` returns `false`.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![vec![2i128, -3, 1], vec![2, 0, -1], vec![1, 4, 5]];
        // 2(0+4) +3(10+1) +1(8-0) = 49
        assert_eq!(det_sign(m.clone()), 1);
        let mut swapped = m;
        swapped.swap(0, 1);
        assert_eq!(det_sign(swapped), -1);
        assert_eq!(det_sign(vec![vec![1i128, 2], vec![2, 4]]), 0);
        assert_eq!(det_sign(vec![vec![0i128, 1], vec![1, 0]]), -1);
    }

    #[test]
    fn combinations_enumerate_binomial_count() {
        let mut count = 0;
        for_each_combination(9, 3, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 84);
        let mut seen = vec![];
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
