//! Shared helpers for the integration tests: random rational instances and
//! an independent containment oracle based on barycentric coordinates.
#![allow(dead_code)]

use colorful_selection::rational::{int, ratio, Rational};
use colorful_selection::{general_position_check, ColoredPointSet, Point};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng, range: i64) -> Rational {
    let den = rng.gen_range(1..=8);
    ratio(rng.gen_range(-range * den..=range * den), den)
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize, range: i64) -> Point {
    Point::new((0..dim).map(|_| random_rational(rng, range)).collect()).unwrap()
}

/// A random instance in general position with the given class sizes.
pub fn random_instance(rng: &mut ChaCha8Rng, dim: usize, sizes: &[usize]) -> ColoredPointSet {
    loop {
        let classes = sizes
            .iter()
            .map(|&n| (0..n).map(|_| random_point(rng, dim, 20)).collect())
            .collect();
        let cps = ColoredPointSet::new(dim, classes).unwrap();
        if general_position_check(&cps, None).ok {
            return cps;
        }
    }
}

/// A random query in general position with respect to `cps`.
pub fn random_query(rng: &mut ChaCha8Rng, cps: &ColoredPointSet, range: i64) -> Point {
    loop {
        let q = random_point(rng, cps.dim(), range);
        if general_position_check(cps, Some(&q)).ok {
            return q;
        }
    }
}

/// Solves `A x = b` over the rationals by Gauss-Jordan elimination.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Barycentric coordinates of `q` with respect to `verts`.
pub fn barycentric(verts: &[&Point], q: &Point) -> Option<Vec<Rational>> {
    let d = q.dim();
    // rows: coordinates, then the affine constraint
    let mut a = vec![vec![Rational::zero(); d + 1]; d + 1];
    let mut b = vec![Rational::zero(); d + 1];
    for k in 0..d {
        for (j, v) in verts.iter().enumerate() {
            a[k][j] = v.coords()[k].clone();
        }
        b[k] = q.coords()[k].clone();
    }
    for j in 0..=d {
        a[d][j] = int(1);
    }
    b[d] = int(1);
    solve(a, b)
}

pub fn oracle_contains(verts: &[&Point], q: &Point) -> bool {
    barycentric(verts, q).expect("nondegenerate").iter().all(|l| !l.is_negative())
}

/// Colorful depth by enumerating tuples with the barycentric oracle.
pub fn oracle_depth(cps: &ColoredPointSet, q: &Point) -> u64 {
    let mut count = 0;
    let classes = cps.classes();
    let mut idx = vec![0usize; classes.len()];
    'outer: loop {
        let verts: Vec<&Point> = idx.iter().zip(classes).map(|(&i, c)| &c[i]).collect();
        if oracle_contains(&verts, q) {
            count += 1;
        }
        for c in (0..idx.len()).rev() {
            idx[c] += 1;
            if idx[c] < classes[c].len() {
                continue 'outer;
            }
            idx[c] = 0;
        }
        return count;
    }
}

/// Random invertible affine map `x -> A x + t` with small rational entries.
pub struct Affine {
    pub a: Vec<Vec<Rational>>,
    pub t: Vec<Rational>,
}

impl Affine {
    pub fn random(rng: &mut ChaCha8Rng, d: usize) -> Affine {
        loop {
            let a: Vec<Vec<Rational>> =
                (0..d).map(|_| (0..d).map(|_| random_rational(rng, 3)).collect()).collect();
            let t = (0..d).map(|_| random_rational(rng, 5)).collect();
            if solve(a.clone(), vec![Rational::zero(); d]).is_some() {
                return Affine { a, t };
            }
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        let coords = self
            .a
            .iter()
            .zip(&self.t)
            .map(|(row, t)| row.iter().zip(p.coords()).map(|(a, x)| a * x).sum::<Rational>() + t)
            .collect();
        Point::new(coords).unwrap()
    }
}
