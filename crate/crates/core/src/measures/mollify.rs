//! Smoothing a colored point set into a measure family, and checking that
//! the smoothed containment probability reproduces the exact depth.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{containment_probability, EstimateResult, MeasureFamily, MeasureSpec};
use crate::depth::colorful_depth_bruteforce;
use crate::error::{Error, Result};
use crate::geometry::kernel::for_each_combination;
use crate::geometry::{ColoredPointSet, Point};
use crate::rational::{self, Rational};

/// One [`MeasureSpec::MollifiedEmpirical`] per class, each normalized by
/// its own class size.
pub fn mollify(cps: &ColoredPointSet, n: u64) -> Result<MeasureFamily> {
    if let Some(i) = cps.classes().iter().position(Vec::is_empty) {
        return Err(Error::EmptyClass(i));
    }
    if n == 0 {
        return Err(Error::InvalidMeasure("mollifier width inverse must be positive".into()));
    }
    let measures = cps
        .classes()
        .iter()
        .map(|c| MeasureSpec::MollifiedEmpirical { points: c.clone(), width_inverse: n })
        .collect();
    MeasureFamily::new(cps.dim(), measures)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub exact_count: u64,
    #[serde(with = "rational::serde_rational")]
    pub exact_fraction: Rational,
    /// Squared distance from the query to the nearest hyperplane spanned by
    /// `d` input points.
    #[serde(with = "rational::serde_rational")]
    pub delta_star_squared: Rational,
    pub delta_star: f64,
    pub n_used: u64,
    pub estimate: EstimateResult,
    pub agrees: bool,
}

fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut acc = rational::int(1);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rational::zero();
        };
        if piv != k {
            m.swap(piv, k);
            acc = -acc;
        }
        acc *= &m[k][k];
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
    }
    acc
}

/// Squared distance from `q` to the affine hull of `d` points in `R^d`.
fn hyperplane_distance_squared(pts: &[&Point], q: &Point) -> Rational {
    let d = q.dim();
    let base = pts[0].coords();
    let diff = |p: &Point| -> Vec<Rational> { p.coords().iter().zip(base).map(|(a, b)| a - b).collect() };
    let rows: Vec<Vec<Rational>> = pts[1..].iter().map(|p| diff(p)).collect();
    // normal by cofactor expansion of the (d-1) x d matrix of edge vectors
    let normal: Vec<Rational> = (0..d)
        .map(|k| {
            let minor = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, x)| x.clone()).collect())
                .collect();
            let m = det(minor);
            if k % 2 == 0 { m } else { -m }
        })
        .collect();
    let offset: Rational = normal.iter().zip(diff(q)).map(|(n, x)| n * x).sum();
    let norm2: Rational = normal.iter().map(|n| n * n).sum();
    &offset * &offset / norm2
}

/// Whether moving every input point by at most `h` per coordinate keeps the
/// sign of every determinant `det(v_j - q)` over `d`-subsets. Uses the
/// Hadamard bound `|det(W + E) - det(W)| <= prod(|w_j| + |e_j|) - prod |w_j|`
/// with `|.|_2 <= |.|_1` and `|e_j|_2 <= d h`.
fn perturbation_safe(rel: &[Vec<Rational>], d: usize, h: &Rational) -> bool {
    let l1: Vec<Rational> = rel.iter().map(|w| w.iter().map(|x| x.abs()).sum()).collect();
    let slack = rational::int(d as i64) * h;
    let mut safe = true;
    for_each_combination(rel.len(), d, |idx| {
        let m = idx.iter().map(|&i| rel[i].clone()).collect();
        let exact = det(m).abs();
        let base: Rational = idx.iter().map(|&i| l1[i].clone()).product();
        let grown: Rational = idx.iter().map(|&i| &l1[i] + &slack).product();
        safe = exact > grown - base;
        safe
    });
    safe
}

/// Smallest `n` with `1/n < δ*/2` whose mollification also cannot change the
/// containment status of any colorful tuple.
fn choose_width_inverse(cps: &ColoredPointSet, q: &Point, delta2: &Rational) -> u64 {
    let d = cps.dim();
    let rel: Vec<Vec<Rational>> = cps
        .points()
        .map(|p| p.coords().iter().zip(q.coords()).map(|(a, b)| a - b).collect())
        .collect();
    let ok = |n: u64| {
        let n_r = Rational::from_integer(BigInt::from(n));
        let h = Rational::new(1.into(), BigInt::from(n));
        &n_r * &n_r * delta2 > rational::int(4) && perturbation_safe(&rel, d, &h)
    };
    let mut hi = 1u64;
    while !ok(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    // ok(lo) is false (or lo == 0); ok(hi) is true
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Exact colorful depth fraction at `q` versus the Monte Carlo containment
/// probability under `mollify(cps, n_used)`, with `n_used` chosen so that
/// smoothing cannot flip any tuple. `agrees` when the two are within four
/// standard errors.
pub fn mollification_convergence_check(
    cps: &ColoredPointSet,
    q: &Point,
    samples: u64,
    seed: u64,
) -> Result<ConvergenceReport> {
    let exact = colorful_depth_bruteforce(cps, q)?;
    let d = cps.dim();
    let pts: Vec<&Point> = cps.points().collect();
    let mut delta2: Option<Rational> = None;
    for_each_combination(pts.len(), d, |idx| {
        let sub: Vec<&Point> = idx.iter().map(|&i| pts[i]).collect();
        let dist = hyperplane_distance_squared(&sub, q);
        if delta2.as_ref().is_none_or(|m| &dist < m) {
            delta2 = Some(dist);
        }
        true
    });
    let delta2 = delta2.ok_or_else(|| Error::OutOfRange(format!("need at least {d} input points")))?;
    let n_used = choose_width_inverse(cps, q, &delta2);
    let fam = mollify(cps, n_used)?;
    let estimate = containment_probability(&fam, &q.to_f64(), samples, seed)?;
    let exact_f = rational::to_f64(&exact.fraction);
    let agrees = (estimate.p_hat - exact_f).abs() <= 4.0 * estimate.std_error;
    Ok(ConvergenceReport {
        exact_count: exact.count,
        delta_star: rational::to_f64(&delta2).sqrt(),
        delta_star_squared: delta2,
        exact_fraction: exact.fraction,
        n_used,
        estimate,
        agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn distance_to_lines_and_planes() {
        let a = Point::from_ints(&[0, 0]);
        let b = Point::from_ints(&[4, 0]);
        assert_eq!(hyperplane_distance_squared(&[&a, &b], &Point::from_ints(&[1, 3])), int(9));
        let c = Point::from_ints(&[0, 4]);
        // line x + y = 4, point (0, 0): distance^2 = 16/2
        assert_eq!(hyperplane_distance_squared(&[&b, &c], &a), int(8));
        let p: Vec<Point> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|c| Point::from_ints(c)).collect();
        let refs: Vec<&Point> = p.iter().collect();
        assert_eq!(hyperplane_distance_squared(&refs, &Point::from_ints(&[0, 0, 0])), ratio(1, 3));
        assert_eq!(hyperplane_distance_squared(&[&Point::from_ints(&[3])], &Point::from_ints(&[1])), int(4));
    }

    #[test]
    fn width_inverse_respects_both_margins() {
        let cps = ColoredPointSet::new(
            2,
            vec![vec![Point::from_ints(&[0, 0])], vec![Point::from_ints(&[4, 0])], vec![Point::from_ints(&[0, 4])]],
        )
        .unwrap();
        let q = Point::from_ints(&[1, 1]);
        let n = choose_width_inverse(&cps, &q, &int(1));
        let rel: Vec<Vec<Rational>> =
            cps.points().map(|p| p.coords().iter().zip(q.coords()).map(|(a, b)| a - b).collect()).collect();
        let h = |n: u64| Rational::new(1.into(), BigInt::from(n));
        let delta_ok = |n: u64| int((n * n) as i64) > int(4);
        assert!(delta_ok(n) && perturbation_safe(&rel, 2, &h(n)));
        assert!(!(delta_ok(n - 1) && perturbation_safe(&rel, 2, &h(n - 1))));
    }

    #[test]
    fn mollify_needs_nonempty_classes() {
        let cps = ColoredPointSet::new(1, vec![vec![Point::from_ints(&[0])], vec![]]).unwrap();
        assert_eq!(mollify(&cps, 5), Err(Error::EmptyClass(1)));
    }
}
