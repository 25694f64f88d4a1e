//! Colorful simplicial depth.
//!
//! The depth of `q` is the number of colorful tuples `(v_0, ..., v_d)` in
//! `P_0 x ... x P_d` whose closed simplex contains `q`. Brute force works in
//! every dimension; the planar sweep is `O(n log n)` and the arrangement
//! search finds the exact planar maximum.

mod arrangement;
mod heuristic;
pub(crate) mod sweep;

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{Error, Result};
use crate::geometry::kernel::{self, for_each_combination, Ring};
use crate::geometry::{
    degenerate_tuple, degenerate_with_query, dispatch, with_integer_coords, ColoredPointSet, Point,
};
use crate::rational::{self, Rational};
use sweep::SymVec;

pub use arrangement::max_depth_exact2d;
pub use heuristic::{max_depth_heuristic, HeuristicStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DepthMethod {
    BruteForce,
    Sweep2D,
}

/// Depth of one query point. `total` is `n_0 * ... * n_d` for colorful
/// depth and `C(n, d+1)` for monochromatic depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthResult {
    pub query: Point,
    pub count: u64,
    pub total: u64,
    #[serde(with = "rational::serde_rational")]
    pub fraction: Rational,
    pub method: DepthMethod,
}

impl DepthResult {
    fn new(query: Point, count: u64, total: u64, method: DepthMethod) -> Self {
        debug_assert!(count <= total);
        let fraction = Rational::new(count.into(), total.into());
        DepthResult { query, count, total, fraction, method }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchMethod {
    Arrangement2D,
    CentroidHeuristic,
    LocalSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxDepthResult {
    pub point: Point,
    pub depth: DepthResult,
    pub candidates_evaluated: u64,
    pub method: SearchMethod,
}

fn require_nonempty(cps: &ColoredPointSet) -> Result<()> {
    match cps.classes().iter().position(Vec::is_empty) {
        Some(i) => Err(Error::EmptyClass(i)),
        None => Ok(()),
    }
}

fn violation(witness: Vec<usize>) -> Error {
    Error::GeneralPositionViolation { witness }
}

/// Start offsets of each class in the flattened point order.
fn class_offsets(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &n| {
            let start = *acc;
            *acc += n;
            Some(start)
        })
        .collect()
}

/// Counts tuples by odometer enumeration; `pts` holds the input points in
/// class order.
fn count_colorful<T: Ring>(pts: &[Vec<T>], q: &[T], sizes: &[usize]) -> u64 {
    let offsets = class_offsets(sizes);
    let k = sizes.len();
    let mut idx = vec![0usize; k];
    let mut verts: Vec<&[T]> = offsets.iter().map(|&o| pts[o].as_slice()).collect();
    let mut count = 0u64;
    loop {
        if kernel::contains(&verts, q).expect("general position") {
            count += 1;
        }
        let mut c = k;
        loop {
            if c == 0 {
                return count;
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < sizes[c] {
                verts[c] = pts[offsets[c] + idx[c]].as_slice();
                break;
            }
            idx[c] = 0;
            verts[c] = pts[offsets[c]].as_slice();
        }
    }
}

/// Colorful depth by enumerating all `n_0 * ... * n_d` tuples.
pub fn colorful_depth_bruteforce(cps: &ColoredPointSet, q: &Point) -> Result<DepthResult> {
    cps.check_query_dim(q)?;
    require_nonempty(cps)?;
    let d = cps.dim();
    let sizes = cps.class_sizes();
    let count = with_integer_coords(cps.points().chain([q]), d, |c| {
        dispatch!(c, |c| {
            if let Some(w) = degenerate_tuple(&c, d) {
                return Err(violation(w));
            }
            let (q, pts) = c.split_last().expect("query present");
            Ok(count_colorful(pts, q, &sizes))
        })
    })?;
    Ok(DepthResult::new(q.clone(), count, cps.total_tuples(), DepthMethod::BruteForce))
}

/// Planar colorful depth by angular sweep around `q`.
pub fn colorful_depth_sweep2d(cps: &ColoredPointSet, q: &Point) -> Result<DepthResult> {
    if cps.dim() != 2 {
        return Err(Error::DimensionNotTwo(cps.dim()));
    }
    cps.check_query_dim(q)?;
    require_nonempty(cps)?;
    let colors = cps.colors();
    let sizes = cps.class_sizes();
    let count = with_integer_coords(cps.points().chain([q]), 2, |c| {
        dispatch!(c, |c| {
            if let Some(w) = degenerate_tuple(&c, 2) {
                return Err(violation(w));
            }
            Ok(sweep_concrete(&c, &colors, &sizes))
        })
    })?;
    Ok(DepthResult::new(q.clone(), count, cps.total_tuples(), DepthMethod::Sweep2D))
}

/// Sweep around the last point of `c` (the query).
fn sweep_concrete<T: Ring>(c: &[Vec<T>], colors: &[usize], sizes: &[usize]) -> u64 {
    let (q, pts) = c.split_last().expect("query present");
    let zero = [T::zero(), T::zero()];
    let vs = pts
        .iter()
        .zip(colors)
        .map(|(p, &col)| SymVec::new([p[0].sub(&q[0]), p[1].sub(&q[1])], &zero, col))
        .collect();
    sweep::sweep_count(vs, [sizes[0] as u64, sizes[1] as u64, sizes[2] as u64])
}

/// Depth at `q` for an input set already known to be in general position:
/// only the tuples through `q` are checked. `Ok(None)` when `q` is not in
/// general position with respect to the input.
pub(crate) fn depth_at_checked(cps: &ColoredPointSet, q: &Point) -> Result<Option<DepthResult>> {
    let d = cps.dim();
    let sizes = cps.class_sizes();
    let colors = cps.colors();
    let count = with_integer_coords(cps.points().chain([q]), d, |c| {
        dispatch!(c, |c| {
            let (qc, pts) = c.split_last().expect("query present");
            if degenerate_with_query(pts, qc, d).is_some() {
                return None;
            }
            Some(if d == 2 { sweep_concrete(&c, &colors, &sizes) } else { count_colorful(pts, qc, &sizes) })
        })
    });
    let method = if d == 2 { DepthMethod::Sweep2D } else { DepthMethod::BruteForce };
    Ok(count.map(|n| DepthResult::new(q.clone(), n, cps.total_tuples(), method)))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Monochromatic simplicial depth: closed `(d+1)`-point simplices over one
/// point set that contain `q`.
pub fn monochromatic_depth_bruteforce(points: &[Point], q: &Point) -> Result<DepthResult> {
    let d = q.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(Error::DimensionMismatch(format!("point {p} vs query dimension {d}")));
    }
    let total = binomial(points.len() as u64, d as u64 + 1);
    if total == 0 {
        return Err(Error::OutOfRange(format!("need at least {} points", d + 1)));
    }
    let count = with_integer_coords(points.iter().chain([q]), d, |c| {
        dispatch!(c, |c| {
            if let Some(w) = degenerate_tuple(&c, d) {
                return Err(violation(w));
            }
            let (qc, pts) = c.split_last().expect("query present");
            let mut count = 0u64;
            let mut verts = Vec::with_capacity(d + 1);
            for_each_combination(pts.len(), d + 1, |idx| {
                verts.clear();
                verts.extend(idx.iter().map(|&i| pts[i].as_slice()));
                if kernel::contains(&verts, qc).expect("general position") {
                    count += 1;
                }
                true
            });
            Ok(count)
        })
    })?;
    Ok(DepthResult::new(q.clone(), count, total, DepthMethod::BruteForce))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerifyMode {
    Exact2D,
    Heuristic { strategy: HeuristicStrategy, budget: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionBoundReport {
    pub max_found: u64,
    #[serde(with = "rational::serde_rational")]
    pub bound_value: Rational,
    pub satisfied: bool,
    /// Whether all classes have the same size (the corollary's setting);
    /// otherwise the bound uses `n_0 * ... * n_d` in place of `n^{d+1}`.
    pub balanced: bool,
    pub witness: MaxDepthResult,
}

/// Compares the deepest point found with `2d/((d+1)(d+1)!) * n_0 * ... * n_d`.
///
/// In [`VerifyMode::Exact2D`] the maximum is exact, so a shortfall
/// contradicts the theorem and is reported as
/// [`Error::SelectionBoundViolated`]. A heuristic shortfall only means no
/// deep enough point was found.
pub fn verify_selection_bound(cps: &ColoredPointSet, mode: VerifyMode) -> Result<SelectionBoundReport> {
    let witness = match mode {
        VerifyMode::Exact2D => max_depth_exact2d(cps)?,
        VerifyMode::Heuristic { strategy, budget, seed } => max_depth_heuristic(cps, strategy, budget, seed)?,
    };
    let bound_value = bounds::gromov(cps.dim() as u32) * Rational::from_integer(cps.total_tuples().into());
    let max_found = witness.depth.count;
    let satisfied = rational::int(max_found as i64) >= bound_value;
    if !satisfied && mode == VerifyMode::Exact2D {
        return Err(Error::SelectionBoundViolated {
            max_found,
            bound: rational::format_rational(&bound_value),
        });
    }
    Ok(SelectionBoundReport { max_found, bound_value, satisfied, balanced: cps.is_balanced(), witness })
}
