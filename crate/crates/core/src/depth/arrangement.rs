//! Exact maximum colorful depth in the plane.
//!
//! Depth is constant on the open cells of the arrangement of all lines
//! through two input points, and every cell inside the convex hull has an
//! arrangement vertex on its boundary. Each vertex is probed once per wedge
//! between consecutive incident lines, at `v + εu` with `u` strictly inside
//! the wedge. Probes are scored symbolically (see [`super::sweep`]); only
//! the winners are turned into concrete rational points, stepped along `u`
//! by half the distance to the nearest non-incident line in that direction,
//! and re-evaluated concretely. Centroids of colorful triangles are probed
//! as well.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::sweep::{has_degeneracy, sweep_count, SymVec};
use super::{depth_at_checked, require_nonempty, violation, MaxDepthResult, SearchMethod};
use crate::error::{Error, Result};
use crate::geometry::kernel::{self, common_denominator, integer_coords, max_bits, Ring};
use crate::geometry::{degenerate_tuple, ColoredPointSet, Point};
use crate::rational::Rational;

/// Largest coordinate size (bits) for which the symbolic sweep around an
/// arrangement vertex stays within `i128`.
const SMALL_BITS: u64 = 18;

struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    dir: [BigInt; 2],
}

/// Vertex `(x/den, y/den)` in lowest terms with `den > 0`.
type VertexKey = (BigInt, BigInt, BigInt);

enum Probe {
    Wedge { vertex: VertexKey, lines: Vec<usize>, u: [BigInt; 2] },
    Centroid([usize; 3]),
}

fn half_then_cross(a: &[BigInt; 2], b: &[BigInt; 2]) -> Ordering {
    let upper = |v: &[BigInt; 2]| v[1].is_positive() || (v[1].is_zero() && v[0].is_positive());
    match (upper(a), upper(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let cr = &a[0] * &b[1] - &a[1] * &b[0];
            0.cmp(&Ring::sign(&cr))
        }
    }
}

/// One direction strictly inside each wedge around a vertex.
fn wedge_directions(lines: &[usize], all: &[Line]) -> Vec<[BigInt; 2]> {
    let mut rays: Vec<[BigInt; 2]> = lines
        .iter()
        .flat_map(|&l| {
            let d = &all[l].dir;
            [d.clone(), [-&d[0], -&d[1]]]
        })
        .collect();
    rays.sort_by(half_then_cross);
    (0..rays.len())
        .map(|i| {
            let (r, s) = (&rays[i], &rays[(i + 1) % rays.len()]);
            [&r[0] + &s[0], &r[1] + &s[1]]
        })
        .collect()
}

fn arrangement(pts: &[Vec<BigInt>]) -> (Vec<Line>, BTreeMap<VertexKey, Vec<usize>>) {
    let mut lines = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (p, q) = (&pts[i], &pts[j]);
            let a = &q[1] - &p[1];
            let b = &p[0] - &q[0];
            let c = &a * &p[0] + &b * &p[1];
            lines.push(Line { a, b, c, dir: [&q[0] - &p[0], &q[1] - &p[1]] });
        }
    }
    let mut vertices: BTreeMap<VertexKey, Vec<usize>> = BTreeMap::new();
    for (i, l1) in lines.iter().enumerate() {
        for (j, l2) in lines.iter().enumerate().skip(i + 1) {
            let mut den = &l1.a * &l2.b - &l2.a * &l1.b;
            if den.is_zero() {
                continue;
            }
            let mut x = &l1.c * &l2.b - &l2.c * &l1.b;
            let mut y = &l1.a * &l2.c - &l2.a * &l1.c;
            if den.is_negative() {
                den = -den;
                x = -x;
                y = -y;
            }
            let g = x.gcd(&y).gcd(&den);
            let key = (x / &g, y / &g, den / &g);
            let entry = vertices.entry(key).or_default();
            entry.push(i);
            entry.push(j);
        }
    }
    for v in vertices.values_mut() {
        v.sort_unstable();
        v.dedup();
    }
    (lines, vertices)
}

fn wedge_vectors<T: Ring>(pts: &[Vec<T>], colors: &[usize], key: &[T; 3], u: &[T; 2]) -> Vec<SymVec<T>> {
    let [x, y, den] = key;
    pts.iter()
        .zip(colors)
        .map(|(p, &col)| SymVec::new([p[0].mul(den).sub(x), p[1].mul(den).sub(y)], u, col))
        .collect()
}

/// Scores every probe; returns the best count, the probes attaining it and
/// the number of probes evaluated.
fn score_probes<T: Ring>(
    pts_big: &[Vec<BigInt>],
    lines: &[Line],
    vertices: &BTreeMap<VertexKey, Vec<usize>>,
    colors: &[usize],
    sizes: [usize; 3],
) -> (u64, Vec<Probe>, u64) {
    let pts: Vec<Vec<T>> = kernel::convert(pts_big);
    let sizes64 = sizes.map(|s| s as u64);
    let mut best = 0u64;
    let mut winners = Vec::new();
    let mut evaluated = 0u64;
    let mut consider = |count: u64, probe: &dyn Fn() -> Probe| {
        match count.cmp(&best) {
            Ordering::Greater => {
                best = count;
                winners.clear();
                winners.push(probe());
            }
            Ordering::Equal if best > 0 => winners.push(probe()),
            _ => {}
        }
    };

    for (key, incident) in vertices {
        let key_t = [T::from_big(&key.0), T::from_big(&key.1), T::from_big(&key.2)];
        for u in wedge_directions(incident, lines) {
            let u_t = [T::from_big(&u[0]), T::from_big(&u[1])];
            let count = sweep_count(wedge_vectors(&pts, colors, &key_t, &u_t), sizes64);
            evaluated += 1;
            consider(count, &|| Probe::Wedge { vertex: key.clone(), lines: incident.clone(), u: u.clone() });
        }
    }

    let offsets = [0, sizes[0], sizes[0] + sizes[1]];
    let zero = [T::zero(), T::zero()];
    for i in 0..sizes[0] {
        for j in 0..sizes[1] {
            for k in 0..sizes[2] {
                let tri = [offsets[0] + i, offsets[1] + j, offsets[2] + k];
                let sum: Vec<T> = (0..2)
                    .map(|a| pts[tri[0]][a].add(&pts[tri[1]][a]).add(&pts[tri[2]][a]))
                    .collect();
                let three = T::from_big(&BigInt::from(3));
                let vs: Vec<SymVec<T>> = pts
                    .iter()
                    .zip(colors)
                    .map(|(p, &col)| SymVec::new([p[0].mul(&three).sub(&sum[0]), p[1].mul(&three).sub(&sum[1])], &zero, col))
                    .collect();
                evaluated += 1;
                if has_degeneracy(&vs) {
                    continue;
                }
                let count = sweep_count(vs, sizes64);
                consider(count, &|| Probe::Centroid(tri));
            }
        }
    }
    (best, winners, evaluated)
}

/// Concrete point inside the open cell of a wedge probe.
fn materialize_wedge(key: &VertexKey, incident: &[usize], u: &[BigInt; 2], lines: &[Line], scale: &BigInt) -> Point {
    let (x, y, den) = key;
    let mut step: Option<Rational> = None;
    for (idx, l) in lines.iter().enumerate() {
        if incident.binary_search(&idx).is_ok() {
            continue;
        }
        // f(v + t u) = f_num / den + t * slope
        let f_num = &l.a * x + &l.b * y - &l.c * den;
        let slope = &l.a * &u[0] + &l.b * &u[1];
        if (&f_num * &slope).is_negative() {
            let t = Rational::new(f_num.abs(), den * slope.abs());
            if step.as_ref().is_none_or(|s| &t < s) {
                step = Some(t);
            }
        }
    }
    let t = step.map_or_else(|| Rational::from_integer(1.into()), |s| s / Rational::from_integer(2.into()));
    let coords = [x, y]
        .iter()
        .zip(u)
        .map(|(c, uc)| (Rational::new((*c).clone(), den.clone()) + &t * Rational::from_integer(uc.clone())) / Rational::from_integer(scale.clone()))
        .collect();
    Point::from_coords_unchecked(coords)
}

/// Exact maximizer of colorful depth over `R^2`. Ties go to the
/// lexicographically smallest probe.
pub fn max_depth_exact2d(cps: &ColoredPointSet) -> Result<MaxDepthResult> {
    if cps.dim() != 2 {
        return Err(Error::DimensionNotTwo(cps.dim()));
    }
    require_nonempty(cps)?;
    let pts_big = integer_coords(cps.points());
    if let Some(w) = degenerate_tuple(&pts_big, 2) {
        return Err(violation(w));
    }
    let scale = common_denominator(cps.points());

    let colors = cps.colors();
    let s = cps.class_sizes();
    let sizes = [s[0], s[1], s[2]];
    let (lines, vertices) = arrangement(&pts_big);
    let (best, winners, evaluated) = if max_bits(&pts_big) <= SMALL_BITS {
        score_probes::<i128>(&pts_big, &lines, &vertices, &colors, sizes)
    } else {
        score_probes::<BigInt>(&pts_big, &lines, &vertices, &colors, sizes)
    };

    let input: Vec<&Point> = cps.points().collect();
    let point = winners
        .iter()
        .map(|w| match w {
            Probe::Wedge { vertex, lines: incident, u } => materialize_wedge(vertex, incident, u, &lines, &scale),
            Probe::Centroid(tri) => Point::centroid(&[input[tri[0]], input[tri[1]], input[tri[2]]]),
        })
        .min()
        .expect("at least one probe attains the maximum");

    let depth = depth_at_checked(cps, &point)?.expect("materialized probe lies in an open cell");
    assert_eq!(depth.count, best, "concrete probe {point} disagrees with its symbolic score");
    Ok(MaxDepthResult { point, depth, candidates_evaluated: evaluated, method: SearchMethod::Arrangement2D })
}
