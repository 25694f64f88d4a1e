//! Exact-arithmetic geometric primitives: points, simplices, colored point
//! sets, orientation, closed-hull membership, general position and
//! deterministic perturbation.

pub(crate) mod kernel;

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::rng::rng_from_seed;
use kernel::{fits_i128, for_each_combination, integer_coords, max_bits, Ring};

/// A point of `R^d` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    #[serde(with = "rational::serde_rational_vec")]
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::NonpositiveDimension);
        }
        Ok(Point { coords })
    }

    /// Parses each coordinate with [`rational::parse_rational`].
    pub fn parse<S: AsRef<str>>(coords: &[S]) -> Result<Self> {
        let coords = coords
            .iter()
            .map(|c| rational::parse_rational(c.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Point::new(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| rational::int(c)).collect()).expect("nonempty")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(rational::to_f64).collect()
    }

    /// Coordinate-wise mean of a nonempty point list.
    pub fn centroid(points: &[&Point]) -> Point {
        let n = rational::int(points.len() as i64);
        let dim = points[0].dim();
        let coords = (0..dim)
            .map(|k| points.iter().map(|p| p.coords[k].clone()).sum::<Rational>() / &n)
            .collect();
        Point { coords }
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<Rational>) -> Point {
        Point { coords }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

fn check_dims(points: &[&Point], dim: usize) -> Result<()> {
    match points.iter().find(|p| p.dim() != dim) {
        Some(p) => Err(Error::DimensionMismatch(format!(
            "point {p} has dimension {}, expected {dim}",
            p.dim()
        ))),
        None => Ok(()),
    }
}

/// Sign of an orientation determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Negative,
    Degenerate,
    Positive,
}

impl Orientation {
    pub fn from_sign(s: i8) -> Self {
        match s {
            s if s < 0 => Orientation::Negative,
            0 => Orientation::Degenerate,
            _ => Orientation::Positive,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Orientation::Negative => -1,
            Orientation::Degenerate => 0,
            Orientation::Positive => 1,
        }
    }
}

/// Runs `f` on the integer-scaled coordinates of `points`, picking `i128`
/// when determinants of order `d` cannot overflow it.
pub(crate) fn with_integer_coords<'a, R>(
    points: impl IntoIterator<Item = &'a Point> + Clone,
    d: usize,
    f: impl FnOnce(IntCoords) -> R,
) -> R {
    let coords = integer_coords(points);
    if fits_i128(max_bits(&coords), d) {
        f(IntCoords::Small(kernel::convert(&coords)))
    } else {
        f(IntCoords::Big(coords))
    }
}

pub(crate) enum IntCoords {
    Small(Vec<Vec<i128>>),
    Big(Vec<Vec<BigInt>>),
}

macro_rules! dispatch {
    ($coords:expr, |$c:ident| $body:expr) => {
        match $coords {
            $crate::geometry::IntCoords::Small($c) => $body,
            $crate::geometry::IntCoords::Big($c) => $body,
        }
    };
}
pub(crate) use dispatch;

/// Orientation of `d + 1` points in `R^d`: the sign of the determinant whose
/// rows are `pts[i] - pts[0]`, `i = 1..=d`.
pub fn orientation(pts: &[Point]) -> Result<Orientation> {
    let d = pts.first().map(Point::dim).unwrap_or(0);
    if d == 0 || pts.len() != d + 1 {
        return Err(Error::DimensionMismatch(format!(
            "orientation needs d+1 points, got {} points of dimension {d}",
            pts.len()
        )));
    }
    check_dims(&pts.iter().collect::<Vec<_>>(), d)?;
    let s = with_integer_coords(pts, d, |c| {
        dispatch!(c, |c| {
            let refs: Vec<&[_]> = c.iter().map(|p| p.as_slice()).collect();
            kernel::orient(&refs)
        })
    });
    Ok(Orientation::from_sign(s))
}

/// The convex hull of `d + 1` fixed vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplex {
    vertices: Vec<Point>,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let d = vertices.first().map(Point::dim).unwrap_or(0);
        if d == 0 || vertices.len() != d + 1 {
            return Err(Error::DimensionMismatch(format!(
                "a simplex in R^{d} needs {} vertices, got {}",
                d + 1,
                vertices.len()
            )));
        }
        check_dims(&vertices.iter().collect::<Vec<_>>(), d)?;
        Ok(Simplex { vertices })
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn centroid(&self) -> Point {
        Point::centroid(&self.vertices.iter().collect::<Vec<_>>())
    }

    fn with_query<R>(&self, q: &Point, f: impl FnOnce(IntCoords) -> R) -> Result<R> {
        if q.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "query has dimension {}, simplex {}",
                q.dim(),
                self.dim()
            )));
        }
        Ok(with_integer_coords(
            self.vertices.iter().chain(std::iter::once(q)),
            self.dim(),
            f,
        ))
    }
}

fn split_query<T>(c: &[Vec<T>]) -> (Vec<&[T]>, &[T]) {
    let (q, verts) = c.split_last().expect("nonempty");
    (verts.iter().map(|v| v.as_slice()).collect(), q.as_slice())
}

/// Closed-hull membership of `q` in `s`, decided by `d + 1` orientation
/// tests (one per facet).
pub fn contains(s: &Simplex, q: &Point) -> Result<bool> {
    s.with_query(q, |c| {
        dispatch!(c, |c| {
            let (verts, q) = split_query(&c);
            kernel::contains(&verts, q)
        })
    })?
    .ok_or(Error::DegenerateSimplex)
}

/// For `q` outside `s`, the index of the vertex whose opposite facet
/// strictly separates `q` from `s`; `None` when `q` is in the closed hull.
pub fn separating_facet(s: &Simplex, q: &Point) -> Result<Option<usize>> {
    if orientation(s.vertices())? == Orientation::Degenerate {
        return Err(Error::DegenerateSimplex);
    }
    s.with_query(q, |c| {
        dispatch!(c, |c| {
            let (verts, q) = split_query(&c);
            kernel::separating_facet(&verts, q)
        })
    })
}

/// `d + 1` color classes of points in `R^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawColoredPointSet", into = "RawColoredPointSet")]
pub struct ColoredPointSet {
    dim: usize,
    classes: Vec<Vec<Point>>,
}

#[derive(Serialize, Deserialize)]
struct RawColoredPointSet {
    dim: usize,
    classes: Vec<Vec<Point>>,
}

impl TryFrom<RawColoredPointSet> for ColoredPointSet {
    type Error = Error;
    fn try_from(raw: RawColoredPointSet) -> Result<Self> {
        ColoredPointSet::new(raw.dim, raw.classes)
    }
}

impl From<ColoredPointSet> for RawColoredPointSet {
    fn from(c: ColoredPointSet) -> Self {
        RawColoredPointSet { dim: c.dim, classes: c.classes }
    }
}

impl ColoredPointSet {
    pub fn new(dim: usize, classes: Vec<Vec<Point>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::NonpositiveDimension);
        }
        if classes.len() != dim + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} color classes given, dimension {dim} needs {}",
                classes.len(),
                dim + 1
            )));
        }
        check_dims(&classes.iter().flatten().collect::<Vec<_>>(), dim)?;
        Ok(ColoredPointSet { dim, classes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classes(&self) -> &[Vec<Point>] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Number of colorful tuples, `n_0 * ... * n_d`.
    pub fn total_tuples(&self) -> u64 {
        self.classes.iter().map(|c| c.len() as u64).product()
    }

    pub fn is_balanced(&self) -> bool {
        self.classes.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// All points, class 0 first; the order used by general-position witnesses.
    pub fn points(&self) -> impl Iterator<Item = &Point> + Clone {
        self.classes.iter().flatten()
    }

    pub fn num_points(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Color of each point in [`Self::points`] order.
    pub fn colors(&self) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(c, pts)| std::iter::repeat_n(c, pts.len()))
            .collect()
    }

    pub(crate) fn check_query_dim(&self, q: &Point) -> Result<()> {
        check_dims(&[q], self.dim)
    }

    /// Applies `f` to every point (same class layout).
    pub fn map_points(&self, mut f: impl FnMut(&Point) -> Point) -> ColoredPointSet {
        ColoredPointSet {
            dim: self.dim,
            classes: self.classes.iter().map(|c| c.iter().map(&mut f).collect()).collect(),
        }
    }
}

/// Result of [`general_position_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionReport {
    pub ok: bool,
    /// Indices into [`ColoredPointSet::points`]; the query, when present,
    /// has index `num_points()`.
    pub witness: Option<Vec<usize>>,
}

/// Checks that no `d + 1` points of the union (plus `q`) are affinely dependent.
pub fn general_position_check(cps: &ColoredPointSet, q: Option<&Point>) -> PositionReport {
    let d = cps.dim();
    if q.is_some_and(|q| q.dim() != d) {
        return PositionReport { ok: false, witness: Some(vec![cps.num_points()]) };
    }
    let witness = with_integer_coords(cps.points().chain(q), d, |c| {
        dispatch!(c, |c| degenerate_tuple(&c, d))
    });
    PositionReport { ok: witness.is_none(), witness }
}

/// First affinely dependent `(d+1)`-subset, in lexicographic index order.
pub(crate) fn degenerate_tuple<T: Ring>(c: &[Vec<T>], d: usize) -> Option<Vec<usize>> {
    let mut witness = None;
    let mut refs: Vec<&[T]> = Vec::with_capacity(d + 1);
    for_each_combination(c.len(), d + 1, |idx| {
        refs.clear();
        refs.extend(idx.iter().map(|&i| c[i].as_slice()));
        if kernel::orient(&refs) == 0 {
            witness = Some(idx.to_vec());
            return false;
        }
        true
    });
    witness
}

/// Tuples that contain the query only; used once the input set itself is
/// known to be in general position.
pub(crate) fn degenerate_with_query<T: Ring>(pts: &[Vec<T>], q: &[T], d: usize) -> Option<Vec<usize>> {
    let mut witness = None;
    let mut refs: Vec<&[T]> = Vec::with_capacity(d + 1);
    for_each_combination(pts.len(), d, |idx| {
        refs.clear();
        refs.extend(idx.iter().map(|&i| pts[i].as_slice()));
        refs.push(q);
        if kernel::orient(&refs) == 0 {
            let mut w = idx.to_vec();
            w.push(pts.len());
            witness = Some(w);
            return false;
        }
        true
    });
    witness
}

/// Adds a seeded pseudo-random rational offset in `[-magnitude, magnitude]`
/// to every coordinate. Offsets are `magnitude * (2k/K - 1)` with `k`
/// uniform on `0..=K`, `K = 2^32`, drawn in point order.
pub fn perturb(cps: &ColoredPointSet, seed: u64, magnitude: &Rational) -> Result<ColoredPointSet> {
    if magnitude <= &rational::int(0) {
        return Err(Error::NonpositiveMagnitude);
    }
    const K: u64 = 1 << 32;
    let mut rng = rng_from_seed(seed);
    let k_big = BigInt::from(K);
    Ok(cps.map_points(|p| {
        let coords = p
            .coords()
            .iter()
            .map(|c| {
                let k: u64 = rng.gen_range(0..=K);
                let unit = Rational::new(BigInt::from(2 * k) - &k_big, k_big.clone());
                c + magnitude * unit
            })
            .collect();
        Point::from_coords_unchecked(coords)
    }))
}
