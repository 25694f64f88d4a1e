//! Seeded instance generators: random families, the stretched grid, points
//! on the moment curve, and the nine-point planar example.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{general_position_check, perturb, ColoredPointSet, Point};
use crate::rational::{self, Rational};
use crate::rng::{derive_seed, substream};

/// Random coordinates are drawn on this dyadic grid (`2^-GRID_BITS`).
const GRID_BITS: u32 = 10;
const MAX_ATTEMPTS: u64 = 64;

const TAG_POINTS: u64 = 0x10;
const TAG_COLORS: u64 = 0x11;
const TAG_PERTURB: u64 = 0x12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Uniform on the cube `[lo, hi]^d`.
    UniformRandom {
        #[serde(with = "rational::serde_rational")]
        lo: Rational,
        #[serde(with = "rational::serde_rational")]
        hi: Rational,
    },
    /// Standard normal coordinates.
    GaussianRandom,
    /// Axis 0 is `0, 1, ..., s-1`; axis `k >= 1` is `gamma^0, ..., gamma^{s-1}`.
    StretchedGrid {
        #[serde(with = "rational::serde_rational")]
        gamma: Rational,
    },
    /// `(t, t^2, ..., t^d)` for `t = 1, ..., (d+1) n`.
    MomentCurve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coloring {
    /// Point `i` (in generation order) gets color `i mod (d+1)`.
    RoundRobin,
    /// A seeded shuffle of `n` copies of each color.
    RandomBalanced,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub kind: GeneratorKind,
    pub n_per_color: usize,
    pub dim: usize,
    pub seed: u64,
    pub coloring: Coloring,
}

impl GeneratorSpec {
    pub fn uniform(dim: usize, n_per_color: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::UniformRandom { lo: rational::int(0), hi: rational::int(1) },
            n_per_color,
            dim,
            seed,
            coloring: Coloring::RoundRobin,
        }
    }
}

fn color_labels(spec: &GeneratorSpec) -> Vec<usize> {
    let m = spec.n_per_color * (spec.dim + 1);
    let mut labels: Vec<usize> = (0..m).map(|i| i % (spec.dim + 1)).collect();
    if spec.coloring == Coloring::RandomBalanced {
        labels.shuffle(&mut substream(spec.seed, TAG_COLORS, 0));
    }
    labels
}

fn assemble(spec: &GeneratorSpec, points: Vec<Point>) -> Result<ColoredPointSet> {
    let mut classes = vec![Vec::with_capacity(spec.n_per_color); spec.dim + 1];
    for (p, c) in points.into_iter().zip(color_labels(spec)) {
        classes[c].push(p);
    }
    ColoredPointSet::new(spec.dim, classes)
}

fn random_points(spec: &GeneratorSpec, attempt: u64) -> Vec<Point> {
    let m = spec.n_per_color * (spec.dim + 1);
    let mut rng = substream(spec.seed, TAG_POINTS, attempt);
    let grid = 1i64 << GRID_BITS;
    (0..m)
        .map(|_| {
            let coords = (0..spec.dim)
                .map(|_| match &spec.kind {
                    GeneratorKind::UniformRandom { lo, hi } => {
                        let k = rng.gen_range(0..=grid);
                        lo + (hi - lo) * rational::ratio(k, grid)
                    }
                    _ => rational::from_f64_grid(rng.sample::<f64, _>(StandardNormal), GRID_BITS),
                })
                .collect();
            Point::new(coords).expect("dim >= 1")
        })
        .collect()
}

fn stretched_grid_points(dim: usize, count: usize, gamma: &Rational) -> (Vec<Point>, usize) {
    let side = (1..).find(|s: &usize| s.pow(dim as u32) >= count).expect("finite");
    let points = (0..count)
        .map(|idx| {
            let mut rest = idx;
            let coords = (0..dim)
                .map(|axis| {
                    let i = rest % side;
                    rest /= side;
                    if axis == 0 {
                        rational::int(i as i64)
                    } else {
                        num_traits::pow(gamma.clone(), i)
                    }
                })
                .collect();
            Point::new(coords).expect("dim >= 1")
        })
        .collect();
    (points, side)
}

/// Builds the instance described by `spec`; the output is always in
/// general position.
pub fn generate(spec: &GeneratorSpec) -> Result<ColoredPointSet> {
    if spec.dim == 0 {
        return Err(Error::NonpositiveDimension);
    }
    if spec.n_per_color == 0 {
        return Err(Error::EmptyClass(0));
    }
    let count = spec.n_per_color * (spec.dim + 1);
    match &spec.kind {
        GeneratorKind::UniformRandom { lo, hi } if lo >= hi => {
            Err(Error::InvalidMeasure(format!("empty box [{lo}, {hi}]")))
        }
        GeneratorKind::UniformRandom { .. } | GeneratorKind::GaussianRandom => {
            for attempt in 0..MAX_ATTEMPTS {
                let cps = assemble(spec, random_points(spec, attempt))?;
                if general_position_check(&cps, None).ok {
                    return Ok(cps);
                }
            }
            Err(Error::GeneralPositionUnreachable(MAX_ATTEMPTS as usize))
        }
        GeneratorKind::StretchedGrid { gamma } => {
            if *gamma < rational::int(2) {
                return Err(Error::OutOfRange(format!("stretched grid needs gamma >= 2, got {gamma}")));
            }
            let (points, side) = stretched_grid_points(spec.dim, count, gamma);
            let grid = assemble(spec, points)?;
            let magnitude = Rational::new(BigInt::from(1), BigInt::from(1000)) / num_traits::pow(gamma.clone(), side);
            for attempt in 0..MAX_ATTEMPTS {
                let cps = perturb(&grid, derive_seed(spec.seed, TAG_PERTURB, attempt), &magnitude)?;
                if general_position_check(&cps, None).ok {
                    return Ok(cps);
                }
            }
            Err(Error::GeneralPositionUnreachable(MAX_ATTEMPTS as usize))
        }
        GeneratorKind::MomentCurve => {
            let points = (1..=count as i64)
                .map(|t| Point::from_ints(&(1..=spec.dim as u32).map(|k| t.pow(k)).collect::<Vec<_>>()))
                .collect();
            let cps = assemble(spec, points)?;
            // distinct parameters give a nonzero Vandermonde determinant
            debug_assert!(general_position_check(&cps, None).ok);
            Ok(cps)
        }
    }
}

/// The nine-point planar example (three points per color) and its marked
/// query point `(6.2, 6.2)`.
pub fn figure_one() -> (ColoredPointSet, Point) {
    let class = |pts: [[&str; 2]; 3]| pts.iter().map(|c| Point::parse(c).expect("decimal")).collect();
    let cps = ColoredPointSet::new(
        2,
        vec![
            class([["9.9", "0.8"], ["9.0", "7.8"], ["12.6", "3.2"]]),
            class([["8.1", "5.2"], ["2.1", "5.5"], ["0.1", "7.7"]]),
            class([["6.7", "7.0"], ["14.2", "8.3"], ["6.6", "2.4"]]),
        ],
    )
    .expect("valid instance");
    (cps, Point::parse(&["6.2", "6.2"]).expect("decimal"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use num_traits::Signed;

    #[test]
    fn moment_curve_small() {
        let spec = GeneratorSpec { kind: GeneratorKind::MomentCurve, ..GeneratorSpec::uniform(2, 1, 0) };
        let cps = generate(&spec).unwrap();
        assert_eq!(cps.class_sizes(), vec![1, 1, 1]);
        for p in cps.points() {
            assert_eq!(&p.coords()[1], &(&p.coords()[0] * &p.coords()[0]));
        }
        assert!(general_position_check(&cps, None).ok);
    }

    #[test]
    fn moment_curve_needs_no_perturbation_in_three_dimensions() {
        let spec = GeneratorSpec { kind: GeneratorKind::MomentCurve, ..GeneratorSpec::uniform(3, 3, 0) };
        let cps = generate(&spec).unwrap();
        assert!(cps.points().all(|p| p.coords().iter().all(|c| c.is_integer())));
        assert!(general_position_check(&cps, None).ok);
    }

    #[test]
    fn stretched_grid_rows() {
        let spec = GeneratorSpec {
            kind: GeneratorKind::StretchedGrid { gamma: int(10) },
            ..GeneratorSpec::uniform(2, 3, 5)
        };
        let cps = generate(&spec).unwrap();
        assert_eq!(cps.class_sizes(), vec![3, 3, 3]);
        assert!(general_position_check(&cps, None).ok);
        let tol = rational::ratio(1, 1000);
        for p in cps.points() {
            let y = &p.coords()[1];
            assert!([1, 10, 100].iter().any(|&r| (y - int(r)).abs() <= tol), "{p}");
        }
        assert_eq!(cps, generate(&spec).unwrap());
    }

    #[test]
    fn stretched_grid_rejects_small_gamma() {
        let spec = GeneratorSpec {
            kind: GeneratorKind::StretchedGrid { gamma: rational::ratio(3, 2) },
            ..GeneratorSpec::uniform(2, 3, 5)
        };
        assert!(matches!(generate(&spec), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn random_kinds_are_balanced_and_deterministic() {
        for kind in [GeneratorKind::GaussianRandom, GeneratorKind::UniformRandom { lo: int(-2), hi: int(3) }] {
            for coloring in [Coloring::RoundRobin, Coloring::RandomBalanced] {
                let spec = GeneratorSpec { kind: kind.clone(), coloring, ..GeneratorSpec::uniform(2, 5, 11) };
                let a = generate(&spec).unwrap();
                assert_eq!(a.class_sizes(), vec![5, 5, 5]);
                assert!(general_position_check(&a, None).ok);
                assert_eq!(a, generate(&spec).unwrap());
                let other = generate(&GeneratorSpec { seed: 12, ..spec }).unwrap();
                assert_ne!(a, other);
            }
        }
    }

    #[test]
    fn figure_one_is_in_general_position() {
        let (cps, q) = figure_one();
        assert!(general_position_check(&cps, None).ok);
        assert!(general_position_check(&cps, Some(&q)).ok);
        assert_eq!(q.coords()[0], rational::ratio(31, 5));
    }
}
