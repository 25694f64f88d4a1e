//! Continuous measures: specifications, samplers, and the smooth bump used
//! to mollify discrete point sets.

mod estimate;
mod float;
mod mollify;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

pub use estimate::{containment_probability, deep_point_search, EstimateResult};
pub use float::contains_f64;
pub use mollify::{mollification_convergence_check, mollify, ConvergenceReport};

/// An absolutely continuous probability measure on `R^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSpec {
    UniformBox { lo: Vec<f64>, hi: Vec<f64> },
    UniformBall { center: Vec<f64>, radius: f64 },
    /// Axis-aligned Gaussian.
    Gaussian { mean: Vec<f64>, std: Vec<f64> },
    /// `(1/|P|) * sum_{p in P} Psi_n(x - p)`: each point smeared by the
    /// product bump scaled to `[-1/n, 1/n]^d`.
    MollifiedEmpirical { points: Vec<Point>, width_inverse: u64 },
}

impl MeasureSpec {
    pub fn uniform_box(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        MeasureSpec::UniformBox { lo, hi }
    }

    pub fn standard_gaussian(dim: usize) -> Self {
        MeasureSpec::Gaussian { mean: vec![0.0; dim], std: vec![1.0; dim] }
    }

    pub fn dim(&self) -> usize {
        match self {
            MeasureSpec::UniformBox { lo, .. } => lo.len(),
            MeasureSpec::UniformBall { center, .. } => center.len(),
            MeasureSpec::Gaussian { mean, .. } => mean.len(),
            MeasureSpec::MollifiedEmpirical { points, .. } => points.first().map_or(0, Point::dim),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidMeasure(msg));
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        if self.dim() == 0 {
            return bad("measure has dimension 0".into());
        }
        match self {
            MeasureSpec::UniformBox { lo, hi } => {
                if lo.len() != hi.len() || !finite(lo) || !finite(hi) {
                    return bad("box bounds must be finite and of equal length".into());
                }
                if lo.iter().zip(hi).any(|(l, h)| l >= h) {
                    return bad("box needs lo < hi on every axis".into());
                }
            }
            MeasureSpec::UniformBall { center, radius } => {
                if !finite(center) || !(radius.is_finite() && *radius > 0.0) {
                    return bad("ball needs a finite center and a positive radius".into());
                }
            }
            MeasureSpec::Gaussian { mean, std } => {
                if mean.len() != std.len() || !finite(mean) || !finite(std) || std.iter().any(|s| *s <= 0.0) {
                    return bad("gaussian needs finite means and positive deviations".into());
                }
            }
            MeasureSpec::MollifiedEmpirical { points, width_inverse } => {
                if *width_inverse == 0 {
                    return bad("mollifier width inverse must be positive".into());
                }
                let d = self.dim();
                if points.iter().any(|p| p.dim() != d) {
                    return bad("mollified points differ in dimension".into());
                }
            }
        }
        Ok(())
    }

    /// Axis-aligned box containing the support (Gaussians: mean ± 4 deviations).
    pub fn support_box(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            MeasureSpec::UniformBox { lo, hi } => (lo.clone(), hi.clone()),
            MeasureSpec::UniformBall { center, radius } => {
                (center.iter().map(|c| c - radius).collect(), center.iter().map(|c| c + radius).collect())
            }
            MeasureSpec::Gaussian { mean, std } => (
                mean.iter().zip(std).map(|(m, s)| m - 4.0 * s).collect(),
                mean.iter().zip(std).map(|(m, s)| m + 4.0 * s).collect(),
            ),
            MeasureSpec::MollifiedEmpirical { points, width_inverse } => {
                let w = 1.0 / *width_inverse as f64;
                let d = self.dim();
                let mut lo = vec![f64::INFINITY; d];
                let mut hi = vec![f64::NEG_INFINITY; d];
                for p in points {
                    for (k, x) in p.to_f64().into_iter().enumerate() {
                        lo[k] = lo[k].min(x - w);
                        hi[k] = hi[k].max(x + w);
                    }
                }
                (lo, hi)
            }
        }
    }
}

/// `d + 1` measures on `R^d`; the vertices of a random simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub struct MeasureFamily {
    dim: usize,
    measures: Vec<MeasureSpec>,
}

#[derive(Serialize, Deserialize)]
struct RawFamily {
    dim: usize,
    measures: Vec<MeasureSpec>,
}

impl TryFrom<RawFamily> for MeasureFamily {
    type Error = Error;
    fn try_from(raw: RawFamily) -> Result<Self> {
        MeasureFamily::new(raw.dim, raw.measures)
    }
}

impl From<MeasureFamily> for RawFamily {
    fn from(f: MeasureFamily) -> Self {
        RawFamily { dim: f.dim, measures: f.measures }
    }
}

impl MeasureFamily {
    pub fn new(dim: usize, measures: Vec<MeasureSpec>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::NonpositiveDimension);
        }
        if measures.len() != dim + 1 {
            return Err(Error::InvalidMeasure(format!("{} measures given, dimension {dim} needs {}", measures.len(), dim + 1)));
        }
        for m in &measures {
            m.validate()?;
            if m.dim() != dim {
                return Err(Error::InvalidMeasure(format!("measure of dimension {} in a family of dimension {dim}", m.dim())));
            }
        }
        Ok(MeasureFamily { dim, measures })
    }

    /// `d + 1` copies of the same measure.
    pub fn iid(dim: usize, m: MeasureSpec) -> Result<Self> {
        MeasureFamily::new(dim, vec![m; dim + 1])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn measures(&self) -> &[MeasureSpec] {
        &self.measures
    }

    /// Union of the members' support boxes.
    pub fn search_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for m in &self.measures {
            let (l, h) = m.support_box();
            for k in 0..self.dim {
                lo[k] = lo[k].min(l[k]);
                hi[k] = hi[k].max(h[k]);
            }
        }
        (lo, hi)
    }
}

/// The bump `psi(x) = exp(-1/(1-x^2))` on `|x| < 1`, zero elsewhere.
pub fn psi(x: f64) -> f64 {
    if x.abs() < 1.0 {
        (-1.0 / (1.0 - x * x)).exp()
    } else {
        0.0
    }
}

/// `psi(u) / psi(0) = exp(1 - 1/(1-u^2))`, the rejection acceptance probability.
pub fn psi_acceptance(u: f64) -> f64 {
    if u.abs() < 1.0 {
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    } else {
        0.0
    }
}

/// One rejection proposal: `u` uniform on `(-1, 1)`, accepted with
/// probability [`psi_acceptance`].
pub fn psi_proposal<R: Rng + ?Sized>(rng: &mut R) -> Option<f64> {
    let u: f64 = rng.gen_range(-1.0..1.0);
    (rng.gen::<f64>() < psi_acceptance(u)).then_some(u)
}

/// A draw from the density proportional to `psi`.
pub fn sample_psi<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        if let Some(u) = psi_proposal(rng) {
            return u;
        }
    }
}

/// `∫ psi` over `(-1, 1)` by adaptive Simpson quadrature.
pub fn psi_integral() -> f64 {
    fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn adapt(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let f = |x: f64| psi(x);
    let (a, b) = (-1.0, 1.0);
    let (fa, fm, fb) = (f(a), f(0.0), f(b));
    adapt(&f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 1e-13, 40)
}

/// Precomputed sampler for one measure.
pub(crate) enum Sampler<'a> {
    Box { lo: &'a [f64], hi: &'a [f64] },
    Ball { center: &'a [f64], radius: f64 },
    Gaussian { mean: &'a [f64], std: &'a [f64] },
    Mollified { points: Vec<Vec<f64>>, width: f64 },
}

impl<'a> Sampler<'a> {
    pub(crate) fn new(m: &'a MeasureSpec) -> Self {
        match m {
            MeasureSpec::UniformBox { lo, hi } => Sampler::Box { lo, hi },
            MeasureSpec::UniformBall { center, radius } => Sampler::Ball { center, radius: *radius },
            MeasureSpec::Gaussian { mean, std } => Sampler::Gaussian { mean, std },
            MeasureSpec::MollifiedEmpirical { points, width_inverse } => Sampler::Mollified {
                points: points.iter().map(Point::to_f64).collect(),
                width: 1.0 / *width_inverse as f64,
            },
        }
    }

    pub(crate) fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        match self {
            Sampler::Box { lo, hi } => {
                for (k, o) in out.iter_mut().enumerate() {
                    *o = lo[k] + (hi[k] - lo[k]) * rng.gen::<f64>();
                }
            }
            Sampler::Ball { center, radius } => {
                let d = center.len();
                let mut norm2 = 0.0;
                for o in out.iter_mut() {
                    *o = StandardNormal.sample(rng);
                    norm2 += *o * *o;
                }
                let r = radius * rng.gen::<f64>().powf(1.0 / d as f64) / norm2.sqrt();
                for (o, c) in out.iter_mut().zip(center.iter()) {
                    *o = c + r * *o;
                }
            }
            Sampler::Gaussian { mean, std } => {
                for (k, o) in out.iter_mut().enumerate() {
                    let z: f64 = StandardNormal.sample(rng);
                    *o = mean[k] + std[k] * z;
                }
            }
            Sampler::Mollified { points, width } => {
                let p = &points[rng.gen_range(0..points.len())];
                for (o, x) in out.iter_mut().zip(p) {
                    *o = x + width * sample_psi(rng);
                }
            }
        }
    }
}

/// One point drawn from `m`.
pub fn sample<R: Rng + ?Sized>(m: &MeasureSpec, rng: &mut R) -> Result<Vec<f64>> {
    m.validate()?;
    if let MeasureSpec::MollifiedEmpirical { points, .. } = m {
        if points.is_empty() {
            return Err(Error::InvalidMeasure("mollified measure has no points".into()));
        }
    }
    let mut out = vec![0.0; m.dim()];
    Sampler::new(m).sample_into(rng, &mut out);
    Ok(out)
}
