//! Monte Carlo containment probabilities and the deep-point search.

use serde::{Deserialize, Serialize};

use super::float::contains_f64;
use super::{MeasureFamily, Sampler};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, substream};

/// Trials per independent substream.
const BLOCK: u64 = 4096;

const TAG_TRIALS: u64 = 0x20;
const TAG_SEARCH: u64 = 0x21;
const TAG_FINAL: u64 = 0x22;

/// A Monte Carlo estimate of the probability that `query` lies in a random
/// simplex of the family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub query: Vec<f64>,
    pub p_hat: f64,
    /// `sqrt(p_hat (1 - p_hat) / samples)`.
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl EstimateResult {
    fn from_hits(query: Vec<f64>, hits: u64, samples: u64, seed: u64) -> Self {
        let p_hat = hits as f64 / samples as f64;
        let std_error = (p_hat * (1.0 - p_hat) / samples as f64).sqrt();
        EstimateResult { query, p_hat, std_error, samples, seed }
    }
}

/// Fraction of `samples` trials in which `v` lies in the closed simplex
/// spanned by one draw from each measure.
///
/// Trials run in blocks of 4096, block `b` drawing from its own substream
/// of `seed`, so the estimate depends only on `(family, v, samples, seed)`.
pub fn containment_probability(fam: &MeasureFamily, v: &[f64], samples: u64, seed: u64) -> Result<EstimateResult> {
    if samples == 0 {
        return Err(Error::OutOfRange("sample count must be positive".into()));
    }
    if v.len() != fam.dim() || v.iter().any(|x| !x.is_finite()) {
        return Err(Error::DimensionMismatch(format!("query of dimension {} for a family of dimension {}", v.len(), fam.dim())));
    }
    for m in fam.measures() {
        if let super::MeasureSpec::MollifiedEmpirical { points, .. } = m {
            if points.is_empty() {
                return Err(Error::InvalidMeasure("mollified measure has no points".into()));
            }
        }
    }
    let d = fam.dim();
    let samplers: Vec<Sampler> = fam.measures().iter().map(Sampler::new).collect();
    let mut buf = vec![vec![0.0; d]; d + 1];
    let mut hits = 0u64;
    for block in 0..samples.div_ceil(BLOCK) {
        let mut rng = substream(seed, TAG_TRIALS, block);
        let trials = BLOCK.min(samples - block * BLOCK);
        for _ in 0..trials {
            for (s, out) in samplers.iter().zip(buf.iter_mut()) {
                s.sample_into(&mut rng, out);
            }
            let verts: Vec<&[f64]> = buf.iter().map(Vec::as_slice).collect();
            if contains_f64(&verts, v) {
                hits += 1;
            }
        }
    }
    Ok(EstimateResult::from_hits(v.to_vec(), hits, samples, seed))
}

/// Grid search for a point of high containment probability.
///
/// Evaluates a `grid_resolution^d` grid of cell centers over the family's
/// search box, then `refine_rounds` times recenters a window of half the
/// previous width on the best point and repeats. The returned estimate at
/// the winner uses a fresh substream, independent of the selection samples.
pub fn deep_point_search(
    fam: &MeasureFamily,
    grid_resolution: u32,
    refine_rounds: u32,
    samples_per_eval: u64,
    seed: u64,
) -> Result<EstimateResult> {
    if grid_resolution == 0 {
        return Err(Error::OutOfRange("grid resolution must be at least 1".into()));
    }
    let d = fam.dim();
    let (mut lo, mut hi) = fam.search_box();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut eval = 0u64;
    let cells = (grid_resolution as u64).pow(d as u32);
    for _ in 0..=refine_rounds {
        for cell in 0..cells {
            let mut rest = cell;
            let point: Vec<f64> = (0..d)
                .map(|k| {
                    let i = rest % grid_resolution as u64;
                    rest /= grid_resolution as u64;
                    lo[k] + (i as f64 + 0.5) * (hi[k] - lo[k]) / grid_resolution as f64
                })
                .collect();
            let est = containment_probability(fam, &point, samples_per_eval, derive_seed(seed, TAG_SEARCH, eval))?;
            eval += 1;
            if best.as_ref().is_none_or(|(p, _)| est.p_hat > *p) {
                best = Some((est.p_hat, point));
            }
        }
        let center = &best.as_ref().expect("at least one cell").1;
        for k in 0..d {
            let half = (hi[k] - lo[k]) / 4.0;
            lo[k] = center[k] - half;
            hi[k] = center[k] + half;
        }
    }
    let (_, point) = best.expect("at least one cell");
    containment_probability(fam, &point, samples_per_eval, derive_seed(seed, TAG_FINAL, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureSpec;

    fn unit_interval_pair() -> MeasureFamily {
        MeasureFamily::iid(1, MeasureSpec::uniform_box(vec![0.0], vec![1.0])).unwrap()
    }

    #[test]
    fn segment_probability_closed_form() {
        // P[v between two uniform points] = 2v(1 - v)
        let fam = unit_interval_pair();
        let r = containment_probability(&fam, &[0.25], 200_000, 5).unwrap();
        assert!((r.p_hat - 0.375).abs() <= 3.0 * r.std_error, "{r:?}");
        assert_eq!(r, containment_probability(&fam, &[0.25], 200_000, 5).unwrap());
        assert_eq!(r.std_error, (r.p_hat * (1.0 - r.p_hat) / 200_000.0).sqrt());
    }

    #[test]
    fn bad_arguments() {
        let fam = unit_interval_pair();
        assert!(containment_probability(&fam, &[0.5], 0, 1).is_err());
        assert!(matches!(containment_probability(&fam, &[0.5, 0.5], 10, 1), Err(Error::DimensionMismatch(_))));
        assert!(deep_point_search(&fam, 0, 1, 10, 1).is_err());
    }

    #[test]
    fn partial_blocks_count_every_trial() {
        let fam = unit_interval_pair();
        let r = containment_probability(&fam, &[2.0], 5000, 1).unwrap();
        assert_eq!((r.p_hat, r.samples), (0.0, 5000));
    }
}
