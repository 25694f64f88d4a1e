//! Lower bounds on the maximum colorful depth in any dimension.

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{depth_at_checked, require_nonempty, violation, DepthResult, MaxDepthResult, SearchMethod};
use crate::error::{Error, Result};
use crate::geometry::{general_position_check, ColoredPointSet, Point};
use crate::rational::Rational;
use crate::rng::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HeuristicStrategy {
    CentroidHeuristic,
    LocalSearch,
}

/// Number of consecutive halvings without improvement that ends a local search.
const MAX_HALVINGS: u32 = 24;

struct Best {
    depth: Option<DepthResult>,
}

impl Best {
    fn offer(&mut self, d: DepthResult) -> bool {
        let better = match &self.depth {
            None => true,
            Some(b) => d.count > b.count || (d.count == b.count && d.query < b.query),
        };
        if better {
            self.depth = Some(d);
        }
        better
    }
}

/// Best point found by sampling centroids of random colorful tuples
/// (`CentroidHeuristic`), optionally refined by coordinate steps of halving
/// size (`LocalSearch`). `budget` bounds the number of depth evaluations;
/// local search spends half of it on centroids. The result is a lower bound
/// on the true maximum.
pub fn max_depth_heuristic(
    cps: &ColoredPointSet,
    strategy: HeuristicStrategy,
    budget: u64,
    seed: u64,
) -> Result<MaxDepthResult> {
    if budget == 0 {
        return Err(Error::NonpositiveBudget);
    }
    require_nonempty(cps)?;
    if let Some(w) = general_position_check(cps, None).witness {
        return Err(violation(w));
    }

    let centroid_budget = match strategy {
        HeuristicStrategy::CentroidHeuristic => budget,
        HeuristicStrategy::LocalSearch => budget.div_ceil(2),
    };
    let mut rng = rng_from_seed(seed);
    let mut best = Best { depth: None };
    let mut evaluated = 0u64;
    for _ in 0..centroid_budget {
        let tuple: Vec<&Point> = cps.classes().iter().map(|c| &c[rng.gen_range(0..c.len())]).collect();
        evaluated += 1;
        if let Some(d) = depth_at_checked(cps, &Point::centroid(&tuple))? {
            best.offer(d);
        }
    }

    if strategy == HeuristicStrategy::LocalSearch {
        if let Some(start) = best.depth.clone() {
            local_search(cps, start, budget, &mut evaluated, &mut best)?;
        }
    }

    let depth = best.depth.ok_or_else(|| {
        Error::OutOfRange("every sampled centroid was degenerate; increase the budget".into())
    })?;
    let method = match strategy {
        HeuristicStrategy::CentroidHeuristic => SearchMethod::CentroidHeuristic,
        HeuristicStrategy::LocalSearch => SearchMethod::LocalSearch,
    };
    Ok(MaxDepthResult { point: depth.query.clone(), depth, candidates_evaluated: evaluated, method })
}

fn local_search(
    cps: &ColoredPointSet,
    start: DepthResult,
    budget: u64,
    evaluated: &mut u64,
    best: &mut Best,
) -> Result<()> {
    let d = cps.dim();
    let extent = (0..d)
        .map(|k| {
            let (lo, hi) = cps.points().map(|p| &p.coords()[k]).fold((None::<&Rational>, None::<&Rational>), |(lo, hi), c| {
                (Some(lo.map_or(c, |l| l.min(c))), Some(hi.map_or(c, |h| h.max(c))))
            });
            hi.expect("nonempty") - lo.expect("nonempty")
        })
        .max()
        .expect("d >= 1");
    let mut step = if extent.is_zero() { Rational::from_integer(1.into()) } else { extent / Rational::from_integer(4.into()) };
    let half = Rational::new(1.into(), 2.into());
    let mut current = start;
    let mut halvings = 0;
    while halvings < MAX_HALVINGS && *evaluated < budget {
        let mut improved = None::<DepthResult>;
        'moves: for k in 0..d {
            for sign in [1i64, -1] {
                if *evaluated >= budget {
                    break 'moves;
                }
                let mut coords = current.query.coords().to_vec();
                coords[k] += &step * Rational::from_integer(sign.into());
                *evaluated += 1;
                if let Some(cand) = depth_at_checked(cps, &Point::from_coords_unchecked(coords))? {
                    best.offer(cand.clone());
                    if cand.count > improved.as_ref().map_or(current.count, |i| i.count) {
                        improved = Some(cand);
                    }
                }
            }
        }
        match improved {
            Some(next) => current = next,
            None => {
                step *= &half;
                halvings += 1;
            }
        }
    }
    Ok(())
}
