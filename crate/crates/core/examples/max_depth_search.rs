//! Exact deepest point of a random planar instance next to both heuristics.
use colorful_selection::constructions::{generate, GeneratorSpec};
use colorful_selection::depth::{max_depth_exact2d, max_depth_heuristic, HeuristicStrategy};

fn main() -> colorful_selection::Result<()> {
    let n = 5;
    let cps = generate(&GeneratorSpec::uniform(2, n, 11))?;
    let exact = max_depth_exact2d(&cps)?;
    println!("exact:    depth {} at {} ({} candidates)", exact.depth.count, exact.point, exact.candidates_evaluated);
    for strategy in [HeuristicStrategy::CentroidHeuristic, HeuristicStrategy::LocalSearch] {
        let h = max_depth_heuristic(&cps, strategy, 300, 11)?;
        println!("{strategy:?}: depth {} at {}", h.depth.count, h.point);
    }
    println!("2n^3/9 = {:.2}", 2.0 * (n * n * n) as f64 / 9.0);
    Ok(())
}
