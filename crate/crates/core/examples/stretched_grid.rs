//! Max depth of the stretched grid for growing n under both colorings, as
//! tidy CSV on stdout.
use colorful_selection::constructions::{generate, Coloring, GeneratorKind, GeneratorSpec};
use colorful_selection::depth::max_depth_exact2d;
use colorful_selection::io::to_tidy_csv;
use colorful_selection::rational::{int, to_f64};
use serde::Serialize;

#[derive(Serialize)]
struct Row {
    n: usize,
    coloring: &'static str,
    max_depth: u64,
    total: u64,
    fraction: f64,
}

fn main() -> colorful_selection::Result<()> {
    let mut rows = Vec::new();
    for n in 3..=6 {
        for (name, coloring) in [("round_robin", Coloring::RoundRobin), ("random_balanced", Coloring::RandomBalanced)] {
            let spec = GeneratorSpec {
                kind: GeneratorKind::StretchedGrid { gamma: int(10) },
                n_per_color: n,
                dim: 2,
                seed: 1,
                coloring,
            };
            let r = max_depth_exact2d(&generate(&spec)?)?;
            rows.push(Row { n, coloring: name, max_depth: r.depth.count, total: r.depth.total, fraction: to_f64(&r.depth.fraction) });
        }
    }
    print!("{}", to_tidy_csv(&rows)?);
    Ok(())
}
