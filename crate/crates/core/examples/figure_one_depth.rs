//! Colorful depth of the query in the three-color planar example, counted
//! both by brute force and by the angular sweep.
use colorful_selection::constructions::figure_one;
use colorful_selection::depth::{colorful_depth_bruteforce, colorful_depth_sweep2d};

fn main() -> colorful_selection::Result<()> {
    let (cps, q) = figure_one();
    let brute = colorful_depth_bruteforce(&cps, &q)?;
    let sweep = colorful_depth_sweep2d(&cps, &q)?;
    println!("query {q}");
    println!("brute force: {} of {} ({})", brute.count, brute.total, brute.fraction);
    println!("sweep:       {} of {} ({})", sweep.count, sweep.total, sweep.fraction);
    Ok(())
}
