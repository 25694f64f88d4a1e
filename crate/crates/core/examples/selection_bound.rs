//! Checks that the deepest point reaches 2/9 of all colorful triangles.
use colorful_selection::constructions::{generate, GeneratorSpec};
use colorful_selection::depth::{verify_selection_bound, VerifyMode};

fn main() -> colorful_selection::Result<()> {
    for n in 3..=6 {
        for seed in 0..3 {
            let cps = generate(&GeneratorSpec::uniform(2, n, seed))?;
            let r = verify_selection_bound(&cps, VerifyMode::Exact2D)?;
            println!("n={n} seed={seed}: max {} / bound {} -> {}", r.max_found, r.bound_value, r.satisfied);
        }
    }
    Ok(())
}
