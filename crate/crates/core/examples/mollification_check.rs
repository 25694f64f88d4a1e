//! Smooths each point into a small bump and compares the resulting
//! probability with the exact discrete depth.
use colorful_selection::constructions::figure_one;
use colorful_selection::measures::mollification_convergence_check;

fn main() -> colorful_selection::Result<()> {
    let (cps, q) = figure_one();
    let r = mollification_convergence_check(&cps, &q, 100_000, 3)?;
    println!("exact {} ({:.4})", r.exact_fraction, colorful_selection::rational::to_f64(&r.exact_fraction));
    println!("width 1/{}: {:.4} +- {:.4}", r.n_used, r.estimate.p_hat, r.estimate.std_error);
    println!("agrees: {}", r.agrees);
    Ok(())
}
