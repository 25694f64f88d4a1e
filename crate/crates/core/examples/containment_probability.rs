//! Monte Carlo probability that a random colorful simplex covers a point.
//! For symmetric measures at the center this is Wendel's 2^-d.
use colorful_selection::measures::{containment_probability, MeasureFamily, MeasureSpec};

fn main() -> colorful_selection::Result<()> {
    let line = MeasureFamily::iid(1, MeasureSpec::uniform_box(vec![0.0], vec![1.0]))?;
    let r = containment_probability(&line, &[0.5], 200_000, 1)?;
    println!("d=1 uniform at 0.5: {:.4} +- {:.4}", r.p_hat, r.std_error);
    for d in [2, 3] {
        let fam = MeasureFamily::iid(d, MeasureSpec::standard_gaussian(d))?;
        let r = containment_probability(&fam, &vec![0.0; d], 200_000, 2)?;
        println!("d={d} gaussian at 0: {:.4} +- {:.4} (expected {})", r.p_hat, r.std_error, 0.5f64.powi(d as i32));
    }
    Ok(())
}
