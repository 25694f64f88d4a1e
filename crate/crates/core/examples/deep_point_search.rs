//! Grid-and-refine search for a point covered with high probability by three
//! different planar measures.
use colorful_selection::measures::{deep_point_search, MeasureFamily, MeasureSpec};

fn main() -> colorful_selection::Result<()> {
    let fam = MeasureFamily::new(
        2,
        vec![
            MeasureSpec::uniform_box(vec![0.0, 0.0], vec![1.0, 1.0]),
            MeasureSpec::Gaussian { mean: vec![2.0, 0.5], std: vec![0.5, 0.5] },
            MeasureSpec::UniformBall { center: vec![1.0, 2.0], radius: 0.7 },
        ],
    )?;
    let r = deep_point_search(&fam, 9, 3, 20_000, 5)?;
    println!("deep point {:?}: {:.4} +- {:.4}", r.query, r.p_hat, r.std_error);
    println!("bound 2/9 = {:.4}", 2.0 / 9.0);
    Ok(())
}
