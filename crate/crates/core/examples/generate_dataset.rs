//! Generates an instance, round-trips it through CSV and JSON, and perturbs
//! it into general position.
use colorful_selection::constructions::{generate, GeneratorKind, GeneratorSpec};
use colorful_selection::io::{parse_csv, parse_json, to_csv, to_json};
use colorful_selection::rational::ratio;
use colorful_selection::{general_position_check, perturb};

fn main() -> colorful_selection::Result<()> {
    let spec = GeneratorSpec { kind: GeneratorKind::MomentCurve, ..GeneratorSpec::uniform(2, 3, 4) };
    let cps = generate(&spec)?;
    let csv = to_csv(&cps);
    print!("{csv}");
    assert_eq!(parse_csv(&csv)?, cps);
    assert_eq!(parse_json(&to_json(&cps))?, cps);
    let moved = perturb(&cps, 9, &ratio(1, 1000))?;
    println!("general position before: {}, after perturbing: {}", general_position_check(&cps, None).ok, general_position_check(&moved, None).ok);
    Ok(())
}
