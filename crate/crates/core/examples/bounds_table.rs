//! Known selection constants for small dimensions, plus one parity-gap check.
use colorful_selection::bounds::{bounds_row, format_table, parity_gap_lemma_check};
use colorful_selection::rational::ratio;

fn main() -> colorful_selection::Result<()> {
    let rows = (1..=6).map(bounds_row).collect::<colorful_selection::Result<Vec<_>>>()?;
    print!("{}", format_table(&rows));
    let r = parity_gap_lemma_check(&ratio(1, 3), &ratio(3, 4))?;
    println!("a=1/3 b=3/4: {} >= {} is {}", r.lhs, r.rhs, r.holds);
    Ok(())
}
