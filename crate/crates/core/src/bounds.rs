//! Known constants for the first selection lemma, as exact rationals.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

fn pow(base: u32, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// Boros-Füredi / Bárány lower bound `(d+1)^{-d}`.
pub fn barany(d: u32) -> Rational {
    Rational::new(1.into(), pow(d + 1, d))
}

/// `(d^2 + 1) / (d+1)^{d+1}`.
pub fn wagner(d: u32) -> Rational {
    Rational::new(BigInt::from(d * d + 1), pow(d + 1, d + 1))
}

/// `1 / (d+1)!`, the uncolored-measure constant.
pub fn karasev_uncolored(d: u32) -> Rational {
    Rational::new(1.into(), factorial(d + 1))
}

/// `2d / ((d+1) (d+1)!)`: the colored selection constant.
pub fn gromov(d: u32) -> Rational {
    Rational::new(BigInt::from(2 * d), BigInt::from(d + 1) * factorial(d + 1))
}

/// `d! / (d+1)^d` from the stretched grid.
pub fn upper_bmn(d: u32) -> Rational {
    Rational::new(factorial(d), pow(d + 1, d))
}

/// Flag-algebra lower bound and best known upper bound for `c_3`. These
/// are quoted literature values, not formulas.
pub const C3_REFERENCE_INTERVAL: (&str, &str) = ("0.07480", "0.09375");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub d: u32,
    #[serde(with = "rational::serde_rational")]
    pub barany: Rational,
    #[serde(with = "rational::serde_rational")]
    pub wagner: Rational,
    #[serde(with = "rational::serde_rational")]
    pub karasev_uncolored: Rational,
    #[serde(with = "rational::serde_rational")]
    pub gromov: Rational,
    #[serde(with = "rational::serde_rational")]
    pub upper_bmn: Rational,
    /// Reference-only `c_3` interval, present for `d = 3`.
    pub c3_interval: Option<(String, String)>,
}

impl BoundsRow {
    /// The `c_3` interval endpoints as exact rationals.
    pub fn c3_interval_exact(&self) -> Option<(Rational, Rational)> {
        self.c3_interval.as_ref().map(|(lo, hi)| {
            (rational::parse_rational(lo).expect("decimal"), rational::parse_rational(hi).expect("decimal"))
        })
    }

    /// `barany <= wagner <= gromov <= upper_bmn`.
    pub fn is_ordered(&self) -> bool {
        self.barany <= self.wagner && self.wagner <= self.gromov && self.gromov <= self.upper_bmn
    }
}

pub fn bounds_row(d: u32) -> Result<BoundsRow> {
    if d == 0 {
        return Err(Error::NonpositiveDimension);
    }
    Ok(BoundsRow {
        d,
        barany: barany(d),
        wagner: wagner(d),
        karasev_uncolored: karasev_uncolored(d),
        gromov: gromov(d),
        upper_bmn: upper_bmn(d),
        c3_interval: (d == 3).then(|| (C3_REFERENCE_INTERVAL.0.to_string(), C3_REFERENCE_INTERVAL.1.to_string())),
    })
}

/// Aligned text table for `rows`.
pub fn format_table(rows: &[BoundsRow]) -> String {
    let header = ["d", "barany", "wagner", "karasev", "gromov", "upper_bmn", "c3 (reference)"];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.d.to_string(),
                r.barany.to_string(),
                r.wagner.to_string(),
                r.karasev_uncolored.to_string(),
                r.gromov.to_string(),
                r.upper_bmn.to_string(),
                r.c3_interval.as_ref().map(|(lo, hi)| format!("({lo}, {hi})")).unwrap_or_default(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..7)
        .map(|i| cells.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let mut line = |row: Vec<&str>| {
        let parts: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for c in &cells {
        line(c.iter().map(String::as_str).collect());
    }
    out
}

/// Result of [`parity_gap_lemma_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityGapReport {
    #[serde(with = "rational::serde_rational")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_rational")]
    pub rhs: Rational,
    pub holds: bool,
}

/// Exact check of `a(1-b) + (1-a)b >= 2x(1-x)` with `x = (a+b)/2`.
pub fn parity_gap_lemma_check(a: &Rational, b: &Rational) -> Result<ParityGapReport> {
    let zero = rational::int(0);
    let one = rational::int(1);
    for v in [a, b] {
        if *v < zero || *v > one {
            return Err(Error::OutOfRange(format!("{v} is not in [0, 1]")));
        }
    }
    let lhs = a * (&one - b) + (&one - a) * b;
    let x = (a + b) / rational::int(2);
    let rhs = rational::int(2) * &x * (&one - &x);
    Ok(ParityGapReport { holds: lhs >= rhs, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn planar_row_is_tight() {
        let r = bounds_row(2).unwrap();
        assert_eq!(r.gromov, ratio(2, 9));
        assert_eq!(r.upper_bmn, ratio(2, 9));
        assert_eq!(r.barany, ratio(1, 9));
        assert_eq!(r.wagner, ratio(5, 27));
        assert_eq!(r.karasev_uncolored, ratio(1, 6));
        assert!(r.c3_interval.is_none());
    }

    #[test]
    fn line_and_space_rows() {
        let r1 = bounds_row(1).unwrap();
        assert_eq!(r1.gromov, ratio(1, 2));
        assert_eq!(r1.upper_bmn, ratio(1, 2));
        assert_eq!(r1.karasev_uncolored, r1.gromov);
        let r3 = bounds_row(3).unwrap();
        assert_eq!(r3.gromov, ratio(1, 16));
        assert_eq!(r3.upper_bmn, ratio(3, 32));
        let (lo, hi) = r3.c3_interval_exact().unwrap();
        assert_eq!(lo, ratio(7480, 100000));
        assert_eq!(hi, r3.upper_bmn);
        assert!(r3.gromov < lo);
    }

    #[test]
    fn zero_dimension_rejected() {
        assert_eq!(bounds_row(0), Err(Error::NonpositiveDimension));
    }

    #[test]
    fn parity_gap_examples() {
        let r = parity_gap_lemma_check(&ratio(1, 2), &ratio(1, 2)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (ratio(1, 2), ratio(1, 2), true));
        let r = parity_gap_lemma_check(&int(0), &int(1)).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (int(1), ratio(1, 2), true));
        assert!(matches!(parity_gap_lemma_check(&ratio(3, 2), &int(0)), Err(Error::OutOfRange(_))));
        assert!(matches!(parity_gap_lemma_check(&int(0), &ratio(-1, 9)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn table_formats_all_rows() {
        let rows: Vec<_> = (1..=4).map(|d| bounds_row(d).unwrap()).collect();
        let t = format_table(&rows);
        assert_eq!(t.lines().count(), 5);
        assert!(t.contains("2/9"));
        assert!(t.contains("(0.07480, 0.09375)"));
    }
}
