use num_rational::Ratio;
use num_traits::Zero;

use crate::cyclo::CycInt;
use crate::error::{Error, Result};

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<Ratio<i64>>>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Ratio<i64>>>) -> Self {
        RationalMatrix { rows }
    }

    /// Integer matrix scaled by `1/denominator`.
    pub fn from_scaled(numerators: &[Vec<i64>], denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(RationalMatrix {
            rows: numerators
                .iter()
                .map(|r| r.iter().map(|&n| Ratio::new(n, denominator)).collect())
                .collect(),
        })
    }

    /// Parses entries written as `p`, `p/q` or `-p/q`.
    pub fn parse(rows: &[Vec<String>]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut parsed = Vec::with_capacity(row.len());
            for (j, entry) in row.iter().enumerate() {
                let r = parse_ratio(entry.trim()).ok_or_else(|| {
                    Error::Parse(format!(
                        "matrix entry [{i}][{j}] = {entry:?} is not an exact rational p/q"
                    ))
                })?;
                parsed.push(r);
            }
            out.push(parsed);
        }
        Ok(RationalMatrix { rows: out })
    }

    pub fn rows(&self) -> &[Vec<Ratio<i64>>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    /// Least common denominator of all entries.
    pub fn common_denominator(&self) -> i64 {
        self.rows
            .iter()
            .flatten()
            .fold(1i64, |acc, r| num_integer::lcm(acc, *r.denom()))
    }
}

fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().ok()?, d.trim().parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    (den != 0).then(|| Ratio::new(num, den))
}

/// Whether `U_{ij} = exp(2πi M_{ij})` has pairwise orthogonal rows, decided in `Z[ζ_D]`
/// with `D` the common denominator.
pub fn is_log_hadamard(m: &RationalMatrix) -> Result<bool> {
    let n = m.rows.len();
    for row in &m.rows {
        if row.len() != n {
            return Err(Error::NonSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    let d = m.common_denominator();
    let order = u32::try_from(d).map_err(|_| Error::Parse(format!("denominator {d} too large")))?;
    for i in 0..n {
        for j in i + 1..n {
            let mut acc = CycInt::zero(order)?;
            for k in 0..n {
                let diff = m.rows[i][k] - m.rows[j][k];
                let scaled = diff * Ratio::from_integer(d);
                debug_assert!(scaled.is_integer());
                let term = CycInt::root(order, scaled.to_integer())?;
                acc = acc.try_add(&term)?;
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
