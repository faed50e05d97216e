//! Gaussian elimination over truncated series.

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::QSeries;

/// Solves the square system `a x = b`. Pivots are chosen among certifiably nonzero
/// entries of least degree; divisions expand up to `O(q^cap)` when not exact.
/// Fails with [`Error::SingularMatch`] when no pivot is available.
pub fn solve(a: &[Vec<QSeries>], b: &[QSeries], cap: Option<&Rational>) -> Result<Vec<QSeries>> {
    let n = a.len();
    let mut m: Vec<Vec<QSeries>> = a.to_vec();
    let mut rhs: Vec<QSeries> = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .min_by(|&r, &s| m[r][col].qdegree().unwrap().cmp(&m[s][col].qdegree().unwrap()))
            .ok_or(Error::SingularMatch)?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in col + 1..n {
            if m[r][col].is_exact_zero() {
                continue;
            }
            let f = div(&m[r][col], &m[col][col], cap)?;
            for c in col..n {
                let t = f.mul(&m[col][c]);
                m[r][c] = clip(m[r][c].sub(&t), cap);
            }
            rhs[r] = clip(rhs[r].sub(&f.mul(&rhs[col])), cap);
        }
    }
    let mut x = vec![QSeries::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for c in row + 1..n {
            if !m[row][c].is_exact_zero() {
                acc = acc.sub(&m[row][c].mul(&x[c]));
            }
        }
        x[row] = div(&acc, &m[row][row], cap)?;
    }
    Ok(x)
}

/// Truncates inexact series at `cap`; exact ones are kept.
pub fn clip(x: QSeries, cap: Option<&Rational>) -> QSeries {
    if x.is_exact() {
        x
    } else {
        x.truncate_opt(cap)
    }
}

/// Exact division when it exists, otherwise a truncated expansion.
pub fn div(a: &QSeries, b: &QSeries, cap: Option<&Rational>) -> Result<QSeries> {
    if a.is_exact_zero() {
        return Ok(QSeries::zero());
    }
    if let Some(x) = a.div_exact(b) {
        return Ok(x);
    }
    let cap = match (cap, b.is_exact(), a.precision()) {
        (Some(c), _, _) => c.clone(),
        // a truncated divisor bounds its own inverse
        (None, false, _) => return a.div(b, None),
        (None, true, Some(pa)) => pa - b.qdegree()?,
        (None, true, None) => {
            return Err(Error::InvalidInput("series division without a truncation order".into()))
        }
    };
    a.div(b, Some(&cap))
}
