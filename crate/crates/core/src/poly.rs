//! Univariate polynomials with [`QSeries`] coefficients, rational root finding over ℚ,
//! Puiseux roots (eigenvalues) in `q`, and polynomials in `n`.

use std::cmp::Ordering;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::newton::NewtonPolygon;
use crate::rational::{int, Rational};
use crate::series::QSeries;

/// Coefficients of `x^0, x^1, ...`.
pub type QPoly = Vec<QSeries>;

pub fn trim(mut p: QPoly) -> QPoly {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_exact_zero()) {
        p.pop();
    }
    p
}

pub fn eval(p: &[QSeries], x: &QSeries) -> QSeries {
    let mut acc = QSeries::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

pub fn derivative(p: &[QSeries]) -> QPoly {
    p.iter().enumerate().skip(1).map(|(i, c)| c.scale(&int(i as i64))).collect()
}

pub fn mul(a: &[QSeries], b: &[QSeries]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![QSeries::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_exact_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

/// `p(c + z)` as a polynomial in `z`.
pub fn taylor_shift(p: &[QSeries], c: &QSeries) -> QPoly {
    let mut out: QPoly = Vec::new();
    for a in p.iter().rev() {
        // out = out * (z + c) + a
        let mut next = vec![QSeries::zero(); out.len() + 1];
        for (i, x) in out.iter().enumerate() {
            next[i + 1] = next[i + 1].add(x);
            next[i] = next[i].add(&x.mul(c));
        }
        next[0] = next[0].add(a);
        out = next;
    }
    out
}

/// `p(c x)`.
pub fn scale_var(p: &[QSeries], c: &QSeries) -> QPoly {
    let mut pw = QSeries::one();
    let mut out = Vec::with_capacity(p.len());
    for (i, a) in p.iter().enumerate() {
        if i > 0 {
            pw = pw.mul(c);
        }
        out.push(a.mul(&pw));
    }
    out
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1u64 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Synthetic division by `x - r`; returns `None` when `r` is not a root.
fn deflate(p: &[Rational], r: &Rational) -> Option<Vec<Rational>> {
    let n = p.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut acc = Rational::zero();
    for i in (0..=n).rev() {
        acc = &acc * r + &p[i];
        if i > 0 {
            q[i - 1] = acc.clone();
        }
    }
    acc.is_zero().then_some(q)
}

/// Nonzero rational roots with multiplicities, in increasing order. Returns `None`
/// when the coefficients are too large for divisor enumeration.
pub fn rational_roots(p: &[Rational]) -> Option<Vec<(Rational, usize)>> {
    let mut p: Vec<Rational> = p.to_vec();
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
    }
    if p.len() <= 1 {
        return Some(Vec::new());
    }
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let num_divs = divisors(&ints[0])?;
    let den_divs = divisors(ints.last().unwrap())?;
    let mut cands: Vec<Rational> = Vec::new();
    for a in &num_divs {
        for b in &den_divs {
            let r = Rational::new(a.clone(), b.clone());
            cands.push(r.clone());
            cands.push(-r);
        }
    }
    cands.sort();
    cands.dedup();
    let mut out = Vec::new();
    for r in cands {
        let mut m = 0;
        while p.len() > 1 {
            match deflate(&p, &r) {
                Some(q) => {
                    p = q;
                    m += 1;
                }
                None => break,
            }
        }
        if m > 0 {
            out.push((r, m));
        }
    }
    Some(out)
}

/// A root of a polynomial over Puiseux series, with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    pub value: QSeries,
    pub multiplicity: usize,
}

/// Orders series by degree (descending) and then by their coefficient lists.
pub fn cmp_series(a: &QSeries, b: &QSeries) -> Ordering {
    let da = a.qdegree().ok();
    let db = b.qdegree().ok();
    db.cmp(&da).then_with(|| {
        let ta: Vec<(Rational, Rational)> = a.terms().map(|(e, c)| (e, c.clone())).collect();
        let tb: Vec<(Rational, Rational)> = b.terms().map(|(e, c)| (e, c.clone())).collect();
        ta.cmp(&tb)
    })
}

/// Nonzero roots of `Σ b_i x^i` as Puiseux series in `q`, known up to `O(q^cap)`
/// (exact when Newton's iteration terminates exactly). Coefficients vanishing up to
/// their truncation are treated as zero.
pub fn eigenvalues(p: &[QSeries], cap: &Rational) -> Result<Vec<Eigenvalue>> {
    let mut p: QPoly = p.to_vec();
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    let low = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let p: QPoly = p[low..].to_vec();
    let degree = p.len() - 1;
    let mut out = puiseux_roots(&p, cap, None, 0)?;
    let found: usize = out.iter().map(|e| e.multiplicity).sum();
    if found != degree {
        return Err(Error::IrrationalEigenvalue);
    }
    out.sort_by(|a, b| cmp_series(&a.value, &b.value));
    Ok(out)
}

fn puiseux_roots(p: &[QSeries], cap: &Rational, above: Option<&Rational>, depth: usize) -> Result<Vec<Eigenvalue>> {
    let low = p.iter().position(|c| !c.is_zero()).unwrap_or(p.len());
    let points: Vec<(usize, Rational)> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.qdegree().unwrap()))
        .collect();
    let np = NewtonPolygon::from_points(points);
    let mut out = Vec::new();
    if low > 0 {
        out.push(Eigenvalue { value: QSeries::zero(), multiplicity: low });
    }
    for w in np.vertices.windows(2) {
        let (i0, v0) = (&w[0].0, &w[0].1);
        let (i1, v1) = (&w[1].0, &w[1].1);
        let eta = -(v1 - v0) / int((*i1 - *i0) as i64);
        if let Some(a) = above {
            if eta <= *a {
                continue;
            }
        }
        // edge polynomial in y for x = y q^eta
        let mut edge = vec![Rational::zero(); i1 - i0 + 1];
        for (i, c) in p.iter().enumerate().take(*i1 + 1).skip(*i0) {
            if c.is_zero() {
                continue;
            }
            let d = c.qdegree().unwrap();
            if d + &eta * int(i as i64) == v0 + &eta * int(*i0 as i64) {
                edge[i - i0] = c.leading_term().unwrap();
            }
        }
        let roots = rational_roots(&edge).ok_or(Error::IrrationalEigenvalue)?;
        for (mu, m) in roots {
            let start = QSeries::monomial(mu, &eta);
            if eta >= *cap || depth > 64 {
                out.push(Eigenvalue { value: start.truncate(&eta.clone().max(cap.clone())), multiplicity: m });
                continue;
            }
            if m == 1 {
                out.push(Eigenvalue { value: newton_refine(p, start, cap)?, multiplicity: 1 });
                continue;
            }
            let shifted = taylor_shift(p, &start);
            for e in puiseux_roots(&shifted, cap, Some(&eta), depth + 1)? {
                out.push(Eigenvalue { value: start.add(&e.value), multiplicity: e.multiplicity });
            }
        }
    }
    Ok(out)
}

/// Newton's iteration on exact approximants; the result carries the certified truncation.
fn newton_refine(p: &[QSeries], start: QSeries, cap: &Rational) -> Result<QSeries> {
    let dp = derivative(p);
    let mut x = start;
    for _ in 0..64 {
        let fx = eval(p, &x);
        if fx.is_exact_zero() {
            return Ok(x);
        }
        let dx = eval(&dp, &x);
        let delta = fx.div(&dx, Some(cap))?;
        if delta.is_zero() {
            let prec = delta.precision().unwrap_or_else(|| cap.clone());
            return Ok(x.truncate(&prec.min(cap.clone())));
        }
        // drop the truncation: the next iterate is again an exact approximant
        let exact = QSeries::from_terms(delta.terms().map(|(e, c)| (e, c.clone())), None);
        x = x.sub(&exact);
    }
    Ok(x.truncate(cap))
}

/// Polynomial in `n` with series coefficients (`n^0, n^1, ...`).
pub type NPoly = Vec<QSeries>;

/// `φ(n + i)`.
pub fn npoly_shift(p: &[QSeries], i: i64) -> NPoly {
    taylor_shift(p, &QSeries::constant(int(i)))
}

pub fn npoly_eval(p: &[QSeries], n: i64) -> QSeries {
    eval(p, &QSeries::constant(int(n)))
}

pub fn add(a: &[QSeries], b: &[QSeries]) -> QPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x.add(&y)
        })
        .collect()
}

pub fn scale(a: &[QSeries], c: &QSeries) -> QPoly {
    a.iter().map(|x| x.mul(c)).collect()
}
