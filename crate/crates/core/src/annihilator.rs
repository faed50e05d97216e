//! Guessing and certifying annihilating operators of sequences of polynomials.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operator::{Exponent, PolyOperator};
use crate::rational::Rational;
use crate::series::QSeries;

/// `P f = b(q^n, q)` verified exactly for `n_lo ≤ n ≤ n_hi`; `b = None` is the
/// homogeneous case. `b` is stored as an operator of order zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorCertificate {
    pub operator: PolyOperator,
    pub n_lo: usize,
    pub n_hi: usize,
    pub inhomogeneous: Option<PolyOperator>,
}

impl AnnihilatorCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "operator": self.operator.to_record(),
            "range": [self.n_lo, self.n_hi],
            "inhomogeneous": self.inhomogeneous.as_ref().map(|b| b.to_record()),
        })
    }
}

/// Checks `P f = 0` on `[n_lo, n_hi]`; `f` is indexed from `n = 0`.
pub fn verify_annihilator(p: &PolyOperator, f: &[QSeries], n_lo: usize, n_hi: usize) -> Result<AnnihilatorCertificate> {
    verify(p, None, f, n_lo, n_hi)
}

/// Checks `P f = b(q^n, q)` on `[n_lo, n_hi]`, with `b` a polynomial in `(M, q)` given
/// as an operator of order zero.
pub fn verify_inhomogeneous(
    p: &PolyOperator,
    b: &PolyOperator,
    f: &[QSeries],
    n_lo: usize,
    n_hi: usize,
) -> Result<AnnihilatorCertificate> {
    if b.order() != 0 {
        return Err(Error::InvalidInput("the right-hand side must not involve L".into()));
    }
    verify(p, Some(b), f, n_lo, n_hi)
}

fn verify(
    p: &PolyOperator,
    b: Option<&PolyOperator>,
    f: &[QSeries],
    n_lo: usize,
    n_hi: usize,
) -> Result<AnnihilatorCertificate> {
    if f.len() < n_hi + p.order() + 1 {
        return Err(Error::RangeTooShort);
    }
    for n in n_lo..=n_hi {
        let mut v = p.apply(f, n)?;
        if let Some(b) = b {
            v = v.sub(&b.coefficient_at(0, n as i64));
        }
        if !v.is_zero() {
            return Err(Error::FailsAt(n as i64));
        }
    }
    Ok(AnnihilatorCertificate {
        operator: p.clone(),
        n_lo,
        n_hi,
        inhomogeneous: b.cloned(),
    })
}

/// Integer coefficients with content 1, no common factor `q^k M^j`, and a positive
/// coefficient on the lexicographically largest support point.
pub fn reduce_operator(p: &PolyOperator) -> PolyOperator {
    if p.is_zero() {
        return p.clone();
    }
    let den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let ints: Vec<(Exponent, BigInt)> = p
        .terms()
        .map(|(e, c)| (*e, (c * Rational::from_integer(den.clone())).to_integer()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    let jmin = ints.iter().map(|(e, _)| e.1).min().unwrap();
    let kmin = ints.iter().map(|(e, _)| e.2).min().unwrap();
    let sign = if ints.last().unwrap().1.is_negative() { -BigInt::one() } else { BigInt::one() };
    PolyOperator::from_terms(
        ints.into_iter()
            .map(|((i, j, k), c)| ((i, j - jmin, k - kmin), Rational::from_integer(c / &g * &sign))),
    )
}

const PRIME_START: u64 = (1 << 31) - 1;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn primes() -> impl Iterator<Item = u64> {
    (2..=PRIME_START).rev().filter(|&n| is_prime(n))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce_mod(c: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = c.numer().mod_floor(&pb).to_u64()?;
    let d = c.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(n * inv_mod(d, p) % p)
}

/// Row-echelon basis mod `p`; rows are added one by one.
struct Echelon {
    p: u64,
    ncols: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn new(p: u64, ncols: usize) -> Echelon {
        Echelon { p, ncols, rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut row: Vec<u64>) {
        let p = self.p;
        for (piv, r) in &self.rows {
            let f = row[*piv];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(r).skip(*piv) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        if let Some(piv) = row.iter().position(|&x| x != 0) {
            let inv = inv_mod(row[piv], p);
            for x in row.iter_mut() {
                *x = *x * inv % p;
            }
            // keep the basis fully reduced
            for (_, r) in self.rows.iter_mut() {
                let f = r[piv];
                if f != 0 {
                    for (x, y) in r.iter_mut().zip(&row).skip(piv) {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
            self.rows.push((piv, row));
            self.rows.sort_by_key(|r| r.0);
        }
    }

    /// Null vectors, one per free column: `x_free = 1`, other free entries 0.
    fn kernel(&self) -> Vec<Vec<u64>> {
        let pivots: Vec<usize> = self.rows.iter().map(|r| r.0).collect();
        (0..self.ncols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u64; self.ncols];
                v[free] = 1;
                for (piv, r) in &self.rows {
                    v[*piv] = (self.p - r[free]) % self.p;
                }
                v
            })
            .collect()
    }
}

/// The window equations `Σ a_{ijk} q^{k + jn} f_{n+i} = 0` as coefficient rows.
fn equations(f: &[QSeries], cols: &[Exponent], d: usize) -> Vec<Vec<(usize, Rational)>> {
    let mut rows = Vec::new();
    for n in 0..f.len().saturating_sub(d) {
        let mut by_power: std::collections::BTreeMap<Rational, Vec<(usize, Rational)>> = Default::default();
        for (col, &(i, j, k)) in cols.iter().enumerate() {
            let shift = Rational::from_integer(BigInt::from(k as u64 + j as u64 * n as u64));
            for (e, c) in f[n + i as usize].terms() {
                by_power.entry(e + &shift).or_default().push((col, c.clone()));
            }
        }
        rows.extend(by_power.into_values());
    }
    rows
}

fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}

fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let am = a.mod_floor(&pb).to_u64().unwrap();
    let minv = inv_mod(m.mod_floor(&pb).to_u64().unwrap(), p);
    let t = (b + p - am) % p * minv % p;
    a + m * BigInt::from(t)
}

fn annihilates(op: &PolyOperator, f: &[QSeries]) -> bool {
    let d = op.order();
    (0..f.len().saturating_sub(d)).all(|n| op.apply(f, n).map_or(false, |v| v.is_exact_zero()))
}

/// Kernel of the box `(d, j, k)`: `None` when trivial mod the first prime; otherwise
/// the exact operator reconstructed from the first null vector.
fn solve_box(f: &[QSeries], d: usize, jm: usize, km: usize) -> Option<PolyOperator> {
    let cols: Vec<Exponent> = (0..=d as u32)
        .flat_map(|i| (0..=jm as u32).flat_map(move |j| (0..=km as u32).map(move |k| (i, j, k))))
        .collect();
    let rows = equations(f, &cols, d);
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    for (round, p) in primes().enumerate() {
        if round > 24 {
            return None;
        }
        let mut ech = Echelon::new(p, cols.len());
        let mut bad = false;
        for r in &rows {
            let mut v = vec![0u64; cols.len()];
            for (c, x) in r {
                match reduce_mod(x, p) {
                    Some(y) => v[*c] = (v[*c] + y) % p,
                    None => bad = true,
                }
            }
            ech.insert(v);
            if ech.rank() == cols.len() {
                break;
            }
        }
        if bad {
            continue;
        }
        let kernel = ech.kernel();
        if kernel.is_empty() {
            return None;
        }
        // the first free column gives a vector normalized to 1 there
        let v = &kernel[0];
        if acc.is_empty() {
            acc = v.iter().map(|&x| BigInt::from(x)).collect();
        } else {
            acc = acc.iter().zip(v).map(|(a, &b)| crt(a, &modulus, b, p)).collect();
        }
        modulus *= BigInt::from(p);
        let rec: Option<Vec<Rational>> = acc.iter().map(|a| rational_reconstruct(a, &modulus)).collect();
        if let Some(rec) = rec {
            let op = PolyOperator::from_terms(cols.iter().cloned().zip(rec));
            if annihilates(&op, f) {
                return Some(op);
            }
        }
    }
    None
}

/// A nonzero operator of order `≤ d_max`, `M`-degree `≤ j_max`, `q`-degree `≤ k_max`
/// annihilating every supplied term. Minimal order first, then minimal `M`- and
/// `q`-degrees; the result is content-reduced.
pub fn guess_operator(f: &[QSeries], d_max: usize, j_max: usize, k_max: usize) -> Result<PolyOperator> {
    if f.iter().any(|x| !x.is_exact()) {
        return Err(Error::InvalidInput("guessing needs exact terms".into()));
    }
    for d in 0..=d_max {
        if f.len() <= d {
            break;
        }
        if solve_box(f, d, j_max, k_max).is_none() {
            continue;
        }
        let j = (0..=j_max).find(|&j| solve_box(f, d, j, k_max).is_some()).unwrap_or(j_max);
        let k = (0..=k_max).find(|&k| solve_box(f, d, j, k).is_some()).unwrap_or(k_max);
        let op = solve_box(f, d, j, k).ok_or(Error::NoOperatorInBox)?;
        return Ok(reduce_operator(&op));
    }
    Err(Error::NoOperatorInBox)
}

/// Human-readable certificate summary.
pub fn describe(cert: &AnnihilatorCertificate) -> String {
    let rhs = cert.inhomogeneous.as_ref().map_or("0".to_string(), |b| b.to_string());
    format!(
        "({}) f = {} verified for {} ≤ n ≤ {}",
        cert.operator, rhs, cert.n_lo, cert.n_hi
    )
}
