//! Truncated Laurent–Puiseux series in `M^{1/r}` whose coefficients are [`QSeries`].

use std::cmp::min;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{denom_u32, gcd_i64, int, lcm_u32, rat, scaled_numer, Rational};
use crate::series::QSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSeries {
    ram: u32,
    terms: BTreeMap<i64, QSeries>,
    /// Absolute M-truncation in units of `1/ram`; `None` when exact in `M`.
    prec: Option<i64>,
}

impl Default for MSeries {
    fn default() -> Self {
        MSeries::zero()
    }
}

impl MSeries {
    fn raw(ram: u32, terms: BTreeMap<i64, QSeries>, prec: Option<i64>) -> MSeries {
        let mut s = MSeries { ram, terms, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let p = self.prec;
        self.terms.retain(|e, c| !c.is_exact_zero() && p.map_or(true, |p| *e < p));
        let mut g = self.ram as i64;
        for e in self.terms.keys() {
            g = gcd_i64(g, *e);
        }
        if let Some(p) = self.prec {
            g = gcd_i64(g, p);
        }
        if g > 1 {
            self.ram /= g as u32;
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|(e, c)| (e / g, c))
                .collect();
            self.prec = self.prec.map(|p| p / g);
        }
    }

    fn rescaled(&self, r: u32) -> MSeries {
        let f = (r / self.ram) as i64;
        MSeries {
            ram: r,
            terms: self.terms.iter().map(|(e, c)| (e * f, c.clone())).collect(),
            prec: self.prec.map(|p| p * f),
        }
    }

    pub fn zero() -> MSeries {
        MSeries { ram: 1, terms: BTreeMap::new(), prec: None }
    }

    pub fn one() -> MSeries {
        MSeries::constant(QSeries::one())
    }

    pub fn constant(c: QSeries) -> MSeries {
        MSeries::monomial(c, &Rational::zero())
    }

    /// `c(q) M^e`.
    pub fn monomial(c: QSeries, e: &Rational) -> MSeries {
        let r = denom_u32(e);
        let mut t = BTreeMap::new();
        t.insert(scaled_numer(e, r).unwrap(), c);
        MSeries::raw(r, t, None)
    }

    /// `O(M^e)`.
    pub fn big_o(e: &Rational) -> MSeries {
        let r = denom_u32(e);
        MSeries::raw(r, BTreeMap::new(), Some(scaled_numer(e, r).unwrap()))
    }

    pub fn from_terms<I>(terms: I, prec: Option<Rational>) -> MSeries
    where
        I: IntoIterator<Item = (Rational, QSeries)>,
    {
        terms
            .into_iter()
            .fold(prec.as_ref().map_or_else(MSeries::zero, MSeries::big_o), |acc, (e, c)| {
                acc.add(&MSeries::monomial(c, &e))
            })
    }

    pub fn ramification(&self) -> u32 {
        self.ram
    }

    pub fn precision(&self) -> Option<Rational> {
        self.prec.map(|p| rat(p, self.ram as i64))
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }

    /// No coefficient with a known nonzero `q`-term.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Rational, &QSeries)> + '_ {
        let r = self.ram as i64;
        self.terms.iter().map(move |(e, c)| (rat(*e, r), c))
    }

    /// Coefficient of `M^e`; `None` at or beyond the M-truncation.
    pub fn coeff(&self, e: &Rational) -> Option<QSeries> {
        if let Some(p) = self.precision() {
            if *e >= p {
                return None;
            }
        }
        match scaled_numer(e, self.ram) {
            Some(n) => Some(self.terms.get(&n).cloned().unwrap_or_else(QSeries::zero)),
            None => Some(QSeries::zero()),
        }
    }

    /// Least exponent of `M` whose coefficient is certifiably nonzero.
    pub fn delta_m(&self) -> Option<Rational> {
        self.terms
            .iter()
            .find(|(_, c)| !c.is_zero())
            .map(|(e, _)| rat(*e, self.ram as i64))
    }

    /// Coefficient at `delta_m`.
    pub fn leading(&self) -> Option<(Rational, QSeries)> {
        self.terms
            .iter()
            .find(|(_, c)| !c.is_zero())
            .map(|(e, c)| (rat(*e, self.ram as i64), c.clone()))
    }

    pub fn add(&self, other: &MSeries) -> MSeries {
        let r = lcm_u32(self.ram, other.ram);
        let a = self.rescaled(r);
        let b = other.rescaled(r);
        let prec = match (a.prec, b.prec) {
            (Some(x), Some(y)) => Some(min(x, y)),
            (x, None) => x,
            (None, y) => y,
        };
        let mut terms = a.terms;
        for (e, c) in b.terms {
            let entry = terms.entry(e).or_insert_with(QSeries::zero);
            *entry = entry.add(&c);
        }
        MSeries::raw(r, terms, prec)
    }

    pub fn neg(&self) -> MSeries {
        MSeries {
            ram: self.ram,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &MSeries) -> MSeries {
        self.add(&other.neg())
    }

    fn eff_val(&self) -> Option<i64> {
        self.terms.keys().next().copied().or(self.prec)
    }

    pub fn mul(&self, other: &MSeries) -> MSeries {
        if self.is_exact_zero() || other.is_exact_zero() {
            return MSeries::zero();
        }
        let r = lcm_u32(self.ram, other.ram);
        let a = self.rescaled(r);
        let b = other.rescaled(r);
        let mut prec: Option<i64> = None;
        if let Some(pb) = b.prec {
            prec = Some(a.eff_val().unwrap() + pb);
        }
        if let Some(pa) = a.prec {
            let p = pa + b.eff_val().unwrap();
            prec = Some(prec.map_or(p, |x| min(x, p)));
        }
        let mut terms: BTreeMap<i64, QSeries> = BTreeMap::new();
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e = e1 + e2;
                if prec.map_or(false, |p| e >= p) {
                    break;
                }
                let entry = terms.entry(e).or_insert_with(QSeries::zero);
                *entry = entry.add(&c1.mul(c2));
            }
        }
        MSeries::raw(r, terms, prec)
    }

    /// Multiplies every coefficient by the `q`-series `c`.
    pub fn scale(&self, c: &QSeries) -> MSeries {
        if c.is_exact_zero() {
            return MSeries::zero();
        }
        MSeries::raw(
            self.ram,
            self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
            self.prec,
        )
    }

    /// Multiplication by `M^e`.
    pub fn shift(&self, e: &Rational) -> MSeries {
        let r = lcm_u32(self.ram, denom_u32(e));
        let a = self.rescaled(r);
        let d = scaled_numer(e, r).unwrap();
        MSeries::raw(
            r,
            a.terms.into_iter().map(|(k, c)| (k + d, c)).collect(),
            a.prec.map(|p| p + d),
        )
    }

    /// The substitution `M ↦ q^s M`.
    pub fn sigma(&self, s: &Rational) -> MSeries {
        if s.is_zero() {
            return self.clone();
        }
        let r = self.ram as i64;
        MSeries::raw(
            self.ram,
            self.terms
                .iter()
                .map(|(e, c)| (*e, c.shift(&(s * rat(*e, r)))))
                .collect(),
            self.prec,
        )
    }

    /// Applies a map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&QSeries) -> QSeries) -> MSeries {
        MSeries::raw(self.ram, self.terms.iter().map(|(e, c)| (*e, f(c))).collect(), self.prec)
    }

    /// Lowers the M-truncation to at most `e`.
    pub fn truncate(&self, e: &Rational) -> MSeries {
        let r = lcm_u32(self.ram, denom_u32(e));
        let mut a = self.rescaled(r);
        let p = scaled_numer(e, r).unwrap();
        a.prec = Some(a.prec.map_or(p, |x| min(x, p)));
        a.normalize();
        a
    }

    /// Evaluates at `M = q^n`. The M-tail `O(M^P)` is certified as `O(q^{nP + v})`
    /// where `v` is the least tracked `q`-degree (at most 0).
    pub fn eval_at_qn(&self, n: i64) -> QSeries {
        let r = self.ram as i64;
        let mut acc = QSeries::zero();
        let mut vmin = Rational::zero();
        for (e, c) in &self.terms {
            if let Ok(d) = c.qdegree() {
                if d < vmin {
                    vmin = d;
                }
            }
            acc = acc.add(&c.shift(&rat(n * e, r)));
        }
        if let Some(p) = self.prec {
            acc = acc.truncate(&(rat(n * p, r) + vmin));
        }
        acc
    }

    /// Multiplicative inverse; `mcap`/`qcap` bound the M- and q-expansions of exact inputs.
    pub fn inv(&self, mcap: Option<&Rational>, qcap: Option<&Rational>) -> Result<MSeries> {
        let (v, c0) = self.leading().ok_or(Error::ZeroOrTruncated)?;
        let mut r = self.ram;
        if let Some(c) = mcap {
            r = lcm_u32(r, denom_u32(c));
        }
        let a = self.rescaled(r);
        let vn = scaled_numer(&v, r).unwrap();
        let mut rel: Option<i64> = a.prec.map(|p| p - vn);
        if let Some(c) = mcap {
            let cr = scaled_numer(c, r).unwrap() + vn;
            rel = Some(rel.map_or(cr, |x| min(x, cr)));
        }
        let b0 = c0.inv(qcap)?;
        let rel = match rel {
            Some(x) => x,
            None => {
                if a.terms.len() == 1 {
                    return Ok(MSeries::monomial(b0, &(-v)));
                }
                return Err(Error::InvalidInput(
                    "inverse of an exact M-series with several terms needs an M-truncation".into(),
                ));
            }
        };
        let rel = rel.max(0);
        // a = M^v (c0 + Σ_{k≥1} c_k M^{k/r}),  b = M^{-v} Σ b_k M^{k/r}
        let shifted: BTreeMap<i64, &QSeries> =
            a.terms.iter().map(|(e, c)| (e - vn, c)).filter(|(e, _)| *e >= 0).collect();
        let mut b: Vec<QSeries> = Vec::with_capacity(rel as usize);
        for k in 0..rel {
            if k == 0 {
                b.push(b0.clone());
                continue;
            }
            let mut acc = QSeries::zero();
            for (i, ci) in shifted.range(1..=k) {
                let bk = &b[(k - i) as usize];
                if !bk.is_exact_zero() {
                    acc = acc.add(&ci.mul(bk));
                }
            }
            let bk = acc.mul(&b0).neg().truncate_opt(qcap);
            b.push(bk);
        }
        let terms = b.into_iter().enumerate().map(|(k, c)| (k as i64 - vn, c)).collect();
        Ok(MSeries::raw(r, terms, Some(rel - vn)))
    }

    /// Truncates every coefficient in `q` (exact coefficients become `O(q^cap)` tails).
    pub fn truncate_q(&self, cap: &Rational) -> MSeries {
        self.map_coeffs(|c| c.truncate(cap))
    }

    /// Largest integral exponent scale check: true if all exponents are integers.
    pub fn is_integral(&self) -> bool {
        self.ram == 1
    }

    pub fn max_exponent(&self) -> Option<Rational> {
        self.terms.keys().next_back().map(|e| rat(*e, self.ram as i64))
    }

    pub fn is_one(&self) -> bool {
        self.prec.is_none()
            && self.terms.len() == 1
            && self.terms.get(&0).map_or(false, |c| *c == QSeries::one())
    }
}

impl fmt::Display for MSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e == int(0) {
                write!(f, "({c})")?;
            } else if e == Rational::one() {
                write!(f, "({c})*M")?;
            } else {
                write!(f, "({c})*M^({e})")?;
            }
        }
        if let Some(p) = self.precision() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "O(M^({p}))")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
