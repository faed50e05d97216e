//! Truncated Puiseux series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^{(v+k)/r}` for `k = 0, 1, ...`
//! together with an absolute truncation: every exponent at or beyond the
//! truncation is unknown, never zero. Series without a truncation are exact
//! (Laurent polynomials in `q^{1/r}`).

use std::cmp::{max, min};
use std::fmt;
use std::str::FromStr;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{
    denom_u32, fmt_rational, int, lcm_u32, parse_rational, rat, scaled_numer, Rational,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    ram: u32,
    val: i64,
    coeffs: Vec<Rational>,
    /// Absolute truncation in units of `1/ram`; `None` for exact series.
    prec: Option<i64>,
}

impl Default for QSeries {
    fn default() -> Self {
        QSeries::zero()
    }
}

/// Integer numerators over the least common denominator.
fn integral(c: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = c.iter().fold(BigInt::one(), |d, x| if x.denom().is_one() { d } else { d.lcm(x.denom()) });
    let nums = c
        .iter()
        .map(|x| if x.denom().is_one() { x.numer() * &den } else { x.numer() * (&den / x.denom()) })
        .collect();
    (nums, den)
}

impl QSeries {
    fn raw(ram: u32, val: i64, coeffs: Vec<Rational>, prec: Option<i64>) -> QSeries {
        let mut s = QSeries { ram, val, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            let keep = (p - self.val).max(0) as usize;
            if self.coeffs.len() > keep {
                self.coeffs.truncate(keep);
            }
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = 0;
            }
            Some(i) => {
                if i > 0 {
                    self.coeffs.drain(..i);
                    self.val += i as i64;
                }
                while self.coeffs.last().map_or(false, |c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
        // Reduce the ramification to the smallest lattice carrying every exponent.
        let mut g = self.ram as i64;
        if !self.coeffs.is_empty() {
            g = crate::rational::gcd_i64(g, self.val);
            for (k, c) in self.coeffs.iter().enumerate() {
                if g == 1 {
                    break;
                }
                if !c.is_zero() {
                    g = crate::rational::gcd_i64(g, self.val + k as i64);
                }
            }
        }
        if let Some(p) = self.prec {
            g = crate::rational::gcd_i64(g, p);
        }
        if g > 1 {
            let g = g as usize;
            self.ram /= g as u32;
            self.val /= g as i64;
            self.coeffs = self.coeffs.iter().step_by(g).cloned().collect();
            self.prec = self.prec.map(|p| p / g as i64);
        }
    }

    pub fn zero() -> QSeries {
        QSeries { ram: 1, val: 0, coeffs: Vec::new(), prec: None }
    }

    pub fn one() -> QSeries {
        QSeries::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> QSeries {
        QSeries::raw(1, 0, vec![c], None)
    }

    /// `O(q^e)`: nothing known below exponent `e`... nor above it.
    pub fn big_o(e: &Rational) -> QSeries {
        let r = denom_u32(e);
        QSeries::raw(r, 0, Vec::new(), Some(scaled_numer(e, r).unwrap()))
    }

    /// The monomial `c q^e`.
    pub fn monomial(c: Rational, e: &Rational) -> QSeries {
        let r = denom_u32(e);
        QSeries::raw(r, scaled_numer(e, r).unwrap(), vec![c], None)
    }

    /// `q^e` as an exact series.
    pub fn q_pow(e: &Rational) -> QSeries {
        QSeries::monomial(Rational::one(), e)
    }

    /// Exact polynomial `Σ coeffs[k] q^k`.
    pub fn from_ints(coeffs: &[i64]) -> QSeries {
        QSeries::raw(1, 0, coeffs.iter().map(|&c| int(c)).collect(), None)
    }

    /// Integer-exponent series `Σ coeffs[k] q^{val+k}` with optional absolute truncation.
    pub fn from_coeffs(val: i64, coeffs: Vec<Rational>, prec: Option<i64>) -> QSeries {
        QSeries::raw(1, val, coeffs, prec)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I, prec: Option<Rational>) -> QSeries
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let terms: Vec<(Rational, Rational)> = terms.into_iter().collect();
        let mut r = prec.as_ref().map_or(1, denom_u32);
        for (e, _) in &terms {
            r = lcm_u32(r, denom_u32(e));
        }
        let idx: Vec<i64> = terms.iter().map(|(e, _)| scaled_numer(e, r).unwrap()).collect();
        let lo = idx.iter().copied().min().unwrap_or(0);
        let hi = idx.iter().copied().max().unwrap_or(-1);
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1).max(0) as usize];
        for ((_, c), i) in terms.iter().zip(idx) {
            coeffs[(i - lo) as usize] += c;
        }
        QSeries::raw(r, lo, coeffs, prec.map(|p| scaled_numer(&p, r).unwrap()))
    }

    pub fn ramification(&self) -> u32 {
        self.ram
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True when no coefficient is known to be nonzero (exact zero or `O(q^T)`).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// Absolute truncation exponent, `None` when exact.
    pub fn precision(&self) -> Option<Rational> {
        self.prec.map(|p| rat(p, self.ram as i64))
    }

    /// Number of nonzero tracked terms.
    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Iterates over the nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        let r = self.ram as i64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (rat(self.val + k as i64, r), c))
    }

    /// Coefficient of `q^e`; `None` when `e` lies at or beyond the truncation.
    pub fn coeff(&self, e: &Rational) -> Option<Rational> {
        if let Some(p) = self.precision() {
            if *e >= p {
                return None;
            }
        }
        let Some(n) = scaled_numer(e, self.ram) else {
            return Some(Rational::zero());
        };
        let k = n - self.val;
        if k < 0 || k as usize >= self.coeffs.len() {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[k as usize].clone())
        }
    }

    /// Coefficient of `q^k` for integer `k` (convenience for integral series).
    pub fn coeff_int(&self, k: i64) -> Option<Rational> {
        self.coeff(&int(k))
    }

    /// Degree (order at `q = 0`): least exponent with a nonzero coefficient.
    pub fn qdegree(&self) -> Result<Rational> {
        if self.coeffs.is_empty() {
            return Err(Error::ZeroOrTruncated);
        }
        Ok(rat(self.val, self.ram as i64))
    }

    /// Coefficient at the degree.
    pub fn leading_term(&self) -> Result<Rational> {
        self.coeffs.first().cloned().ok_or(Error::ZeroOrTruncated)
    }

    /// Largest exponent with a nonzero coefficient; only defined for exact series.
    pub fn max_degree(&self) -> Result<Rational> {
        if self.prec.is_some() {
            return Err(Error::NotPolynomial);
        }
        if self.coeffs.is_empty() {
            return Err(Error::ZeroOrTruncated);
        }
        Ok(rat(self.val + self.coeffs.len() as i64 - 1, self.ram as i64))
    }

    /// Coefficient at the maximal degree of an exact series.
    pub fn top_coefficient(&self) -> Result<Rational> {
        self.max_degree()?;
        Ok(self.coeffs.last().unwrap().clone())
    }

    /// Value at `q = 1` of an exact polynomial with integer exponents.
    pub fn specialize_q1(&self) -> Result<Rational> {
        if self.prec.is_some() || self.ram != 1 {
            return Err(Error::NotPolynomial);
        }
        Ok(self.coeffs.iter().fold(Rational::zero(), |a, c| a + c))
    }

    /// `p(1/q)` for an exact series.
    pub fn reversed(&self) -> Result<QSeries> {
        if self.prec.is_some() {
            return Err(Error::NotPolynomial);
        }
        if self.coeffs.is_empty() {
            return Ok(QSeries::zero());
        }
        let top = self.val + self.coeffs.len() as i64 - 1;
        let coeffs = self.coeffs.iter().rev().cloned().collect();
        Ok(QSeries::raw(self.ram, -top, coeffs, None))
    }

    /// Lowers the truncation to at most `e`.
    pub fn truncate(&self, e: &Rational) -> QSeries {
        let r = lcm_u32(self.ram, denom_u32(e));
        let mut s = self.rescaled(r);
        let p = scaled_numer(e, r).unwrap();
        s.prec = Some(s.prec.map_or(p, |q| min(p, q)));
        s.normalize();
        s
    }

    /// Truncates an exact series only when `cap` is given.
    pub fn truncate_opt(&self, cap: Option<&Rational>) -> QSeries {
        match cap {
            Some(e) => self.truncate(e),
            None => self.clone(),
        }
    }

    fn rescaled(&self, r: u32) -> QSeries {
        debug_assert!(r % self.ram == 0);
        let f = (r / self.ram) as usize;
        if f == 1 {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() * f);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                coeffs.extend(std::iter::repeat(Rational::zero()).take(f - 1));
            }
            coeffs.push(c.clone());
        }
        QSeries {
            ram: r,
            val: self.val * f as i64,
            coeffs,
            prec: self.prec.map(|p| p * f as i64),
        }
    }

    /// Effective valuation used for precision bookkeeping (the truncation for `O(q^T)`).
    fn eff_val(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            Some(self.val)
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let r = lcm_u32(self.ram, other.ram);
        let a = self.rescaled(r);
        let b = other.rescaled(r);
        let prec = match (a.prec, b.prec) {
            (Some(x), Some(y)) => Some(min(x, y)),
            (x, None) => x,
            (None, y) => y,
        };
        if a.coeffs.is_empty() {
            return QSeries::raw(r, b.val, b.coeffs, prec);
        }
        if b.coeffs.is_empty() {
            return QSeries::raw(r, a.val, a.coeffs, prec);
        }
        let lo = min(a.val, b.val);
        let mut hi = max(a.val + a.coeffs.len() as i64, b.val + b.coeffs.len() as i64);
        if let Some(p) = prec {
            hi = min(hi, p);
        }
        let mut coeffs = vec![Rational::zero(); (hi - lo).max(0) as usize];
        for (s, v) in [(&a, a.val), (&b, b.val)] {
            for (k, c) in s.coeffs.iter().enumerate() {
                let i = v + k as i64 - lo;
                if i >= 0 && (i as usize) < coeffs.len() {
                    coeffs[i as usize] += c;
                }
            }
        }
        QSeries::raw(r, lo, coeffs, prec)
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            ram: self.ram,
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        if c.is_zero() {
            return QSeries::zero();
        }
        QSeries {
            ram: self.ram,
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            prec: self.prec,
        }
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: &Rational) -> QSeries {
        let r = lcm_u32(self.ram, denom_u32(e));
        let mut s = self.rescaled(r);
        let d = scaled_numer(e, r).unwrap();
        s.val += d;
        s.prec = s.prec.map(|p| p + d);
        s.normalize();
        s
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        if self.is_exact_zero() || other.is_exact_zero() {
            return QSeries::zero();
        }
        let r = lcm_u32(self.ram, other.ram);
        let a = self.rescaled(r);
        let b = other.rescaled(r);
        let mut prec: Option<i64> = None;
        if let Some(pb) = b.prec {
            // a is nonzero or O(.): eff_val exists
            let v = a.eff_val().unwrap();
            prec = Some(v + pb);
        }
        if let Some(pa) = a.prec {
            let v = b.eff_val().unwrap();
            prec = Some(prec.map_or(pa + v, |p| min(p, pa + v)));
        }
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return QSeries::raw(r, 0, Vec::new(), prec);
        }
        let val = a.val + b.val;
        let mut len = a.coeffs.len() + b.coeffs.len() - 1;
        if let Some(p) = prec {
            len = min(len as i64, (p - val).max(0)) as usize;
        }
        // convolve integer numerators over common denominators; one reduction per output
        let (na, da) = integral(&a.coeffs);
        let (nb, db) = integral(&b.coeffs);
        let mut acc = vec![BigInt::zero(); len];
        for (i, x) in na.iter().enumerate() {
            if i >= len || x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        let coeffs = acc.into_iter().map(|n| Rational::new(n, den.clone())).collect();
        QSeries::raw(r, val, coeffs, prec)
    }

    /// Multiplicative inverse. Exact series with more than one term expand into
    /// infinite series, so an absolute truncation `cap` must be supplied for them.
    pub fn inv(&self, cap: Option<&Rational>) -> Result<QSeries> {
        if self.coeffs.is_empty() {
            return Err(Error::ZeroOrTruncated);
        }
        let r = match cap {
            Some(c) => lcm_u32(self.ram, denom_u32(c)),
            None => self.ram,
        };
        let a = self.rescaled(r);
        let rv = -a.val;
        // number of result terms (relative precision)
        let mut rel: Option<i64> = a.prec.map(|p| p - a.val);
        if let Some(c) = cap {
            let cr = scaled_numer(c, r).unwrap() - rv;
            rel = Some(rel.map_or(cr, |x| min(x, cr)));
        }
        let nonzero = a.coeffs.iter().filter(|c| !c.is_zero()).count();
        let rel = match rel {
            Some(x) => x,
            None => {
                if nonzero == 1 {
                    return Ok(QSeries::raw(r, rv, vec![a.coeffs[0].recip()], None));
                }
                return Err(Error::InvalidInput(
                    "inverse of an exact series with several terms needs a truncation".into(),
                ));
            }
        };
        if rel <= 0 {
            return Ok(QSeries::raw(r, rv, Vec::new(), Some(rv + rel)));
        }
        let n = rel as usize;
        let a0inv = a.coeffs[0].recip();
        let mut b: Vec<Rational> = Vec::with_capacity(n);
        b.push(a0inv.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=min(k, a.coeffs.len() - 1) {
                if !a.coeffs[i].is_zero() {
                    acc += &a.coeffs[i] * &b[k - i];
                }
            }
            b.push(-acc * &a0inv);
        }
        Ok(QSeries::raw(r, rv, b, Some(rv + rel)))
    }

    pub fn div(&self, other: &QSeries, cap: Option<&Rational>) -> Result<QSeries> {
        // The inverse only needs relative precision matching what the product keeps.
        let inv_cap = match (cap, self.eff_val(), other.coeffs.is_empty()) {
            (Some(c), Some(_), false) => {
                let sv = if self.coeffs.is_empty() {
                    self.precision().unwrap()
                } else {
                    self.qdegree().unwrap()
                };
                Some(c - sv)
            }
            _ => None,
        };
        let inv = other.inv(inv_cap.as_ref())?;
        let q = self.mul(&inv);
        Ok(q.truncate_opt(cap))
    }

    /// Integer power; negative powers need `cap` unless the series is a monomial.
    pub fn pow(&self, e: i64, cap: Option<&Rational>) -> Result<QSeries> {
        if e < 0 {
            let base = self.inv(cap)?;
            return base.pow(-e, cap);
        }
        let mut acc = QSeries::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).truncate_opt(cap);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).truncate_opt(cap);
            }
        }
        Ok(acc)
    }

    /// Substitutes `q ↦ q^m` for a positive integer `m`.
    pub fn subs_q_power(&self, m: u32) -> QSeries {
        let mut coeffs = Vec::new();
        for (k, x) in self.coeffs.iter().enumerate() {
            if k > 0 {
                coeffs.extend(std::iter::repeat(Rational::zero()).take(m as usize - 1));
            }
            coeffs.push(x.clone());
        }
        QSeries::raw(self.ram, self.val * m as i64, coeffs, self.prec.map(|p| p * m as i64))
    }

    /// Exact quotient of two exact series, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, other: &QSeries) -> Option<QSeries> {
        if self.prec.is_some() || other.prec.is_some() || other.coeffs.is_empty() {
            return None;
        }
        if self.coeffs.is_empty() {
            return Some(QSeries::zero());
        }
        let r = lcm_u32(self.ram, other.ram);
        let mut a = self.rescaled(r);
        let b = other.rescaled(r);
        let btop = b.val + b.coeffs.len() as i64 - 1;
        let blead = b.coeffs.last().unwrap().clone();
        let mut quot: Vec<(i64, Rational)> = Vec::new();
        while !a.coeffs.is_empty() {
            let atop = a.val + a.coeffs.len() as i64 - 1;
            let shift = atop - btop;
            if shift + b.val < a.val {
                return None;
            }
            let c = a.coeffs.last().unwrap() / &blead;
            for (k, y) in b.coeffs.iter().enumerate() {
                let idx = (b.val + k as i64 + shift - a.val) as usize;
                a.coeffs[idx] -= &c * y;
            }
            a.normalize_keep_ram();
            quot.push((shift, c));
        }
        let lo = quot.iter().map(|(e, _)| *e).min().unwrap_or(0);
        let hi = quot.iter().map(|(e, _)| *e).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in quot {
            coeffs[(e - lo) as usize] += c;
        }
        Some(QSeries::raw(r, lo, coeffs, None))
    }

    fn normalize_keep_ram(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = 0;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.val += i as i64;
                while self.coeffs.last().map_or(false, |c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    /// Difference is zero up to the common truncation.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.sub(other).is_zero()
    }

    /// Coefficients as `(exponent numerator, coefficient)` in units of `1/r` for a chosen `r`.
    pub fn dense(&self, r: u32) -> (i64, Vec<Rational>, Option<i64>) {
        let s = self.rescaled(lcm_u32(r, self.ram));
        let s = if s.ram == r { s } else { panic!("ramification {} does not divide {r}", self.ram) };
        (s.val, s.coeffs, s.prec)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            write!(f, "{}*q^({})", fmt_rational(&mag), fmt_rational(&e))?;
        }
        if let Some(p) = self.precision() {
            if first {
                write!(f, "O(q^({}))", fmt_rational(&p))?;
            } else {
                write!(f, " + O(q^({}))", fmt_rational(&p))?;
            }
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for QSeries {
    type Err = Error;

    /// Accepts the printed form as well as everyday input such as `2 - q^2 + 3*q^(1/2)`.
    fn from_str(s: &str) -> Result<QSeries> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty series".into()));
        }
        let mut terms: Vec<(Rational, Rational)> = Vec::new();
        let mut prec: Option<Rational> = None;
        // split into signed chunks at top-level '+'/'-' (not inside parentheses)
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    // a sign right after '^' belongs to an unparenthesised exponent
                    if cur.ends_with('^') {
                        cur.push(ch);
                        continue;
                    }
                    if !cur.is_empty() || i > 0 {
                        if cur.is_empty() {
                            return Err(Error::Parse(format!("dangling sign in `{s}`")));
                        }
                        chunks.push((neg, std::mem::take(&mut cur)));
                    }
                    neg = ch == '-';
                }
                _ => cur.push(ch),
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("trailing sign in `{s}`")));
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            if let Some(rest) = chunk.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
                if neg {
                    return Err(Error::Parse("negative O-term".into()));
                }
                let e = parse_q_power(rest)?;
                prec = Some(match prec {
                    Some(p) if p < e => p,
                    _ => e,
                });
                continue;
            }
            let (c, e) = parse_term(&chunk)?;
            terms.push((if neg { -c } else { c }, e));
        }
        Ok(QSeries::from_terms(terms.into_iter().map(|(c, e)| (e, c)), prec))
    }
}

fn parse_exponent(s: &str) -> Result<Rational> {
    let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
    parse_rational(inner)
}

/// Parses `q`, `q^k`, `q^(a/b)` and returns the exponent.
fn parse_q_power(s: &str) -> Result<Rational> {
    if s == "q" {
        return Ok(Rational::one());
    }
    match s.strip_prefix("q^") {
        Some(e) => parse_exponent(e),
        None => Err(Error::Parse(format!("expected a power of q, got `{s}`"))),
    }
}

fn parse_term(chunk: &str) -> Result<(Rational, Rational)> {
    if let Some(pos) = chunk.find('q') {
        let (cpart, qpart) = chunk.split_at(pos);
        let e = parse_q_power(qpart)?;
        let c = match cpart.strip_suffix('*') {
            Some(c) => parse_rational(c)?,
            None if cpart.is_empty() => Rational::one(),
            None => parse_rational(cpart)?,
        };
        Ok((c, e))
    } else {
        Ok((parse_rational(chunk)?, Rational::zero()))
    }
}

impl std::ops::Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl std::ops::Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl std::ops::Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl std::ops::Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> QSeries {
        t.parse().unwrap()
    }

    #[test]
    fn degree_and_leading_term() {
        let f1 = s("2 - q^2");
        assert_eq!(f1.qdegree().unwrap(), int(0));
        assert_eq!(f1.max_degree().unwrap(), int(2));
        let p = s("q^-3 + q");
        assert_eq!(p.qdegree().unwrap(), int(-3));
        let m = s("-q^40");
        assert_eq!(m.leading_term().unwrap(), int(-1));
        assert_eq!(s("7").max_degree().unwrap(), int(0));
        assert_eq!(QSeries::zero().qdegree(), Err(Error::ZeroOrTruncated));
        assert_eq!(QSeries::big_o(&int(4)).leading_term(), Err(Error::ZeroOrTruncated));
    }

    #[test]
    fn truncated_product_keeps_leading_term() {
        // (1 - q) * (1 + q + ... + q^9 + O(q^10)) = 1 + O(q^10)
        let geo = QSeries::from_coeffs(0, vec![int(1); 10], Some(10));
        let p = s("1 - q").mul(&geo);
        assert_eq!(p.qdegree().unwrap(), int(0));
        assert_eq!(p.leading_term().unwrap(), int(1));
        assert_eq!(p.precision(), Some(int(10)));
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.max_degree(), Err(Error::NotPolynomial));
    }

    #[test]
    fn inverse_times_self_is_one() {
        let a = s("3 - q + 2*q^(1/2)");
        let inv = a.inv(Some(&int(6))).unwrap();
        let one = a.mul(&inv);
        assert!(one.agrees_with(&QSeries::one()));
        assert_eq!(one.precision(), Some(int(6)));
        assert!(s("1 + q").inv(None).is_err());
        assert_eq!(s("2*q^3").inv(None).unwrap(), s("1/2*q^-3"));
    }

    #[test]
    fn puiseux_rescaling() {
        let a = s("q^(1/2)");
        let b = s("q^(1/3)");
        let p = a.mul(&b);
        assert_eq!(p.qdegree().unwrap(), rat(5, 6));
        assert_eq!(p.ramification(), 6);
        let sq = a.mul(&a);
        assert_eq!(sq, s("q"));
        assert_eq!(sq.ramification(), 1);
    }

    #[test]
    fn print_parse_round_trip() {
        let x = QSeries::from_terms(
            vec![(rat(-1, 2), rat(3, 4)), (int(2), int(-5))],
            Some(rat(7, 2)),
        );
        let t = x.to_string();
        assert_eq!(t, "3/4*q^(-1/2) - 5*q^(2) + O(q^(7/2))");
        assert_eq!(t.parse::<QSeries>().unwrap(), x);
        assert_eq!(s("0"), QSeries::zero());
        assert_eq!(s("O(q^3)").to_string(), "O(q^(3))");
        assert_eq!(s("q^-2").qdegree().unwrap(), int(-2));
        assert!("2 + ".parse::<QSeries>().is_err());
    }

    #[test]
    fn specialization_and_reversal() {
        assert_eq!(s("1 - q").specialize_q1().unwrap(), int(0));
        let r = s("2 - q^2").reversed().unwrap();
        assert_eq!(r, s("-q^-2 + 2"));
        assert_eq!(s("1 + O(q)").specialize_q1(), Err(Error::NotPolynomial));
    }

    #[test]
    fn exact_division() {
        let a = s("1 - q^3");
        assert_eq!(a.div_exact(&s("1 - q")).unwrap(), s("1 + q + q^2"));
        assert_eq!(s("q^-1 + 1").div_exact(&s("1 + q")).unwrap(), s("q^-1"));
        assert!(s("1 + q^2").div_exact(&s("1 - q")).is_none());
    }

    #[test]
    fn substitute_power() {
        assert_eq!(s("1 - q + O(q^3)").subs_q_power(2), s("1 - q^2 + O(q^6)"));
    }
}
