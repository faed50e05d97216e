//! Exact q-difference operators `Σ a_{i,j,k} q^k M^j L^i` with `LM = qML`.
//!
//! `L` shifts a sequence (`(Lf)_n = f_{n+1}`) and `M` multiplies by `q^n`. The
//! normal form keeps every `M`-power to the left of every `L`-power, so that
//! `L^i M^j = q^{ij} M^j L^i` is applied eagerly during multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local::LocalOperator;
use crate::mseries::MSeries;
use crate::rational::{fmt_rational, int, parse_rational, to_i64, Rational};
use crate::series::QSeries;

/// A support point `(i, j, k)`: the exponents of `L`, `M` and `q`.
pub type Exponent = (u32, u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyOperator {
    terms: BTreeMap<Exponent, Rational>,
}

impl PolyOperator {
    pub fn zero() -> PolyOperator {
        PolyOperator::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(terms: I) -> PolyOperator {
        let mut op = PolyOperator::zero();
        for (e, c) in terms {
            op.add_term(e, c);
        }
        op
    }

    /// `c q^k M^j L^i`.
    pub fn monomial(i: u32, j: u32, k: u32, c: Rational) -> PolyOperator {
        PolyOperator::from_terms([((i, j, k), c)])
    }

    pub fn l() -> PolyOperator {
        PolyOperator::monomial(1, 0, 0, Rational::one())
    }

    pub fn m() -> PolyOperator {
        PolyOperator::monomial(0, 1, 0, Rational::one())
    }

    pub fn constant(c: Rational) -> PolyOperator {
        PolyOperator::monomial(0, 0, 0, c)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest power of `L`.
    pub fn order(&self) -> usize {
        self.terms.keys().map(|e| e.0 as usize).max().unwrap_or(0)
    }

    /// `a_i(M, q)` as an exact M-series.
    pub fn coefficient(&self, i: usize) -> MSeries {
        let mut by_j: BTreeMap<u32, Vec<(Rational, Rational)>> = BTreeMap::new();
        for ((ii, j, k), c) in &self.terms {
            if *ii as usize == i {
                by_j.entry(*j).or_default().push((int(*k as i64), c.clone()));
            }
        }
        MSeries::from_terms(
            by_j.into_iter()
                .map(|(j, t)| (int(j as i64), QSeries::from_terms(t, None))),
            None,
        )
    }

    /// `a_i(q^n, q)`.
    pub fn coefficient_at(&self, i: usize, n: i64) -> QSeries {
        QSeries::from_terms(
            self.terms
                .iter()
                .filter(|((ii, _, _), _)| *ii as usize == i)
                .map(|((_, j, k), c)| (int(*k as i64 + *j as i64 * n), c.clone())),
            None,
        )
    }

    pub fn add(&self, other: &PolyOperator) -> PolyOperator {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyOperator {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &PolyOperator) -> PolyOperator {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> PolyOperator {
        PolyOperator::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    /// Product in the q-Weyl algebra: `(q^k M^j L^i)(q^k' M^j' L^i') = q^{k+k'+ij'} M^{j+j'} L^{i+i'}`.
    pub fn multiply(&self, other: &PolyOperator) -> PolyOperator {
        let mut out = PolyOperator::zero();
        for ((i, j, k), c) in &self.terms {
            for ((i2, j2, k2), c2) in &other.terms {
                out.add_term((i + i2, j + j2, k + k2 + i * j2), c * c2);
            }
        }
        out
    }

    /// `(P f)_n = Σ a_i(q^n, q) f_{n+i}`; `f` must hold the terms `f[n..=n+d]`.
    pub fn apply(&self, f: &[QSeries], n: usize) -> Result<QSeries> {
        let d = self.order();
        if f.len() < n + d + 1 {
            return Err(Error::RangeTooShort);
        }
        let mut acc = QSeries::zero();
        for i in 0..=d {
            let a = self.coefficient_at(i, n as i64);
            if !a.is_exact_zero() {
                acc = acc.add(&a.mul(&f[n + i]));
            }
        }
        Ok(acc)
    }

    /// Runs the recursion forward from `init = (f_0, ..., f_{d-1})` and returns
    /// `f_0, ..., f_{count-1}`. Divisions by `a_d(q^n, q)` are exact whenever
    /// possible; otherwise the quotient is expanded up to `O(q^cap)`.
    pub fn unroll(
        &self,
        init: &[QSeries],
        count: usize,
        cap: Option<&Rational>,
    ) -> Result<Vec<QSeries>> {
        let d = self.order();
        if init.len() != d {
            return Err(Error::InvalidInput(format!(
                "expected {d} initial terms, got {}",
                init.len()
            )));
        }
        let mut f: Vec<QSeries> = init.to_vec();
        let mut n = 0usize;
        while f.len() < count {
            let lead = self.coefficient_at(d, n as i64);
            if lead.is_zero() {
                return Err(Error::LeadingCoefficientVanishes(n as i64));
            }
            let mut rhs = QSeries::zero();
            for i in 0..d {
                let a = self.coefficient_at(i, n as i64);
                if !a.is_exact_zero() {
                    rhs = rhs.sub(&a.mul(&f[n + i]));
                }
            }
            let next = match rhs.div_exact(&lead) {
                Some(x) => x.truncate_opt(cap),
                None => {
                    let cap = cap.ok_or_else(|| {
                        Error::InvalidInput(format!(
                            "term {} is not a polynomial; a q-truncation is required",
                            n + d
                        ))
                    })?;
                    rhs.div(&lead, Some(cap))?
                }
            };
            f.push(next);
            n += 1;
        }
        f.truncate(count);
        Ok(f)
    }

    /// Lossless embedding into the truncated analysis representation.
    pub fn to_local(&self) -> LocalOperator {
        let d = self.order();
        LocalOperator::new((0..=d).map(|i| self.coefficient(i)).collect())
    }

    /// `P(L, M, 1)` as a commutative polynomial in `(L, M)`, keyed by `(i, j)`.
    pub fn characteristic_specialize(&self) -> BTreeMap<(u32, u32), Rational> {
        let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((i, j, _), c) in &self.terms {
            *out.entry((*i, *j)).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The operator annihilating `f_n(1/q)` when `self` annihilates `f_n(q)`:
    /// `(i, j, k) ↦ (i, J - j, K - k)` with `J`, `K` the largest exponents.
    pub fn reverse_q(&self) -> PolyOperator {
        let jm = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        let km = self.terms.keys().map(|e| e.2).max().unwrap_or(0);
        PolyOperator::from_terms(self.terms.iter().map(|((i, j, k), c)| ((*i, jm - j, km - k), c.clone())))
    }

    /// Change of variables `f_n = q^{γn² + ηn} c^n g_n` for a monomial `λ = c q^e`
    /// staying inside the exact integral lattice; see [`LocalOperator::gauge_transform`]
    /// for the general case.
    pub fn gauge_transform(&self, gamma: &Rational, eta: &Rational, lambda: &QSeries) -> Result<PolyOperator> {
        if lambda.num_terms() != 1 || !lambda.is_exact() {
            return Err(Error::RamificationError("λ must be an exact monomial".into()));
        }
        let le = lambda.qdegree()?;
        let lc = lambda.leading_term()?;
        let mut out = PolyOperator::zero();
        for ((i, j, k), c) in &self.terms {
            let ii = int(*i as i64);
            let dj = int(2) * gamma * &ii;
            let dk = gamma * &ii * &ii + eta * &ii + &le * &ii;
            let (Some(dj), Some(dk)) = (to_i64(&dj), to_i64(&dk)) else {
                return Err(Error::RamificationError(
                    "exponents leave the integral lattice".into(),
                ));
            };
            let nj = *j as i64 + dj;
            let nk = *k as i64 + dk;
            if nj < 0 || nk < 0 {
                return Err(Error::RamificationError("negative exponent after gauge".into()));
            }
            out.add_term((*i, nj as u32, nk as u32), c * crate::rational::rational_pow(&lc, *i as i64));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let file = OperatorFile {
            terms: self
                .terms
                .iter()
                .map(|((i, j, k), c)| TermRecord { i: *i, j: *j, k: *k, c: fmt_rational(c) })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("operator serializes")
    }

    pub fn from_json(text: &str) -> Result<PolyOperator> {
        let file: OperatorFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.terms
            .into_iter()
            .map(|t| Ok(((t.i, t.j, t.k), parse_rational(&t.c)?)))
            .collect::<Result<Vec<_>>>()
            .map(PolyOperator::from_terms)
    }

    pub fn to_record(&self) -> OperatorFile {
        OperatorFile {
            terms: self
                .terms
                .iter()
                .map(|((i, j, k), c)| TermRecord { i: *i, j: *j, k: *k, c: fmt_rational(c) })
                .collect(),
        }
    }
}

/// JSON layout `{"terms":[{"i":..,"j":..,"k":..,"c":"num/den"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OperatorFile {
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermRecord {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub c: String,
}

fn fmt_factor(f: &mut fmt::Formatter<'_>, var: &str, e: u32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, " {var}"),
        _ => write!(f, " {var}^{e}"),
    }
}

impl fmt::Display for PolyOperator {
    /// Terms as `c q^k M^j L^i`, highest `L`-power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponent> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            if n == 0 {
                write!(f, "{}", fmt_rational(c))?;
            } else if c.is_negative() {
                write!(f, " - {}", fmt_rational(&-c))?;
            } else {
                write!(f, " + {}", fmt_rational(c))?;
            }
            fmt_factor(f, "q", e.2)?;
            fmt_factor(f, "M", e.1)?;
            fmt_factor(f, "L", e.0)?;
        }
        Ok(())
    }
}

impl FromStr for PolyOperator {
    type Err = Error;

    /// Parses sums of monomials such as `2 q^3 M L^2 - 1/2 M^2` (factors may also be
    /// joined by `*`).
    fn from_str(s: &str) -> Result<PolyOperator> {
        let mut op = PolyOperator::zero();
        let text = s.replace('*', " ");
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in text.chars() {
            if (ch == '+' || ch == '-') && !cur.trim_end().ends_with('^') {
                if !cur.trim().is_empty() {
                    chunks.push((neg, std::mem::take(&mut cur)));
                } else if !cur.is_empty() || !chunks.is_empty() {
                    if !cur.trim().is_empty() || !chunks.is_empty() {
                        return Err(Error::Parse(format!("dangling sign in `{s}`")));
                    }
                }
                cur.clear();
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.trim().is_empty() {
            return Err(Error::Parse(format!("empty term in `{s}`")));
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            let mut coeff = Rational::one();
            let (mut i, mut j, mut k) = (0u32, 0u32, 0u32);
            for tok in chunk.split_whitespace() {
                let (var, e) = match tok.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent `{tok}`")))?),
                    None => (tok, 1),
                };
                match var {
                    "q" => k += e,
                    "M" => j += e,
                    "L" => i += e,
                    _ => coeff *= parse_rational(tok)?,
                }
            }
            if neg {
                coeff = -coeff;
            }
            op.add_term((i, j, k), coeff);
        }
        Ok(op)
    }
}

/// The annihilator of the worked example sequence, as printed in its factored form.
pub fn example_annihilator() -> PolyOperator {
    let p = |s: &str| s.parse::<PolyOperator>().unwrap();
    let a2 = p("-1 + M q^2").multiply(&p("-1 + M q + M^2 q^2"));
    let a1 = p("-2 + M q + M q^2 + 2 M^2 q^2 + M^2 q^3 + 2 M^2 q^4 - 2 M^3 q^4 - 2 M^3 q^5 - M^4 q^5 - M^4 q^6 - M^4 q^7 + M^5 q^7 + M^5 q^8 + M^6 q^9");
    let a0 = p("1 - M q^2 - M^2 q^4");
    a2.multiply(&p("L^2")).add(&a1.multiply(&p("L"))).add(&a0)
}
