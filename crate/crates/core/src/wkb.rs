//! Formal WKB solutions `q^{γn²} λ(q)^n Σ_k φ_k(n, q) u^{k/r}` (with `u = q^n`) of
//! linear q-difference equations, their evaluation, and matching against sequences.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg;
use crate::local::LocalOperator;
use crate::mseries::MSeries;
use crate::newton::newton_polygon;
use crate::operator::PolyOperator;
use crate::poly::{self, cmp_series, Eigenvalue, NPoly};
use crate::rational::{ceil_i64, fmt_rational, int, lcm_u32, parse_rational, rat, Rational};
use crate::series::QSeries;

/// A formal WKB series. `phi[k][i]` is the coefficient of `n^i u^{k/r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WKBSeries {
    pub gamma: Rational,
    pub lambda: QSeries,
    pub ramification: u32,
    pub phi: Vec<NPoly>,
}

/// A linear combination `Σ c_i(q) w_i` of WKB series.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WKBSum {
    pub terms: Vec<(QSeries, WKBSeries)>,
}

impl WKBSeries {
    /// Number of tracked `u^{k/r}` coefficients.
    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    /// `φ_{i,k}`.
    pub fn phi(&self, i: usize, k: usize) -> QSeries {
        self.phi.get(k).and_then(|p| p.get(i)).cloned().unwrap_or_default()
    }

    /// Largest power of `n` appearing.
    pub fn n_degree(&self) -> usize {
        self.phi
            .iter()
            .filter_map(|p| p.iter().rposition(|c| !c.is_exact_zero()))
            .max()
            .unwrap_or(0)
    }

    fn valuation(p: &[QSeries]) -> Option<Rational> {
        p.iter().filter_map(|c| c.qdegree().ok()).min()
    }

    /// `c = min_{k ≥ 1} δ(φ_k)/k` over the tracked coefficients (`0` when all vanish).
    pub fn growth_constant(&self) -> Rational {
        self.phi
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(k, p)| Self::valuation(p).map(|v| v / int(k as i64)))
            .min()
            .unwrap_or_else(Rational::zero)
    }

    /// Evaluations are defined for `n > threshold() = -r c`.
    pub fn threshold(&self) -> Rational {
        -self.growth_constant() * int(self.ramification as i64)
    }

    /// `q^{γn²} λ^n A(n, q^n, q)`, with the `u`-tail bounded by the growth constant.
    pub fn evaluate(&self, n: i64, t_q: &Rational) -> Result<QSeries> {
        if n < 0 || int(n) <= self.threshold() {
            return Err(Error::EvaluationBelowThreshold(n));
        }
        let r = self.ramification as i64;
        let c = self.growth_constant();
        let tail = (c + rat(n, r)) * int(self.phi.len() as i64);
        let nn = int(n * n);
        let pv = self.lambda.qdegree()? * int(n) + &self.gamma * &nn;
        // coefficients are only needed up to t_q - v(prefactor)
        let need = t_q - &pv;
        let mut acc = QSeries::zero();
        for (k, p) in self.phi.iter().enumerate() {
            let shift = rat(n * k as i64, r);
            if Self::valuation(p).map_or(true, |v| v + &shift >= need) && p.iter().all(|c| c.is_exact()) {
                continue;
            }
            acc = acc.add(&poly::npoly_eval(p, n).shift(&shift)).truncate(&need);
        }
        let acc = acc.truncate(&tail);
        let va = acc.qdegree().unwrap_or_else(|_| need.clone());
        let lam = self.lambda.pow(n, Some(&(t_q - &self.gamma * &nn - va)))?;
        Ok(acc.mul(&lam).shift(&(&self.gamma * &nn)).truncate(t_q))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "gamma": fmt_rational(&self.gamma),
            "lambda": self.lambda.to_string(),
            "ramification": self.ramification,
            "growth_constant": fmt_rational(&self.growth_constant()),
            "phi": self
                .phi
                .iter()
                .map(|p| p.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for WKBSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = if self.ramification == 1 { "u".to_string() } else { format!("u^(1/{})", self.ramification) };
        write!(f, "q^({} n^2) ({})^n [", fmt_rational(&self.gamma), self.lambda)?;
        let mut first = true;
        for (k, p) in self.phi.iter().enumerate().take(4) {
            for (i, c) in p.iter().enumerate() {
                if c.is_exact_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({c})")?;
                if i > 0 {
                    write!(f, " n^{i}")?;
                }
                if k > 0 {
                    write!(f, " {u}^{k}")?;
                }
            }
        }
        write!(f, " + …]")
    }
}

impl WKBSum {
    /// Each series with coefficient 1.
    pub fn basis(series: Vec<WKBSeries>) -> WKBSum {
        WKBSum { terms: series.into_iter().map(|s| (QSeries::one(), s)).collect() }
    }

    pub fn evaluate(&self, n: i64, t_q: &Rational) -> Result<QSeries> {
        let mut acc = QSeries::zero();
        for (c, s) in &self.terms {
            if !c.is_exact_zero() {
                acc = acc.add(&c.mul(&s.evaluate(n, t_q)?));
            }
        }
        Ok(acc.truncate(t_q))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(c, s)| json!({ "coefficient": c.to_string(), "series": s.to_json() }))
                .collect(),
        )
    }
}

fn ramification(p: &LocalOperator) -> u32 {
    p.coeffs().iter().fold(1, |r, c| lcm_u32(r, c.ramification()))
}

/// `a[m][i]`: coefficient of `M^{m/r} L^i`, for `m < grades`.
fn grade_table(p: &LocalOperator, r: u32, grades: usize) -> Vec<Vec<QSeries>> {
    (0..grades)
        .map(|m| {
            let e = rat(m as i64, r as i64);
            p.coeffs().iter().map(|c| c.coeff(&e).unwrap_or_default()).collect()
        })
        .collect()
}

/// An operator normalized at one slope: gauged so that the slope is horizontal and
/// shifted so that its height is zero.
struct Normalized {
    gamma: Rational,
    r: u32,
    a: Vec<Vec<QSeries>>,
    eig: Vec<Eigenvalue>,
}

fn normalize(p: &LocalOperator, slope: &Rational, t_u: usize, qcap: &Rational) -> Result<Normalized> {
    let gamma = -slope / int(2);
    let g = p.gauge_transform(&gamma, &Rational::zero(), &QSeries::one())?;
    let h = newton_polygon(&g)
        .vertices
        .iter()
        .map(|v| v.1.clone())
        .min()
        .ok_or(Error::ZeroOrTruncated)?;
    let g = g.shift_m(&-h);
    let r = ramification(&g);
    let mut grades = t_u * r as usize;
    if let Some(pm) = g.m_precision() {
        grades = grades.min(ceil_i64(&(pm * int(r as i64))).max(1) as usize);
    }
    let a = grade_table(&g, r, grades);
    let eig = poly::eigenvalues(&a[0], qcap)?;
    let eig = eig.into_iter().filter(|e| !e.value.is_exact_zero()).collect();
    Ok(Normalized { gamma, r, a, eig })
}

/// Sum of multiplicities of eigenvalues equal to `λ q^{K/r}`.
fn resonance(eig: &[Eigenvalue], lambda: &QSeries, k: usize, r: u32) -> usize {
    let shift = rat(k as i64, r as i64);
    let Ok(lv) = lambda.qdegree() else { return 0 };
    eig.iter()
        .filter(|e| {
            e.value.qdegree().ok() == Some(&lv + &shift)
                && e.value.leading_term().ok() == lambda.leading_term().ok()
                && e.value.sub(&lambda.shift(&shift)).is_zero()
        })
        .map(|e| e.multiplicity)
        .sum()
}

fn binom(n: usize, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * int((n - i) as i64) / int((i + 1) as i64);
    }
    acc
}

/// `Σ_i c_i Φ(n + i)`.
fn shift_apply(c: &[QSeries], phi: &[QSeries], qcap: &Rational) -> NPoly {
    let mut out: NPoly = Vec::new();
    for (i, ci) in c.iter().enumerate() {
        if ci.is_exact_zero() {
            continue;
        }
        let shifted = poly::npoly_shift(phi, i as i64);
        out = poly::add(&out, &poly::scale(&shifted, ci));
    }
    out.into_iter().map(|x| linalg::clip(x, Some(qcap))).collect()
}

/// Solves the `u`-graded recursion for one eigenvalue, starting from `Φ_0 = n^{j0}`.
fn solve_series(nz: &Normalized, lambda: &QSeries, j0: usize, qcap: &Rational) -> Result<WKBSeries> {
    let r = nz.r;
    let d = nz.a[0].len() - 1;
    let lam_pow: Vec<QSeries> = (0..=d)
        .map(|i| lambda.pow(i as i64, Some(qcap)).map(|x| linalg::clip(x, Some(qcap))))
        .collect::<Result<_>>()?;
    // c[m][k][i] = a_{i,m} λ^i q^{ik/r}
    let coeffs = |m: usize, k: usize| -> Vec<QSeries> {
        nz.a[m]
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if a.is_exact_zero() {
                    QSeries::zero()
                } else {
                    linalg::clip(a.mul(&lam_pow[i]).shift(&rat((i * k) as i64, r as i64)), Some(qcap))
                }
            })
            .collect()
    };
    let kmax = nz.a.len();
    let mut phi: Vec<NPoly> = Vec::with_capacity(kmax);
    let mut start = vec![QSeries::zero(); j0 + 1];
    start[j0] = QSeries::one();
    phi.push(start);
    for big_k in 1..kmax {
        let mut rhs: NPoly = Vec::new();
        for k in 0..big_k {
            let m = big_k - k;
            if nz.a[m].iter().all(|c| c.is_exact_zero()) || phi[k].iter().all(|c| c.is_exact_zero()) {
                continue;
            }
            rhs = poly::add(&rhs, &shift_apply(&coeffs(m, k), &phi[k], qcap));
        }
        let rhs: NPoly = poly::trim(rhs.iter().map(|x| x.neg()).collect());
        if rhs.iter().all(|c| c.is_exact_zero()) {
            phi.push(vec![QSeries::zero()]);
            continue;
        }
        let mres = resonance(&nz.eig, lambda, big_k, r);
        let c0 = coeffs(0, big_k);
        let e = rhs.len() - 1;
        let top = e + mres;
        // w_s = Σ_i c_i i^s
        let w: Vec<QSeries> = (0..=top)
            .map(|s| {
                if s < mres {
                    return QSeries::zero();
                }
                let mut acc = QSeries::zero();
                for (i, c) in c0.iter().enumerate() {
                    if !c.is_exact_zero() {
                        acc = acc.add(&c.scale(&num::pow::pow(int(i as i64), s)));
                    }
                }
                acc
            })
            .collect();
        if w[mres].is_zero() {
            return Err(Error::Resonant);
        }
        let mut out = vec![QSeries::zero(); top + 1];
        for t in (0..=e).rev() {
            let j = t + mres;
            let mut acc = rhs[t].clone();
            for jj in j + 1..=top {
                if !out[jj].is_exact_zero() {
                    acc = acc.sub(&out[jj].mul(&w[jj - t]).scale(&binom(jj, t)));
                }
            }
            let piv = w[mres].scale(&binom(j, t));
            out[j] = linalg::clip(linalg::div(&acc, &piv, Some(qcap))?, Some(qcap));
        }
        phi.push(out);
    }
    Ok(WKBSeries { gamma: nz.gamma.clone(), lambda: lambda.clone(), ramification: r, phi })
}

fn sort_basis(v: &mut [WKBSeries]) {
    v.sort_by(|a, b| {
        a.gamma
            .cmp(&b.gamma)
            .then_with(|| cmp_series(&a.lambda, &b.lambda))
            .then_with(|| a.n_degree().cmp(&b.n_degree()))
            .then_with(|| a.phi[0].len().cmp(&b.phi[0].len()))
    });
}

/// A basis of formal WKB solutions: for every slope `s` of `N(P)` the exponent is
/// `γ = -s/2`, and every eigenvalue `λ` of multiplicity `m` contributes the series
/// starting with `n^j`, `j < m`. Coefficients are tracked for `u`-exponents below
/// `t_u` and to `O(q^qcap)`.
pub fn solve_full(p: &LocalOperator, t_u: usize, qcap: &Rational) -> Result<Vec<WKBSeries>> {
    if p.is_exact_zero() {
        return Err(Error::ZeroOrTruncated);
    }
    let mut out = Vec::new();
    for s in newton_polygon(p).slopes() {
        let nz = normalize(p, &s.slope, t_u, qcap)?;
        let found: usize = nz.eig.iter().map(|e| e.multiplicity).sum();
        if found != s.length {
            return Err(Error::IrrationalEigenvalue);
        }
        for e in &nz.eig {
            for j in 0..e.multiplicity {
                out.push(solve_series(&nz, &e.value, j, qcap)?);
            }
        }
    }
    sort_basis(&mut out);
    Ok(out)
}

/// Basis for a regular-singular operator, allowing repeated and resonant eigenvalues;
/// coefficients are polynomials in `n` of degree below the multiplicity budget.
pub fn solve_resonant(p: &LocalOperator, t_u: usize, qcap: &Rational) -> Result<Vec<WKBSeries>> {
    if !newton_polygon(p).is_regular_singular() {
        return Err(Error::NotRegularSingular);
    }
    solve_full(p, t_u, qcap)
}

/// `[u^{m/r}] χ(x, u)` as a polynomial in `x`, i.e. the coefficients of `M^{m/r}`.
fn chi_coefficient(nz: &Normalized, m: usize) -> &[QSeries] {
    &nz.a[m]
}

/// `c_{i,j} = [u^{i/r}] χ(q^{j/r} λ, u)`.
pub fn c_table(p: &LocalOperator, lambda: &QSeries, t_u: usize, qcap: &Rational) -> Result<Vec<Vec<QSeries>>> {
    let nz = normalize(p, &Rational::zero(), t_u, qcap)?;
    Ok(c_table_of(&nz, lambda, qcap))
}

fn c_table_of(nz: &Normalized, lambda: &QSeries, qcap: &Rational) -> Vec<Vec<QSeries>> {
    let kmax = nz.a.len();
    (0..kmax)
        .map(|i| {
            (0..kmax - i)
                .map(|j| {
                    let x = lambda.shift(&rat(j as i64, nz.r as i64));
                    linalg::clip(poly::eval(chi_coefficient(nz, i), &x), Some(qcap))
                })
                .collect()
        })
        .collect()
}

/// Distinct, non-resonant eigenvalues: `φ_k = -(1/c_{0,k}) Σ_{i=1}^k c_{i,k-i} φ_{k-i}`.
pub fn solve_nonresonant(p: &LocalOperator, t_u: usize, qcap: &Rational) -> Result<Vec<WKBSeries>> {
    let np = newton_polygon(p);
    if !np.is_regular_singular() {
        return Err(Error::NotRegularSingular);
    }
    let nz = normalize(p, &Rational::zero(), t_u, qcap)?;
    if nz.eig.iter().any(|e| e.multiplicity > 1) {
        return Err(Error::Resonant);
    }
    for a in &nz.eig {
        for k in 1..nz.a.len() {
            if resonance(&nz.eig, &a.value, k, nz.r) > 0 {
                return Err(Error::Resonant);
            }
        }
    }
    let mut out = Vec::new();
    for e in &nz.eig {
        let c = c_table_of(&nz, &e.value, qcap);
        let kmax = nz.a.len();
        let mut phi: Vec<QSeries> = vec![QSeries::one()];
        for k in 1..kmax {
            let mut acc = QSeries::zero();
            for i in 1..=k {
                if !c[i][k - i].is_exact_zero() {
                    acc = acc.add(&c[i][k - i].mul(&phi[k - i]));
                }
            }
            let v = linalg::div(&acc.neg(), &c[0][k], Some(qcap))?;
            phi.push(linalg::clip(v, Some(qcap)));
        }
        debug_assert!(degree_bound_holds(&c, &phi));
        out.push(WKBSeries {
            gamma: Rational::zero(),
            lambda: e.value.clone(),
            ramification: nz.r,
            phi: phi.into_iter().map(|x| vec![x]).collect(),
        });
    }
    sort_basis(&mut out);
    Ok(out)
}

/// `δ(φ_k) ≥ k·min δ(c_{i,j}) - Σ_{j ≤ k} δ(c_{0,j})`, the bound behind the linear growth
/// of `δ(φ_k)`: `φ_k ∏ c_{0,j}` is a sum of products of `k` entries `c_{i,j}`.
fn degree_bound_holds(c: &[Vec<QSeries>], phi: &[QSeries]) -> bool {
    let mut floor = Rational::zero();
    let mut denom = Rational::zero();
    for k in 1..phi.len() {
        for i in 0..=k {
            if let Some(v) = c.get(i).and_then(|row| row.get(k - i)).and_then(|x| x.qdegree().ok()) {
                floor = floor.min(v);
            }
        }
        match c[0][k].qdegree() {
            Ok(v) => denom += v,
            Err(_) => return true,
        }
        if let Ok(v) = phi[k].qdegree() {
            if v < &floor * int(k as i64) - &denom {
                return false;
            }
        }
    }
    true
}

/// First-order equation `f(uq) = a(u) f(u)` with `a(0) = 1`: `γ = 0`, `λ = 1`, and
/// `(q^{k/r} - 1) φ_k = Σ_{i ≥ 1} a_i φ_{k-i}`.
pub fn solve_first_order(a: &MSeries, t_u: usize, qcap: &Rational) -> Result<WKBSeries> {
    if !a.coeff(&Rational::zero()).map_or(false, |c| c == QSeries::one()) {
        return Err(Error::InvalidInput("a(0, q) must equal 1".into()));
    }
    let r = a.ramification();
    let kmax = t_u * r as usize;
    let coeff = |m: usize| a.coeff(&rat(m as i64, r as i64)).unwrap_or_default();
    let mut phi: Vec<QSeries> = vec![QSeries::one()];
    for k in 1..kmax {
        let mut acc = QSeries::zero();
        for i in 1..=k {
            let ai = coeff(i);
            if !ai.is_exact_zero() {
                acc = acc.add(&ai.mul(&phi[k - i]));
            }
        }
        let den = QSeries::q_pow(&rat(k as i64, r as i64)).sub(&QSeries::one());
        phi.push(linalg::clip(linalg::div(&acc, &den, Some(qcap))?, Some(qcap)));
    }
    Ok(WKBSeries {
        gamma: Rational::zero(),
        lambda: QSeries::one(),
        ramification: r,
        phi: phi.into_iter().map(|x| vec![x]).collect(),
    })
}

/// `1/∏_{i ≥ 0} a(M q^i)` to `O(M^{t_u})` and `O(q^qcap)`.
pub fn product_solution(a: &MSeries, t_u: usize, qcap: &Rational) -> Result<MSeries> {
    let mcap = int(t_u as i64);
    let mut acc = MSeries::one();
    let mut i = 0i64;
    loop {
        let f = a.sigma(&int(i)).truncate(&mcap).truncate_q(qcap);
        // factors with i ≥ qcap only touch q-degrees beyond the cap
        if i > 0 && f.sub(&MSeries::one()).is_zero() {
            break;
        }
        acc = acc.mul(&f.inv(Some(&mcap), Some(qcap))?).truncate(&mcap).truncate_q(qcap);
        i += 1;
    }
    Ok(acc)
}

/// Smallest index at which every basis member can be evaluated.
fn first_admissible(basis: &[WKBSeries]) -> i64 {
    basis
        .iter()
        .map(|s| {
            let t = s.threshold();
            (crate::rational::floor_i64(&t) + 1).max(0)
        })
        .max()
        .unwrap_or(0)
}

/// Coordinates of the sequence `terms` (indexed from `n = 0`) in the basis, solved
/// on the first admissible window and verified on the remaining terms.
pub fn match_sequence(terms: &[QSeries], basis: &[WKBSeries], t_q: &Rational) -> Result<Vec<QSeries>> {
    let d = basis.len();
    let n0 = first_admissible(basis);
    if terms.len() < n0 as usize + d {
        return Err(Error::RangeTooShort);
    }
    let row = |n: i64| -> Result<Vec<QSeries>> { basis.iter().map(|s| s.evaluate(n, t_q)).collect() };
    let a: Vec<Vec<QSeries>> = (n0..n0 + d as i64).map(row).collect::<Result<_>>()?;
    let b: Vec<QSeries> = (n0..n0 + d as i64).map(|n| terms[n as usize].truncate(t_q)).collect();
    let c = linalg::solve(&a, &b, Some(t_q))?;
    for n in n0 + d as i64..terms.len() as i64 {
        let mut acc = QSeries::zero();
        for (ci, v) in c.iter().zip(row(n)?) {
            acc = acc.add(&ci.mul(&v));
        }
        if !acc.agrees_with(&terms[n as usize]) {
            return Err(Error::FailsAt(n));
        }
    }
    Ok(c)
}

/// Unrolls `P` from `init` and matches the result against the basis.
pub fn match_solution(
    p: &PolyOperator,
    init: &[QSeries],
    basis: &[WKBSeries],
    t_q: &Rational,
) -> Result<Vec<QSeries>> {
    let n0 = first_admissible(basis) as usize;
    let count = n0 + basis.len() + 3;
    let terms = p.unroll(init, count, Some(&(t_q + int(8))))?;
    match_sequence(&terms, basis, t_q)
}

/// Polynomial in the symbols `c_{i,j}`; a monomial is its sorted list of factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CPoly {
    terms: BTreeMap<Vec<(usize, usize)>, Rational>,
}

impl CPoly {
    pub fn one() -> CPoly {
        CPoly { terms: BTreeMap::from([(Vec::new(), Rational::one())]) }
    }

    pub fn var(i: usize, j: usize) -> CPoly {
        CPoly { terms: BTreeMap::from([(vec![(i, j)], Rational::one())]) }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<(usize, usize)>, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            let e = out.entry(m.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.remove(m);
            }
        }
        CPoly { terms: out }
    }

    pub fn neg(&self) -> CPoly {
        CPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        let mut out = CPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m: Vec<(usize, usize)> = m1.iter().chain(m2).cloned().collect();
                m.sort();
                out = out.add(&CPoly { terms: BTreeMap::from([(m, c1 * c2)]) });
            }
        }
        out
    }

    pub fn evaluate(&self, value: impl Fn(usize, usize) -> Rational) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| m.iter().fold(c.clone(), |acc, &(i, j)| acc * value(i, j)))
            .sum()
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_empty() {
                parts.push(fmt_rational(&abs));
            }
            parts.extend(m.iter().map(|(i, j)| format!("c_{{{i},{j}}}")));
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for CPoly {
    type Err = Error;

    /// Parses sums of products such as `-c_{1,0} c_{1,1} + 2 c_{0,1} c_{2,0}`.
    fn from_str(s: &str) -> Result<CPoly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = CPoly::default();
        let mut term = String::new();
        let mut sign = Rational::one();
        let bad = || Error::Parse(format!("bad c-polynomial: {s}"));
        let flush = |term: &str, sign: &Rational, out: &mut CPoly| -> Result<()> {
            if term.is_empty() {
                return Err(bad());
            }
            let mut p = CPoly { terms: BTreeMap::from([(Vec::new(), sign.clone())]) };
            let mut rest = term;
            while !rest.is_empty() {
                if let Some(body) = rest.strip_prefix("c_{") {
                    let end = body.find('}').ok_or_else(bad)?;
                    let (i, j) = body[..end].split_once(',').ok_or_else(bad)?;
                    let i: usize = i.parse().map_err(|_| bad())?;
                    let j: usize = j.parse().map_err(|_| bad())?;
                    p = p.mul(&CPoly::var(i, j));
                    rest = &body[end + 1..];
                } else {
                    let end = rest.find("c_{").unwrap_or(rest.len());
                    let c = parse_rational(rest[..end].trim_end_matches('*'))?;
                    p = CPoly { terms: p.terms.into_iter().map(|(m, x)| (m, x * &c)).collect() };
                    rest = &rest[end..];
                }
                rest = rest.trim_start_matches('*');
            }
            *out = out.add(&p);
            Ok(())
        };
        let mut depth = 0;
        for ch in compact.chars() {
            match ch {
                '{' => depth += 1,
                '}' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') {
                if !term.is_empty() {
                    flush(&term, &sign, &mut out)?;
                    term.clear();
                }
                sign = if ch == '-' { -Rational::one() } else { Rational::one() };
                continue;
            }
            term.push(ch);
        }
        flush(&term, &sign, &mut out)?;
        Ok(out)
    }
}

/// `ψ_0, ..., ψ_kmax` with `ψ_k = φ_k ∏_{j=1}^k c_{0,j}`, as polynomials in `c_{i,j}`.
pub fn psi_symbolic(kmax: usize) -> Vec<CPoly> {
    let mut psi = vec![CPoly::one()];
    for k in 1..=kmax {
        let mut acc = CPoly::default();
        for i in 1..=k {
            let mut t = CPoly::var(i, k - i).mul(&psi[k - i]);
            for j in k - i + 1..k {
                t = t.mul(&CPoly::var(0, j));
            }
            acc = acc.add(&t);
        }
        psi.push(acc.neg());
    }
    psi
}

/// `φ_k` from numeric `c_{i,j}` by the recursion, for `k ≤ kmax`.
pub fn phi_numeric(kmax: usize, c: impl Fn(usize, usize) -> Rational) -> Vec<Rational> {
    let mut phi = vec![Rational::one()];
    for k in 1..=kmax {
        let s: Rational = (1..=k).map(|i| c(i, k - i) * &phi[k - i]).sum();
        phi.push(-s / c(0, k));
    }
    phi
}

/// Compares WKB bases by the normalized `(γ, λ)` data of their members.
pub fn same_exponents(a: &[WKBSeries], b: &[WKBSeries]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| x.gamma == y.gamma && cmp_series(&x.lambda, &y.lambda) == Ordering::Equal)
}
