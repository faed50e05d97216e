//! Degrees and leading terms of q-holonomic sequences: quadratic quasi-polynomials,
//! constant-coefficient recurrences, generalized power sums and zero patterns.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::rational_roots;
use crate::rational::{fmt_rational, int, rational_pow, Rational};
use crate::series::QSeries;
use crate::wkb::WKBSum;

pub const DEFAULT_MAX_PERIOD: usize = 12;
pub const DEFAULT_MAX_SKIP: usize = 8;
pub const DEFAULT_MAX_ORDER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `δ(f)`, the lowest exponent.
    Min,
    /// `δ̂(f)`, the highest exponent of a polynomial.
    Max,
}

/// `(c₂/2) n² + c₁ n + c₀` on each residue class mod `period`, valid for `n ≥ n0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: usize,
    /// `(c₀, c₁, c₂)` for residues `0..period`.
    pub coeffs: Vec<(Rational, Rational, Rational)>,
    pub n0: usize,
}

impl QuasiPolynomial {
    pub fn constant_class(c0: Rational, c1: Rational, c2: Rational, n0: usize) -> QuasiPolynomial {
        QuasiPolynomial { period: 1, coeffs: vec![(c0, c1, c2)], n0 }
    }

    pub fn eval(&self, n: usize) -> Rational {
        let (c0, c1, c2) = &self.coeffs[n % self.period];
        let x = int(n as i64);
        c2 * &x * &x / int(2) + c1 * &x + c0
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (rho, (c0, c1, c2)) in self.coeffs.iter().enumerate() {
            if rho > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "n ≡ {rho} (mod {}): ({}/2)n² + ({})n + ({})",
                self.period,
                fmt_rational(c2),
                fmt_rational(c1),
                fmt_rational(c0)
            )?;
        }
        write!(f, "  [n ≥ {}]", self.n0)
    }
}

/// `a_{n+d} = s₁ a_{n+d-1} + ⋯ + s_d a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearRecurrence {
    #[serde(serialize_with = "ser_rationals")]
    pub coeffs: Vec<Rational>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rational))
}

impl LinearRecurrence {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Whether every window of `values` satisfies the recurrence.
    pub fn fits(&self, values: &[Rational]) -> bool {
        let d = self.order();
        (d..values.len()).all(|n| {
            let rhs: Rational = (1..=d).map(|j| &self.coeffs[j - 1] * &values[n - j]).sum();
            rhs == values[n]
        })
    }

    /// Extends `init` (length ≥ order) to `count` terms.
    pub fn extend(&self, init: &[Rational], count: usize) -> Vec<Rational> {
        let d = self.order();
        let mut v: Vec<Rational> = init.to_vec();
        while v.len() < count {
            let n = v.len();
            let x: Rational = (1..=d).map(|j| &self.coeffs[j - 1] * &v[n - j]).sum();
            v.push(x);
        }
        v.truncate(count);
        v
    }

    /// Coefficients of `x^d - s₁ x^{d-1} - ⋯ - s_d`, from `x^0` upward.
    pub fn characteristic(&self) -> Vec<Rational> {
        let d = self.order();
        let mut c = vec![Rational::zero(); d + 1];
        c[d] = Rational::one();
        for (j, s) in self.coeffs.iter().enumerate() {
            c[d - j - 1] = -s;
        }
        c
    }

    /// The recurrence with characteristic roots `α` of multiplicity `n(α)`, i.e.
    /// `s(x) = ∏ (1 - α x)^{n(α)}`.
    pub fn from_roots(roots: &[(Rational, usize)]) -> LinearRecurrence {
        // s(x) as coefficients of x^0, x^1, ...
        let mut s = vec![Rational::one()];
        for (a, m) in roots {
            for _ in 0..*m {
                let mut next = vec![Rational::zero(); s.len() + 1];
                for (i, c) in s.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] -= c * a;
                }
                s = next;
            }
        }
        LinearRecurrence { coeffs: s[1..].iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for LinearRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.characteristic();
        let mut first = true;
        for (i, a) in c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a < &Rational::zero();
            let abs = if neg { -a } else { a.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let coef = if abs.is_one() && i > 0 { String::new() } else { fmt_rational(&abs) };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// `a_n = Σ_i A_i(n) α_i^n`, explicit and/or as a recurrence with initial values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneralizedPowerSum {
    /// `(α_i, coefficients of A_i from n^0 upward)`.
    pub explicit: Option<Vec<(Rational, Vec<Rational>)>>,
    pub implicit: Option<(LinearRecurrence, Vec<Rational>)>,
}

impl GeneralizedPowerSum {
    /// Builds both forms from explicit data; zero polynomials are dropped.
    pub fn from_explicit(terms: Vec<(Rational, Vec<Rational>)>) -> GeneralizedPowerSum {
        let terms: Vec<(Rational, Vec<Rational>)> = terms
            .into_iter()
            .filter_map(|(a, mut p)| {
                while p.last().map_or(false, |c| c.is_zero()) {
                    p.pop();
                }
                (!p.is_empty()).then_some((a, p))
            })
            .collect();
        let roots: Vec<(Rational, usize)> = terms.iter().map(|(a, p)| (a.clone(), p.len())).collect();
        let rec = LinearRecurrence::from_roots(&roots);
        let mut g = GeneralizedPowerSum { explicit: Some(terms), implicit: None };
        let init: Vec<Rational> = (0..rec.order()).map(|n| g.evaluate_explicit(n).unwrap()).collect();
        g.implicit = Some((rec, init));
        g
    }

    /// From a recurrence and initial values; the explicit form is added when the
    /// characteristic roots are rational.
    pub fn from_recurrence(rec: LinearRecurrence, init: Vec<Rational>) -> GeneralizedPowerSum {
        let explicit = explicit_form(&rec, &init);
        GeneralizedPowerSum { explicit, implicit: Some((rec, init)) }
    }

    pub fn evaluate_explicit(&self, n: usize) -> Option<Rational> {
        let terms = self.explicit.as_ref()?;
        let x = int(n as i64);
        Some(
            terms
                .iter()
                .map(|(a, p)| {
                    let poly: Rational = p.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c);
                    poly * rational_pow(a, n as i64)
                })
                .sum(),
        )
    }

    pub fn evaluate_implicit(&self, n: usize) -> Option<Rational> {
        let (rec, init) = self.implicit.as_ref()?;
        if n < init.len() {
            return Some(init[n].clone());
        }
        Some(rec.extend(init, n + 1)[n].clone())
    }

    pub fn is_zero(&self) -> bool {
        match (&self.explicit, &self.implicit) {
            (Some(t), _) => t.is_empty(),
            (None, Some((_, init))) => init.iter().all(|x| x.is_zero()),
            (None, None) => true,
        }
    }
}

impl fmt::Display for GeneralizedPowerSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(terms) = &self.explicit {
            if terms.is_empty() {
                return write!(f, "0");
            }
            let parts: Vec<String> = terms
                .iter()
                .map(|(a, p)| {
                    let poly: Vec<String> = p
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| match i {
                            0 => fmt_rational(c),
                            1 => format!("{}·n", fmt_rational(c)),
                            _ => format!("{}·n^{i}", fmt_rational(c)),
                        })
                        .collect();
                    format!("({})·({})^n", poly.join(" + "), fmt_rational(a))
                })
                .collect();
            return write!(f, "{}", parts.join(" + "));
        }
        match &self.implicit {
            Some((rec, init)) => write!(
                f,
                "recurrence with characteristic polynomial {rec}, initial values [{}]",
                init.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
            ),
            None => write!(f, "0"),
        }
    }
}

/// Value of `g` at `n`; the explicit form is used when present, and both forms
/// agree whenever both are available.
pub fn gps_evaluate(g: &GeneralizedPowerSum, n: usize) -> Rational {
    let e = g.evaluate_explicit(n);
    let i = g.evaluate_implicit(n);
    if let (Some(x), Some(y)) = (&e, &i) {
        debug_assert_eq!(x, y);
    }
    e.or(i).unwrap_or_else(Rational::zero)
}

/// Solves a square rational system; `None` when singular.
fn solve_rational(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn explicit_form(rec: &LinearRecurrence, init: &[Rational]) -> Option<Vec<(Rational, Vec<Rational>)>> {
    let d = rec.order();
    if d == 0 {
        return Some(Vec::new());
    }
    let roots = rational_roots(&rec.characteristic())?;
    if roots.iter().map(|r| r.1).sum::<usize>() != d || init.len() < d {
        return None;
    }
    let cols: Vec<(Rational, usize)> = roots.iter().flat_map(|(a, m)| (0..*m).map(move |t| (a.clone(), t))).collect();
    let a: Vec<Vec<Rational>> = (0..d)
        .map(|n| {
            cols.iter()
                .map(|(al, t)| rational_pow(&int(n as i64), *t as i64) * rational_pow(al, n as i64))
                .collect()
        })
        .collect();
    let sol = solve_rational(a, init[..d].to_vec())?;
    let mut out: Vec<(Rational, Vec<Rational>)> = Vec::new();
    let mut k = 0;
    for (al, m) in roots {
        out.push((al, sol[k..k + m].to_vec()));
        k += m;
    }
    Some(out.into_iter().filter(|(_, p)| p.iter().any(|c| !c.is_zero())).collect())
}

/// `δ(f_n)` or `δ̂(f_n)` for each term.
pub fn degree_sequence(f: &[QSeries], side: Side) -> Result<Vec<Rational>> {
    f.iter()
        .map(|x| match side {
            Side::Min => x.qdegree(),
            Side::Max => x.max_degree(),
        })
        .collect()
}

/// Coefficient at `δ(f_n)` or `δ̂(f_n)` for each term.
pub fn leading_terms(f: &[QSeries], side: Side) -> Result<Vec<Rational>> {
    f.iter()
        .map(|x| match side {
            Side::Min => x.leading_term(),
            Side::Max => x.top_coefficient(),
        })
        .collect()
}

/// The quadratic through three points, as `(c₀, c₁, c₂)` with `c₂/2` the leading coefficient.
fn quadratic_through(pts: &[(Rational, Rational)]) -> (Rational, Rational, Rational) {
    let a: Vec<Vec<Rational>> = pts
        .iter()
        .map(|(x, _)| vec![Rational::one(), x.clone(), x * x / int(2)])
        .collect();
    let b: Vec<Rational> = pts.iter().map(|(_, y)| y.clone()).collect();
    let s = solve_rational(a, b).expect("distinct nodes");
    (s[0].clone(), s[1].clone(), s[2].clone())
}

/// Smallest period `p ≤ max_period`, then smallest threshold `n₀ ≤ max_skip`, such that
/// every residue class of `values[n₀..]` is an exact quadratic in `n` (at least four
/// points per class: three to interpolate and one to verify).
pub fn fit_quasi_polynomial(values: &[Rational], max_period: usize, max_skip: usize) -> Result<QuasiPolynomial> {
    for p in 1..=max_period.max(1) {
        for n0 in 0..=max_skip {
            if let Some(q) = fit_with(values, p, n0) {
                return Ok(q);
            }
        }
    }
    Err(Error::NoFit)
}

fn fit_with(values: &[Rational], p: usize, n0: usize) -> Option<QuasiPolynomial> {
    let mut coeffs = vec![(Rational::zero(), Rational::zero(), Rational::zero()); p];
    for (rho, slot) in coeffs.iter_mut().enumerate() {
        let pts: Vec<(Rational, Rational)> = (n0..values.len())
            .filter(|n| n % p == rho)
            .map(|n| (int(n as i64), values[n].clone()))
            .collect();
        if pts.len() < 4 {
            return None;
        }
        let c = quadratic_through(&pts[..3]);
        let ok = pts[3..].iter().all(|(x, y)| &c.2 * x * x / int(2) + &c.1 * x + &c.0 == *y);
        if !ok {
            return None;
        }
        *slot = c;
    }
    Some(QuasiPolynomial { period: p, coeffs, n0 })
}

/// Minimal constant-coefficient recurrence (Berlekamp–Massey over ℚ), certified only
/// when `values` holds at least `2d + 1` terms and the order is at most `max_order`.
pub fn min_linear_recurrence(values: &[Rational], max_order: usize) -> Result<LinearRecurrence> {
    let mut c: Vec<Rational> = vec![Rational::one()];
    let mut b: Vec<Rational> = vec![Rational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = Rational::one();
    for n in 0..values.len() {
        let mut disc = values[n].clone();
        for i in 1..=l {
            disc += &c[i] * &values[n - i];
        }
        if disc.is_zero() {
            m += 1;
            continue;
        }
        let coef = &disc / &bd;
        let mut t = c.clone();
        if t.len() < b.len() + m {
            t.resize(b.len() + m, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            t[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            b = c;
            l = n + 1 - l;
            bd = disc;
            m = 1;
        } else {
            m += 1;
        }
        c = t;
    }
    c.resize(l + 1, Rational::zero());
    let rec = LinearRecurrence { coeffs: c[1..].iter().map(|x| -x).collect() };
    if l > max_order || values.len() < 2 * l + 1 || !rec.fits(values) {
        return Err(Error::NoRecurrence);
    }
    Ok(rec)
}

/// Empirical zero set of a sequence inside its window.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ZeroPattern {
    pub sporadic: Vec<usize>,
    /// `(start, period)`: every `n ≥ start` with `n ≡ start (mod period)` in the window is a zero.
    pub progressions: Vec<(usize, usize)>,
}

/// Splits the zeros in the window into full arithmetic progressions (each with at
/// least three members reaching the end of the window) and sporadic zeros.
pub fn zero_pattern(values: &[Rational], max_period: usize) -> Result<ZeroPattern> {
    let n = values.len();
    if n < 3 * max_period.max(1) {
        return Err(Error::WindowTooSmall);
    }
    let zeros: BTreeSet<usize> = (0..n).filter(|&i| values[i].is_zero()).collect();
    let mut covered: BTreeSet<usize> = BTreeSet::new();
    let mut progressions = Vec::new();
    for p in 1..=max_period {
        for rho in 0..p {
            let members: Vec<usize> = (rho..n).step_by(p).collect();
            let tail: Vec<usize> = members.iter().rev().take_while(|i| zeros.contains(i)).cloned().collect();
            if tail.len() < 3 || tail.iter().all(|i| covered.contains(i)) {
                continue;
            }
            let start = *tail.last().unwrap();
            covered.extend(tail);
            progressions.push((start, p));
        }
    }
    let sporadic = zeros.difference(&covered).cloned().collect();
    Ok(ZeroPattern { sporadic, progressions })
}

/// The criterion for `(a_n q^{b_n})` to be q-holonomic at desk scale: `b` is a
/// quadratic quasi-polynomial and `a` satisfies a constant-coefficient recurrence.
pub fn monomial_sequence_check(a: &[Rational], b: &[Rational]) -> bool {
    if a.iter().any(|x| x.is_zero()) {
        return false;
    }
    fit_quasi_polynomial(b, DEFAULT_MAX_PERIOD, DEFAULT_MAX_SKIP).is_ok()
        && min_linear_recurrence(a, DEFAULT_MAX_ORDER).is_ok()
}

/// Degree and leading term of `Σ c_i w_i` for large `n`: the members with least `γ`,
/// then least `η = δ(λ)`, then least `δ(c_i)` dominate; their leading coefficients
/// `μ_i = lt(λ_i)` form the generalized power sum `Σ lt(c_i) n^{j_i} μ_i^n`.
pub fn wkb_asymptotics(w: &WKBSum) -> Result<(QuasiPolynomial, GeneralizedPowerSum)> {
    let members: Vec<_> = w.terms.iter().filter(|(c, _)| !c.is_zero()).collect();
    if members.is_empty() {
        return Err(Error::ZeroOrTruncated);
    }
    // ranking key for the k = 0 part: (γ, η, δ(c_i))
    let key = |c: &QSeries, s: &crate::wkb::WKBSeries| -> Result<(Rational, Rational, Rational)> {
        Ok((s.gamma.clone(), s.lambda.qdegree()?, c.qdegree()?))
    };
    let mut best: Option<(Rational, Rational, Rational)> = None;
    for (c, s) in &members {
        let k = key(c, s)?;
        if best.as_ref().map_or(true, |b| k < *b) {
            best = Some(k);
        }
    }
    let (g, eta, j) = best.unwrap();
    let mut by_root: BTreeMap<Rational, Vec<Rational>> = BTreeMap::new();
    for (c, s) in &members {
        if key(c, s)? != (g.clone(), eta.clone(), j.clone()) {
            continue;
        }
        let mu = s.lambda.leading_term()?;
        let lc = c.leading_term()?;
        // Φ_0(n) of a basis member: its lowest-degree coefficients in q
        let phi0 = &s.phi[0];
        let poly = by_root.entry(mu).or_default();
        for (i, x) in phi0.iter().enumerate() {
            if let Some(v) = x.coeff(&Rational::zero()) {
                if poly.len() <= i {
                    poly.resize(i + 1, Rational::zero());
                }
                poly[i] += &lc * v;
            }
        }
    }
    let gps = GeneralizedPowerSum::from_explicit(by_root.into_iter().collect());
    if gps.is_zero() {
        return Err(Error::InconclusiveTruncation);
    }
    // the leading term must not vanish on whole progressions
    let probe: Vec<Rational> = (0..3 * DEFAULT_MAX_PERIOD).map(|n| gps_evaluate(&gps, n)).collect();
    let zp = zero_pattern(&probe, DEFAULT_MAX_PERIOD)?;
    if !zp.progressions.is_empty() {
        return Err(Error::InconclusiveTruncation);
    }
    let mut n0 = zp.sporadic.last().map_or(0, |z| z + 1);
    // beyond n0 every other term must have strictly larger degree
    let dominant = |n: i64| &g * int(n * n) + &eta * int(n) + &j;
    let beaten = |n: i64| -> Result<bool> {
        let target = dominant(n);
        for (c, s) in &members {
            let base = &s.gamma * int(n * n) + s.lambda.qdegree()? * int(n) + c.qdegree()?;
            for (k, p) in s.phi.iter().enumerate() {
                let v = p.iter().filter_map(|x| x.qdegree().ok()).min();
                let Some(v) = v else { continue };
                let deg = &base + v + int(n * k as i64) / int(s.ramification as i64);
                let tie_allowed = k == 0 && key(c, s)? == (g.clone(), eta.clone(), j.clone());
                if deg < target || (deg == target && !tie_allowed) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    const HORIZON: i64 = 200;
    for n in (0..HORIZON).rev() {
        if !beaten(n)? {
            n0 = n0.max(n as usize + 1);
            break;
        }
    }
    Ok((QuasiPolynomial::constant_class(j, eta, int(2) * g, n0), gps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn quasi_polynomial_fits() {
        let v: Vec<Rational> = (0..30).map(|n| rat(n * (3 * n + 1), 2)).collect();
        let q = fit_quasi_polynomial(&v, 12, 8).unwrap();
        assert_eq!(q.period, 1);
        assert_eq!(q.coeffs[0], (int(0), rat(1, 2), int(3)));
        let v: Vec<Rational> = (0..30).map(|n| if n % 2 == 0 { rat(n * n, 2) } else { int(n * n) }).collect();
        let q = fit_quasi_polynomial(&v, 12, 8).unwrap();
        assert_eq!((q.period, q.coeffs[0].2.clone(), q.coeffs[1].2.clone()), (2, int(1), int(2)));
        let v: Vec<Rational> = (0..30).map(|n| int(1 << (n % 20))).collect();
        assert_eq!(fit_quasi_polynomial(&v, 3, 2), Err(Error::NoFit));
    }

    #[test]
    fn recurrences() {
        let r = min_linear_recurrence(&(1..=20).map(int).collect::<Vec<_>>(), 12).unwrap();
        assert_eq!(r.coeffs, ints(&[2, -1]));
        assert_eq!(r.to_string(), "x^2 - 2x + 1");
        let r = min_linear_recurrence(&(0..20).map(|n| int(if n % 2 == 0 { 1 } else { -1 })).collect::<Vec<_>>(), 12).unwrap();
        assert_eq!(r.coeffs, ints(&[-1]));
        assert_eq!(min_linear_recurrence(&ints(&[0; 10]), 12).unwrap().order(), 0);
        let doubly: Vec<Rational> = (0..10).map(|n| rational_pow(&int(2), 1 << n)).collect();
        assert_eq!(min_linear_recurrence(&doubly, 12), Err(Error::NoRecurrence));
    }

    #[test]
    fn power_sums() {
        let g = GeneralizedPowerSum::from_explicit(vec![(int(2), ints(&[1]))]);
        assert_eq!(gps_evaluate(&g, 5), int(32));
        let g = GeneralizedPowerSum::from_explicit(vec![(int(1), ints(&[0, 1])), (int(-1), ints(&[1]))]);
        assert_eq!(gps_evaluate(&g, 3), int(2));
        assert_eq!(g.evaluate_implicit(7), g.evaluate_explicit(7));
        let r = LinearRecurrence::from_roots(&[(int(2), 1), (int(1), 2)]);
        assert_eq!(r.order(), 3);
        assert_eq!(r.characteristic(), ints(&[-2, 5, -4, 1]));
        let g = GeneralizedPowerSum::from_recurrence(LinearRecurrence { coeffs: ints(&[2, -1]) }, ints(&[1, 2]));
        assert_eq!(g.explicit, Some(vec![(int(1), ints(&[1, 1]))]));
    }

    #[test]
    fn zero_patterns() {
        let v: Vec<Rational> = (0..40).map(|n| int(1 - if n % 2 == 0 { 1 } else { -1 })).collect();
        let z = zero_pattern(&v, 12).unwrap();
        assert_eq!((z.progressions, z.sporadic), (vec![(0, 2)], vec![]));
        let v: Vec<Rational> = (0..40).map(|n| int(n - 3) * rational_pow(&int(2), n)).collect();
        let z = zero_pattern(&v, 12).unwrap();
        assert_eq!((z.progressions, z.sporadic), (vec![], vec![3]));
        let mut fib = ints(&[0, 1]);
        for i in 2..40 {
            let x = &fib[i - 1] + &fib[i - 2];
            fib.push(x);
        }
        let z = zero_pattern(&fib[1..], 12).unwrap();
        assert!(z.progressions.is_empty() && z.sporadic.is_empty());
        assert_eq!(zero_pattern(&fib[..10], 12), Err(Error::WindowTooSmall));
    }

    #[test]
    fn monomial_sequences() {
        let b: Vec<Rational> = (0..25).map(|n| rat(n * (3 * n + 1), 2)).collect();
        let a: Vec<Rational> = (0..25).map(|n| int(if n % 2 == 0 { 1 } else { -1 })).collect();
        assert!(monomial_sequence_check(&a, &b));
        let a: Vec<Rational> = (1..=25).map(int).collect();
        assert!(monomial_sequence_check(&a, &vec![int(0); 25]));
        let a: Vec<Rational> = (0..12).map(|n| rational_pow(&int(2), 1 << n)).collect();
        assert!(!monomial_sequence_check(&a, &vec![int(0); 12]));
    }
}
