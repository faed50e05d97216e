//! q-Hensel lifting: splitting operators by Newton-polygon slopes and by coprime
//! factors of the slim part, and ordered first-order factorizations.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::local::LocalOperator;
use crate::mseries::MSeries;
use crate::newton::newton_polygon;
use crate::poly::{self, QPoly};
use crate::rational::{ceil_i64, denom_u32, int, lcm_u32, rat, Rational};
use crate::series::QSeries;

/// Ordered factors `P ≈ F_1 F_2 ⋯ F_m` with `P - F_1⋯F_m = residual`.
#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub factors: Vec<LocalOperator>,
    /// Recomposition is certified for every `M`-exponent below `t_m`.
    pub t_m: Rational,
    pub residual: LocalOperator,
}

fn ramification(p: &LocalOperator) -> u32 {
    p.coeffs().iter().fold(1, |r, c| lcm_u32(r, c.ramification()))
}

/// Coefficients of `M^{g/r}` as a polynomial in `L`.
fn grade(p: &LocalOperator, g: usize, r: u32) -> QPoly {
    let e = rat(g as i64, r as i64);
    p.coeffs().iter().map(|c| c.coeff(&e).unwrap_or_default()).collect()
}

/// `x(q^{f/r} L)`.
fn twist(x: &[QSeries], f: usize, r: u32) -> QPoly {
    poly::scale_var(x, &QSeries::q_pow(&rat(f as i64, r as i64)))
}

fn assemble(grades: &[QPoly], r: u32, order: usize) -> LocalOperator {
    let n = grades.len();
    let prec = rat(n as i64, r as i64);
    LocalOperator::new(
        (0..=order)
            .map(|i| {
                MSeries::from_terms(
                    grades.iter().enumerate().filter_map(|(g, x)| {
                        x.get(i).filter(|c| !c.is_exact_zero()).map(|c| (rat(g as i64, r as i64), c.clone()))
                    }),
                    Some(prec.clone()),
                )
            })
            .collect(),
    )
}

fn sub_poly(a: &[QSeries], b: &[QSeries]) -> QPoly {
    poly::add(a, &b.iter().map(|x| x.neg()).collect::<Vec<_>>())
}

fn is_one_up_to_truncation(m: &MSeries) -> bool {
    m.sub(&MSeries::one()).is_zero()
}

/// Splits `P = X Y` at a threshold `t` strictly between slopes. With `low_left`,
/// `X` carries the slopes below `t`; otherwise it carries the slopes above `t`.
/// Factors are computed to `grades` steps of `M^{1/r}` in the gauged frame.
fn split_at(
    p: &LocalOperator,
    t: &Rational,
    low_left: bool,
    extra: &Rational,
    qcap: Option<&Rational>,
) -> Result<(LocalOperator, LocalOperator)> {
    let d = p.order();
    let gamma = -t / int(2);
    let g = p.gauge_transform(&gamma, &Rational::zero(), &QSeries::one())?;
    let np = newton_polygon(&g);
    let (istar, h) = np
        .vertices
        .iter()
        .min_by(|a, b| a.1.cmp(&b.1))
        .cloned()
        .ok_or(Error::ZeroOrTruncated)?;
    let g = g.shift_m(&-&h);
    let r = lcm_u32(ramification(&g), denom_u32(t));
    let mut target = extra + t.abs() * int(d as i64) + h.abs();
    if let Some(pm) = g.m_precision() {
        target = target.min(pm);
    }
    let n = ceil_i64(&(target * int(r as i64))).max(1) as usize;
    let x0 = grade(&g, 0, r)[istar].clone();
    let (dx, dy) = if low_left { (istar, d - istar) } else { (d - istar, istar) };
    let mut xs: Vec<QPoly> = Vec::with_capacity(n);
    let mut ys: Vec<QPoly> = Vec::with_capacity(n);
    let mut x_init = vec![QSeries::zero(); dx + 1];
    let mut y_init = vec![QSeries::zero(); dy + 1];
    if low_left {
        x_init[dx] = x0.clone();
        y_init[0] = QSeries::one();
    } else {
        x_init[0] = x0.clone();
        y_init[dy] = QSeries::one();
    }
    xs.push(x_init);
    ys.push(y_init);
    for gr in 1..n {
        let mut rg = grade(&g, gr, r);
        for e in 1..gr {
            let f = gr - e;
            rg = sub_poly(&rg, &poly::mul(&twist(&xs[e], f, r), &ys[f]));
        }
        rg.resize(d + 1, QSeries::zero());
        let mut xg = vec![QSeries::zero(); dx + 1];
        let mut yg = vec![QSeries::zero(); dy + 1];
        if low_left {
            xg[..istar].clone_from_slice(&rg[..istar]);
            let piv = x0.mul(&QSeries::q_pow(&rat((gr * istar) as i64, r as i64)));
            for k in 0..=dy {
                yg[k] = linalg::div(&rg[k + istar], &piv, qcap)?;
            }
        } else {
            for k in 0..istar {
                yg[k] = linalg::div(&rg[k], &x0, qcap)?;
            }
            xg.clone_from_slice(&rg[istar..=d]);
        }
        xs.push(xg);
        ys.push(yg);
    }
    let x = assemble(&xs, r, dx).shift_m(&h);
    let y = assemble(&ys, r, dy);
    let back = |o: &LocalOperator| o.gauge_transform(&-&gamma, &Rational::zero(), &QSeries::one());
    let (x, y) = (back(&x)?, back(&y)?);
    // make the right factor monic and push its leading coefficient into the left one
    let lc = y.leading_coeff().clone();
    let lc_inv = lc.inv(None, qcap)?;
    let y = y.left_mul_fn(&lc_inv);
    let x = x.right_mul_fn(&lc);
    Ok((force_monic(x), force_monic(y)))
}

fn force_monic(p: LocalOperator) -> LocalOperator {
    if is_one_up_to_truncation(p.leading_coeff()) {
        let mut c = p.coeffs().to_vec();
        *c.last_mut().unwrap() = MSeries::one();
        LocalOperator::new(c)
    } else {
        p
    }
}

fn slope_set(p: &LocalOperator) -> Vec<Rational> {
    newton_polygon(p).slopes().into_iter().map(|s| s.slope).collect()
}

fn recomposition_ok(p: &LocalOperator, factors: &[LocalOperator], t_m: &Rational) -> Result<LocalOperator> {
    let mut prod = LocalOperator::one();
    for f in factors {
        prod = prod.multiply(f)?;
    }
    let residual = p.sub(&prod);
    let ok = residual.is_zero() && prod.m_precision().map_or(true, |x| x >= *t_m);
    if ok {
        Ok(residual)
    } else {
        Err(Error::TruncationUnderflow)
    }
}

/// Splits a monic `P` with slope sets `S₁ ⊔ S₂` into monic `P₁ P₂` with those slopes,
/// certified for `M`-exponents below `t_m`.
pub fn hensel_split_slopes(
    p: &LocalOperator,
    s1: &[Rational],
    s2: &[Rational],
    t_m: &Rational,
    qcap: Option<&Rational>,
) -> Result<(LocalOperator, LocalOperator)> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let all: BTreeSet<Rational> = slope_set(p).into_iter().collect();
    let a: BTreeSet<Rational> = s1.iter().cloned().collect();
    let b: BTreeSet<Rational> = s2.iter().cloned().collect();
    if a.is_empty() || b.is_empty() || !a.is_disjoint(&b) || a.union(&b).cloned().collect::<BTreeSet<_>>() != all {
        return Err(Error::SlopesNotPartition);
    }
    let mut extra = t_m.clone() + int(2);
    for _ in 0..6 {
        let res = split_partition(p, &a, &extra, qcap);
        match res {
            Ok((p1, p2)) => {
                if recomposition_ok(p, &[p1.clone(), p2.clone()], t_m).is_ok() {
                    return Ok((p1, p2));
                }
            }
            Err(Error::TruncationUnderflow) => {}
            Err(e) => return Err(e),
        }
        extra = extra * int(2) + int(2);
    }
    Err(Error::TruncationUnderflow)
}

fn split_partition(
    p: &LocalOperator,
    left: &BTreeSet<Rational>,
    extra: &Rational,
    qcap: Option<&Rational>,
) -> Result<(LocalOperator, LocalOperator)> {
    let slopes: Vec<Rational> = slope_set(p);
    let max_left = left.iter().max().unwrap();
    let min_left = left.iter().min().unwrap();
    let right: Vec<&Rational> = slopes.iter().filter(|s| !left.contains(*s)).collect();
    let max_right = *right.iter().max().unwrap();
    let min_right = *right.iter().min().unwrap();
    if max_left < min_right {
        return split_at(p, &((max_left + min_right) / int(2)), true, extra, qcap);
    }
    if min_left > max_right {
        return split_at(p, &((min_left + max_right) / int(2)), false, extra, qcap);
    }
    // Interleaved slopes: peel single-slope blocks in increasing order, then
    // reorder adjacent blocks until the left slopes come first.
    let mut blocks: Vec<(Rational, LocalOperator)> = Vec::new();
    let mut rest = p.clone();
    for w in slopes.windows(2) {
        let (b, r) = split_at(&rest, &((&w[0] + &w[1]) / int(2)), true, extra, qcap)?;
        blocks.push((w[0].clone(), b));
        rest = r;
    }
    blocks.push((slopes.last().unwrap().clone(), rest));
    loop {
        let pos = blocks
            .windows(2)
            .position(|w| !left.contains(&w[0].0) && left.contains(&w[1].0));
        let Some(k) = pos else { break };
        let (sa, a) = blocks[k].clone();
        let (sb, b) = blocks[k + 1].clone();
        let prod = a.multiply(&b)?;
        let t = (&sa + &sb) / int(2);
        let (nb, na) = split_at(&prod, &t, sb < sa, extra, qcap)?;
        blocks[k] = (sb, nb);
        blocks[k + 1] = (sa, na);
    }
    let mut p1 = LocalOperator::one();
    let mut p2 = LocalOperator::one();
    for (s, b) in blocks {
        if left.contains(&s) {
            p1 = p1.multiply(&b)?;
        } else {
            p2 = p2.multiply(&b)?;
        }
    }
    Ok((p1, p2))
}

/// Splits a monic regular-singular `P` with `S(P) = A B` (`A`, `B` monic and coprime)
/// into monic `P₁ P₂` with `S(P₁) = A`, `S(P₂) = B`.
pub fn hensel_split_eigen(
    p: &LocalOperator,
    a: &[QSeries],
    b: &[QSeries],
    t_m: &Rational,
    qcap: Option<&Rational>,
) -> Result<(LocalOperator, LocalOperator)> {
    let slim = p.slim_part()?;
    let ab = poly::mul(a, b);
    let diff = sub_poly(&slim, &ab);
    if diff.iter().any(|c| !c.is_zero()) || slim.len() != ab.len() {
        return Err(Error::SlimPartMismatch);
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    if da == 0 || db == 0 {
        return Err(Error::InvalidInput("both slim factors must have positive degree".into()));
    }
    let cap = qcap.cloned();
    let sylvester = |g: usize, r: u32| -> Vec<Vec<QSeries>> {
        let at = twist(a, g, r);
        let n = da + db;
        let mut m = vec![vec![QSeries::zero(); n]; n];
        for k in 0..da {
            for (j, c) in b.iter().enumerate() {
                m[k + j][k] = c.clone();
            }
        }
        for k in 0..db {
            for (j, c) in at.iter().enumerate() {
                m[k + j][da + k] = c.clone();
            }
        }
        m
    };
    // coprimality: the Sylvester system of (A, B) must be invertible
    let zero_rhs = vec![QSeries::zero(); da + db];
    if linalg::solve(&sylvester(0, 1), &zero_rhs, cap.as_ref()).is_err() {
        return Err(Error::FactorsNotCoprime);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let r = ramification(p);
    let n = match p.m_precision() {
        Some(pm) => ceil_i64(&(pm.min(t_m.clone()) * int(r as i64))),
        None => ceil_i64(&(t_m * int(r as i64))),
    }
    .max(1) as usize;
    let mut xs: Vec<QPoly> = vec![a.to_vec()];
    let mut ys: Vec<QPoly> = vec![b.to_vec()];
    for g in 1..n {
        let mut rg = grade(p, g, r);
        for e in 1..g {
            rg = sub_poly(&rg, &poly::mul(&twist(&xs[e], g - e, r), &ys[g - e]));
        }
        rg.resize(da + db, QSeries::zero());
        let sol = linalg::solve(&sylvester(g, r), &rg[..da + db], cap.as_ref()).map_err(|e| match e {
            Error::SingularMatch => Error::Resonant,
            e => e,
        })?;
        xs.push(sol[..da].to_vec());
        ys.push(sol[da..].to_vec());
    }
    let mut p1 = assemble(&xs, r, da);
    let mut p2 = assemble(&ys, r, db);
    let mut c1 = p1.coeffs().to_vec();
    *c1.last_mut().unwrap() = MSeries::one();
    p1 = LocalOperator::new(c1);
    let mut c2 = p2.coeffs().to_vec();
    *c2.last_mut().unwrap() = MSeries::one();
    p2 = LocalOperator::new(c2);
    Ok((p1, p2))
}

/// The ordered first-order factorization `P = (L - a_1)⋯(L - a_d)`, computed by
/// repeatedly splitting off a right factor from the largest slope.
pub fn factor_first_order(
    p: &LocalOperator,
    t_m: &Rational,
    qcap: Option<&Rational>,
) -> Result<FactorizationResult> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut work = t_m.clone() + int(2);
    for _ in 0..5 {
        match peel_all(p, &work, qcap) {
            Ok(factors) => {
                if let Ok(residual) = recomposition_ok(p, &factors, t_m) {
                    return Ok(FactorizationResult { factors, t_m: t_m.clone(), residual });
                }
            }
            Err(Error::TruncationUnderflow) => {}
            Err(e) => return Err(e),
        }
        work = work * int(2) + int(2);
    }
    Err(Error::TruncationUnderflow)
}

fn peel_all(p: &LocalOperator, work: &Rational, qcap: Option<&Rational>) -> Result<Vec<LocalOperator>> {
    let mut rest = p.clone();
    let mut right: Vec<LocalOperator> = Vec::new();
    while rest.order() > 1 {
        let f = right_first_order(&rest, work, qcap)?;
        let (quot, _rem) = rest.right_divide(&f)?;
        rest = quot;
        right.push(f);
    }
    if rest.order() == 1 {
        right.push(rest);
    }
    right.reverse();
    Ok(right)
}

/// A monic right factor `L - a(M)` of a monic `P`, taken from its largest slope.
fn right_first_order(p: &LocalOperator, work: &Rational, qcap: Option<&Rational>) -> Result<LocalOperator> {
    let slopes = slope_set(p);
    let smax = slopes.last().cloned().ok_or(Error::ZeroOrTruncated)?;
    let block = if slopes.len() > 1 {
        let left: Vec<Rational> = slopes[..slopes.len() - 1].to_vec();
        split_partition(p, &left.into_iter().collect(), &(work.clone() + int(2)), qcap)?.1
    } else {
        p.clone()
    };
    let gamma = -&smax / int(2);
    let g = block.gauge_transform(&gamma, &Rational::zero(), &QSeries::one())?;
    let h = newton_polygon(&g).vertices[0].1.clone();
    let g = g.shift_m(&-&h);
    let mcap = g.m_precision().unwrap_or_else(|| work.clone() + smax.abs() * int(p.order() as i64) + int(2));
    let g = g.make_monic(Some(&mcap), qcap)?;
    let factor = if g.order() == 1 {
        g
    } else {
        let slim = g.slim_part()?;
        let cap = qcap.cloned().unwrap_or_else(|| int(30));
        let eig = poly::eigenvalues(&slim, &cap)?;
        if eig.iter().any(|e| e.multiplicity > 1) {
            return Err(Error::ResonantEigenvalues);
        }
        let lam = eig[0].value.clone();
        let lin = vec![lam.neg(), QSeries::one()];
        let (quot, _) = divide_linear(&slim, &lam);
        let tm = g.m_precision().unwrap_or_else(|| work.clone() + smax.abs() * int(p.order() as i64) + int(2));
        let (_, f) = hensel_split_eigen(&g, &quot, &lin, &tm, qcap).map_err(|e| match e {
            Error::Resonant | Error::FactorsNotCoprime => Error::ResonantEigenvalues,
            e => e,
        })?;
        f
    };
    let f = factor.gauge_transform(&-&gamma, &Rational::zero(), &QSeries::one())?;
    f.make_monic(None, qcap)
}

/// Synthetic division of a polynomial by `x - c`: quotient and remainder.
fn divide_linear(p: &[QSeries], c: &QSeries) -> (QPoly, QSeries) {
    let n = p.len() - 1;
    let mut q = vec![QSeries::zero(); n];
    let mut acc = QSeries::zero();
    for i in (0..=n).rev() {
        acc = acc.mul(c).add(&p[i]);
        if i > 0 {
            q[i - 1] = acc.clone();
        }
    }
    (q, acc)
}

/// Negated slopes of `N(P)` with multiplicity, sorted.
pub fn negated_slopes(p: &LocalOperator) -> Vec<Rational> {
    let mut out: Vec<Rational> = newton_polygon(p)
        .slopes()
        .into_iter()
        .flat_map(|s| std::iter::repeat(-s.slope).take(s.length))
        .collect();
    out.sort();
    out
}

/// `δ_M(a_i)` of every first-order factor `L - a_i`, sorted.
pub fn factor_valuations(factors: &[LocalOperator]) -> Vec<Rational> {
    let mut out: Vec<Rational> = factors
        .iter()
        .filter_map(|f| f.coeff(0).delta_m())
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{example_annihilator, PolyOperator};

    fn op(s: &str) -> LocalOperator {
        s.parse::<PolyOperator>().unwrap().to_local()
    }

    #[test]
    fn two_slope_split() {
        // (L + 3 M)(L - 2 M^{-1})... built from monic single-slope factors
        let p1 = op("L + 3 M");
        let p2 = LocalOperator::first_order(&MSeries::monomial(QSeries::constant(int(2)), &int(-1)));
        let p = p1.multiply(&p2).unwrap();
        let (a, b) = hensel_split_slopes(&p, &[int(-1)], &[int(1)], &int(8), None).unwrap();
        assert!(a.agrees_with(&p1));
        assert!(b.agrees_with(&p2));
        let (c, d) = hensel_split_slopes(&p, &[int(1)], &[int(-1)], &int(8), None).unwrap();
        assert!(c.multiply(&d).unwrap().agrees_with(&p));
        assert_eq!(negated_slopes(&d), vec![int(1)]);
        assert_eq!(
            hensel_split_slopes(&p, &[int(-1), int(1)], &[], &int(8), None).unwrap_err(),
            Error::SlopesNotPartition
        );
    }

    #[test]
    fn eigen_split() {
        let p1 = op("L - 1 - M");
        let p2 = op("L - 2 - q M^2");
        let p = p1.multiply(&p2).unwrap();
        let a = vec![QSeries::constant(int(-1)), QSeries::one()];
        let b = vec![QSeries::constant(int(-2)), QSeries::one()];
        let (x, y) = hensel_split_eigen(&p, &a, &b, &int(10), Some(&int(30))).unwrap();
        assert!(x.agrees_with(&p1.truncate_m(&int(10))));
        assert!(y.agrees_with(&p2.truncate_m(&int(10))));
        let pf = example_annihilator().to_local();
        assert_eq!(
            hensel_split_eigen(&pf, &a, &a, &int(5), Some(&int(10))).unwrap_err(),
            Error::FactorsNotCoprime
        );
    }

    #[test]
    fn first_order_factorization() {
        let p = op("L - 1 - M").multiply(&op("L - 2 - M^2")).unwrap();
        let res = factor_first_order(&p, &int(8), Some(&int(30))).unwrap();
        assert_eq!(res.factors.len(), 2);
        assert_eq!(factor_valuations(&res.factors), negated_slopes(&p));
        let c0 = res.factors[1].coeff(0).coeff(&int(0)).unwrap();
        assert!(c0 == QSeries::constant(int(-1)) || c0 == QSeries::constant(int(-2)));
        let pf = example_annihilator().to_local().make_monic(Some(&int(10)), None).unwrap();
        assert_eq!(
            factor_first_order(&pf, &int(5), Some(&int(10))).unwrap_err(),
            Error::ResonantEigenvalues
        );
    }
}
