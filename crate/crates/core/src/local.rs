//! Operators `Σ_i a_i(M, q) L^i` whose coefficients are truncated series in `M^{1/r}`.

use std::fmt;


use crate::error::{Error, Result};
use crate::mseries::MSeries;
use crate::rational::{int, Rational};
use crate::series::QSeries;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LocalOperator {
    coeffs: Vec<MSeries>,
}

impl LocalOperator {
    pub fn new(mut coeffs: Vec<MSeries>) -> LocalOperator {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_exact_zero()) {
            coeffs.pop();
        }
        LocalOperator { coeffs }
    }

    pub fn zero() -> LocalOperator {
        LocalOperator::new(vec![MSeries::zero()])
    }

    pub fn one() -> LocalOperator {
        LocalOperator::new(vec![MSeries::one()])
    }

    /// The shift `L^i`.
    pub fn l_pow(i: usize) -> LocalOperator {
        let mut c = vec![MSeries::zero(); i + 1];
        c[i] = MSeries::one();
        LocalOperator::new(c)
    }

    /// Multiplication by a function `b(M, q)`.
    pub fn function(b: MSeries) -> LocalOperator {
        LocalOperator::new(vec![b])
    }

    /// `L - a(M, q)`.
    pub fn first_order(a: &MSeries) -> LocalOperator {
        LocalOperator::new(vec![a.neg(), MSeries::one()])
    }

    /// An operator constant in `M`, from its coefficients in `L`.
    pub fn from_q_coeffs(c: &[QSeries]) -> LocalOperator {
        LocalOperator::new(c.iter().map(|x| MSeries::constant(x.clone())).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> MSeries {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> &MSeries {
        self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    /// Least M-truncation over all coefficients.
    pub fn m_precision(&self) -> Option<Rational> {
        self.coeffs.iter().filter_map(|c| c.precision()).min()
    }

    pub fn add(&self, other: &LocalOperator) -> LocalOperator {
        let n = self.coeffs.len().max(other.coeffs.len());
        LocalOperator::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> LocalOperator {
        LocalOperator::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, other: &LocalOperator) -> LocalOperator {
        self.add(&other.neg())
    }

    /// Product under `L b(M) = b(qM) L`.
    pub fn multiply(&self, other: &LocalOperator) -> Result<LocalOperator> {
        let mut out = vec![MSeries::zero(); self.order() + other.order() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(&b.sigma(&int(i as i64))));
            }
        }
        let p = LocalOperator::new(out);
        if p.coeffs.iter().all(|c| c.is_zero() && !c.is_exact_zero())
            && !(self.is_exact_zero() || other.is_exact_zero())
        {
            return Err(Error::TruncationUnderflow);
        }
        Ok(p)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact_zero())
    }

    /// `b · P`.
    pub fn left_mul_fn(&self, b: &MSeries) -> LocalOperator {
        LocalOperator::new(self.coeffs.iter().map(|c| b.mul(c)).collect())
    }

    /// `P · b = Σ a_i b(q^i M) L^i`.
    pub fn right_mul_fn(&self, b: &MSeries) -> LocalOperator {
        LocalOperator::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.mul(&b.sigma(&int(i as i64))))
                .collect(),
        )
    }

    /// Left multiplication by `M^e`.
    pub fn shift_m(&self, e: &Rational) -> LocalOperator {
        LocalOperator::new(self.coeffs.iter().map(|c| c.shift(e)).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&MSeries) -> MSeries) -> LocalOperator {
        LocalOperator::new(self.coeffs.iter().map(f).collect())
    }

    pub fn truncate_m(&self, e: &Rational) -> LocalOperator {
        self.map_coeffs(|c| c.truncate(e))
    }

    /// Change of variables `f_n = q^{γn² + ηn} λ^n g_n`: returns `Q` with
    /// `Pf = 0 ⇔ Qg = 0`, namely `Q = Σ a_i(M) M^{2γi} q^{γi² + ηi} λ^i L^i`.
    pub fn gauge_transform(
        &self,
        gamma: &Rational,
        eta: &Rational,
        lambda: &QSeries,
    ) -> Result<LocalOperator> {
        if lambda.is_zero() {
            return Err(Error::ZeroOrTruncated);
        }
        let two_gamma = int(2) * gamma;
        if crate::rational::denom_u32(&two_gamma) > 1 << 16 {
            return Err(Error::RamificationError(format!("γ = {gamma}")));
        }
        let mut lam_pow = QSeries::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                lam_pow = lam_pow.mul(lambda);
            }
            let ii = int(i as i64);
            let qe = gamma * &ii * &ii + eta * &ii;
            let factor = lam_pow.shift(&qe);
            out.push(a.shift(&(&two_gamma * &ii)).scale(&factor));
        }
        Ok(LocalOperator::new(out))
    }

    /// Inverse of [`gauge_transform`](Self::gauge_transform); `cap` bounds the
    /// expansion of `1/λ` when `λ` is not a monomial.
    pub fn gauge_inverse(
        &self,
        gamma: &Rational,
        eta: &Rational,
        lambda: &QSeries,
        cap: Option<&Rational>,
    ) -> Result<LocalOperator> {
        let inv = lambda.inv(cap)?;
        self.gauge_transform(&-gamma, &-eta, &inv)
    }

    /// `S(P) = Σ a_i(0, q) L^i` after normalizing the common height of a horizontal
    /// Newton polygon to zero.
    pub fn slim_part(&self) -> Result<Vec<QSeries>> {
        let np = crate::newton::newton_polygon(self);
        if !np.is_regular_singular() {
            return Err(Error::NotRegularSingular);
        }
        let h = np.vertices[0].1.clone();
        Ok(self
            .coeffs
            .iter()
            .map(|c| c.coeff(&h).unwrap_or_else(QSeries::zero))
            .collect())
    }

    /// `(P f)_n = Σ a_i(q^n, q) f_{n+i}` where `window = (f_n, ..., f_{n+d})`.
    pub fn apply_window(&self, window: &[QSeries], n: i64) -> Result<QSeries> {
        if window.len() < self.coeffs.len() {
            return Err(Error::RangeTooShort);
        }
        let mut acc = QSeries::zero();
        for (a, f) in self.coeffs.iter().zip(window) {
            if !a.is_exact_zero() {
                acc = acc.add(&a.eval_at_qn(n).mul(f));
            }
        }
        Ok(acc)
    }

    /// `b(M)^{-1} P` where `b` is the leading coefficient.
    pub fn make_monic(&self, mcap: Option<&Rational>, qcap: Option<&Rational>) -> Result<LocalOperator> {
        if self.is_monic() {
            return Ok(self.clone());
        }
        let inv = self.leading_coeff().inv(mcap, qcap)?;
        let mut p = self.left_mul_fn(&inv);
        let d = p.order();
        p.coeffs[d] = MSeries::one();
        Ok(p)
    }

    /// Right division by a monic `Q`: returns `(S, R)` with `P = S Q + R`, `ord R < ord Q`.
    pub fn right_divide(&self, q: &LocalOperator) -> Result<(LocalOperator, LocalOperator)> {
        if !q.is_monic() {
            return Err(Error::NotMonic);
        }
        let e = q.order();
        let mut rem = self.coeffs.clone();
        if rem.len() <= e {
            return Ok((LocalOperator::zero(), self.clone()));
        }
        let mut quot = vec![MSeries::zero(); rem.len() - e];
        for top in (e..rem.len()).rev() {
            let s = rem[top].clone();
            let k = top - e;
            quot[k] = s.clone();
            // subtract s L^k Q = Σ_j s σ^k(q_j) L^{k+j}
            for (j, qj) in q.coeffs.iter().enumerate() {
                if j == e {
                    rem[top] = MSeries::zero();
                } else if !qj.is_exact_zero() {
                    rem[k + j] = rem[k + j].sub(&s.mul(&qj.sigma(&int(k as i64))));
                }
            }
        }
        rem.truncate(e.max(1));
        Ok((LocalOperator::new(quot), LocalOperator::new(rem)))
    }

    /// Every coefficient vanishes up to its truncation.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Equal up to the combined truncations.
    pub fn agrees_with(&self, other: &LocalOperator) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for LocalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}] L")?,
                _ => write!(f, "[{c}] L^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
