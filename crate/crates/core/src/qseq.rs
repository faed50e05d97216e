//! q-factorials, the Euler partition product and the worked example sequence
//! `f_n(q) = Σ_k (q)_{n+k} / ((q)_{n-k} (q)_k)`.

use num::{BigInt, Zero};

use crate::rational::{int, Rational};
use crate::series::QSeries;

/// Integer polynomial in `q` as a dense coefficient vector.
type IntPoly = Vec<BigInt>;

fn mul_one_minus_qm(p: &IntPoly, m: usize) -> IntPoly {
    let mut out = vec![BigInt::zero(); p.len() + m];
    for (i, c) in p.iter().enumerate() {
        out[i] += c;
        out[i + m] -= c;
    }
    out
}

/// Exact quotient of `p` by `1 - q^m`; panics if the division is not exact.
fn div_one_minus_qm(p: &IntPoly, m: usize) -> IntPoly {
    let n = p.len() - m;
    let mut c = vec![BigInt::zero(); n];
    for i in 0..n {
        c[i] = p[i].clone();
        if i >= m {
            let prev = c[i - m].clone();
            c[i] += prev;
        }
    }
    for i in n..p.len() {
        let lower = if i >= m { c[i - m].clone() } else { BigInt::zero() };
        assert!(p[i] == -lower, "division by 1 - q^{m} is not exact");
    }
    c
}

fn to_series(p: IntPoly, t: Option<usize>) -> QSeries {
    let coeffs: Vec<Rational> = p.into_iter().map(Rational::from_integer).collect();
    let exact = QSeries::from_coeffs(0, coeffs, None);
    match t {
        Some(t) if exact.max_degree().map_or(true, |d| d >= int(t as i64)) => {
            exact.truncate(&int(t as i64))
        }
        _ => exact,
    }
}

fn pochhammer_poly(n: usize) -> IntPoly {
    (1..=n).fold(vec![BigInt::from(1)], |acc, k| mul_one_minus_qm(&acc, k))
}

/// `(q)_n = ∏_{k=1}^n (1 - q^k)`. The result is exact when `t` exceeds its degree,
/// otherwise truncated at `O(q^t)`.
pub fn q_pochhammer(n: usize, t: usize) -> QSeries {
    to_series(pochhammer_poly(n), Some(t))
}

/// `1/(q;q)_∞ = ∏_{m≥1} 1/(1 - q^m)` up to `O(q^t)`; the coefficients are partition numbers.
pub fn euler_inverse(t: usize) -> QSeries {
    let mut p = vec![BigInt::zero(); t];
    if t > 0 {
        p[0] = BigInt::from(1);
    }
    for m in 1..t {
        for i in m..t {
            let prev = p[i - m].clone();
            p[i] += prev;
        }
    }
    let coeffs = p.into_iter().map(Rational::from_integer).collect();
    QSeries::from_coeffs(0, coeffs, Some(t as i64))
}

/// The example sequence as an exact integer polynomial.
pub fn example_polynomial(n: usize) -> QSeries {
    let mut total: IntPoly = vec![BigInt::zero()];
    for k in 0..=n {
        // (q)_{n+k}/(q)_{n-k} = ∏_{m=n-k+1}^{n+k} (1 - q^m), then divide by (q)_k
        let mut term = vec![BigInt::from(1)];
        for m in (n - k + 1)..=(n + k) {
            term = mul_one_minus_qm(&term, m);
        }
        for m in 1..=k {
            term = div_one_minus_qm(&term, m);
        }
        if term.len() > total.len() {
            total.resize(term.len(), BigInt::zero());
        }
        for (i, c) in term.into_iter().enumerate() {
            total[i] += c;
        }
    }
    to_series(total, None)
}

/// `f_n(q)`, exact when `t > n(3n+1)/2`, else truncated at `O(q^t)`.
pub fn example_sequence(n: usize, t: usize) -> QSeries {
    let f = example_polynomial(n);
    if f.max_degree().map_or(false, |d| d < int(t as i64)) {
        f
    } else {
        f.truncate(&int(t as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn pochhammer_small() {
        assert_eq!(q_pochhammer(0, 10), QSeries::one());
        assert_eq!(q_pochhammer(1, 10), "1 - q".parse().unwrap());
        // (1-q)(1-q^2)(1-q^3) expanded by hand
        assert_eq!(q_pochhammer(3, 10), "1 - q - q^2 + q^4 + q^5 - q^6".parse().unwrap());
        assert_eq!(q_pochhammer(3, 3).to_string(), "1*q^(0) - 1*q^(1) - 1*q^(2) + O(q^(3))");
    }

    #[test]
    fn partition_numbers() {
        let e = euler_inverse(31);
        let expect = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (m, v) in expect.iter().enumerate() {
            assert_eq!(e.coeff_int(m as i64).unwrap(), int(*v));
        }
        assert_eq!(e.coeff_int(30).unwrap(), int(5604));
        assert_eq!(e.coeff_int(31), None);
    }

    #[test]
    fn example_first_terms() {
        assert_eq!(example_sequence(0, 100), QSeries::one());
        assert_eq!(example_sequence(1, 100), "2 - q^2".parse().unwrap());
        let f4 = example_sequence(4, 100);
        assert_eq!(f4.coeff_int(26).unwrap(), int(1));
        assert_eq!(f4.max_degree().unwrap(), int(26));
        assert!(!example_sequence(4, 20).is_exact());
    }
}
