//! Truncated power series in a single formal variable.
//!
//! A [`TruncatedSeries`] of order `N` stores `c0..=cN`; everything past `x^N`
//! is unknown. Binary operations truncate to the smaller order and nothing
//! ever silently extends a series. Convolution sums are accumulated with
//! Neumaier compensation.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
}

/// Compensated summation (Neumaier variant of Kahan).
pub(crate) fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            carry += (sum - s) + t;
        } else {
            carry += (t - s) + sum;
        }
        sum = s;
    }
    sum + carry
}

impl TruncatedSeries {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        TruncatedSeries { coeffs }
    }

    /// Series from leading coefficients, zero-padded up to `order`.
    pub fn from_coeffs(coeffs: &[f64], order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        TruncatedSeries { coeffs: c }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        Self::from_coeffs(&[c], order)
    }

    /// The formal variable `x` itself.
    pub fn identity(order: usize) -> Self {
        Self::from_coeffs(&[0.0, 1.0], order)
    }

    /// `c * x^k` truncated at `order`.
    pub fn monomial(c: f64, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero past the truncation order is *not* implied,
    /// so asking for it panics.
    pub fn coeff(&self, k: usize) -> f64 {
        assert!(k <= self.order(), "coefficient {k} lies beyond order {}", self.order());
        self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect(),
        }
    }

    /// Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|k| compensated_sum((0..=k).map(|i| self.coeffs[i] * rhs.coeffs[k - i])))
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, s: f64) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Termwise derivative; the order drops by one (a constant stays order 0).
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        TruncatedSeries {
            coeffs: (1..=self.order()).map(|k| k as f64 * self.coeffs[k]).collect(),
        }
    }

    /// Antiderivative vanishing at zero; the order grows by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, c)| c / (k as f64 + 1.0)));
        TruncatedSeries { coeffs }
    }

    /// Multiply by `x^k` keeping the same order.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order());
        for i in 0..=self.order().saturating_sub(k) {
            if i + k <= self.order() {
                s.coeffs[i + k] = self.coeffs[i];
            }
        }
        s
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 == 0.0 {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let mut out = vec![0.0; n + 1];
        out[0] = 1.0 / c0;
        for k in 1..=n {
            let s = compensated_sum((1..=k).map(|i| self.coeffs[i] * out[k - i]));
            out[k] = -s / c0;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.recip()?))
    }

    /// Real power `s^p` for a series with positive constant term, via the
    /// recurrence `n c0 b_n = sum_k ((p + 1) k - n) c_k b_{n-k}`.
    pub fn powf(&self, p: f64) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "real power of a series needs a positive constant term, got {c0}"
            )));
        }
        let n = self.order();
        let mut out = vec![0.0; n + 1];
        out[0] = c0.powf(p);
        for m in 1..=n {
            let s = compensated_sum((1..=m).map(|k| ((p + 1.0) * k as f64 - m as f64) * self.coeffs[k] * out[m - k]));
            out[m] = s / (m as f64 * c0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0] != 0.0 {
            return Err(Error::CompositionDomain { c0: inner.coeffs[0] });
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse `t` with `self(t(x)) = x` to the series order.
    ///
    /// Coefficients are fixed one degree at a time: after degrees `< k` are
    /// settled, the `x^k` coefficient of `self(t)` is linear in `t_k` with
    /// slope `c1`.
    pub fn revert(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        let c1 = if self.order() >= 1 { self.coeffs[1] } else { 0.0 };
        if c0 != 0.0 || c1 == 0.0 {
            return Err(Error::ReversionDomain { c0, c1 });
        }
        let n = self.order();
        let mut t = Self::monomial(1.0 / c1, 1, n);
        for k in 2..=n {
            let probe = self.truncate(k).compose(&t.truncate(k))?;
            t.coeffs[k] -= probe.coeffs[k] / c1;
        }
        Ok(t)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(-1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Maclaurin {
    Exp,
    Erf,
}

/// Maclaurin series of `exp` or `erf` through `x^order`.
pub fn maclaurin(func: Maclaurin, order: usize) -> TruncatedSeries {
    let mut c = vec![0.0; order + 1];
    match func {
        Maclaurin::Exp => {
            let mut term = 1.0;
            for (n, slot) in c.iter_mut().enumerate() {
                if n > 0 {
                    term /= n as f64;
                }
                *slot = term;
            }
        }
        Maclaurin::Erf => {
            let lead = 2.0 / std::f64::consts::PI.sqrt();
            // (-1)^k / k! tracked incrementally
            let mut signed_inv_fact = 1.0;
            let mut k = 0usize;
            while 2 * k < order {
                if k > 0 {
                    signed_inv_fact /= -(k as f64);
                }
                c[2 * k + 1] = lead * signed_inv_fact / (2 * k + 1) as f64;
                k += 1;
            }
        }
    }
    TruncatedSeries { coeffs: c }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: &TruncatedSeries, b: &TruncatedSeries, tol: f64) -> bool {
        a.order() == b.order()
            && a.coeffs
                .iter()
                .zip(&b.coeffs)
                .all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
    }

    #[test]
    fn difference_of_squares() {
        let p = TruncatedSeries::from_coeffs(&[1.0, 1.0], 2);
        let m = TruncatedSeries::from_coeffs(&[1.0, -1.0], 2);
        assert_eq!((&p * &m).coeffs(), &[1.0, 0.0, -1.0]);
    }

    #[test]
    fn derivative_example() {
        let s = TruncatedSeries::new(vec![1.0, 2.0, 3.0]);
        assert_eq!(s.differentiate().coeffs(), &[2.0, 6.0]);
        assert_eq!(s.differentiate().order(), 1);
    }

    #[test]
    fn exp_squared_is_exp_2x() {
        let e = maclaurin(Maclaurin::Exp, 4);
        let sq = &e * &e;
        let expected = [1.0, 2.0, 2.0, 4.0 / 3.0, 2.0 / 3.0];
        for (c, x) in sq.coeffs().iter().zip(expected) {
            assert!((c - x).abs() < 1e-15);
        }
    }

    #[test]
    fn exp_coefficients() {
        assert_eq!(maclaurin(Maclaurin::Exp, 3).coeffs(), &[1.0, 1.0, 0.5, 1.0 / 6.0]);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn erf_coefficients() {
        let s = maclaurin(Maclaurin::Erf, 5);
        let lead = 2.0 / std::f64::consts::PI.sqrt();
        let expected = [0.0, lead, 0.0, -lead / 3.0, 0.0, lead / 10.0];
        for (c, x) in s.coeffs().iter().zip(expected) {
            assert!((c - x).abs() < 1e-16);
        }
        assert!((s.coeff(1) - 1.128_379_2).abs() < 1e-7);
        assert!((s.coeff(3) + 0.376_126_4).abs() < 1e-7);
        assert!((s.coeff(5) - 0.112_837_9).abs() < 1e-7);
        let long = maclaurin(Maclaurin::Erf, 21);
        assert!(long.coeffs().iter().step_by(2).all(|&c| c == 0.0));
        // degree-5 truncation at 0.1 differs from erf by the x^7 term ~ 2.7e-9
        assert!((s.eval(0.1) - crate::special::erf(0.1)).abs() < 3e-9);
    }

    #[test]
    fn erf_primitive_matches_long_maclaurin() {
        let s = maclaurin(Maclaurin::Erf, 61);
        for i in 1..=20 {
            let x = i as f64 * 0.05;
            let reference = s.eval(x);
            let got = crate::special::erf(x);
            assert!((got - reference).abs() / reference < 1e-14, "x = {x}");
            assert!((crate::special::erf(-x) + reference).abs() / reference < 1e-14);
        }
    }

    #[test]
    fn compose_examples() {
        let sq = TruncatedSeries::monomial(1.0, 2, 4);
        let inner = TruncatedSeries::from_coeffs(&[0.0, 1.0, 1.0], 4);
        assert_eq!(sq.compose(&inner).unwrap().coeffs(), &[0.0, 0.0, 1.0, 2.0, 1.0]);
        let bad = TruncatedSeries::from_coeffs(&[0.5, 1.0], 4);
        assert!(matches!(sq.compose(&bad), Err(Error::CompositionDomain { .. })));
    }

    #[test]
    fn revert_identity_and_errors() {
        let x = TruncatedSeries::identity(6);
        assert_eq!(x.revert().unwrap(), x);
        assert!(matches!(
            TruncatedSeries::from_coeffs(&[1.0, 1.0], 3).revert(),
            Err(Error::ReversionDomain { .. })
        ));
        assert!(matches!(
            TruncatedSeries::from_coeffs(&[0.0, 0.0, 1.0], 3).revert(),
            Err(Error::ReversionDomain { .. })
        ));
    }

    #[test]
    fn revert_log1p_gives_expm1() {
        // log(1 + x) = x - x^2/2 + x^3/3 - ...; inverse is exp(x) - 1
        let n = 10;
        let log1p = TruncatedSeries::new(
            (0..=n)
                .map(|k| {
                    if k == 0 {
                        0.0
                    } else {
                        (-1f64).powi(k as i32 + 1) / k as f64
                    }
                })
                .collect(),
        );
        let inv = log1p.revert().unwrap();
        let mut expm1 = maclaurin(Maclaurin::Exp, n);
        expm1.coeffs[0] = 0.0;
        assert!(close(&inv, &expm1, 1e-14));
    }

    #[test]
    fn recip_and_powf() {
        let s = TruncatedSeries::from_coeffs(&[1.0, -1.0], 6);
        let r = s.recip().unwrap();
        assert!(r.coeffs().iter().all(|&c| (c - 1.0).abs() < 1e-15));
        let p = TruncatedSeries::from_coeffs(&[4.0, 4.0, 1.0], 5).powf(0.5).unwrap();
        assert!(close(&p, &TruncatedSeries::from_coeffs(&[2.0, 1.0], 5), 1e-15));
        assert!(TruncatedSeries::identity(3).recip().is_err());
    }

    #[test]
    fn integrate_extends_order_by_one() {
        let s = TruncatedSeries::new(vec![2.0, 6.0]);
        let i = s.integrate();
        assert_eq!(i.coeffs(), &[0.0, 2.0, 3.0]);
        assert_eq!(i.differentiate(), s);
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-2.0f64..2.0, order + 1).prop_map(TruncatedSeries::new)
    }

    fn admissible(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        (
            prop_oneof![1.0f64..2.0, -2.0f64..-1.0],
            prop::collection::vec(-0.5f64..0.5, order - 1),
        )
            .prop_map(|(c1, rest)| {
                let mut c = vec![0.0, c1];
                c.extend(rest);
                TruncatedSeries::new(c)
            })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in series_strategy(8), b in series_strategy(8), c in series_strategy(8)) {
            prop_assert!(close(&(&(&a * &b) * &c), &(&a * &(&b * &c)), 1e-12));
            prop_assert!(close(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)), 1e-12));
            prop_assert!(close(&(&a * &b), &(&b * &a), 1e-12));
            prop_assert!(close(&(&(&a + &b) - &b), &a, 1e-12));
        }

        #[test]
        fn compose_with_identity(s in series_strategy(9)) {
            prop_assert_eq!(s.compose(&TruncatedSeries::identity(9)).unwrap(), s);
        }

        #[test]
        fn revert_round_trip(s in admissible(10)) {
            let t = s.revert().unwrap();
            let id = TruncatedSeries::identity(10);
            prop_assert!(close(&s.compose(&t).unwrap(), &id, 1e-10));
            prop_assert!(close(&t.compose(&s).unwrap(), &id, 1e-10));
        }

        #[test]
        fn double_reversion(s in admissible(10)) {
            let back = s.revert().unwrap().revert().unwrap();
            for (x, y) in back.coeffs().iter().zip(s.coeffs()) {
                prop_assert!((x - y).abs() <= 1e-10 * y.abs().max(1.0));
            }
        }

        #[test]
        fn chain_rule(f in series_strategy(8), g in admissible(8)) {
            let lhs = f.compose(&g).unwrap().differentiate();
            let rhs = &f.differentiate().compose(&g.truncate(7)).unwrap() * &g.differentiate();
            prop_assert!(close(&lhs, &rhs, 1e-10));
        }
    }
}
