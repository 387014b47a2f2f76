//! Shallow-well power series and deep-well asymptotics of the variational
//! energies, with the exact reference expansions they are compared against.
//!
//! Shallow series follow three steps: expand `v0` and `W` in an internal
//! variable `u`, revert `v0(u)`, and substitute the result into `W(u)`.
//! Harmonic families use `u = sqrt(a)` because `v0 ~ sqrt(a)` near `a = 0`;
//! exponential families use `u = a`.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{maclaurin, Maclaurin, TruncatedSeries};
use crate::trial::{optimize_parameter, TrialFamily};
use crate::wells::WellShape;

/// Which expansion variable the intermediate series use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionVariable {
    SqrtA,
    A,
}

/// Intermediate series of the shallow-well pipeline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineTrace {
    pub variable: ExpansionVariable,
    /// `v0` as a series in `u`.
    pub v0_of_u: TruncatedSeries,
    /// The reverted series `u(v0)`.
    pub u_of_v0: TruncatedSeries,
    /// `W` as a series in `u`.
    pub w_of_u: TruncatedSeries,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShallowSeries {
    /// Trial family name, or `"exact"`.
    pub label: String,
    /// Energy as a series in `v0`.
    pub series: TruncatedSeries,
    pub trace: Option<PipelineTrace>,
}

/// `J_k(a) = int_0^inf x^k f(x) exp(-2 a x) dx` as series in `a`, from the
/// half-line moments `m_n = int_0^inf x^n f(x) dx`.
pub fn laplace_moment_series(moments: &[f64], k: usize, order: usize) -> TruncatedSeries {
    assert!(moments.len() > k + order, "need moments up to index {}", k + order);
    let mut coeffs = vec![0.0; order + 1];
    let mut factor = 1.0; // (-2)^j / j!
    for (j, c) in coeffs.iter_mut().enumerate() {
        if j > 0 {
            factor *= -2.0 / j as f64;
        }
        *c = factor * moments[k + j];
    }
    TruncatedSeries::new(coeffs)
}

/// Half-line moments `m_0..m_count` of a well shape.
pub fn shape_moments(shape: WellShape, count: usize) -> Vec<f64> {
    match shape {
        WellShape::Gaussian => {
            // m_n = Gamma((n + 1)/2) / 2, via m_{n+2} = (n + 1)/2 m_n
            let mut m = vec![0.0; count + 1];
            m[0] = PI.sqrt() / 2.0;
            if count >= 1 {
                m[1] = 0.5;
            }
            for n in 2..=count {
                m[n] = (n - 1) as f64 / 2.0 * m[n - 2];
            }
            m
        }
        WellShape::Square { half_width } => (0..=count)
            .map(|n| half_width.powi(n as i32 + 1) / (n + 1) as f64)
            .collect(),
    }
}

/// `J_0..J_3` as series in `a`. For the Gaussian well these come from the
/// Maclaurin series of `exp` and `erf`:
/// `J_0 = sqrt(pi)/2 exp(a^2) (1 - erf a)`, then `2 J_k = (k-1) J_{k-2} - 2a J_{k-1}`.
fn exp_family_moments(shape: WellShape, order: usize) -> [TruncatedSeries; 4] {
    match shape {
        WellShape::Gaussian => {
            let a = TruncatedSeries::identity(order);
            let a_sq = TruncatedSeries::monomial(1.0, 2, order);
            let exp_a2 = maclaurin(Maclaurin::Exp, order)
                .compose(&a_sq)
                .expect("a^2 has zero constant term");
            let erfc = &TruncatedSeries::constant(1.0, order) - &maclaurin(Maclaurin::Erf, order);
            let j0 = (&exp_a2 * &erfc).scale(PI.sqrt() / 2.0);
            let one = TruncatedSeries::constant(1.0, order);
            let j1 = (&one - &(&a * &j0).scale(2.0)).scale(0.5);
            let j2 = (&j0 - &(&a * &j1).scale(2.0)).scale(0.5);
            let j3 = (&j1.scale(2.0) - &(&a * &j2).scale(2.0)).scale(0.5);
            [j0, j1, j2, j3]
        }
        WellShape::Square { .. } => {
            let m = shape_moments(shape, order + 4);
            [0, 1, 2, 3].map(|k| laplace_moment_series(&m, k, order))
        }
    }
}

/// `(v0(u), W(u))` for a family, as series through `u^order`.
fn curve_series(
    family: TrialFamily,
    shape: WellShape,
    order: usize,
) -> Result<(ExpansionVariable, TruncatedSeries, TruncatedSeries)> {
    match (family, shape) {
        (TrialFamily::HarmEven, WellShape::Gaussian) => {
            // with u = sqrt(a): F = u^2/2, G = sqrt(2) u (1 + 2u^2)^(-1/2),
            // dF/da = 1/2, dG/da = (1 + 2u^2)^(-3/2) / (sqrt(2) u)
            let u = TruncatedSeries::identity(order);
            let base = TruncatedSeries::from_coeffs(&[1.0, 0.0, 2.0], order);
            let f = TruncatedSeries::monomial(0.5, 2, order);
            let g = (&u * &base.powf(-0.5)?).scale(SQRT_2);
            // v0 = (dF/da) / (dG/da) = (sqrt(2)/2) u (1 + 2u^2)^(3/2)
            let v0 = (&u * &base.powf(1.5)?).scale(SQRT_2 / 2.0);
            let w = &f - &(&v0 * &g);
            Ok((ExpansionVariable::SqrtA, v0, w))
        }
        (TrialFamily::ExpEven, _) => {
            let a = TruncatedSeries::identity(order);
            let [j0, j1, j2, j3] = exp_family_moments(shape, order);
            // <phi|f|phi> = J0 + 2a J1 + a^2 J2 and <phi|phi> = 5/(4a)
            let m = &(&j0 + &(&a * &j1).scale(2.0)) + &j2.shift_up(2);
            let dm = &(&a * &j2).scale(-2.0) - &j3.shift_up(2).scale(2.0);
            let f = TruncatedSeries::monomial(0.1, 2, order);
            let g = (&a * &m).scale(0.8);
            let dg = (&m + &(&a * &dm)).scale(0.8);
            let df = a.scale(0.2);
            let v0 = df.div(&dg)?;
            let w = &f - &(&v0 * &g);
            Ok((ExpansionVariable::A, v0, w))
        }
        (TrialFamily::HarmOdd | TrialFamily::ExpOdd, _) => Err(Error::Unsupported(format!(
            "{family} bounds an excited state with a finite threshold; it has no shallow-well series"
        ))),
        (TrialFamily::HarmEven, WellShape::Square { .. }) => Err(Error::Unsupported(
            "harmonic shallow series is only available for the Gaussian well".into(),
        )),
    }
}

/// Shallow-well series of the optimized energy of `family` on `shape`.
pub fn shallow_expansion_on(family: TrialFamily, shape: WellShape, order: usize) -> Result<ShallowSeries> {
    if order < 2 {
        return Err(Error::InvalidOrder {
            order,
            reason: "the expansion starts at v0^2".into(),
        });
    }
    let (variable, v0_of_u, w_of_u) = curve_series(family, shape, order)?;
    let u_of_v0 = v0_of_u.revert()?;
    let series = w_of_u.compose(&u_of_v0)?;
    Ok(ShallowSeries {
        label: family.name().to_string(),
        series,
        trace: Some(PipelineTrace {
            variable,
            v0_of_u,
            u_of_v0,
            w_of_u,
        }),
    })
}

/// Shallow-well series for the Gaussian well.
pub fn shallow_expansion(family: TrialFamily, order: usize) -> Result<ShallowSeries> {
    shallow_expansion_on(family, WellShape::Gaussian, order)
}

/// Exact ground-state series of the Gaussian well through `v0^5`
/// (stored constants).
pub fn reference_exact_shallow() -> ShallowSeries {
    let s3 = 3f64.sqrt();
    let coeffs = vec![
        0.0,
        0.0,
        -PI / 2.0,
        SQRT_2 * PI,
        -PI * (2.0 * PI + 3.0 * s3 + 3.0) / 3.0,
        SQRT_2 * PI * (2.0 * PI + 3.0 * s3) / 3.0,
    ];
    ShallowSeries {
        label: "exact".into(),
        series: TruncatedSeries::new(coeffs),
        trace: None,
    }
}

/// `E ~ A v0 + B sqrt(v0) + C`, with the optimized-parameter ansatz
/// `a ~ sqrt(2 v0)/2 + a1 + a2/sqrt(v0)` when it applies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeepExpansion {
    pub linear: f64,
    pub sqrt: f64,
    pub constant: f64,
    pub a1: Option<f64>,
    pub a2: Option<f64>,
}

/// Harmonic-oscillator expansion of the exact levels, state `n`.
pub fn reference_exact_deep(n: usize) -> DeepExpansion {
    let nf = n as f64;
    DeepExpansion {
        linear: -1.0,
        sqrt: (nf + 0.5) * SQRT_2,
        constant: -3.0 / 16.0 * (1.0 + 2.0 * nf + 2.0 * nf * nf),
        a1: None,
        a2: None,
    }
}

/// Analytic deep-well coefficients of the harmonic families.
pub fn deep_expansion_analytic(family: TrialFamily) -> Result<DeepExpansion> {
    match family {
        TrialFamily::HarmEven => Ok(DeepExpansion {
            linear: -1.0,
            sqrt: SQRT_2 / 2.0,
            constant: -3.0 / 16.0,
            a1: Some(-3.0 / 8.0),
            a2: Some(3.0 * SQRT_2 / 128.0),
        }),
        TrialFamily::HarmOdd => Ok(DeepExpansion {
            linear: -1.0,
            sqrt: 3.0 * SQRT_2 / 2.0,
            constant: -15.0 / 16.0,
            a1: Some(-5.0 / 8.0),
            a2: Some(-5.0 * SQRT_2 / 128.0),
        }),
        _ => Err(Error::Unsupported(format!(
            "{family} has no closed deep-well expansion"
        ))),
    }
}

/// Polynomial extrapolation (Neville) of samples `(s_i, y_i)` to `s = 0`.
pub fn extrapolate_to_zero(s: &[f64], y: &[f64]) -> f64 {
    assert_eq!(s.len(), y.len());
    let mut p = y.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (s[i + m] * p[i] - s[i] * p[i + 1]) / (s[i + m] - s[i]);
        }
    }
    p[0]
}

/// The `v0` ladder used by the deep-well fit: half-decade steps.
pub fn deep_ladder(min_exp: f64, max_exp: f64) -> Vec<f64> {
    let steps = ((max_exp - min_exp) * 2.0).round() as usize;
    (0..=steps).map(|i| 10f64.powf(min_exp + 0.5 * i as f64)).collect()
}

/// Coefficients recovered by successive limits over a ladder of `v0` values,
/// each limit taken by extrapolating in `s = v0^(-1/2)` to zero.
pub fn sequential_limits(v0: &[f64], a_opt: &[f64], w_opt: &[f64]) -> DeepExpansion {
    let s: Vec<f64> = v0.iter().map(|v| 1.0 / v.sqrt()).collect();
    let ratio: Vec<f64> = w_opt.iter().zip(v0).map(|(w, v)| w / v).collect();
    let linear = extrapolate_to_zero(&s, &ratio);
    let r1: Vec<f64> = w_opt.iter().zip(v0).map(|(w, v)| (w - linear * v) / v.sqrt()).collect();
    let sqrt = extrapolate_to_zero(&s, &r1);
    let r2: Vec<f64> = w_opt
        .iter()
        .zip(v0)
        .map(|(w, v)| w - linear * v - sqrt * v.sqrt())
        .collect();
    let constant = extrapolate_to_zero(&s, &r2);

    let shifted: Vec<f64> = a_opt.iter().zip(v0).map(|(a, v)| a - (2.0 * v).sqrt() / 2.0).collect();
    let a1 = extrapolate_to_zero(&s, &shifted);
    let scaled: Vec<f64> = shifted.iter().zip(v0).map(|(d, v)| (d - a1) * v.sqrt()).collect();
    let a2 = extrapolate_to_zero(&s, &scaled);
    DeepExpansion {
        linear,
        sqrt,
        constant,
        a1: Some(a1),
        a2: Some(a2),
    }
}

/// Largest relative disagreement between two expansions over `A, B, C`.
fn max_relative_gap(x: &DeepExpansion, y: &DeepExpansion) -> f64 {
    [(x.linear, y.linear), (x.sqrt, y.sqrt), (x.constant, y.constant)]
        .iter()
        .map(|(p, q)| (p - q).abs() / q.abs())
        .fold(0.0, f64::max)
}

/// Agreement required between extracted coefficients: four significant digits.
pub const DEEP_FIT_RELATIVE_TOLERANCE: f64 = 5e-5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeepFit {
    /// Analytic coefficients.
    pub expansion: DeepExpansion,
    /// Sequential-limit estimate from the full ladder.
    pub fitted: DeepExpansion,
    /// Estimate with the top decade dropped.
    pub fitted_lower: DeepExpansion,
    pub ladder: Vec<f64>,
    /// `|W_opt - (A v0 + B sqrt(v0) + C)|` at each ladder point.
    pub residuals: Vec<f64>,
}

/// Deep-well coefficients of a harmonic family, checked against a numeric
/// sequential-limit fit of optimized energies for `v0` in `[1e3, 1e7]`.
pub fn deep_expansion_fit(family: TrialFamily) -> Result<DeepFit> {
    let expansion = deep_expansion_analytic(family)?;
    let ladder = deep_ladder(3.0, 7.0);
    let mut a_opt = Vec::with_capacity(ladder.len());
    let mut w_opt = Vec::with_capacity(ladder.len());
    for &v0 in &ladder {
        let o = optimize_parameter(family, WellShape::Gaussian, v0)?;
        a_opt.push(o.a);
        w_opt.push(o.w);
    }
    let fitted = sequential_limits(&ladder, &a_opt, &w_opt);
    let top = ladder.len() - 2;
    let fitted_lower = sequential_limits(&ladder[..top], &a_opt[..top], &w_opt[..top]);
    let residuals = ladder
        .iter()
        .zip(&w_opt)
        .map(|(v, w)| (w - (expansion.linear * v + expansion.sqrt * v.sqrt() + expansion.constant)).abs())
        .collect();

    let stability = max_relative_gap(&fitted, &fitted_lower);
    let accuracy = max_relative_gap(&fitted, &expansion);
    if stability > DEEP_FIT_RELATIVE_TOLERANCE || accuracy > DEEP_FIT_RELATIVE_TOLERANCE {
        return Err(Error::NonConvergence {
            operation: "deep_expansion_fit",
            detail: format!(
                "{family}: fitted (A, B, C) = ({}, {}, {}) vs analytic ({}, {}, {}); \
                 decade-to-decade change {stability:e}",
                fitted.linear, fitted.sqrt, fitted.constant, expansion.linear, expansion.sqrt, expansion.constant
            ),
        });
    }
    Ok(DeepFit {
        expansion,
        fitted,
        fitted_lower,
        ladder,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn harm_even_series() {
        let s = shallow_expansion(TrialFamily::HarmEven, 10).unwrap().series;
        let expected = [0.0, 0.0, -1.0, 0.0, 4.0, 0.0, -48.0, 0.0, 832.0, 0.0, -17408.0];
        for (k, &e) in expected.iter().enumerate() {
            if e == 0.0 {
                assert!(s.coeff(k).abs() < 1e-9, "c{k} = {}", s.coeff(k));
            } else {
                assert!(rel(s.coeff(k), e) < 1e-10, "c{k} = {}", s.coeff(k));
            }
        }
    }

    #[test]
    fn exp_even_series_and_trace() {
        let out = shallow_expansion(TrialFamily::ExpEven, 5).unwrap();
        let s = &out.series;
        let pi2 = PI * PI;
        assert!(rel(s.coeff(2), -2.0 * PI / 5.0) < 1e-12);
        assert!(s.coeff(3).abs() < 1e-12);
        assert!(rel(s.coeff(4), 8.0 * pi2 / 5.0) < 1e-12);
        assert!(rel(s.coeff(5), -64.0 * pi2 / 15.0) < 1e-12);
        let trace = out.trace.unwrap();
        assert_eq!(trace.variable, ExpansionVariable::A);
        assert!(rel(trace.v0_of_u.coeff(1), 0.282_094_8) < 1e-6);
        assert!(rel(trace.u_of_v0.coeff(1), 3.544_907_7) < 1e-7);
    }

    #[test]
    fn gaussian_moment_routes_agree() {
        // erf/exp Maclaurin route versus direct moment expansion
        let order = 12;
        let via_erf = exp_family_moments(WellShape::Gaussian, order);
        let m = shape_moments(WellShape::Gaussian, order + 4);
        for (k, series) in via_erf.iter().enumerate() {
            let direct = laplace_moment_series(&m, k, order);
            for j in 0..=order {
                let (x, y) = (series.coeff(j), direct.coeff(j));
                assert!((x - y).abs() <= 1e-13 * y.abs().max(1.0), "k={k} j={j}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn odd_families_have_no_shallow_series() {
        assert!(matches!(
            shallow_expansion(TrialFamily::HarmOdd, 6),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            shallow_expansion(TrialFamily::ExpOdd, 6),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            shallow_expansion(TrialFamily::HarmEven, 1),
            Err(Error::InvalidOrder { .. })
        ));
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn exact_shallow_reference() {
        let s = reference_exact_shallow().series;
        assert!((s.coeff(2) + 1.570_796_3).abs() < 1e-7);
        assert!((s.coeff(3) - 4.442_882_9).abs() < 1e-7);
        assert!(s.coeff(2).abs() > 2.0 * PI / 5.0 && 2.0 * PI / 5.0 > 1.0);
    }

    #[test]
    fn exact_deep_reference() {
        let d0 = reference_exact_deep(0);
        assert_eq!((d0.linear, d0.sqrt, d0.constant), (-1.0, SQRT_2 / 2.0, -3.0 / 16.0));
        let d1 = reference_exact_deep(1);
        assert_eq!((d1.linear, d1.sqrt, d1.constant), (-1.0, 1.5 * SQRT_2, -15.0 / 16.0));
        assert_eq!(d1.constant / d0.constant, 5.0);
    }

    #[test]
    fn harmonic_deep_matches_exact() {
        for (family, n) in [(TrialFamily::HarmEven, 0), (TrialFamily::HarmOdd, 1)] {
            let d = deep_expansion_analytic(family).unwrap();
            let e = reference_exact_deep(n);
            assert_eq!((d.linear, d.sqrt, d.constant), (e.linear, e.sqrt, e.constant));
        }
        assert!(deep_expansion_analytic(TrialFamily::ExpEven).is_err());
    }

    #[test]
    fn neville_reproduces_polynomials() {
        let s = [0.5, 0.25, 0.125, 0.0625];
        let y: Vec<f64> = s.iter().map(|x| 3.0 - 2.0 * x + 0.5 * x * x * x).collect();
        assert!((extrapolate_to_zero(&s, &y) - 3.0).abs() < 1e-13);
    }
}
