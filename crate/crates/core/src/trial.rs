//! One-parameter trial functions and their Rayleigh quotients.
//!
//! For a trial function `phi(a, x)` the energy splits as
//! `W(a) = F(a) - v0 G(a)`, with `F` the kinetic expectation and `G` the
//! expectation of the well shape. Stationarity `F' = v0 G'` turns the
//! minimization into a parametric curve `a -> (v0(a), W(a))`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{self, Tolerance};
use crate::roots::{brent, geometric_grid, sign_changes};
use crate::special::{erf, erfcx};
use crate::wells::WellShape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrialFamily {
    /// `exp(-a x^2)` on the whole line.
    HarmEven,
    /// `x exp(-a x^2)` on the whole line.
    HarmOdd,
    /// `(1 + a x) exp(-a x)` on `x > 0`, even extension (`phi'(0) = 0`).
    ExpEven,
    /// `x exp(-a x)` on `x > 0`, odd extension (`phi(0) = 0`).
    ExpOdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    FullLine,
    HalfLine,
}

impl TrialFamily {
    pub const ALL: [TrialFamily; 4] = [
        TrialFamily::HarmEven,
        TrialFamily::HarmOdd,
        TrialFamily::ExpEven,
        TrialFamily::ExpOdd,
    ];

    pub fn parity(self) -> Parity {
        match self {
            TrialFamily::HarmEven | TrialFamily::ExpEven => Parity::Even,
            TrialFamily::HarmOdd | TrialFamily::ExpOdd => Parity::Odd,
        }
    }

    /// Index of the bound state this family bounds from above.
    pub fn target_state(self) -> usize {
        match self.parity() {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn support(self) -> Support {
        match self {
            TrialFamily::HarmEven | TrialFamily::HarmOdd => Support::FullLine,
            TrialFamily::ExpEven | TrialFamily::ExpOdd => Support::HalfLine,
        }
    }

    pub fn is_harmonic(self) -> bool {
        self.support() == Support::FullLine
    }

    /// Family of the given kind (`harmonic == true` for Gaussian-type
    /// functions) targeting `state`.
    pub fn for_state(state: usize, harmonic: bool) -> Result<Self> {
        match (state, harmonic) {
            (0, true) => Ok(TrialFamily::HarmEven),
            (1, true) => Ok(TrialFamily::HarmOdd),
            (0, false) => Ok(TrialFamily::ExpEven),
            (1, false) => Ok(TrialFamily::ExpOdd),
            _ => Err(Error::InvalidParameter(format!(
                "trial families only cover states 0 and 1, got {state}"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TrialFamily::HarmEven => "harm-even",
            TrialFamily::HarmOdd => "harm-odd",
            TrialFamily::ExpEven => "exp-even",
            TrialFamily::ExpOdd => "exp-odd",
        }
    }

    /// `[phi, dphi/dx, dphi/da, d2phi/(dx da)]` at `x >= 0`.
    fn derivatives(self, a: f64, x: f64) -> [f64; 4] {
        match self {
            TrialFamily::HarmEven => {
                let e = (-a * x * x).exp();
                [e, -2.0 * a * x * e, -x * x * e, (-2.0 * x + 2.0 * a * x * x * x) * e]
            }
            TrialFamily::HarmOdd => {
                let e = (-a * x * x).exp();
                let x2 = x * x;
                [
                    x * e,
                    (1.0 - 2.0 * a * x2) * e,
                    -x2 * x * e,
                    (-3.0 * x2 + 2.0 * a * x2 * x2) * e,
                ]
            }
            TrialFamily::ExpEven => {
                let e = (-a * x).exp();
                [
                    (1.0 + a * x) * e,
                    -a * a * x * e,
                    -a * x * x * e,
                    (-2.0 * a * x + a * a * x * x) * e,
                ]
            }
            TrialFamily::ExpOdd => {
                let e = (-a * x).exp();
                [x * e, (1.0 - a * x) * e, -x * x * e, (-2.0 * x + a * x * x) * e]
            }
        }
    }

    /// Natural length scale of `phi^2`.
    fn length_scale(self, a: f64) -> f64 {
        if self.is_harmonic() {
            1.0 / (2.0 * a).sqrt()
        } else {
            1.0 / (2.0 * a)
        }
    }
}

impl fmt::Display for TrialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TrialFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "harm-even" => Ok(TrialFamily::HarmEven),
            "harm-odd" => Ok(TrialFamily::HarmOdd),
            "exp-even" => Ok(TrialFamily::ExpEven),
            "exp-odd" => Ok(TrialFamily::ExpOdd),
            other => Err(Error::InvalidParameter(format!("unknown trial family '{other}'"))),
        }
    }
}

fn check_parameter(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "variational parameter must be positive, got {a}"
        )))
    }
}

/// Unnormalized trial function value.
pub fn trial_value(family: TrialFamily, a: f64, x: f64) -> Result<f64> {
    check_parameter(a)?;
    if family.support() == Support::HalfLine && x < 0.0 {
        return Err(Error::Domain { x });
    }
    let v = match family {
        TrialFamily::HarmEven => (-a * x * x).exp(),
        TrialFamily::HarmOdd => x * (-a * x * x).exp(),
        TrialFamily::ExpEven => (1.0 + a * x) * (-a * x).exp(),
        TrialFamily::ExpOdd => x * (-a * x).exp(),
    };
    Ok(v)
}

/// `F`, `G` and their derivatives with respect to `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VariationalComponents {
    pub f: f64,
    pub g: f64,
    pub df: f64,
    pub dg: f64,
}

impl VariationalComponents {
    pub fn energy(&self, v0: f64) -> f64 {
        self.f - v0 * self.g
    }
}

/// Components from adaptive quadrature of the defining integrals.
///
/// The kinetic term uses `<phi'|phi'>/2`. All integrals run over `x >= 0`,
/// which for the full-line families halves numerator and denominator alike.
pub fn quad_components(family: TrialFamily, shape: WellShape, a: f64) -> Result<VariationalComponents> {
    check_parameter(a)?;
    let tol = Tolerance::default();
    let scale = family.length_scale(a);
    // [N, K, N', K'] with N = <phi|phi>, K = <phi'|phi'>
    let [n, k, dn, dk] = quad::integrate_half_line(
        |x| {
            let [p, px, pa, pxa] = family.derivatives(a, x);
            [p * p, px * px, 2.0 * p * pa, 2.0 * px * pxa]
        },
        scale,
        tol,
    )?;
    let shape_integrand = |x: f64| {
        let [p, _, pa, _] = family.derivatives(a, x);
        let f = shape.value(x);
        [f * p * p, 2.0 * f * p * pa]
    };
    let [s, ds] = match shape {
        WellShape::Gaussian => quad::integrate_half_line(shape_integrand, scale.min(1.0), tol)?,
        WellShape::Square { half_width } => quad::integrate(shape_integrand, 0.0, half_width, tol)?,
    };
    Ok(VariationalComponents {
        f: k / (2.0 * n),
        g: s / n,
        df: (dk * n - k * dn) / (2.0 * n * n),
        dg: (ds * n - s * dn) / (n * n),
    })
}

/// `I_k(a) = int_0^inf x^k exp(-x^2 - 2 a x) dx` for `k = 0..=3`.
///
/// The recurrence `2 I_k + 2a I_{k-1} = (k-1) I_{k-2}` is run forward for
/// small `a` and backward (Miller) for `a >= 1`, where `I_k` is the minimal
/// solution and forward recursion cancels.
pub(crate) fn gaussian_exp_moments(a: f64) -> [f64; 4] {
    let i0 = 0.5 * PI.sqrt() * erfcx(a);
    if a < 1.0 {
        let i1 = 0.5 * (1.0 - 2.0 * a * i0);
        let i2 = 0.5 * (i0 - 2.0 * a * i1);
        let i3 = 0.5 * (2.0 * i1 - 2.0 * a * i2);
        return [i0, i1, i2, i3];
    }
    // Start index such that the dominant/minimal ratio product falls below 1e-18.
    let mut start = 4usize;
    let mut log_ratio = 0.0;
    while log_ratio > -42.0 && start < 5000 {
        let r = (a * a + 2.0 * start as f64).sqrt();
        log_ratio += ((r - a) / (r + a)).ln();
        start += 1;
    }
    let mut upper = 0.0; // I_{k}
    let mut lower = 1.0; // I_{k-1}
    let mut tail = [0.0f64; 4];
    let mut k = start + 1;
    while k >= 2 {
        // I_{k-2} = (2 I_k + 2a I_{k-1}) / (k - 1)
        let next = (2.0 * upper + 2.0 * a * lower) / (k - 1) as f64;
        upper = lower;
        lower = next;
        if lower.abs() < 1e-200 {
            upper *= 1e200;
            lower *= 1e200;
            tail.iter_mut().for_each(|t| *t *= 1e200);
        }
        let idx = k - 2;
        if idx < 4 {
            tail[idx] = lower;
        }
        if idx + 1 < 4 {
            tail[idx + 1] = upper;
        }
        k -= 1;
    }
    let norm = i0 / tail[0];
    [i0, tail[1] * norm, tail[2] * norm, tail[3] * norm]
}

/// Closed-form components for the Gaussian well.
pub fn closed_components(family: TrialFamily, a: f64) -> Result<VariationalComponents> {
    check_parameter(a)?;
    let c = match family {
        TrialFamily::HarmEven => {
            let b = 2.0 * a + 1.0;
            VariationalComponents {
                f: 0.5 * a,
                g: (2.0 * a / b).sqrt(),
                df: 0.5,
                dg: 1.0 / ((2.0 * a).sqrt() * b * b.sqrt()),
            }
        }
        TrialFamily::HarmOdd => {
            let b = 2.0 * a + 1.0;
            let ratio = 2.0 * a / b;
            VariationalComponents {
                f: 1.5 * a,
                g: ratio * ratio.sqrt(),
                df: 1.5,
                dg: 3.0 * (2.0 * a).sqrt() / (b * b * b.sqrt()),
            }
        }
        TrialFamily::ExpEven => {
            let [i0, i1, i2, i3] = gaussian_exp_moments(a);
            let m = i0 + 2.0 * a * i1 + a * a * i2;
            let dm = -2.0 * a * i2 - 2.0 * a * a * i3;
            VariationalComponents {
                f: a * a / 10.0,
                g: 0.8 * a * m,
                df: a / 5.0,
                dg: 0.8 * (m + a * dm),
            }
        }
        TrialFamily::ExpOdd => {
            let [_, _, i2, i3] = gaussian_exp_moments(a);
            VariationalComponents {
                f: 0.5 * a * a,
                g: 4.0 * a * a * a * i2,
                df: a,
                dg: 12.0 * a * a * i2 - 8.0 * a * a * a * i3,
            }
        }
    };
    Ok(c)
}

/// Closed forms where available (Gaussian well), quadrature otherwise.
pub fn components(family: TrialFamily, shape: WellShape, a: f64) -> Result<VariationalComponents> {
    match shape {
        WellShape::Gaussian => closed_components(family, a),
        WellShape::Square { .. } => quad_components(family, shape, a),
    }
}

/// The explicit `(v0(a), W(a))` expressions for the Gaussian well, written
/// out term by term. These are an independent transcription of the same
/// curve that [`parametric_point`] assembles from components; the erf-based
/// ones lose accuracy to cancellation once `a` is much above 3.
pub fn explicit_curve(family: TrialFamily, a: f64) -> Result<(f64, f64)> {
    check_parameter(a)?;
    let sqrt_pi = PI.sqrt();
    let a2 = a * a;
    let out = match family {
        TrialFamily::HarmEven => {
            let v0 = 2f64.sqrt() * a.sqrt() * (2.0 * a + 1.0).powf(1.5) / 2.0;
            (v0, -a * (4.0 * a + 1.0) / 2.0)
        }
        TrialFamily::HarmOdd => {
            let v0 = 2f64.sqrt() * (2.0 * a + 1.0).sqrt() * (4.0 * a2 + 4.0 * a + 1.0) / (4.0 * a.sqrt());
            (v0, -a * (8.0 * a2 + 2.0 * a - 1.0) / (2.0 * (2.0 * a + 1.0)))
        }
        TrialFamily::ExpEven => {
            // exp(a^2) (1 - erf a) written as erfcx to stay finite
            let tail = if a < 2.0 { (a2).exp() * (1.0 - erf(a)) } else { erfcx(a) };
            let a4 = a2 * a2;
            let a6 = a4 * a2;
            let den = sqrt_pi * tail * (4.0 * a6 + 4.0 * a4 - 5.0 * a2 + 2.0) - 2.0 * a * (2.0 * a4 + a2 - 2.0);
            let v0 = a / den;
            let w_num = sqrt_pi * (-tail) * (4.0 * a6 + a2 - 2.0) + 2.0 * a * (2.0 * a4 - a2 + 2.0);
            let w_den = sqrt_pi * (-tail) * (4.0 * a6 + 4.0 * a4 - 5.0 * a2 + 2.0) + 2.0 * a * (2.0 * a4 + a2 - 2.0);
            (v0, a2 * w_num / (10.0 * w_den))
        }
        TrialFamily::ExpOdd => {
            let tail = if a < 2.0 { (a2).exp() * (1.0 - erf(a)) } else { erfcx(a) };
            let a4 = a2 * a2;
            let den = sqrt_pi * tail * (4.0 * a4 + 12.0 * a2 + 3.0) - 2.0 * a * (2.0 * a2 + 5.0);
            let v0 = 1.0 / (a * den);
            let w_num = sqrt_pi * (-tail) * (4.0 * a4 + 8.0 * a2 + 1.0) + 2.0 * a * (2.0 * a2 + 3.0);
            let w_den = sqrt_pi * (-tail) * (4.0 * a4 + 12.0 * a2 + 3.0) + 2.0 * a * (2.0 * a2 + 5.0);
            (v0, a2 * w_num / (2.0 * w_den))
        }
    };
    Ok(out)
}

/// A point `(a, v0(a), W(a))` on the stationarity curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParametricPoint {
    pub a: f64,
    pub v0: f64,
    pub w: f64,
}

pub fn parametric_point_on(family: TrialFamily, shape: WellShape, a: f64) -> Result<ParametricPoint> {
    let c = components(family, shape, a)?;
    if c.dg == 0.0 || !c.dg.is_finite() {
        return Err(Error::DegeneratePoint { a });
    }
    let v0 = c.df / c.dg;
    Ok(ParametricPoint {
        a,
        v0,
        w: c.f - v0 * c.g,
    })
}

/// Parametric point for the Gaussian well.
pub fn parametric_point(family: TrialFamily, a: f64) -> Result<ParametricPoint> {
    parametric_point_on(family, WellShape::Gaussian, a)
}

/// Optimized variational parameter and the bound it yields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Optimum {
    pub a: f64,
    pub w: f64,
}

const SCAN_POINTS_PER_DECADE: f64 = 40.0;

fn scan_range(v0: f64) -> (f64, f64) {
    let lo = 1e-4f64.min(0.1 * v0 * v0);
    let hi = 1e3f64.max(10.0 * v0.sqrt());
    (lo, hi)
}

fn scan_grid(lo: f64, hi: f64) -> Vec<f64> {
    let points = ((hi / lo).log10() * SCAN_POINTS_PER_DECADE).ceil() as usize + 1;
    geometric_grid(lo, hi, points)
}

/// Minimize `W(a) = F(a) - v0 G(a)` over `a > 0`.
///
/// Stationary points are bracketed on a geometric grid and refined with
/// Brent's method; among the local minima the one with the lowest `W` wins.
pub fn optimize_parameter(family: TrialFamily, shape: WellShape, v0: f64) -> Result<Optimum> {
    if !(v0 > 0.0 && v0.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "well strength must be positive, got {v0}"
        )));
    }
    let (lo, hi) = scan_range(v0);
    let grid = scan_grid(lo, hi);
    let slope = |a: f64| -> Result<f64> {
        let c = components(family, shape, a)?;
        Ok(c.df - v0 * c.dg)
    };
    let values = grid.iter().map(|&a| slope(a)).collect::<Result<Vec<_>>>()?;
    let mut best: Option<Optimum> = None;
    for (x0, x1) in sign_changes(&grid, &values) {
        // W' going from negative to positive marks a minimum
        let left = slope(x0)?;
        if left >= 0.0 {
            continue;
        }
        let a = brent(|a| slope(a).unwrap_or(f64::NAN), x0, x1, 1e-14, 0.0)?;
        let w = components(family, shape, a)?.energy(v0);
        if best.is_none_or(|b| w < b.w) {
            best = Some(Optimum { a, w });
        }
    }
    best.ok_or_else(|| Error::NonConvergence {
        operation: "optimize_parameter",
        detail: format!(
            "{family}: dF - v0 dG has no minimum in a in [{lo:e}, {hi:e}] at v0 = {v0} \
             (slope {:.3e} at a = {lo:e}, {:.3e} at a = {hi:e})",
            values[0],
            values[values.len() - 1]
        ),
    })
}

/// Parameter and strength at which the variational energy reaches zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalResult {
    pub a_c: f64,
    pub v0_c: f64,
}

pub fn variational_critical_on(family: TrialFamily, shape: WellShape) -> Result<CriticalResult> {
    let grid = scan_grid(1e-4, 1e3);
    let energy = |a: f64| parametric_point_on(family, shape, a).map(|p| p.w);
    let values = grid.iter().map(|&a| energy(a)).collect::<Result<Vec<_>>>()?;
    // W > 0 below threshold, W < 0 once the state binds
    let bracket = sign_changes(&grid, &values)
        .into_iter()
        .find(|&(x0, _)| energy(x0).is_ok_and(|w| w > 0.0))
        .ok_or_else(|| Error::NoThreshold(format!("{family} energy never changes sign on {}", shape.name())))?;
    let a_c = brent(|a| energy(a).unwrap_or(f64::NAN), bracket.0, bracket.1, 1e-15, 0.0)?;
    let v0_c = parametric_point_on(family, shape, a_c)?.v0;
    Ok(CriticalResult { a_c, v0_c })
}

/// Variational critical strength for the Gaussian well.
pub fn variational_critical(family: TrialFamily) -> Result<CriticalResult> {
    variational_critical_on(family, WellShape::Gaussian)
}
