//! Adaptive Gauss-Kronrod (7/15) quadrature for vector-valued integrands.
//!
//! All components share one subdivision; the interval with the largest error
//! estimate (relative to the component's magnitude) is bisected next.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-13,
            abs: 1e-300,
            max_intervals: 4000,
        }
    }
}

struct Segment<const N: usize> {
    lo: f64,
    hi: f64,
    value: [f64; N],
    error: [f64; N],
}

fn gk15<const N: usize, F>(f: &F, lo: f64, hi: f64) -> Segment<N>
where
    F: Fn(f64) -> [f64; N],
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = [0.0; N];
    let mut gauss = [0.0; N];
    for k in 0..N {
        kronrod[k] = fc[k] * WGK[7];
        gauss[k] = fc[k] * WG[3];
    }
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        for k in 0..N {
            let s = f1[k] + f2[k];
            kronrod[k] += WGK[j] * s;
            if j % 2 == 1 {
                gauss[k] += WG[j / 2] * s;
            }
        }
    }
    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for k in 0..N {
        value[k] = kronrod[k] * half;
        error[k] = ((kronrod[k] - gauss[k]) * half).abs();
    }
    Segment { lo, hi, value, error }
}

fn sum_components<const N: usize>(segments: &[Segment<N>]) -> ([f64; N], [f64; N]) {
    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for s in segments {
        for k in 0..N {
            value[k] += s.value[k];
            error[k] += s.error[k];
        }
    }
    (value, error)
}

/// Integrate `f` over the finite interval `[lo, hi]`.
pub fn integrate<const N: usize, F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<[f64; N]>
where
    F: Fn(f64) -> [f64; N],
{
    let mut segments = vec![gk15(&f, lo, hi)];
    loop {
        let (value, error) = sum_components(&segments);
        let converged = (0..N).all(|k| error[k] <= tol.abs.max(tol.rel * value[k].abs()));
        if converged {
            return Ok(value);
        }
        if segments.len() >= tol.max_intervals {
            let worst = (0..N)
                .map(|k| error[k] / value[k].abs().max(tol.abs))
                .fold(0.0, f64::max);
            return Err(Error::Quadrature {
                requested: tol.rel,
                achieved: worst,
            });
        }
        // Bisect the segment with the worst relative contribution.
        let scale: Vec<f64> = (0..N).map(|k| value[k].abs().max(tol.abs)).collect();
        let (idx, _) = segments
            .iter()
            .enumerate()
            .map(|(i, s)| (i, (0..N).map(|k| s.error[k] / scale[k]).fold(0.0, f64::max)))
            .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        let seg = segments.swap_remove(idx);
        let mid = 0.5 * (seg.lo + seg.hi);
        if mid <= seg.lo || mid >= seg.hi {
            return Err(Error::Quadrature {
                requested: tol.rel,
                achieved: (0..N).map(|k| error[k] / scale[k]).fold(0.0, f64::max),
            });
        }
        segments.push(gk15(&f, seg.lo, mid));
        segments.push(gk15(&f, mid, seg.hi));
    }
}

/// Integrate `f` over `[0, inf)` using `x = scale * t / (1 - t)`.
pub fn integrate_half_line<const N: usize, F>(f: F, scale: f64, tol: Tolerance) -> Result<[f64; N]>
where
    F: Fn(f64) -> [f64; N],
{
    let mapped = |t: f64| {
        let one_minus = 1.0 - t;
        if one_minus <= 0.0 {
            return [0.0; N];
        }
        let x = scale * t / one_minus;
        let jac = scale / (one_minus * one_minus);
        let mut v = f(x);
        for item in v.iter_mut() {
            let scaled = *item * jac;
            *item = if scaled.is_finite() { scaled } else { 0.0 };
        }
        v
    };
    integrate(mapped, 0.0, 1.0, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let [v] = integrate(|x| [x.powi(5) - 3.0 * x * x], 0.0, 2.0, Tolerance::default()).unwrap();
        assert!((v - (64.0 / 6.0 - 8.0)).abs() < 1e-13);
    }

    #[test]
    fn gaussian_half_line() {
        let [a, b] =
            integrate_half_line(|x| [(-x * x).exp(), x * x * (-x * x).exp()], 1.0, Tolerance::default()).unwrap();
        assert!((a - PI.sqrt() / 2.0).abs() < 1e-14);
        assert!((b - PI.sqrt() / 4.0).abs() < 1e-14);
    }

    #[test]
    fn reports_failure_with_estimate() {
        let tol = Tolerance {
            rel: 1e-15,
            abs: 1e-300,
            max_intervals: 3,
        };
        let err = integrate(|x: f64| [1.0 / x.sqrt()], 0.0, 1.0, tol).unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
    }
}
