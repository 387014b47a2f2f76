//! Error-function primitives.
//!
//! `erf` and `erfc` come from the fdlibm rational approximations shipped in
//! `libm`. `erfcx` (the scaled complement `exp(x^2) erfc(x)`) switches to a
//! continued fraction for large arguments, where the unscaled product would
//! overflow or lose digits.

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Scaled complementary error function `exp(x^2) * erfc(x)` for `x >= 0`.
pub fn erfcx(x: f64) -> f64 {
    assert!(x >= 0.0, "erfcx is only needed on x >= 0");
    if x < 2.0 {
        return (x * x).exp() * libm::erfc(x);
    }
    // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    // evaluated with the modified Lentz algorithm.
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for j in 1..500 {
        let aj = j as f64 * 0.5;
        d = x + aj * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + aj / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / (f * std::f64::consts::PI.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erfcx_branches_agree_at_switch() {
        let lo = (4.0f64).exp() * libm::erfc(2.0);
        assert!((erfcx(2.0) - lo).abs() / lo < 1e-14);
        for &x in &[2.5f64, 3.0, 5.0] {
            let direct = (x * x).exp() * libm::erfc(x);
            assert!((erfcx(x) - direct).abs() / direct < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn erfcx_large_argument_asymptotics() {
        // erfcx(x) ~ 1/(x sqrt(pi)) (1 - 1/(2x^2) + 3/(4x^4) - 15/(8x^6))
        let x = 1e3;
        let s = 1.0 / (x * x);
        let asym = (1.0 - s / 2.0 + 0.75 * s * s - 1.875 * s * s * s) / (x * std::f64::consts::PI.sqrt());
        assert!((erfcx(x) - asym).abs() / asym < 1e-15);
    }

    #[test]
    fn erf_is_odd() {
        for &x in &[0.1, 0.7, 1.3, 3.0] {
            assert_eq!(erf(-x), -erf(x));
        }
    }
}
