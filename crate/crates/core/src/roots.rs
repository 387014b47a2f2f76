//! Bracketing root finders.

use crate::error::{Error, Result};

/// Brent's method on a bracket `[lo, hi]` where `f` changes sign.
///
/// Terminates once the bracket is narrower than `xtol_abs + xtol_rel * |x|`.
pub fn brent<F>(f: F, lo: f64, hi: f64, xtol_rel: f64, xtol_abs: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NonConvergence {
            operation: "brent",
            detail: format!("no sign change on [{lo}, {hi}]: f = ({fa:e}, {fb:e})"),
        });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..300 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * (xtol_abs + xtol_rel * b.abs());
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(Error::NonConvergence {
        operation: "brent",
        detail: format!("iteration limit reached near x = {b}"),
    })
}

/// Bisect on a monotone predicate: returns `(lo, hi)` with `pred(lo) == false`,
/// `pred(hi) == true` and `hi - lo <= width`.
pub fn bisect_predicate<P>(mut pred: P, mut lo: f64, mut hi: f64, width: f64) -> (f64, f64)
where
    P: FnMut(f64) -> bool,
{
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Log-spaced sample points on `[lo, hi]`, both ends included.
pub fn geometric_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let ratio = (hi / lo).ln() / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo * (ratio * i as f64).exp()
            }
        })
        .collect()
}

/// Adjacent grid pairs across which `values` change sign.
pub fn sign_changes(grid: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    grid.windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| v[0].is_finite() && v[1].is_finite() && v[0].signum() != v[1].signum())
        .map(|(x, _)| (x[0], x[1]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_sqrt2() {
        let r = brent(|x| x * x - 2.0, 0.0, 2.0, 1e-15, 0.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn brent_rejects_unbracketed() {
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 0.0).is_err());
    }

    #[test]
    fn bisection_on_predicate() {
        let (lo, hi) = bisect_predicate(|x| x > 0.3, 0.0, 1.0, 1e-12);
        assert!(lo <= 0.3 && hi > 0.3 && hi - lo <= 1e-12);
    }

    #[test]
    fn grid_endpoints() {
        let g = geometric_grid(1e-4, 1e3, 8);
        assert_eq!(g[0], 1e-4);
        assert_eq!(g[7], 1e3);
        assert!((g[1] - 1e-3).abs() < 1e-15);
    }
}
