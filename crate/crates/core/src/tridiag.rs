//! Eigenvalues of symmetric tridiagonal matrices by Sturm-sequence bisection.

/// Number of eigenvalues strictly below `lambda` for the matrix with
/// diagonal `diag` and constant off-diagonal `off`.
pub fn count_below(diag: &[f64], off: f64, lambda: f64) -> usize {
    let off2 = off * off;
    let mut count = 0;
    let mut q = 1.0;
    for (i, d) in diag.iter().enumerate() {
        q = if i == 0 { d - lambda } else { d - lambda - off2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + off.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest eigenvalue (0-based), located to absolute width `tol`.
pub fn kth_eigenvalue(diag: &[f64], off: f64, k: usize, tol: f64) -> f64 {
    assert!(k < diag.len(), "matrix has only {} eigenvalues", diag.len());
    // Gershgorin bounds
    let spread = 2.0 * off.abs();
    let mut lo = diag.iter().fold(f64::INFINITY, |m, d| m.min(*d)) - spread;
    let mut hi = diag.iter().fold(f64::NEG_INFINITY, |m, d| m.max(*d)) + spread;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn discrete_laplacian_spectrum() {
        // eigenvalues of tridiag(-1, 2, -1) of size n: 2 - 2 cos(j pi / (n + 1))
        let n = 50;
        let diag = vec![2.0; n];
        for k in 0..3 {
            let exact = 2.0 - 2.0 * (((k + 1) as f64) * PI / (n as f64 + 1.0)).cos();
            assert!((kth_eigenvalue(&diag, -1.0, k, 1e-14) - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn counts_are_monotone() {
        let diag: Vec<f64> = (0..20).map(|i| i as f64 * 0.3).collect();
        let mut last = 0;
        for j in 0..100 {
            let c = count_below(&diag, 0.4, -1.0 + j as f64 * 0.1);
            assert!(c >= last);
            last = c;
        }
        assert_eq!(last, 20);
    }
}
