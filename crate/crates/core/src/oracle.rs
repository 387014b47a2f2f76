//! Numerically exact reference energies.
//!
//! Two independent solvers cover the Gaussian well: Numerov shooting on the
//! half line with parity start conditions, and Richardson-extrapolated
//! finite-difference diagonalization on `[-L, L]`. The finite square box is
//! solved from its transcendental matching condition. On top of these sit
//! threshold searches, variational curve crossings and shallow-regime fits.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{bisect_predicate, brent};
use crate::trial::{optimize_parameter, Parity, TrialFamily};
use crate::tridiag;
use crate::wells::{Potential, WellShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Numerov,
    Diagonalization,
    Transcendental,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Grid step (zero for the transcendental solver).
    pub step: f64,
    /// Half-length of the integration domain.
    pub half_length: f64,
    /// Solver-specific residual: log-derivative mismatch at the matching
    /// point (Numerov), Richardson correction (diagonalization), or the
    /// normalized matching-condition residual (transcendental).
    pub residual: f64,
    /// Interior sign changes of the eigenfunction on the full line.
    pub nodes: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundStateResult {
    pub n: usize,
    pub energy: f64,
    pub decay_rate: f64,
    pub solver: Solver,
    pub diagnostics: Diagnostics,
}

impl BoundStateResult {
    fn new(n: usize, energy: f64, solver: Solver, diagnostics: Diagnostics) -> Self {
        BoundStateResult {
            n,
            energy,
            decay_rate: (-2.0 * energy).sqrt(),
            solver,
            diagnostics,
        }
    }
}

fn parity_of(n: usize) -> Parity {
    if n.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

// ---------------------------------------------------------------------------
// Numerov shooting

/// Upper limit on the shooting domain. The tail is matched to the exact
/// discrete decaying solution, so the cap costs no accuracy once the
/// potential has died off.
const NUMEROV_MAX_LENGTH: f64 = 2000.0;

#[derive(Debug, Clone, Copy)]
pub struct NumerovOptions {
    /// Multiplier on the adaptive domain half-length.
    pub length_factor: f64,
    /// Step override; default `min(0.01, 1/(20 sqrt(2 v0)))`.
    pub step: Option<f64>,
}

impl Default for NumerovOptions {
    fn default() -> Self {
        NumerovOptions {
            length_factor: 1.0,
            step: None,
        }
    }
}

struct Grid<'a> {
    pot: &'a Potential,
    energy: f64,
    step: f64,
}

impl Grid<'_> {
    /// `Q(x)` in `psi'' = Q psi`.
    fn q(&self, x: f64) -> f64 {
        2.0 * (self.pot.value(x) - self.energy)
    }

    fn weight(&self, x: f64) -> f64 {
        1.0 - self.step * self.step * self.q(x) / 12.0
    }

    /// Ratio `psi_{i+1}/psi_i` of the decaying discrete solution where `Q = alpha^2`.
    fn tail_ratio(&self) -> f64 {
        let t = self.step * self.step * (-2.0 * self.energy).max(0.0) / 12.0;
        let c = 2.0 * (1.0 + 5.0 * t) / (1.0 - t);
        2.0 / (c + (c * c - 4.0).max(0.0).sqrt())
    }

    fn start(&self, parity: Parity) -> (f64, f64) {
        match parity {
            // psi_{-1} = psi_1 folded into the first Numerov step
            Parity::Even => {
                let h2 = self.step * self.step;
                (1.0, (1.0 + 5.0 * h2 * self.q(0.0) / 12.0) / self.weight(self.step))
            }
            Parity::Odd => (0.0, self.step),
        }
    }
}

fn numerov_step(grid: &Grid, i: usize, prev: f64, cur: f64) -> f64 {
    let h = grid.step;
    let h2 = h * h;
    let x = i as f64 * h;
    (2.0 * (1.0 + 5.0 * h2 * grid.q(x) / 12.0) * cur - grid.weight(x - h) * prev) / grid.weight(x + h)
}

/// Eigenvalues of the given parity strictly below `grid.energy`, from the
/// node count of the outward solution on `(0, L]` plus the sign of the tail
/// mismatch at `L`.
fn count_below(grid: &Grid, parity: Parity, steps: usize) -> usize {
    let (mut prev, mut cur) = grid.start(parity);
    let mut nodes = 0;
    for i in 1..steps {
        let next = numerov_step(grid, i, prev, cur);
        if next != 0.0 && cur != 0.0 && next.signum() != cur.signum() {
            nodes += 1;
        }
        prev = cur;
        cur = next;
        if cur.abs() > 1e150 {
            prev /= 1e150;
            cur /= 1e150;
        }
    }
    let mismatch = cur - grid.tail_ratio() * prev;
    nodes + usize::from(cur * mismatch < 0.0)
}

fn numerov_step_size(pot: &Potential, opts: &NumerovOptions) -> f64 {
    opts.step
        .unwrap_or_else(|| 0.01f64.min(1.0 / (20.0 * (2.0 * pot.strength()).sqrt())))
}

fn numerov_length(pot: &Potential, energy: f64, opts: &NumerovOptions) -> f64 {
    let alpha = (-2.0 * energy).max(0.0).sqrt();
    let base = if alpha > 0.0 {
        (10.0 / alpha).min(NUMEROV_MAX_LENGTH)
    } else {
        NUMEROV_MAX_LENGTH
    };
    let reach = match pot.shape() {
        WellShape::Gaussian => 8.0,
        WellShape::Square { half_width } => 8.0f64.max(2.0 * half_width),
    };
    opts.length_factor * base.max(reach)
}

fn count_at(pot: &Potential, energy: f64, parity: Parity, opts: &NumerovOptions) -> usize {
    let step = numerov_step_size(pot, opts);
    let length = numerov_length(pot, energy, opts);
    let steps = (length / step).ceil() as usize;
    count_below(&Grid { pot, energy, step }, parity, steps)
}

/// Whether state `n` is bound: the zero-energy count reaches it.
fn numerov_binds(pot: &Potential, n: usize, opts: &NumerovOptions) -> bool {
    count_at(pot, 0.0, parity_of(n), opts) > n / 2
}

/// Outward and inward solutions joined at the classical turning point.
/// Returns `(full-line nodes, log-derivative mismatch)`.
fn matched_solution(pot: &Potential, energy: f64, parity: Parity, opts: &NumerovOptions) -> (usize, f64) {
    let step = numerov_step_size(pot, opts);
    let length = numerov_length(pot, energy, opts);
    let steps = (length / step).ceil() as usize;
    let grid = Grid { pot, energy, step };

    let mut turning = (0..steps)
        .find(|&i| pot.value(i as f64 * step) >= energy)
        .unwrap_or(steps / 2);
    turning = turning.clamp(2, steps - 2);

    let mut outward = vec![0.0; turning + 2];
    let (a, b) = grid.start(parity);
    outward[0] = a;
    outward[1] = b;
    for i in 1..=turning {
        outward[i + 1] = numerov_step(&grid, i, outward[i - 1], outward[i]);
    }

    // Inward from the tail, seeded with the decaying discrete solution.
    let mut inward = vec![0.0; steps + 1];
    inward[steps] = grid.tail_ratio();
    inward[steps - 1] = 1.0;
    for i in (turning - 1..steps - 1).rev() {
        let x = (i + 1) as f64 * step;
        let h2 = step * step;
        inward[i] = (2.0 * (1.0 + 5.0 * h2 * grid.q(x) / 12.0) * inward[i + 1] - grid.weight(x + step) * inward[i + 2])
            / grid.weight(x - step);
        if inward[i].abs() > 1e150 {
            inward[i..].iter_mut().for_each(|v| *v /= 1e150);
        }
    }
    let scale = outward[turning] / inward[turning];
    let log_deriv = |psi: &[f64], i: usize| (psi[i + 1] - psi[i - 1]) / (2.0 * step * psi[i]);
    let mismatch = (log_deriv(&outward, turning) - log_deriv(&inward, turning)).abs();

    let half: Vec<f64> = outward[1..=turning]
        .iter()
        .copied()
        .chain(inward[turning + 1..].iter().map(|v| v * scale))
        .collect();
    let half_nodes = half
        .windows(2)
        .filter(|w| w[0] != 0.0 && w[1] != 0.0 && w[0].signum() != w[1].signum())
        .count();
    let origin = usize::from(parity == Parity::Odd);
    (2 * half_nodes + origin, mismatch)
}

pub fn numerov_eigen_with(pot: &Potential, n: usize, opts: NumerovOptions) -> Result<BoundStateResult> {
    if pot.shape() != WellShape::Gaussian {
        return Err(Error::Unsupported(
            "Numerov shooting is set up for the Gaussian well".into(),
        ));
    }
    let step = numerov_step_size(pot, &opts);
    if step.is_nan() || step <= 0.0 || step * (2.0 * pot.strength()).sqrt() > 0.5 {
        return Err(Error::Discretization(format!(
            "step {step} does not resolve the well-bottom oscillation at v0 = {}",
            pot.strength()
        )));
    }
    let parity = parity_of(n);
    if !numerov_binds(pot, n, &opts) {
        return Err(Error::NoBoundState { n, v0: pot.strength() });
    }
    let v0 = pot.strength();
    let width = 1e-13f64.max(8.0 * f64::EPSILON * v0);
    let (lo, hi) = bisect_predicate(|e| count_at(pot, e, parity, &opts) > n / 2, -v0, 0.0, width);
    let energy = 0.5 * (lo + hi);
    let length = numerov_length(pot, energy, &opts);
    let tail = pot.value(length).abs();
    if tail > 1e-12 * energy.abs() {
        return Err(Error::Discretization(format!(
            "potential {tail:e} at L = {length} is not negligible against energy {energy:e}"
        )));
    }
    let (nodes, residual) = matched_solution(pot, energy, parity, &opts);
    Ok(BoundStateResult::new(
        n,
        energy,
        Solver::Numerov,
        Diagnostics {
            step,
            half_length: length,
            residual,
            nodes: Some(nodes),
        },
    ))
}

/// Bound-state energy of level `n` by Numerov shooting.
pub fn numerov_eigen(pot: &Potential, n: usize) -> Result<BoundStateResult> {
    numerov_eigen_with(pot, n, NumerovOptions::default())
}

// ---------------------------------------------------------------------------
// Finite-difference diagonalization

const DIAG_MAX_LENGTH: f64 = 4000.0;

/// `k`-th eigenvalue of the three-point finite-difference Hamiltonian on a
/// uniform grid over `[-L, L]` with Dirichlet walls.
pub fn fd_eigenvalue(pot: &Potential, k: usize, step: f64, half_length: f64) -> f64 {
    let intervals = (2.0 * half_length / step).round() as usize;
    let inv_h2 = 1.0 / (step * step);
    let diag: Vec<f64> = (1..intervals)
        .map(|i| {
            let x = -half_length + i as f64 * step;
            inv_h2 - pot.strength() * pot.shape().cell_average(x, step)
        })
        .collect();
    let tol = 1e-15f64.max(4.0 * f64::EPSILON * pot.strength());
    tridiag::kth_eigenvalue(&diag, -0.5 * inv_h2, k, tol)
}

fn diag_step(pot: &Potential) -> f64 {
    let h = 0.02f64.min(1.0 / (10.0 * (2.0 * pot.strength()).sqrt()));
    match pot.shape() {
        WellShape::Gaussian => h,
        // put the walls on grid nodes
        WellShape::Square { half_width } => half_width / (half_width / h).ceil(),
    }
}

/// Bound-state energy of level `n` from the lowest finite-difference
/// eigenvalues, Richardson-extrapolated over `h` and `h/2`.
pub fn diag_eigen(pot: &Potential, n: usize) -> Result<BoundStateResult> {
    let step = diag_step(pot);
    let reach = match pot.shape() {
        WellShape::Gaussian => 8.0,
        WellShape::Square { half_width } => 8.0f64.max(4.0 * half_width),
    };
    let mut length = (reach / step).ceil() * step;
    let mut last = None;
    for _ in 0..12 {
        let coarse = fd_eigenvalue(pot, n, step, length);
        let fine = fd_eigenvalue(pot, n, step / 2.0, length);
        let energy = (4.0 * fine - coarse) / 3.0;
        last = Some((energy, (fine - coarse).abs()));
        // a weakly bound level can be squeezed above zero by a small box
        let wanted = if energy >= 0.0 {
            4.0 * length
        } else {
            (10.0 / (-2.0 * energy).sqrt()).max(reach)
        };
        if wanted <= length * (1.0 + 1e-9) {
            break;
        }
        if wanted > DIAG_MAX_LENGTH {
            if energy >= 0.0 {
                break;
            }
            return Err(Error::Discretization(format!(
                "state {n} at v0 = {} needs a box of half-length {wanted:.0}",
                pot.strength()
            )));
        }
        length = (wanted / step).ceil() * step;
    }
    let (energy, correction) = last.expect("at least one pass");
    if energy >= 0.0 {
        return Err(Error::NoBoundState { n, v0: pot.strength() });
    }
    Ok(BoundStateResult::new(
        n,
        energy,
        Solver::Diagonalization,
        Diagnostics {
            step,
            half_length: length,
            residual: correction,
            nodes: None,
        },
    ))
}

// ---------------------------------------------------------------------------
// Finite square box (half-width 1)

/// Level `n` of the square box `v = -v0` on `|x| <= 1`.
///
/// With `k = sqrt(2(v0 + e))`, `alpha = sqrt(-2e)` the matching conditions
/// `k tan k = alpha` (even) and `-k cot k = alpha` (odd) collapse, writing
/// `k = R cos(phi)` and `alpha = R sin(phi)` with `R = sqrt(2 v0)`, to
/// `R cos(phi) - phi = n pi/2` on `0 < phi < pi/2`.
pub fn square_transcendental(v0: f64, n: usize) -> Result<BoundStateResult> {
    if !(v0 > 0.0 && v0.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "well strength must be positive, got {v0}"
        )));
    }
    let radius = (2.0 * v0).sqrt();
    let offset = n as f64 * PI / 2.0;
    if radius <= offset {
        return Err(Error::NoBoundState { n, v0 });
    }
    // Solve in whichever angle is small so k and alpha keep full precision.
    let target = offset + PI / 2.0;
    let (k, alpha) = if radius * std::f64::consts::FRAC_1_SQRT_2 + PI / 4.0 >= target {
        let theta = brent(
            |t| radius * t.sin() + t - target,
            0.0,
            PI / 4.0,
            4.0 * f64::EPSILON,
            0.0,
        )?;
        (radius * theta.sin(), radius * theta.cos())
    } else {
        let phi = brent(
            |p| radius * p.cos() - p - offset,
            0.0,
            PI / 4.0,
            4.0 * f64::EPSILON,
            0.0,
        )?;
        (radius * phi.cos(), radius * phi.sin())
    };
    let residual = if n.is_multiple_of(2) {
        (k * k.sin() - alpha * k.cos()).abs() / radius
    } else {
        (k * k.cos() + alpha * k.sin()).abs() / radius
    };
    Ok(BoundStateResult {
        n,
        energy: -0.5 * alpha * alpha,
        decay_rate: alpha,
        solver: Solver::Transcendental,
        diagnostics: Diagnostics {
            step: 0.0,
            half_length: 1.0,
            residual,
            nodes: Some(n),
        },
    })
}

/// Reference energy for level `n`: Numerov for the Gaussian well, the
/// matching condition for the square box.
pub fn exact_energy(shape: WellShape, v0: f64, n: usize) -> Result<BoundStateResult> {
    match shape {
        WellShape::Gaussian => numerov_eigen(&Potential::gaussian(v0)?, n),
        WellShape::Square { half_width: 1.0 } => square_transcendental(v0, n),
        WellShape::Square { .. } => Err(Error::Unsupported("square boxes other than half-width 1".into())),
    }
}

// ---------------------------------------------------------------------------
// Thresholds and crossings

/// Strength at which level `n` appears, located to `1e-10`.
pub fn critical_strength_exact(shape: WellShape, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::NoThreshold(format!(
            "the ground state of the {} well is bound at any depth",
            shape.name()
        )));
    }
    let binds = |v0: f64| -> bool {
        match shape {
            WellShape::Gaussian => Potential::gaussian(v0)
                .map(|p| numerov_binds(&p, n, &NumerovOptions::default()))
                .unwrap_or(false),
            WellShape::Square { .. } => square_transcendental(v0, n).is_ok(),
        }
    };
    let mut hi = 1.0;
    while !binds(hi) {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::NoThreshold(format!("level {n} never binds below v0 = 1e6")));
        }
    }
    let lo = if binds(1e-6) {
        return Err(Error::NoThreshold(format!("level {n} binds at v0 = 1e-6")));
    } else {
        1e-6
    };
    let (lo, hi) = bisect_predicate(binds, lo, hi, 1e-10);
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingResult {
    pub state: usize,
    pub v_c: f64,
    /// Bracket on which `W_exp - W_harm` changes sign.
    pub bracket: (f64, f64),
}

/// `W_exp(v0) - W_harm(v0)` for the two optimized families of `state`.
pub fn variational_gap(state: usize, v0: f64) -> Result<f64> {
    let harm = optimize_parameter(TrialFamily::for_state(state, true)?, WellShape::Gaussian, v0)?;
    let exp = optimize_parameter(TrialFamily::for_state(state, false)?, WellShape::Gaussian, v0)?;
    Ok(exp.w - harm.w)
}

/// Strength where the exponential and harmonic bounds for `state` cross.
pub fn crossing_point(state: usize) -> Result<CrossingResult> {
    let (lo, hi) = match state {
        0 => (0.5, 20.0),
        1 => (2.0, 20.0),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "crossing only defined for states 0 and 1, got {state}"
            )))
        }
    };
    let step = 0.25;
    let mut left = lo;
    let mut gap_left = variational_gap(state, left)?;
    while left < hi {
        let right = (left + step).min(hi);
        let gap_right = variational_gap(state, right)?;
        if gap_left.signum() != gap_right.signum() {
            let mut failure = None;
            let (a, b) = bisect_predicate(
                |v| match variational_gap(state, v) {
                    Ok(g) => g.signum() == gap_right.signum(),
                    Err(e) => {
                        failure.get_or_insert(e);
                        true
                    }
                },
                left,
                right,
                1e-10,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            return Ok(CrossingResult {
                state,
                v_c: 0.5 * (a + b),
                bracket: (a, b),
            });
        }
        left = right;
        gap_left = gap_right;
    }
    Err(Error::NoCrossing { lo, hi })
}

// ---------------------------------------------------------------------------
// Shallow-regime fit

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShallowFit {
    /// `c2..=c_degree` of `e0 = sum c_k v0^k`.
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    /// The extra `c_{degree+1}` term fitted to absorb higher orders.
    pub nuisance: f64,
    pub condition: f64,
    pub grid: Vec<f64>,
}

const FIT_MAX_CONDITION: f64 = 1e10;

/// Least-squares fit of `e0/v0^2 = c2 + c3 v0 + ...` over 12 log-spaced
/// strengths in `[0.01, 0.05]`, with one nuisance term past `degree`.
pub fn shallow_fit_oracle(shape: WellShape, n: usize, degree: usize) -> Result<ShallowFit> {
    if n != 0 {
        return Err(Error::InvalidParameter(format!(
            "shallow fits are for the ground state, got n = {n}"
        )));
    }
    if !(2..=3).contains(&degree) {
        return Err(Error::InvalidOrder {
            order: degree,
            reason: "fit degree must be 2 or 3".into(),
        });
    }
    let grid = crate::roots::geometric_grid(0.01, 0.05, 12);
    let energies = grid
        .iter()
        .map(|&v0| exact_energy(shape, v0, 0).map(|r| r.energy))
        .collect::<Result<Vec<_>>>()?;
    let params = degree; // c2..c_degree plus one nuisance term
    let design = DMatrix::from_fn(grid.len(), params, |i, j| grid[i].powi(j as i32));
    let rhs = DVector::from_iterator(grid.len(), energies.iter().zip(&grid).map(|(e, v)| e / (v * v)));

    let svd = design.clone().svd(true, true);
    let sv = &svd.singular_values;
    let condition = sv.max() / sv.min();
    if !condition.is_finite() || condition > FIT_MAX_CONDITION {
        return Err(Error::IllConditionedFit(condition));
    }
    let solution = svd.solve(&rhs, 0.0).map_err(|e| Error::NonConvergence {
        operation: "shallow_fit_oracle",
        detail: e.to_string(),
    })?;
    let residual = &design * &solution - &rhs;
    let dof = (grid.len() - params) as f64;
    let sigma2 = residual.norm_squared() / dof;
    let normal = design.transpose() * &design;
    let covariance = normal.try_inverse().ok_or(Error::IllConditionedFit(condition))? * sigma2;

    let coefficients: Vec<f64> = (0..params - 1).map(|j| solution[j]).collect();
    let std_errors = (0..params - 1).map(|j| covariance[(j, j)].max(0.0).sqrt()).collect();
    Ok(ShallowFit {
        coefficients,
        std_errors,
        nuisance: solution[params - 1],
        condition,
        grid,
    })
}
