//! Discrete energies, gradients, symmetric rearrangement, and a
//! mass-constrained minimizer.
//!
//! The discrete energy on a grid of spacing `h` is
//!
//! ```text
//! E(u) = (1/2h)·Σ (u_{i+1} − u_i)²  −  (1/p)·h·Σ w_i|u_i|^p  −  (1/q)|u_c|^q
//! ```
//!
//! with trapezoid weights `w` and `c` the origin node. The kinetic term is a
//! sum over cells, so the derivative kink at the origin is represented
//! exactly rather than smoothed. The point term reads the origin value
//! without an `h` weight, because the continuum functional evaluates `u` at
//! a point; its gradient therefore carries `1/h` at the origin node.
//!
//! Gradients are taken with respect to the mass-weighted inner product
//! `⟨v, w⟩ = h·Σ vᵢwᵢ`, the one the projection step preserves.
//!
//! The minimizer is a projected descent on the mass sphere: the gradient is
//! projected onto the constraint tangent, preconditioned by the shifted
//! discrete Laplacian `(εI − Δ_h)⁻¹` to undo the `O(h⁻²)` stiffness of the
//! kinetic term, stepped with a backtracking Armijo search capped at the
//! unit step natural to that metric, and the iterate is rescaled to the
//! prescribed mass after every accepted step. Optional symmetric
//! rearrangement pins the maximum at the origin.

use crate::analytic;
use crate::grid::{Grid, GridFunction};
use crate::params::{EnergyParams, MassConstraint, ParamError};
use crate::regime::{classify_regime, Verdict};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VariationalError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("discrete energy evaluated to a non-finite value")]
    NonFinite,
    #[error("no stable discrete target: regime verdict is {verdict:?}")]
    RegimeRefused { verdict: Verdict },
    #[error("invalid minimizer options: {0}")]
    Options(String),
    #[error("initial guess grid does not match the options grid")]
    GuessGridMismatch,
    #[error("analytic seed unavailable: {0}")]
    Seed(String),
}

/// Step-size policy of the descent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    /// Constant step along the preconditioned direction; no line search.
    Fixed { step: f64 },
    /// Backtracking Armijo search, trial step capped at 1.
    Backtracking,
}

/// Starting profile of the descent.
#[derive(Debug, Clone)]
pub enum InitialGuess {
    /// Exponential ground-state seed of the point term (a sech profile when
    /// only the standard term is active), rescaled to the target mass.
    Analytic,
    /// Caller-supplied profile on the same grid; rescaled to the target mass.
    Profile(GridFunction),
}

#[derive(Debug, Clone)]
pub struct MinimizerOptions {
    pub grid: Grid,
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    pub step_rule: StepRule,
    /// Apply symmetric rearrangement every this many iterations.
    pub rearrange_every: usize,
    pub initial_guess: InitialGuess,
}

impl MinimizerOptions {
    pub fn new(grid: Grid) -> Self {
        Self {
            grid,
            max_iterations: 500,
            gradient_tolerance: 1e-6,
            step_rule: StepRule::Backtracking,
            rearrange_every: 10,
            initial_guess: InitialGuess::Analytic,
        }
    }

    fn validate(&self) -> Result<(), VariationalError> {
        if self.gradient_tolerance.is_nan() || self.gradient_tolerance <= 0.0 {
            return Err(VariationalError::Options(format!(
                "gradient tolerance {} must be positive",
                self.gradient_tolerance
            )));
        }
        if self.rearrange_every == 0 {
            return Err(VariationalError::Options(
                "rearrange_every must be >= 1".into(),
            ));
        }
        if let StepRule::Fixed { step } = self.step_rule {
            if step <= 0.0 || !step.is_finite() {
                return Err(VariationalError::Options(format!(
                    "fixed step {step} must be positive"
                )));
            }
        }
        Ok(())
    }
}

/// Converged (or best-effort) profile with diagnostics.
#[derive(Debug, Clone)]
pub struct MinimizerResult {
    pub profile: GridFunction,
    pub energy: f64,
    /// Frequency estimate `ω̂ = −⟨∇E(u), u⟩/⟨u, u⟩`; at a constrained
    /// stationary point `∇E(u) + ω̂u = 0`.
    pub multiplier_estimate: f64,
    pub iterations: usize,
    /// `‖∇E(u) + ω̂u‖` in the discrete L² norm.
    pub el_residual: f64,
    pub converged: bool,
}

/// Default grid of the minimizer: half-width `max(40, 25/√ω̂₀)` with a crude
/// frequency estimate from the closed forms, 8001 nodes. Exponential tails
/// are below 1e−10 at the boundary with this sizing. Like the minimizer
/// itself, only defined in regimes with a unique ground state.
pub fn default_grid(params: &EnergyParams, mass: MassConstraint) -> Result<Grid, VariationalError> {
    let class = classify_regime(params, mass);
    if class.verdict != Verdict::UniqueGroundState {
        return Err(VariationalError::RegimeRefused {
            verdict: class.verdict,
        });
    }
    let omega0 = seed_omega(params, mass.value())?;
    let half_width = 40.0_f64.max(25.0 / omega0.sqrt());
    Grid::new(half_width, 8001).map_err(|e| VariationalError::Options(e.to_string()))
}

/// Crude multiplier estimate used for grid sizing and the initial profile.
fn seed_omega(params: &EnergyParams, mu: f64) -> Result<f64, VariationalError> {
    match (params.standard_power(), params.point_power()) {
        (Some(p), Some(q)) => {
            analytic::omega_of_mass(p, q, mu).map_err(|e| VariationalError::Seed(e.to_string()))
        }
        (None, Some(q)) => Ok(analytic::pointwise_omega_of_mass(q, mu)),
        (Some(_), None) => analytic::solve_for_mass(params, MassConstraint::new(mu).unwrap())
            .map(|(gs, _)| gs.omega())
            .map_err(|e| VariationalError::Seed(e.to_string())),
        (None, None) => Err(ParamError::NoNonlinearity.into()),
    }
    .map(|w| w.max(1e-9))
    .map(|w| if w.is_finite() { w } else { 1.0 })
}

fn trapezoid_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i == n - 1 {
        0.5
    } else {
        1.0
    }
}

fn raw_energy(u: &GridFunction, params: &EnergyParams) -> f64 {
    let v = u.values();
    let n = v.len();
    let h = u.grid().spacing();
    let mut kinetic = 0.0;
    for i in 0..n - 1 {
        let d = v[i + 1] - v[i];
        kinetic += d * d;
    }
    let mut e = 0.5 * kinetic / h;
    if let Some(p) = params.standard_power() {
        let mut lp = 0.0;
        for (i, &x) in v.iter().enumerate() {
            lp += trapezoid_weight(i, n) * x.abs().powf(p);
        }
        e -= h * lp / p;
    }
    if let Some(q) = params.point_power() {
        e -= u.origin_value().abs().powf(q) / q;
    }
    e
}

/// Discrete energy of the active functional.
pub fn energy(u: &GridFunction, params: &EnergyParams) -> Result<f64, VariationalError> {
    let e = raw_energy(u, params);
    if e.is_finite() {
        Ok(e)
    } else {
        Err(VariationalError::NonFinite)
    }
}

fn raw_gradient(u: &GridFunction, params: &EnergyParams) -> GridFunction {
    let v = u.values();
    let n = v.len();
    let h = u.grid().spacing();
    let h2 = h * h;
    let mut g = vec![0.0; n];
    // negative discrete Laplacian of the cell-sum kinetic term
    g[0] = (v[0] - v[1]) / h2;
    g[n - 1] = (v[n - 1] - v[n - 2]) / h2;
    for i in 1..n - 1 {
        g[i] = (2.0 * v[i] - v[i - 1] - v[i + 1]) / h2;
    }
    if let Some(p) = params.standard_power() {
        for i in 0..n {
            g[i] -= trapezoid_weight(i, n) * v[i].abs().powf(p - 2.0) * v[i];
        }
    }
    if let Some(q) = params.point_power() {
        let c = u.grid().center_index();
        g[c] -= v[c].abs().powf(q - 2.0) * v[c] / h;
    }
    GridFunction::from_values(*u.grid(), g)
}

/// Gradient of the discrete energy with respect to `⟨v, w⟩ = h·Σ vᵢwᵢ`.
pub fn gradient(u: &GridFunction, params: &EnergyParams) -> Result<GridFunction, VariationalError> {
    let g = raw_gradient(u, params);
    if g.values().iter().all(|x| x.is_finite()) {
        Ok(g)
    } else {
        Err(VariationalError::NonFinite)
    }
}

/// Symmetric-decreasing rearrangement on the grid: absolute values sorted
/// decreasingly and laid out from the origin node outward, alternating
/// sides. Preserves the discrete mass exactly (a permutation of `|values|`)
/// and does not increase the discrete energy on decaying profiles.
pub fn rearrange(u: &GridFunction) -> GridFunction {
    let n = u.values().len();
    let c = u.grid().center_index();
    let mut sorted: Vec<f64> = u.values().iter().map(|v| v.abs()).collect();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
    let mut out = vec![0.0; n];
    out[c] = sorted[0];
    for k in 1..=c {
        out[c + k] = sorted[2 * k - 1];
        out[c - k] = sorted[2 * k];
    }
    GridFunction::from_values(*u.grid(), out)
}

/// Interior and origin-jump residuals of the stationary equation at a given
/// frequency: the sup over nodes `x ≠ 0` (skipping those adjacent to the
/// origin) of `|u″ + |u|^{p−2}u − ωu|` by second differences, and the defect
/// of `u′(0⁻) − u′(0⁺) = |u(0)|^{q−2}u(0)` by one-sided second-order
/// differences.
pub fn el_residual(u: &GridFunction, params: &EnergyParams, omega: f64) -> (f64, f64) {
    let v = u.values();
    let n = v.len();
    let c = u.grid().center_index();
    let h = u.grid().spacing();

    let mut interior: f64 = 0.0;
    for i in 1..n - 1 {
        if i.abs_diff(c) <= 1 {
            continue;
        }
        let upp = (v[i - 1] - 2.0 * v[i] + v[i + 1]) / (h * h);
        let mut r = upp - omega * v[i];
        if let Some(p) = params.standard_power() {
            r += v[i].abs().powf(p - 2.0) * v[i];
        }
        interior = interior.max(r.abs());
    }

    let jump = if n >= 5 && c >= 2 {
        let d_minus = (3.0 * v[c] - 4.0 * v[c - 1] + v[c - 2]) / (2.0 * h);
        let d_plus = (-3.0 * v[c] + 4.0 * v[c + 1] - v[c + 2]) / (2.0 * h);
        let point = match params.point_power() {
            Some(q) => v[c].abs().powf(q - 2.0) * v[c],
            None => 0.0,
        };
        (d_minus - d_plus - point).abs()
    } else {
        0.0
    };

    (interior, jump)
}

/// Solve `(εI − Δ_h) d = rhs` with the same Laplacian stencil the gradient
/// uses (Thomas algorithm).
fn shifted_laplacian_solve(eps: f64, h: f64, rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    let inv_h2 = 1.0 / (h * h);
    let off = -inv_h2;
    let diag_end = eps + inv_h2;
    let diag_mid = eps + 2.0 * inv_h2;
    let mut c_prime = vec![0.0; n];
    let mut d_prime = vec![0.0; n];
    c_prime[0] = off / diag_end;
    d_prime[0] = rhs[0] / diag_end;
    for i in 1..n {
        let diag = if i == n - 1 { diag_end } else { diag_mid };
        let m = diag - off * c_prime[i - 1];
        c_prime[i] = off / m;
        d_prime[i] = (rhs[i] - off * d_prime[i - 1]) / m;
    }
    let mut d = vec![0.0; n];
    d[n - 1] = d_prime[n - 1];
    for i in (0..n - 1).rev() {
        d[i] = d_prime[i] - c_prime[i] * d[i + 1];
    }
    d
}

fn inner(h: f64, a: &[f64], b: &[f64]) -> f64 {
    h * a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>()
}

fn initial_profile(
    params: &EnergyParams,
    mu: f64,
    grid: &Grid,
    guess: &InitialGuess,
) -> Result<GridFunction, VariationalError> {
    let mut u = match guess {
        InitialGuess::Profile(p) => {
            if p.grid() != grid {
                return Err(VariationalError::GuessGridMismatch);
            }
            p.clone()
        }
        InitialGuess::Analytic => {
            let omega0 = seed_omega(params, mu)?;
            let rate = omega0.sqrt();
            let profile: Box<dyn Fn(f64) -> f64> = if params.point_power().is_some() {
                Box::new(move |x: f64| (-rate * x.abs()).exp())
            } else {
                Box::new(move |x: f64| 1.0 / (rate * x).cosh())
            };
            crate::grid::sample(profile, grid).map_err(|e| VariationalError::Seed(e.to_string()))?
        }
    };
    u.project_to_mass(mu);
    Ok(u)
}

/// Minimize the discrete energy over the mass sphere.
///
/// Refuses regimes without a unique ground state (the discrete problem has
/// no stable target there). Non-convergence within the iteration budget is
/// reported through `converged = false`, not an error. The projection to
/// the prescribed mass is the last operation of every iteration, so the
/// result's discrete mass equals the constraint to machine precision.
pub fn minimize(
    params: &EnergyParams,
    mass: MassConstraint,
    opts: &MinimizerOptions,
) -> Result<MinimizerResult, VariationalError> {
    opts.validate()?;
    let class = classify_regime(params, mass);
    if class.verdict != Verdict::UniqueGroundState {
        return Err(VariationalError::RegimeRefused {
            verdict: class.verdict,
        });
    }

    let mu = mass.value();
    let grid = opts.grid;
    let h = grid.spacing();
    let mut u = initial_profile(params, mu, &grid, &opts.initial_guess)?;
    let mut e = energy(&u, params)?;
    let mut step: f64 = 1.0;
    let mut iterations = 0;
    let mut converged = false;

    let diagnostics = |u: &GridFunction| -> (f64, f64, GridFunction) {
        let g = raw_gradient(u, params);
        let uu = inner(h, u.values(), u.values());
        let lambda = inner(h, g.values(), u.values()) / uu;
        let mut tangent = g.clone();
        for (t, &ui) in tangent.values_mut().iter_mut().zip(u.values()) {
            *t -= lambda * ui;
        }
        let residual = inner(h, tangent.values(), tangent.values()).sqrt();
        (-lambda, residual, tangent)
    };

    let (mut omega_hat, mut residual, mut tangent) = diagnostics(&u);

    while iterations < opts.max_iterations {
        if residual <= opts.gradient_tolerance {
            converged = true;
            break;
        }

        let eps = omega_hat.abs().max(1e-6);
        let direction = shifted_laplacian_solve(eps, h, tangent.values());
        let slope = inner(h, tangent.values(), &direction);

        let accepted = match opts.step_rule {
            StepRule::Fixed { step } => {
                let mut candidate = u.clone();
                for (c, d) in candidate.values_mut().iter_mut().zip(&direction) {
                    *c -= step * d;
                }
                candidate.project_to_mass(mu);
                let ce = energy(&candidate, params)?;
                Some((candidate, ce))
            }
            StepRule::Backtracking => {
                step = (2.0 * step).min(1.0);
                let mut found = None;
                while step > 1e-18 {
                    let mut candidate = u.clone();
                    for (c, d) in candidate.values_mut().iter_mut().zip(&direction) {
                        *c -= step * d;
                    }
                    candidate.project_to_mass(mu);
                    let ce = energy(&candidate, params)?;
                    if ce <= e - 1e-4 * step * slope {
                        found = Some((candidate, ce));
                        break;
                    }
                    step *= 0.5;
                }
                found
            }
        };

        let Some((next, next_e)) = accepted else {
            // line search exhausted: the energy is at its floating-point
            // floor; report convergence by the residual test alone
            converged = residual <= opts.gradient_tolerance;
            break;
        };
        u = next;
        e = next_e;
        iterations += 1;

        if iterations % opts.rearrange_every == 0 {
            let mut r = rearrange(&u);
            r.project_to_mass(mu);
            let re = energy(&r, params)?;
            if re <= e {
                u = r;
                e = re;
            }
        }

        let d = diagnostics(&u);
        omega_hat = d.0;
        residual = d.1;
        tangent = d.2;
    }
    if residual <= opts.gradient_tolerance {
        converged = true;
    }

    Ok(MinimizerResult {
        profile: u,
        energy: e,
        multiplier_estimate: omega_hat,
        iterations,
        el_residual: residual,
        converged,
    })
}
