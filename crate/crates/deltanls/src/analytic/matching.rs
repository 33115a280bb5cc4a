//! The transcendental matching equation of the pasted-soliton construction.
//!
//! A positive even stationary state of the combined functional is a soliton
//! shifted outward by `a > 0` and glued at the origin. Writing
//! `t̄ = tanh(σ√ω·a)` with `σ = p/2 − 1`, the derivative-jump condition
//! becomes
//!
//! ```text
//! f(t̄) = t̄ / (1 − t̄²)^{(q−2)/(2σ)} = (σ+1)^{(q−2)/(2σ)} ω^{(q−2−σ)/(2σ)} / 2
//! ```
//!
//! and `f` increases strictly from 0 to ∞ on (0, 1), so the root is unique.
//!
//! The root is found in the variable `w = ln(1 − t²)`: for large right-hand
//! sides `t̄` sits within an ulp of 1 and carries no usable precision, while
//! `1 − t̄²` keeps full relative accuracy. In `w` the equation reads
//! `g(w) = ½·ln(1 − eʷ) − κw = ln(rhs)` with `κ = (q−2)/(2σ)`, solved by
//! bisection plus Newton. The solution stores `1 − t̄²` alongside `t̄`, and
//! every downstream closed form consumes it directly.

use super::AnalyticError;
use crate::params::EnergyParams;

/// Root data of the matching equation at fixed `(p, q, ω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchingSolution {
    /// `tanh(σ√ω·a)`, in (0, 1).
    pub t_bar: f64,
    /// `1 − t̄²` at full relative precision (not `1 − t_bar²`).
    pub one_minus_t_sq: f64,
    /// Pasting shift `a = artanh(t̄)/(σ√ω) > 0`.
    pub shift_a: f64,
    /// Soliton half-power parameter `σ = p/2 − 1`.
    pub sigma: f64,
    /// Frequency of the soliton the halves are cut from.
    pub omega: f64,
}

impl MatchingSolution {
    /// Residual `f(t̄) − rhs` of the matching equation, evaluated through the
    /// stored `1 − t̄²` so it is meaningful even when `t̄` rounds to 1.
    pub fn lhs_residual(&self, q: f64) -> f64 {
        let kappa = (q - 2.0) / (2.0 * self.sigma);
        self.t_bar * self.one_minus_t_sq.powf(-kappa) - matching_rhs(self.sigma, q, self.omega)
    }
}

/// Right-hand side of the matching equation.
pub(crate) fn matching_rhs(sigma: f64, q: f64, omega: f64) -> f64 {
    (sigma + 1.0).powf((q - 2.0) / (2.0 * sigma)) * omega.powf((q - 2.0 - sigma) / (2.0 * sigma))
        / 2.0
}

/// `g(w) = ½ ln(1 − eʷ) − κw`, strictly decreasing in `w = ln(1 − t²)`;
/// `1 − eʷ` goes through `expm1` to keep relative precision for tiny `|w|`.
fn log_lhs(w: f64, kappa: f64) -> f64 {
    0.5 * (-w.exp_m1()).ln() - kappa * w
}

fn log_lhs_derivative(w: f64, kappa: f64) -> f64 {
    -0.5 * w.exp() / (-w.exp_m1()) - kappa
}

/// Solve the matching equation for the unique `t̄ ∈ (0, 1)` and recover the
/// pasting shift.
pub fn solve_matching(p: f64, q: f64, omega: f64) -> Result<MatchingSolution, AnalyticError> {
    EnergyParams::combined(p, q)?;
    super::check_omega(omega)?;

    let sigma = p / 2.0 - 1.0;
    let kappa = (q - 2.0) / (2.0 * sigma);
    let target = matching_rhs(sigma, q, omega).ln();

    // g(w) decreases in w, so it increases in z with w = -e^z; bisecting in
    // z resolves w with full relative precision at both extremes (t̄ near 0
    // has w ~ -t̄², t̄ near 1 has w ~ ln(1 - t̄²))
    let mut z_lo: f64 = -700.0;
    let mut z_hi: f64 = 6.62; // ln(750), below the underflow of e^w
    for _ in 0..90 {
        let mid = 0.5 * (z_lo + z_hi);
        if log_lhs(-mid.exp(), kappa) < target {
            z_lo = mid;
        } else {
            z_hi = mid;
        }
    }
    let mut w = -(0.5 * (z_lo + z_hi)).exp();

    // Newton polish in w
    for _ in 0..4 {
        let r = log_lhs(w, kappa) - target;
        let d = log_lhs_derivative(w, kappa);
        let next = (w - r / d).min(-1e-300);
        if (next - w).abs() <= 1e-16 * w.abs() {
            w = next;
            break;
        }
        w = next;
    }

    let one_minus_t_sq = w.exp();
    // t = sqrt(1 - e^w), stable at both ends through expm1
    let t_bar = (-w.exp_m1()).sqrt().clamp(f64::MIN_POSITIVE, 1.0);
    // artanh(t) = ln(1 + t) - ln(1 - t²)/2, avoiding 1 − t
    let artanh = t_bar.ln_1p() - 0.5 * w;
    let shift_a = artanh / (sigma * omega.sqrt());
    Ok(MatchingSolution {
        t_bar,
        one_minus_t_sq,
        shift_a,
        sigma,
        omega,
    })
}
