//! The soliton of the standard nonlinearity and the sharp
//! Gagliardo–Nirenberg constants it attains.

use super::{check_omega, AnalyticError};
use crate::quad::integrate;

/// Quadrature tolerance of the closed-form norm integrals.
pub(crate) const QUAD_TOL: f64 = 1e-12;

/// The positive even solution of `u″ + |u|^{p−2}u = ωu` on the line:
/// `φ_ω(x) = [(σ+1)ω·sech²(σ√ω x)]^{1/(2σ)}` with `σ = p/2 − 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonProfile {
    pub sigma: f64,
    pub omega: f64,
}

impl SolitonProfile {
    /// Peak value `((σ+1)ω)^{1/(2σ)}`, attained at the origin.
    pub fn amplitude(&self) -> f64 {
        ((self.sigma + 1.0) * self.omega).powf(1.0 / (2.0 * self.sigma))
    }

    /// Evaluate at `x`; even, strictly decreasing in `|x|`.
    pub fn eval(&self, x: f64) -> f64 {
        let z = (self.sigma * self.omega.sqrt() * x).abs();
        // sech(z) without overflowing cosh for large z
        let e = (-z).exp();
        let sech = 2.0 * e / (1.0 + e * e);
        self.amplitude() * sech.powf(1.0 / self.sigma)
    }

    /// Derivative at `x > 0` (odd continuation elsewhere):
    /// `φ′(x) = −amp·√ω·tanh(σ√ω x)·sech(σ√ω x)^{1/σ}`.
    pub fn derivative(&self, x: f64) -> f64 {
        let z = self.sigma * self.omega.sqrt() * x;
        let e = (-z.abs()).exp();
        let sech = 2.0 * e / (1.0 + e * e);
        let d =
            -self.amplitude() * self.omega.sqrt() * z.tanh().abs() * sech.powf(1.0 / self.sigma);
        if x < 0.0 {
            -d
        } else {
            d
        }
    }
}

/// Build the soliton of `u″ + |u|^{p−2}u = ωu` for `p ∈ (2, 6]`, `ω > 0`.
pub fn soliton(p: f64, omega: f64) -> Result<SolitonProfile, AnalyticError> {
    crate::params::EnergyParams::standard_only(p)?;
    check_omega(omega)?;
    Ok(SolitonProfile {
        sigma: p / 2.0 - 1.0,
        omega,
    })
}

/// Tail integrals of the soliton in the variable `t = tanh(σ√ω y)`, taken
/// over `[t̄, 1]` after the substitution `s = sin θ` that removes the
/// endpoint singularity of `(1−s²)^{1/σ−1}` for `σ > 1`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailIntegrals {
    /// `∫(1−s²)^{1/σ−1} ds` — mass weight
    pub i_mass: f64,
    /// `∫ s²(1−s²)^{1/σ−1} ds` — kinetic weight
    pub i_kinetic: f64,
    /// `∫(1−s²)^{1/σ} ds` — L^p weight
    pub i_power: f64,
}

/// `one_minus_t_sq` is `1 − t̄²` at full relative precision; the lower limit
/// is `θ₀ = arcsin t̄ = arccos √(1−t̄²)`, which stays accurate as `t̄ → 1`.
pub(crate) fn tail_integrals(one_minus_t_sq: f64, sigma: f64) -> TailIntegrals {
    let theta0 = one_minus_t_sq.sqrt().acos();
    let theta1 = std::f64::consts::PI / 2.0;
    let cos_pow = 2.0 / sigma - 1.0;
    TailIntegrals {
        i_mass: integrate(|th: f64| th.cos().powf(cos_pow), theta0, theta1, QUAD_TOL),
        i_kinetic: integrate(
            |th: f64| {
                let s = th.sin();
                s * s * th.cos().powf(cos_pow)
            },
            theta0,
            theta1,
            QUAD_TOL,
        ),
        i_power: integrate(
            |th: f64| th.cos().powf(cos_pow + 2.0),
            theta0,
            theta1,
            QUAD_TOL,
        ),
    }
}

/// Squared-L², kinetic, and L^p norms of `x ↦ φ_ω(|x| + a)` over the whole
/// line, parameterized by `1 − t̄²` with `t̄ = tanh(σ√ω a)` (`1` gives the
/// untranslated soliton).
pub(crate) fn shifted_soliton_norms(
    sigma: f64,
    omega: f64,
    one_minus_t_sq: f64,
) -> (f64, f64, f64) {
    let ints = tail_integrals(one_minus_t_sq, sigma);
    let a0 = ((sigma + 1.0) * omega).powf(1.0 / sigma);
    let mass = 2.0 * a0 / (sigma * omega.sqrt()) * ints.i_mass;
    let kinetic = 2.0 * a0 * omega.sqrt() / sigma * ints.i_kinetic;
    let lp = 2.0 * a0 * (sigma + 1.0) * omega.sqrt() / sigma * ints.i_power;
    (mass, kinetic, lp)
}

/// Exponent selector of the Gagliardo–Nirenberg inequality: a finite power
/// `p` for `‖u‖_p^p ≤ K_p‖u‖₂^{p/2+1}‖u′‖₂^{p/2−1}`, or the sup-norm form
/// `‖u‖∞² ≤ ‖u‖₂‖u′‖₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GnExponent {
    Power(f64),
    Sup,
}

/// Sharp constant of the Gagliardo–Nirenberg inequality.
///
/// `K_6 = 4/π²` and the sup-norm constant 1 are returned in closed form;
/// other powers are computed as the quotient attained by the unit-frequency
/// soliton, the unique optimizer up to translation, dilation, and phase.
pub fn gn_constant(exponent: GnExponent) -> Result<f64, AnalyticError> {
    match exponent {
        GnExponent::Sup => Ok(1.0),
        GnExponent::Power(6.0) => Ok(4.0 / (std::f64::consts::PI * std::f64::consts::PI)),
        GnExponent::Power(p) => {
            if p.is_nan() || p <= 2.0 || p > 6.0 {
                return Err(AnalyticError::GnExponentRange(p));
            }
            let sigma = p / 2.0 - 1.0;
            let (mass, kinetic, lp) = shifted_soliton_norms(sigma, 1.0, 1.0);
            Ok(lp / (mass.powf(p / 4.0 + 0.5) * kinetic.powf(p / 4.0 - 0.5)))
        }
    }
}
