//! Closed-form ground states, the mass–frequency map, and critical masses.
//!
//! Positive even stationary states are built explicitly: an exponential for
//! the point-only functional, a soliton for the standard-only one, and two
//! soliton halves pasted with an outward shift for the combined functional.
//! Masses and energies are evaluated by adaptive quadrature of the
//! closed-form tail integrals, and the strictly monotone mass–frequency map
//! is inverted by a doubling bracket plus bisection.

mod matching;
mod soliton;

pub use matching::{solve_matching, MatchingSolution};
pub use soliton::{gn_constant, soliton, GnExponent, SolitonProfile};

use crate::grid::{sample, Grid, GridFunction, SampleError};
use crate::params::{EnergyParams, MassConstraint, ParamError};
use crate::regime::{classify_regime, RegimeClassification, Verdict};
use soliton::shifted_soliton_norms;
use thiserror::Error;

/// Frequencies accepted by the public entry points. The closed forms
/// overflow outside this window.
pub const OMEGA_MIN: f64 = 1e-9;
/// See [`OMEGA_MIN`].
pub const OMEGA_MAX: f64 = 1e9;

/// Largest bracket-expansion factor tried when inverting the mass map.
const BRACKET_CAP: f64 = (1u64 << 60) as f64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("omega = {0} outside [{OMEGA_MIN}, {OMEGA_MAX}]")]
    OmegaOutOfRange(f64),
    #[error("Gagliardo-Nirenberg exponent {0} outside (2, 6]")]
    GnExponentRange(f64),
    #[error("no unique ground state at this mass (verdict {verdict:?}); the mass-frequency map is not invertible here")]
    NotInvertible { verdict: Verdict },
    #[error("critical point-only power q = 4 admits no single ground state per mass; use the critical family")]
    CriticalPointPower,
}

pub(crate) fn check_omega(omega: f64) -> Result<(), AnalyticError> {
    if !(OMEGA_MIN..=OMEGA_MAX).contains(&omega) || !omega.is_finite() {
        return Err(AnalyticError::OmegaOutOfRange(omega));
    }
    Ok(())
}

/// Closed-form profile of a stationary state.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Profile {
    /// `x ↦ φ_ω(|x| + a)` — two soliton halves pasted at the origin.
    PastedSoliton { soliton: SolitonProfile, shift: f64 },
    /// `x ↦ amplitude·e^{−rate|x|}`.
    Exponential { amplitude: f64, rate: f64 },
    /// The untranslated soliton itself (no point term).
    Soliton(SolitonProfile),
}

impl Profile {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Profile::PastedSoliton { soliton, shift } => soliton.eval(x.abs() + shift),
            Profile::Exponential { amplitude, rate } => amplitude * (-rate * x.abs()).exp(),
            Profile::Soliton(s) => s.eval(x),
        }
    }

    /// One-sided derivative as `x → 0⁺`; the left derivative is its negative.
    fn derivative_at_origin_plus(&self) -> f64 {
        match self {
            Profile::PastedSoliton { soliton, shift } => soliton.derivative(*shift),
            Profile::Exponential { amplitude, rate } => -amplitude * rate,
            Profile::Soliton(_) => 0.0,
        }
    }
}

/// A positive even stationary state with its frequency, matching data,
/// closed-form mass and energy.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateSolution {
    params: EnergyParams,
    omega: f64,
    matching: Option<MatchingSolution>,
    profile: Profile,
    mass: f64,
    energy: f64,
}

impl GroundStateSolution {
    pub fn params(&self) -> &EnergyParams {
        &self.params
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Matching-equation data; absent for single-nonlinearity profiles.
    pub fn matching(&self) -> Option<&MatchingSolution> {
        self.matching.as_ref()
    }

    /// Squared L² norm over the line.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Energy of the active functional.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Evaluate the profile at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.profile.eval(x)
    }

    /// Value at the origin.
    pub fn origin_value(&self) -> f64 {
        self.profile.eval(0.0)
    }

    /// One-sided derivative at `0⁺` (the profile is even).
    pub fn derivative_at_origin_plus(&self) -> f64 {
        self.profile.derivative_at_origin_plus()
    }

    /// Sample the profile onto a grid.
    pub fn sample_on(&self, grid: &Grid) -> Result<GridFunction, SampleError> {
        sample(|x| self.eval(x), grid)
    }
}

/// Unique positive ground state of the point-only functional `D_q` at the
/// given mass, for strictly subcritical `q ∈ (2, 4)`:
/// `u(x) = (μ/2)^{(q−2)/(4−q)} exp(−2^{−2/(q−2)} μ^{(q−2)/(4−q)} |x|)`.
pub fn pointwise_ground_state(q: f64, mu: f64) -> Result<GroundStateSolution, AnalyticError> {
    let params = EnergyParams::point_only(q)?;
    if params.point_critical() {
        return Err(AnalyticError::CriticalPointPower);
    }
    MassConstraint::new(mu)?;
    let omega = pointwise_omega_of_mass(q, mu);
    check_omega(omega)?;
    Ok(pointwise_solution(params, omega))
}

/// Point-only stationary state at a prescribed frequency:
/// `u(x) = (2√ω)^{1/(q−2)} e^{−√ω|x|}`. For `q = 4` this is the critical
/// family member of mass exactly 2.
pub fn pointwise_state_at_omega(q: f64, omega: f64) -> Result<GroundStateSolution, AnalyticError> {
    let params = EnergyParams::point_only(q)?;
    check_omega(omega)?;
    Ok(pointwise_solution(params, omega))
}

fn pointwise_solution(params: EnergyParams, omega: f64) -> GroundStateSolution {
    let q = params.point_power().expect("point power present");
    let rate = omega.sqrt();
    let amplitude = (2.0 * rate).powf(1.0 / (q - 2.0));
    // ∫ C²e^{−2r|x|} = C²/r, ‖u′‖² = C²r; at q = 4 these give mass exactly 2
    // and zero energy for every frequency
    let (mass, energy) = if params.point_critical() {
        (2.0, 0.0)
    } else {
        (
            amplitude * amplitude / rate,
            0.5 * amplitude * amplitude * rate - amplitude.powf(q) / q,
        )
    };
    GroundStateSolution {
        params,
        omega,
        matching: None,
        profile: Profile::Exponential { amplitude, rate },
        mass,
        energy,
    }
}

/// Mass–frequency relation of the point-only functional:
/// `μ(ω) = 2^{2/(q−2)} ω^{(4−q)/(2(q−2))}`.
pub fn pointwise_mass_of_omega(q: f64, omega: f64) -> f64 {
    2.0_f64.powf(2.0 / (q - 2.0)) * omega.powf((4.0 - q) / (2.0 * (q - 2.0)))
}

/// Inverse of [`pointwise_mass_of_omega`] for subcritical `q`.
pub fn pointwise_omega_of_mass(q: f64, mu: f64) -> f64 {
    (mu * 2.0_f64.powf(-2.0 / (q - 2.0))).powf(2.0 * (q - 2.0) / (4.0 - q))
}

/// The critical-family member `χ_λ(x) = √(2λ)e^{−λ|x|}` of the point-only
/// functional at `q = 4`: mass exactly 2 and zero energy for every `λ > 0`.
pub fn pointwise_critical_family(lambda: f64) -> Result<GroundStateSolution, AnalyticError> {
    if lambda <= 0.0 || !lambda.is_finite() {
        return Err(AnalyticError::OmegaOutOfRange(lambda * lambda));
    }
    let params = EnergyParams::point_only(4.0).expect("q = 4 valid");
    Ok(GroundStateSolution {
        params,
        omega: lambda * lambda,
        matching: None,
        profile: Profile::Exponential {
            amplitude: (2.0 * lambda).sqrt(),
            rate: lambda,
        },
        mass: 2.0,
        energy: 0.0,
    })
}

/// Stationary state of the standard-only functional: the soliton itself.
pub fn standard_state_at_omega(p: f64, omega: f64) -> Result<GroundStateSolution, AnalyticError> {
    let params = EnergyParams::standard_only(p)?;
    let s = soliton(p, omega)?;
    let (mass, kinetic, lp) = shifted_soliton_norms(s.sigma, omega, 1.0);
    Ok(GroundStateSolution {
        params,
        omega,
        matching: None,
        profile: Profile::Soliton(s),
        mass,
        energy: 0.5 * kinetic - lp / p,
    })
}

/// Unique positive stationary state of the combined functional at frequency
/// `ω`: `u(x) = φ_ω(|x| + a)` with the shift from the matching equation.
/// Mass and energy are filled from the closed-form tail integrals.
pub fn ground_state(p: f64, q: f64, omega: f64) -> Result<GroundStateSolution, AnalyticError> {
    let params = EnergyParams::combined(p, q)?;
    let m = solve_matching(p, q, omega)?;
    let s = SolitonProfile {
        sigma: m.sigma,
        omega,
    };
    let (mass, kinetic, lp) = shifted_soliton_norms(m.sigma, omega, m.one_minus_t_sq);
    let u0 = ((m.sigma + 1.0) * omega * m.one_minus_t_sq).powf(1.0 / (2.0 * m.sigma));
    let energy = 0.5 * kinetic - lp / p - u0.powf(q) / q;
    Ok(GroundStateSolution {
        params,
        omega,
        matching: Some(m),
        profile: Profile::PastedSoliton {
            soliton: s,
            shift: m.shift_a,
        },
        mass,
        energy,
    })
}

/// Mass of the combined stationary state as a function of frequency:
/// `μ(ω) = 2(σ+1)^{1/σ} ω^{1/σ−1/2}/σ · ∫_{t̄}^1 (1−s²)^{1/σ−1} ds`.
pub fn mass_of_omega(p: f64, q: f64, omega: f64) -> Result<f64, AnalyticError> {
    let m = solve_matching(p, q, omega)?;
    Ok(shifted_soliton_norms(m.sigma, omega, m.one_minus_t_sq).0)
}

/// Derivative of the mass–frequency map. Strictly positive whenever at
/// least one power is subcritical; identically zero at `(p, q) = (6, 4)`,
/// where every frequency carries the same mass.
pub fn dmass_domega(p: f64, q: f64, omega: f64) -> Result<f64, AnalyticError> {
    let m = solve_matching(p, q, omega)?;
    let sigma = m.sigma;
    let ints = soliton::tail_integrals(m.one_minus_t_sq, sigma);
    let bracket = dmass_bracket(m.t_bar, m.one_minus_t_sq, ints.i_mass, sigma, q);
    let prefactor = 2.0 * (sigma + 1.0).powf(1.0 / sigma) / sigma * omega.powf(1.0 / sigma - 1.5);
    Ok(prefactor * bracket)
}

/// The bracketed factor of the mass-derivative formula,
/// `(2−σ)/(2σ)·∫_{t̄}^1(1−s²)^{1/σ−1}ds − ((q−2−σ)/(2σ))·t̄(1−t̄²)^{1/σ} / (t̄²(q−2−σ)/σ + 1)`,
/// evaluated at a free `t̄ ∈ (0, 1)`. Its strict positivity for `σ ∈ (0, 2)`
/// and `q ∈ (2, 4)` is what makes the mass–frequency map increasing.
pub fn mass_derivative_bracket(t_bar: f64, sigma: f64, q: f64) -> f64 {
    let v = (1.0 - t_bar) * (1.0 + t_bar);
    let i_mass = soliton::tail_integrals(v, sigma).i_mass;
    dmass_bracket(t_bar, v, i_mass, sigma, q)
}

pub(crate) fn dmass_bracket(t: f64, one_minus_t_sq: f64, i_mass: f64, sigma: f64, q: f64) -> f64 {
    let e = q - 2.0 - sigma;
    (2.0 - sigma) / (2.0 * sigma) * i_mass
        - (e / (2.0 * sigma)) * t * one_minus_t_sq.powf(1.0 / sigma) / (t * t * e / sigma + 1.0)
}

/// Invert the mass–frequency map: the unique `ω` with `mass_of_omega = μ`.
///
/// Only defined where the regime admits a unique ground state; elsewhere the
/// map is constant or the mass is out of reach and a regime error is
/// returned. Doubling bracket from `ω = 1`, then bisection to `1e−12`
/// relative.
pub fn omega_of_mass(p: f64, q: f64, mu: f64) -> Result<f64, AnalyticError> {
    let params = EnergyParams::combined(p, q)?;
    let mass = MassConstraint::new(mu)?;
    let class = classify_regime(&params, mass);
    if class.verdict != Verdict::UniqueGroundState {
        return Err(AnalyticError::NotInvertible {
            verdict: class.verdict,
        });
    }

    let mass_at = |omega: f64| -> Result<f64, AnalyticError> {
        let m = solve_matching(p, q, omega)?;
        Ok(shifted_soliton_norms(m.sigma, omega, m.one_minus_t_sq).0)
    };

    let mut lo = 1.0;
    let mut hi = 1.0;
    if mass_at(1.0)? < mu {
        while mass_at(hi)? < mu {
            hi *= 2.0;
            if hi > BRACKET_CAP {
                return Err(AnalyticError::NotInvertible {
                    verdict: class.verdict,
                });
            }
        }
        lo = hi / 2.0;
    } else {
        while mass_at(lo)? >= mu {
            lo /= 2.0;
            if lo < 1.0 / BRACKET_CAP {
                return Err(AnalyticError::NotInvertible {
                    verdict: class.verdict,
                });
            }
        }
        hi = lo * 2.0;
    }

    // bisection to 1e-12 relative
    while hi - lo > 1e-12 * lo {
        let mid = 0.5 * (lo + hi);
        if mass_at(mid)? < mu {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Critical mass of a parameter set; none when every mass admits a unique
/// ground state.
pub fn critical_mass(params: &EnergyParams) -> Option<f64> {
    crate::regime::critical_mass(params)
}

/// Stationary state of any active functional at a prescribed frequency.
pub fn solve_for_omega(
    params: &EnergyParams,
    omega: f64,
) -> Result<GroundStateSolution, AnalyticError> {
    match (params.standard_power(), params.point_power()) {
        (Some(p), Some(q)) => ground_state(p, q, omega),
        (None, Some(q)) => pointwise_state_at_omega(q, omega),
        (Some(p), None) => standard_state_at_omega(p, omega),
        (None, None) => Err(ParamError::NoNonlinearity.into()),
    }
}

/// Ground state of any active functional at a prescribed mass.
///
/// Requires a regime where ground states exist at that mass: the unique one
/// in `UniqueGroundState` regimes, or the `ω = 1` representative of the
/// family at an exact threshold mass. Other regimes refuse.
pub fn solve_for_mass(
    params: &EnergyParams,
    mass: MassConstraint,
) -> Result<(GroundStateSolution, RegimeClassification), AnalyticError> {
    let class = classify_regime(params, mass);
    let mu = mass.value();
    let state = match class.verdict {
        Verdict::UniqueGroundState => match (params.standard_power(), params.point_power()) {
            (Some(p), Some(q)) => {
                let omega = omega_of_mass(p, q, mu)?;
                ground_state(p, q, omega)?
            }
            (None, Some(q)) => pointwise_ground_state(q, mu)?,
            (Some(p), None) => {
                // standard-only: mass scales as a fixed power of omega
                let sigma = p / 2.0 - 1.0;
                let expo = 1.0 / sigma - 0.5;
                let mass_at_one = shifted_soliton_norms(sigma, 1.0, 1.0).0;
                let omega = (mu / mass_at_one).powf(1.0 / expo);
                check_omega(omega)?;
                standard_state_at_omega(p, omega)?
            }
            (None, None) => return Err(ParamError::NoNonlinearity.into()),
        },
        Verdict::ThresholdFamily => solve_for_omega(params, 1.0)?,
        verdict => return Err(AnalyticError::NotInvertible { verdict }),
    };
    Ok((state, class))
}
