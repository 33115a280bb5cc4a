//! Existence/non-existence regime of the constrained minimization.
//!
//! For each parameter set the infimum of the energy over the mass sphere is
//! finite-negative, zero, or −∞, and ground states exist accordingly. The
//! transitions happen at closed-form critical masses:
//!
//! - point term critical (`q = 4`): mass 2;
//! - standard term critical (`p = 6`): mass `√3·π/2`;
//! - both critical: mass `μ* = √3(π/2 − arcsin √(3/7))`, strictly below the
//!   two single-term thresholds.
//!
//! Critical masses are evaluated from these closed forms at full double
//! precision and boundary masses are compared by exact float equality; the
//! regimes are discrete, so there is no tolerance band around criticality.

use crate::params::{EnergyParams, MassConstraint};

/// Existence verdict for a `(params, mass)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// A unique positive ground state exists at this mass.
    UniqueGroundState,
    /// Ground states exist only at this exact mass, as a one-parameter family.
    ThresholdFamily,
    /// The infimum is zero but it is not attained.
    NoMinimizerZeroInfimum,
    /// The infimum is −∞.
    UnboundedBelow,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::UniqueGroundState => "UniqueGroundState",
            Verdict::ThresholdFamily => "ThresholdFamily",
            Verdict::NoMinimizerZeroInfimum => "NoMinimizerZeroInfimum",
            Verdict::UnboundedBelow => "UnboundedBelow",
        }
    }
}

/// Class of the constrained infimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfimumClass {
    FiniteNegative,
    Zero,
    MinusInfinity,
}

impl InfimumClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            InfimumClass::FiniteNegative => "finite-negative",
            InfimumClass::Zero => "zero",
            InfimumClass::MinusInfinity => "minus-infinity",
        }
    }
}

/// Verdict, infimum class, and the governing critical mass (if any).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeClassification {
    pub verdict: Verdict,
    pub infimum: InfimumClass,
    pub critical_mass: Option<f64>,
}

/// Critical mass of the point nonlinearity at `q = 4`.
pub fn point_critical_mass() -> f64 {
    2.0
}

/// Critical mass of the standard nonlinearity at `p = 6`: `√3·π/2`.
pub fn standard_critical_mass() -> f64 {
    3.0_f64.sqrt() * std::f64::consts::PI / 2.0
}

/// Critical mass when both powers are critical:
/// `μ* = √3(π/2 − arcsin √(3/7))`.
pub fn doubly_critical_mass() -> f64 {
    3.0_f64.sqrt() * (std::f64::consts::PI / 2.0 - (3.0_f64 / 7.0).sqrt().asin())
}

/// Critical mass governing the given parameter set, none when every mass
/// admits a unique ground state.
pub fn critical_mass(params: &EnergyParams) -> Option<f64> {
    match (params.standard_critical(), params.point_critical()) {
        (true, true) => Some(doubly_critical_mass()),
        (true, false) => Some(standard_critical_mass()),
        (false, true) => Some(point_critical_mass()),
        (false, false) => None,
    }
}

/// Classify a `(params, mass)` pair.
///
/// Subcritical powers give a unique ground state at every mass. A single
/// critical power combined with a subcritical one keeps uniqueness strictly
/// below its critical mass and is unbounded below from the critical mass on
/// (threshold included). A critical power alone has zero infimum below its
/// critical mass, a ground-state family exactly at it, and −∞ above. Both
/// powers critical behave like a purely critical problem at `μ*`.
pub fn classify_regime(params: &EnergyParams, mass: MassConstraint) -> RegimeClassification {
    let mu = mass.value();
    let critical = critical_mass(params);
    let both_active = params.standard_power().is_some() && params.point_power().is_some();

    let (verdict, infimum) = match critical {
        None => (Verdict::UniqueGroundState, InfimumClass::FiniteNegative),
        Some(mc) => {
            if both_active && !(params.standard_critical() && params.point_critical()) {
                // one critical and one subcritical power: the subcritical term
                // keeps a unique ground state below the threshold, and the
                // infimum is already -infinity at the threshold itself
                if mu < mc {
                    (Verdict::UniqueGroundState, InfimumClass::FiniteNegative)
                } else {
                    (Verdict::UnboundedBelow, InfimumClass::MinusInfinity)
                }
            } else if mu < mc {
                (Verdict::NoMinimizerZeroInfimum, InfimumClass::Zero)
            } else if mu == mc {
                (Verdict::ThresholdFamily, InfimumClass::Zero)
            } else {
                (Verdict::UnboundedBelow, InfimumClass::MinusInfinity)
            }
        }
    };

    RegimeClassification {
        verdict,
        infimum,
        critical_mass: critical,
    }
}
