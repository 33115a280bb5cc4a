//! Nonlinearity powers and the mass constraint.
//!
//! A valid parameter set activates at least one nonlinearity: a standard
//! power `p ∈ (2, 6]` and/or a point-concentrated power `q ∈ (2, 4]`. The
//! upper endpoints are the L²-critical exponents of the two terms.

use thiserror::Error;

/// Upper (L²-critical) exponent of the standard nonlinearity.
pub const STANDARD_CRITICAL_POWER: f64 = 6.0;
/// Upper (L²-critical) exponent of the point nonlinearity.
pub const POINT_CRITICAL_POWER: f64 = 4.0;

/// Errors from validating nonlinearity powers or the mass constraint.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("standard power p = {0} outside (2, 6]")]
    StandardPowerRange(f64),
    #[error("point power q = {0} outside (2, 4]")]
    PointPowerRange(f64),
    #[error("at least one nonlinearity must be active")]
    NoNonlinearity,
    #[error("mass mu = {0} must be positive and finite")]
    MassRange(f64),
}

/// Which nonlinearities are active and with what powers.
///
/// Both present selects the combined functional `F_{p,q}`, only the point
/// power selects `D_q`, only the standard power selects `E_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParams {
    standard_power: Option<f64>,
    point_power: Option<f64>,
}

impl EnergyParams {
    /// Validate and build a parameter set. Powers must satisfy `p ∈ (2, 6]`,
    /// `q ∈ (2, 4]`, and at least one must be present.
    pub fn new(standard_power: Option<f64>, point_power: Option<f64>) -> Result<Self, ParamError> {
        if let Some(p) = standard_power {
            if p.is_nan() || p <= 2.0 || p > STANDARD_CRITICAL_POWER {
                return Err(ParamError::StandardPowerRange(p));
            }
        }
        if let Some(q) = point_power {
            if q.is_nan() || q <= 2.0 || q > POINT_CRITICAL_POWER {
                return Err(ParamError::PointPowerRange(q));
            }
        }
        if standard_power.is_none() && point_power.is_none() {
            return Err(ParamError::NoNonlinearity);
        }
        Ok(Self {
            standard_power,
            point_power,
        })
    }

    /// Combined functional `F_{p,q}`.
    pub fn combined(p: f64, q: f64) -> Result<Self, ParamError> {
        Self::new(Some(p), Some(q))
    }

    /// Point-only functional `D_q`.
    pub fn point_only(q: f64) -> Result<Self, ParamError> {
        Self::new(None, Some(q))
    }

    /// Standard-only functional `E_p`.
    pub fn standard_only(p: f64) -> Result<Self, ParamError> {
        Self::new(Some(p), None)
    }

    pub fn standard_power(&self) -> Option<f64> {
        self.standard_power
    }

    pub fn point_power(&self) -> Option<f64> {
        self.point_power
    }

    /// True when the standard power sits exactly at its critical value 6.
    pub fn standard_critical(&self) -> bool {
        self.standard_power == Some(STANDARD_CRITICAL_POWER)
    }

    /// True when the point power sits exactly at its critical value 4.
    pub fn point_critical(&self) -> bool {
        self.point_power == Some(POINT_CRITICAL_POWER)
    }
}

/// Prescribed squared L² norm of the minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassConstraint(f64);

impl MassConstraint {
    pub fn new(mu: f64) -> Result<Self, ParamError> {
        if mu <= 0.0 || !mu.is_finite() {
            return Err(ParamError::MassRange(mu));
        }
        Ok(Self(mu))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_powers() {
        assert!(EnergyParams::combined(4.0, 3.0).is_ok());
        assert!(EnergyParams::combined(6.0, 4.0).is_ok());
        assert!(EnergyParams::point_only(2.5).is_ok());
        assert!(EnergyParams::standard_only(6.0).is_ok());
    }

    #[test]
    fn rejects_out_of_range_powers() {
        assert_eq!(
            EnergyParams::standard_only(2.0),
            Err(ParamError::StandardPowerRange(2.0))
        );
        assert_eq!(
            EnergyParams::standard_only(6.5),
            Err(ParamError::StandardPowerRange(6.5))
        );
        assert_eq!(
            EnergyParams::point_only(4.0 + 1e-12),
            Err(ParamError::PointPowerRange(4.0 + 1e-12))
        );
        assert_eq!(
            EnergyParams::new(None, None),
            Err(ParamError::NoNonlinearity)
        );
    }

    #[test]
    fn rejects_bad_mass() {
        assert!(MassConstraint::new(0.0).is_err());
        assert!(MassConstraint::new(-1.0).is_err());
        assert!(MassConstraint::new(f64::NAN).is_err());
        assert!(MassConstraint::new(f64::INFINITY).is_err());
        assert_eq!(MassConstraint::new(2.0).unwrap().value(), 2.0);
    }
}
