//! Ground states of one-dimensional focusing NLS energy functionals with a
//! power nonlinearity concentrated at the origin and an optional standard
//! power nonlinearity.
//!
//! The energy of `u ∈ H¹(ℝ)` under a mass constraint `‖u‖₂² = μ` is
//!
//! ```text
//! F_{p,q}(u) = ½‖u′‖₂² − (1/p)‖u‖_p^p − (1/q)|u(0)|^q
//! ```
//!
//! with either term optional (`D_q` keeps only the point term, `E_p` only the
//! standard one). Minimizers solve the stationary equation
//! `u″ + |u|^{p−2}u = ωu` away from the origin, coupled with the jump
//! condition `u′(0⁻) − u′(0⁺) = |u(0)|^{q−2}u(0)`.
//!
//! The crate is organised as follows:
//!
//! - [`params`], [`grid`], [`regime`] — parameter records, uniform symmetric
//!   grids with an exact origin node, and the classification of every
//!   `(powers, mass)` pair into its existence/non-existence regime;
//! - [`analytic`] — closed-form solitons, the pasted two-soliton ground
//!   state, the transcendental matching equation, the mass–frequency map and
//!   its monotone inverse, and the critical-mass constants;
//! - [`variational`] — discrete energies and gradients on a grid, symmetric
//!   rearrangement, and a mass-constrained descent minimizer that serves as
//!   an independent numerical check on the closed forms;
//! - [`probes`] — executable versions of the Gagliardo–Nirenberg
//!   inequalities, mass-preserving scalings, coercivity margins, and the
//!   scaled trial families that witness unbounded-below energies.

pub mod analytic;
pub mod grid;
pub mod params;
pub mod probes;
pub mod quad;
pub mod regime;
pub mod variational;

pub use analytic::GnExponent;
pub use grid::{make_grid, sample, Grid, GridError, GridFunction, SampleError};
pub use params::{EnergyParams, MassConstraint, ParamError};
pub use regime::{classify_regime, InfimumClass, RegimeClassification, Verdict};
