//! Closed-form scattering and bound-state solutions of the four relativistic
//! quasipotential two-particle s-wave equations (Logunov-Tavkhelidze,
//! Kadyshevsky and their modified forms) with one or two delta-shell
//! potentials, written in the relativistic configurational representation.
//!
//! Natural units are used throughout (`ħ = c = 1`); radii are measured in
//! inverse mass units.
//!
//! The crate is organised bottom-up:
//!
//! * [`kinematics`]: equation variants, rapidities, K-factors.
//! * [`numerics`]: bracketed root scanning and adaptive quadrature.
//! * [`greens`]: line and partial Green functions on both branches.
//! * [`scattering`]: amplitudes, S-matrix, phase shifts, zero loci.
//! * [`boundstates`]: quantization conditions, level solvers, wave functions.
//! * [`nonrel`]: Schrödinger closed forms and limit checks.

pub mod boundstates;
pub mod error;
pub mod greens;
pub mod kinematics;
pub mod nonrel;
pub mod numerics;
pub mod scattering;

pub use error::{Error, Result};
pub use kinematics::{BoundEnergy, EquationVariant, Kinematics};
pub use numerics::ComplexValue;
pub use scattering::{ScatterPoint, Shell, ShellPotential};
