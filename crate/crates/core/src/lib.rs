//! Travelling waves of the nonlinearly dispersive K_N(m,n) equation
//!
//! ```text
//! (u_t + a (u^m)_x + b (u^n)_xxx)_x + s Δ⊥ u = 0
//! ```
//!
//! Closed-form compacton, weak-compacton, solitary and heavy-tail families;
//! a classifier for cutoff profiles; a quadrature engine that rebuilds
//! profiles from the reduced first integral; and numerical verification of
//! residuals, singular cutoff terms, weak forms and conservation laws.

pub mod classify;
pub mod cli;
pub mod error;
pub mod families;
pub mod integrate;
pub mod jet;
pub mod params;
pub mod quadrature;
pub mod rational;
pub mod report;
pub mod roots;
pub mod sampling;
pub mod specfun;
pub mod verify;

pub use classify::{classify_pointwise, classify_profile, quadrature_case, CaseReport, CutoffPower, SolutionClass};
pub use error::{Error, Result};
pub use families::{catalog_admissible, make_profile, Extras, FamilyId, Profile, SignClass};
pub use params::{kinematics, reduced_constants, EquationParams, Kinematics, ReducedConstants, WaveParams};
pub use quadrature::{NumericProfile, PotentialSpec};
pub use rational::Rational;
