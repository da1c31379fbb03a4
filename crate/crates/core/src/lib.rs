//! Thermal Casimir forces between plasma-model and ideal metals, and the
//! difference signal `F(a, T₂) − F(a, T₁)` for parallel plates and a sphere
//! above a plate.
//!
//! Closed-form low-temperature expansions live in [`perturbative`] and
//! [`scenarios`]; [`lifshitz`] evaluates the full Matsubara sum and serves
//! as the reference they are checked against.

pub mod commands;
pub mod config;
pub mod dielectric;
pub mod error;
pub mod force;
pub mod lifshitz;
pub mod output;
pub mod perturbative;
pub mod quadrature;
pub mod quantities;
pub mod scenarios;
pub mod validation;

pub use dielectric::{ApproachVariant, MetalModel};
pub use error::{CasimirError, Result};
pub use force::{ForceResult, Geometry};
pub use quantities::{Constants, Separation, SphereRadius, Temperature};
