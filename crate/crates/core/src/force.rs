//! Result records shared by the closed-form and the Lifshitz evaluations.

use serde::Serialize;

use crate::dielectric::ApproachVariant;
use crate::quantities::ValidityReport;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Geometry {
    /// Force per unit area, N/m².
    ParallelPlates,
    /// Force, N.
    SpherePlate { radius: f64 },
}

impl Geometry {
    pub fn unit(&self) -> &'static str {
        match self {
            Geometry::ParallelPlates => "N/m^2",
            Geometry::SpherePlate { .. } => "N",
        }
    }
}

/// Terms of a low-temperature expansion, each relative to `base`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerturbativeTerms {
    /// Zero-temperature ideal-metal force.
    pub base: f64,
    /// Pure temperature correction (ideal metal).
    pub thermal_ideal: f64,
    /// Leading `δ/a` correction at zero temperature.
    pub conductivity_first_order: f64,
    /// Products of `δ/a` with powers of `T/T_eff`.
    pub cross_term: f64,
}

impl PerturbativeTerms {
    pub fn relative_correction(&self) -> f64 {
        self.thermal_ideal + self.conductivity_first_order + self.cross_term
    }

    pub fn total(&self) -> f64 {
        self.base * (1.0 + self.relative_correction())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Method {
    /// Closed-form expansion. The `(δ/a)^i` terms for
    /// `i = omitted_orders.0 ..= omitted_orders.1` are not included.
    Perturbative {
        omitted_orders: (u32, u32),
        terms: PerturbativeTerms,
    },
    /// Full Matsubara sum.
    LifshitzOracle { matsubara_terms: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForceResult {
    /// Negative means attraction.
    pub value: f64,
    pub geometry: Geometry,
    pub method: Method,
    pub approach: ApproachVariant,
    pub validity: ValidityReport,
}

impl ForceResult {
    pub fn terms(&self) -> Option<&PerturbativeTerms> {
        match &self.method {
            Method::Perturbative { terms, .. } => Some(terms),
            Method::LifshitzOracle { .. } => None,
        }
    }
}
