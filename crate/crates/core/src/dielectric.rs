//! Plasma-model permittivity on the imaginary frequency axis and the
//! Fresnel reflection coefficients built from it.

use serde::Serialize;
use std::fmt;

use crate::error::{CasimirError, Result};
use crate::quantities::Constants;

/// Boundary material.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MetalModel {
    /// Perfect reflector at every frequency.
    IdealMetal,
    /// `ε(ω) = 1 − ω_p²/ω²` with `ω_p = 2πc/λ_p`.
    Plasma { lambda_p: f64 },
}

impl MetalModel {
    /// Gold, `λ_p = 136 nm`.
    pub const GOLD: MetalModel = MetalModel::Plasma { lambda_p: 136e-9 };

    pub fn plasma(lambda_p: f64) -> Result<Self> {
        if !lambda_p.is_finite() || lambda_p <= 0.0 {
            return Err(CasimirError::domain(
                "plasma wavelength",
                format!("plasma model needs a positive wavelength, got {lambda_p} m"),
            ));
        }
        Ok(MetalModel::Plasma { lambda_p })
    }

    /// `0` maps to [`MetalModel::IdealMetal`].
    pub fn from_plasma_wavelength(lambda_p: f64) -> Result<Self> {
        if lambda_p == 0.0 {
            Ok(MetalModel::IdealMetal)
        } else {
            Self::plasma(lambda_p)
        }
    }

    /// Plasma wavelength, zero for the ideal metal.
    pub fn plasma_wavelength(&self) -> f64 {
        match *self {
            MetalModel::IdealMetal => 0.0,
            MetalModel::Plasma { lambda_p } => lambda_p,
        }
    }

    /// `ω_p = 2πc/λ_p` in rad/s; `None` for the ideal metal.
    pub fn plasma_frequency(&self) -> Option<f64> {
        self.plasma_frequency_with(&Constants::CODATA2018)
    }

    pub fn plasma_frequency_with(&self, k: &Constants) -> Option<f64> {
        match *self {
            MetalModel::IdealMetal => None,
            MetalModel::Plasma { lambda_p } => Some(2.0 * k.pi * k.c / lambda_p),
        }
    }

    pub fn is_ideal(&self) -> bool {
        matches!(self, MetalModel::IdealMetal)
    }
}

impl fmt::Display for MetalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetalModel::IdealMetal => f.write_str("ideal metal"),
            MetalModel::Plasma { lambda_p } => write!(f, "plasma (λ_p = {} nm)", lambda_p * 1e9),
        }
    }
}

/// How the zero Matsubara frequency is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproachVariant {
    /// Plasma-model reflection at every Matsubara order, zero included.
    PlasmaZeroFrequency,
    /// TE reflection set to zero at `ξ = 0`; everything else as above.
    ModifiedTE,
}

impl ApproachVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            ApproachVariant::PlasmaZeroFrequency => "plasma",
            ApproachVariant::ModifiedTE => "modified-te",
        }
    }
}

impl fmt::Display for ApproachVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectionPair {
    pub r_tm: f64,
    pub r_te: f64,
}

impl ReflectionPair {
    pub const IDEAL: ReflectionPair = ReflectionPair {
        r_tm: 1.0,
        r_te: -1.0,
    };
}

/// `ε(iξ)`. Returns `+∞` for the ideal metal.
///
/// `ξ = 0` is rejected for the plasma model; the zero-frequency term is
/// handled through the analytic limits in [`reflection_coefficients`].
pub fn permittivity_imaginary(model: MetalModel, xi: f64) -> Result<f64> {
    match model {
        MetalModel::IdealMetal => Ok(f64::INFINITY),
        MetalModel::Plasma { .. } => {
            if !(xi > 0.0) || !xi.is_finite() {
                return Err(CasimirError::domain(
                    "imaginary frequency",
                    format!("plasma permittivity needs ξ > 0, got {xi} rad/s"),
                ));
            }
            let wp = model.plasma_frequency().unwrap_or_default();
            Ok(1.0 + (wp / xi).powi(2))
        }
    }
}

/// TM and TE reflection coefficients at imaginary frequency `xi` (rad/s)
/// and transverse wavevector `k_perp` (1/m).
pub fn reflection_coefficients(model: MetalModel, xi: f64, k_perp: f64) -> Result<ReflectionPair> {
    if !(xi >= 0.0) || !(k_perp >= 0.0) || !xi.is_finite() || k_perp.is_nan() {
        return Err(CasimirError::domain(
            "reflection arguments",
            format!("need ξ ≥ 0 and k⊥ ≥ 0, got ξ = {xi}, k⊥ = {k_perp}"),
        ));
    }
    if xi == 0.0 && k_perp == 0.0 {
        return Err(CasimirError::domain(
            "reflection arguments",
            "ξ and k⊥ cannot both vanish",
        ));
    }
    let wp = match model.plasma_frequency() {
        None => return Ok(ReflectionPair::IDEAL),
        Some(wp) => wp,
    };
    let c = Constants::CODATA2018.c;
    // Scale to 1/m.
    let zeta = xi / c;
    let omega = wp / c;
    Ok(plasma_reflection(zeta, k_perp, omega))
}

/// Plasma-model reflection in any consistent wavenumber units: `zeta` is
/// `ξ/c`, `q` the transverse wavevector and `omega` is `ω_p/c`, all scaled
/// by the same length.
pub(crate) fn plasma_reflection(zeta: f64, q: f64, omega: f64) -> ReflectionPair {
    if q.is_infinite() {
        return ReflectionPair { r_tm: 0.0, r_te: 0.0 };
    }
    plasma_reflection_kappa(zeta, zeta.hypot(q), omega)
}

/// Same as [`plasma_reflection`] but parameterized by `κ = √(ζ² + q²)`,
/// the variable the Lifshitz integrals run over.
pub(crate) fn plasma_reflection_kappa(zeta: f64, kappa: f64, omega: f64) -> ReflectionPair {
    let k = kappa.hypot(omega);
    // κ − k = −ω²/(κ + k); avoids cancellation when κ ≫ ω.
    let r_te = -(omega * omega) / (kappa + k).powi(2);
    let r_tm = if zeta == 0.0 {
        1.0
    } else {
        let eps = 1.0 + (omega / zeta).powi(2);
        (eps * kappa - k) / (eps * kappa + k)
    };
    ReflectionPair { r_tm, r_te }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gold_wp() -> f64 {
        MetalModel::GOLD.plasma_frequency().unwrap()
    }

    #[test]
    fn permittivity_examples() {
        let wp = gold_wp();
        assert!((permittivity_imaginary(MetalModel::GOLD, wp).unwrap() - 2.0).abs() < 1e-15);
        assert!((permittivity_imaginary(MetalModel::GOLD, 2.0 * wp).unwrap() - 1.25).abs() < 1e-15);

        let k = Constants::CODATA2018;
        let xi1 = 2.0 * k.pi * k.k_b * 300.0 / k.hbar;
        assert!((xi1 - 2.47e14).abs() < 0.01e14);
        assert!((wp - 1.385e16).abs() < 0.001e16);
        let eps = permittivity_imaginary(MetalModel::GOLD, xi1).unwrap();
        assert!((eps - 3.15e3).abs() < 0.01e3, "{eps}");
    }

    #[test]
    fn permittivity_rejects_zero_frequency_for_plasma() {
        assert!(permittivity_imaginary(MetalModel::GOLD, 0.0).is_err());
        assert!(permittivity_imaginary(MetalModel::IdealMetal, 0.0)
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn ideal_metal_reflects_perfectly() {
        for (xi, q) in [(0.0, 1.0), (1e14, 0.0), (3e15, 5e7)] {
            let r = reflection_coefficients(MetalModel::IdealMetal, xi, q).unwrap();
            assert_eq!(r, ReflectionPair::IDEAL);
            assert_eq!(r.r_tm * r.r_tm, 1.0);
            assert_eq!(r.r_te * r.r_te, 1.0);
        }
    }

    #[test]
    fn zero_frequency_plasma_limits() {
        let q = gold_wp() / Constants::CODATA2018.c;
        let r = reflection_coefficients(MetalModel::GOLD, 0.0, q).unwrap();
        let expected = (1.0 - 2f64.sqrt()) / (1.0 + 2f64.sqrt());
        assert!((r.r_te - expected).abs() < 1e-14);
        assert!((r.r_te + 0.1716).abs() < 1e-4);
        assert_eq!(r.r_tm, 1.0);

        let far = reflection_coefficients(MetalModel::GOLD, 0.0, 1e30).unwrap();
        assert!(far.r_te.abs() < 1e-40);
        let inf = reflection_coefficients(MetalModel::GOLD, 0.0, f64::INFINITY).unwrap();
        assert_eq!(inf.r_te, 0.0);
    }

    #[test]
    fn bad_arguments_rejected() {
        assert!(reflection_coefficients(MetalModel::GOLD, -1.0, 1.0).is_err());
        assert!(reflection_coefficients(MetalModel::GOLD, 1.0, -1.0).is_err());
        assert!(reflection_coefficients(MetalModel::GOLD, 0.0, 0.0).is_err());
        assert!(MetalModel::plasma(0.0).is_err());
        assert_eq!(
            MetalModel::from_plasma_wavelength(0.0).unwrap(),
            MetalModel::IdealMetal
        );
    }

    #[test]
    fn approaches_ideal_metal_as_plasma_wavelength_vanishes() {
        let tiny = MetalModel::plasma(1e-12).unwrap();
        for (xi, q) in [(1e13, 1e6), (2.5e14, 1e6), (1e14, 2e6), (0.0, 2e6)] {
            let r = reflection_coefficients(tiny, xi, q).unwrap();
            assert!((r.r_tm - 1.0).abs() < 1e-6, "{r:?}");
            assert!((r.r_te + 1.0).abs() < 1e-6, "{r:?}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn permittivity_real_above_one_and_decreasing(xi in 1e10f64..1e18, f in 1.001f64..100.0) {
                let e1 = permittivity_imaginary(MetalModel::GOLD, xi).unwrap();
                let e2 = permittivity_imaginary(MetalModel::GOLD, xi * f).unwrap();
                prop_assert!(e1 > 1.0 && e2 > 1.0);
                prop_assert!(e2 < e1);
            }

            #[test]
            fn reflection_bounded(xi in 0.0f64..1e17, q in 1e3f64..1e10, lp in 1e-9f64..1e-5) {
                let r = reflection_coefficients(MetalModel::plasma(lp).unwrap(), xi, q).unwrap();
                prop_assert!(r.r_tm.abs() <= 1.0);
                prop_assert!(r.r_te.abs() <= 1.0);
            }

            #[test]
            fn zero_frequency_te_negative(q in 1e-3f64..1e12) {
                let r = reflection_coefficients(MetalModel::GOLD, 0.0, q).unwrap();
                prop_assert!(r.r_te < 0.0);
            }
        }
    }
}
