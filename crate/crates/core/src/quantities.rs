//! Physical constants, unit-carrying scalars and the derived scales that
//! every force formula is written in terms of.
//!
//! Everything here is SI. Conversions from μm / nm / mm happen at the CLI
//! boundary (see [`crate::config`]).

use serde::Serialize;
use std::fmt;

use crate::error::{CasimirError, Result};

/// Fundamental constants (CODATA 2018).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Riemann ζ(3).
    pub zeta3: f64,
    pub pi: f64,
}

impl Constants {
    pub const CODATA2018: Constants = Constants {
        hbar: 1.054_571_817e-34,
        c: 299_792_458.0,
        k_b: 1.380_649e-23,
        zeta3: 1.202_056_903_159_594_3,
        pi: std::f64::consts::PI,
    };

    /// A copy with ħ and c scaled by `1 + fraction` and k_B by
    /// `1 − fraction`, which shifts `k_B T / ħc` by about `−2·fraction`.
    ///
    /// Only used to check that the validation report is sensitive to the
    /// constants it is fed.
    pub fn perturbed(&self, fraction: f64) -> Constants {
        Constants {
            hbar: self.hbar * (1.0 + fraction),
            c: self.c * (1.0 + fraction),
            k_b: self.k_b * (1.0 - fraction),
            ..*self
        }
    }

    /// ħc, J·m.
    pub fn hbar_c(&self) -> f64 {
        self.hbar * self.c
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::CODATA2018
    }
}

/// Upper end of the separation range the low-temperature expansions cover.
pub const MAX_VALID_SEPARATION: f64 = 2.0e-6;
/// Highest temperature the expansions are trusted at.
pub const MAX_VALID_TEMPERATURE: f64 = 350.0;

fn check_finite(what: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(CasimirError::domain(what, format!("{value} is not finite")))
    }
}

/// Plate–plate or sphere–plate gap `a`, meters.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Separation(f64);

impl Separation {
    pub fn new(meters: f64) -> Result<Self> {
        check_finite("separation", meters)?;
        if meters <= 0.0 {
            return Err(CasimirError::domain(
                "separation",
                format!("must be positive, got {meters} m"),
            ));
        }
        Ok(Self(meters))
    }

    pub fn from_micrometers(um: f64) -> Result<Self> {
        Self::new(um * 1e-6)
    }

    pub fn meters(self) -> f64 {
        self.0
    }

    pub fn micrometers(self) -> f64 {
        self.0 * 1e6
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} μm", self.micrometers())
    }
}

/// Absolute temperature, kelvin.
///
/// Zero is representable so that the closed-form expansions can be taken to
/// their `T = 0` limit; the Matsubara engine rejects it.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Temperature(f64);

impl Temperature {
    pub const ZERO: Temperature = Temperature(0.0);

    pub fn new(kelvin: f64) -> Result<Self> {
        check_finite("temperature", kelvin)?;
        if kelvin <= 0.0 {
            return Err(CasimirError::domain(
                "temperature",
                format!("must be positive, got {kelvin} K"),
            ));
        }
        Ok(Self(kelvin))
    }

    pub fn kelvin(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Temperature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} K", self.0)
    }
}

/// Sphere radius `R`, meters.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct SphereRadius(f64);

impl SphereRadius {
    pub fn new(meters: f64) -> Result<Self> {
        check_finite("sphere radius", meters)?;
        if meters <= 0.0 {
            return Err(CasimirError::domain(
                "sphere radius",
                format!("must be positive, got {meters} m"),
            ));
        }
        Ok(Self(meters))
    }

    pub fn from_millimeters(mm: f64) -> Result<Self> {
        Self::new(mm * 1e-3)
    }

    pub fn meters(self) -> f64 {
        self.0
    }
}

/// `T_eff = ħc / (2 a k_B)`: the temperature whose thermal photons match
/// the cavity's characteristic frequency `c / 2a`.
pub fn effective_temperature(a: Separation) -> Temperature {
    effective_temperature_with(&Constants::CODATA2018, a)
}

pub fn effective_temperature_with(k: &Constants, a: Separation) -> Temperature {
    Temperature(k.hbar_c() / (2.0 * a.meters() * k.k_b))
}

/// `δ = λ_p / 2π`. A zero plasma wavelength is the ideal-metal limit.
pub fn skin_depth_parameter(lambda_p: f64) -> Result<f64> {
    check_finite("plasma wavelength", lambda_p)?;
    if lambda_p < 0.0 {
        return Err(CasimirError::domain(
            "plasma wavelength",
            format!("must be non-negative, got {lambda_p} m"),
        ));
    }
    Ok(lambda_p / (2.0 * std::f64::consts::PI))
}

/// The two small parameters of the low-temperature expansion at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedScales {
    pub t_eff: f64,
    pub delta: f64,
    pub delta_over_a: f64,
    pub t_over_teff: f64,
}

impl DerivedScales {
    pub fn new(a: Separation, t: Temperature, lambda_p: f64) -> Result<Self> {
        Self::with_constants(&Constants::CODATA2018, a, t, lambda_p)
    }

    pub fn with_constants(
        k: &Constants,
        a: Separation,
        t: Temperature,
        lambda_p: f64,
    ) -> Result<Self> {
        let t_eff = effective_temperature_with(k, a).kelvin();
        let delta = skin_depth_parameter(lambda_p)?;
        Ok(Self {
            t_eff,
            delta,
            delta_over_a: delta / a.meters(),
            t_over_teff: t.kelvin() / t_eff,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RangeFlag {
    InRange,
    BelowRange,
    AboveRange,
}

impl RangeFlag {
    pub fn is_in_range(self) -> bool {
        self == RangeFlag::InRange
    }
}

/// Per-parameter validity of an evaluation point. Never blocks a
/// computation; results carry it so callers can surface warnings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidityReport {
    pub separation: RangeFlag,
    pub t1: RangeFlag,
    pub t2: RangeFlag,
    /// `a / R`, the order of the proximity-force error. Only set for
    /// sphere–plate evaluations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_over_r: Option<f64>,
    pub warnings: Vec<String>,
}

impl ValidityReport {
    pub fn all_in_range(&self) -> bool {
        self.separation.is_in_range() && self.t1.is_in_range() && self.t2.is_in_range()
    }

    pub fn with_sphere_radius(mut self, a: Separation, r: SphereRadius) -> Self {
        let ratio = a.meters() / r.meters();
        if ratio > 0.01 {
            self.warnings.push(format!(
                "a/R = {ratio:.3e}: proximity-force error is of this order"
            ));
        }
        self.a_over_r = Some(ratio);
        self
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }
}

fn classify_temperature(name: &str, t: Temperature, warnings: &mut Vec<String>) -> RangeFlag {
    if t.kelvin() > MAX_VALID_TEMPERATURE {
        warnings.push(format!(
            "{name} = {} K is above {MAX_VALID_TEMPERATURE} K",
            t.kelvin()
        ));
        RangeFlag::AboveRange
    } else {
        RangeFlag::InRange
    }
}

/// Flags parameters outside `λ_p ≤ a ≤ 2 μm`, `T ≤ 350 K`.
pub fn classify_validity(
    a: Separation,
    t1: Temperature,
    t2: Temperature,
    lambda_p: f64,
) -> ValidityReport {
    let mut warnings = Vec::new();
    let separation = if a.meters() < lambda_p {
        warnings.push(format!(
            "separation {} μm is below the plasma wavelength {} nm",
            a.micrometers(),
            lambda_p * 1e9
        ));
        RangeFlag::BelowRange
    } else if a.meters() > MAX_VALID_SEPARATION {
        warnings.push(format!(
            "separation {} μm is above {} μm",
            a.micrometers(),
            MAX_VALID_SEPARATION * 1e6
        ));
        RangeFlag::AboveRange
    } else {
        RangeFlag::InRange
    };
    let t1 = classify_temperature("T1", t1, &mut warnings);
    let t2 = classify_temperature("T2", t2, &mut warnings);
    ValidityReport {
        separation,
        t1,
        t2,
        a_over_r: None,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn um(x: f64) -> Separation {
        Separation::from_micrometers(x).unwrap()
    }

    fn kelvin(x: f64) -> Temperature {
        Temperature::new(x).unwrap()
    }

    #[test]
    fn effective_temperature_examples() {
        // ħc/(2 a k_B) evaluated by hand with CODATA 2018.
        let expected_1um = 1.054_571_817e-34 * 299_792_458.0 / (2.0e-6 * 1.380_649e-23);
        let t = effective_temperature(um(1.0)).kelvin();
        assert_eq!(t, expected_1um);
        assert!((t - 1145.0).abs() < 1.0, "{t}");
        assert!((effective_temperature(um(2.0)).kelvin() - 572.5).abs() < 0.5);
        assert!((effective_temperature(um(0.5)).kelvin() - 2290.0).abs() < 1.0);
    }

    #[test]
    fn effective_temperature_times_separation_is_constant() {
        let k = Constants::CODATA2018;
        let reference = k.hbar_c() / (2.0 * k.k_b);
        for x in [0.15, 0.3, 0.5, 1.0, 1.7, 2.0, 3.0] {
            let a = um(x);
            let product = effective_temperature(a).kelvin() * a.meters();
            assert!(((product - reference) / reference).abs() < 1e-12);
        }
    }

    #[test]
    fn skin_depth_examples() {
        let d = skin_depth_parameter(136e-9).unwrap();
        assert!((d - 21.65e-9).abs() < 0.01e-9, "{d}");
        assert_eq!(skin_depth_parameter(0.0).unwrap(), 0.0);
        let d = skin_depth_parameter(2.0 * std::f64::consts::PI * 1e-8).unwrap();
        assert!((d - 1e-8).abs() < 1e-22);
        assert!(skin_depth_parameter(-1e-9).is_err());
        assert!(skin_depth_parameter(f64::NAN).is_err());
    }

    #[test]
    fn constructors_reject_bad_values() {
        assert!(Separation::new(0.0).is_err());
        assert!(Separation::new(-1e-6).is_err());
        assert!(Separation::new(f64::INFINITY).is_err());
        assert!(Separation::new(f64::NAN).is_err());
        assert!(Temperature::new(0.0).is_err());
        assert!(Temperature::new(f64::NAN).is_err());
        assert!(SphereRadius::new(-1.0).is_err());
    }

    #[test]
    fn validity_examples() {
        let r = classify_validity(um(0.5), kelvin(300.0), kelvin(350.0), 136e-9);
        assert!(r.all_in_range());
        assert!(r.warnings.is_empty());

        let r = classify_validity(um(0.1), kelvin(300.0), kelvin(350.0), 136e-9);
        assert_eq!(r.separation, RangeFlag::BelowRange);

        let r = classify_validity(um(3.0), kelvin(300.0), kelvin(350.0), 136e-9);
        assert_eq!(r.separation, RangeFlag::AboveRange);

        let r = classify_validity(um(1.0), kelvin(300.0), kelvin(400.0), 136e-9);
        assert_eq!(r.t2, RangeFlag::AboveRange);
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn derived_scales_small_parameter_below_one_in_range() {
        for x in [0.15, 0.5, 1.0, 2.0] {
            let s = DerivedScales::new(um(x), kelvin(300.0), 136e-9).unwrap();
            assert!(s.delta_over_a < 1.0);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn effective_temperature_strictly_decreasing(a in 1e-8f64..1e-4, f in 1.0001f64..10.0) {
                let lo = effective_temperature(Separation::new(a).unwrap()).kelvin();
                let hi = effective_temperature(Separation::new(a * f).unwrap()).kelvin();
                prop_assert!(hi < lo);
            }

            #[test]
            fn skin_depth_is_linear(l in 0.0f64..1e-6, k in 1e-3f64..1e3) {
                let lhs = skin_depth_parameter(k * l).unwrap();
                let rhs = k * skin_depth_parameter(l).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-15 * rhs.abs().max(1e-300));
            }
        }
    }
}
