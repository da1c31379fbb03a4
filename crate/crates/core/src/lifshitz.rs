//! Finite-temperature Lifshitz formula for two identical half-spaces,
//! evaluated as a Matsubara sum of transverse-wavevector integrals, plus
//! the proximity-force map to the sphere–plate geometry.
//!
//! All integrals are written in the dimensionless variable `y = 2aκ`, where
//! `κ = √(q² + ξ²/c²)`. In these units the n-th Matsubara frequency is
//! `ζ_n = 2aξ_n/c = 2πn·T/T_eff` and the plasma frequency is
//! `Ω = 2aω_p/c`. With `S_E` and `S_P` the primed Matsubara sums of
//!
//! ```text
//!   E_n = ∫_{ζ_n}^∞ y   Σ_pol ln(1 − r² e^{−y}) dy
//!   P_n = ∫_{ζ_n}^∞ y²  Σ_pol r² e^{−y} / (1 − r² e^{−y}) dy
//! ```
//!
//! the free energy per area is `k_B T S_E / (8π a²)` and the pressure is
//! `−k_B T S_P / (8π a³)`.

use serde::Serialize;

use crate::dielectric::{plasma_reflection_kappa, ApproachVariant, MetalModel};
use crate::error::{CasimirError, Result};
use crate::force::{ForceResult, Geometry, Method};
use crate::quadrature::{integrate, integrate_exponential_tail, QuadratureSpec};
use crate::quantities::{
    classify_validity, effective_temperature_with, Constants, Separation, SphereRadius,
    Temperature,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatsubaraSpec {
    pub relative_tail_tolerance: f64,
    pub max_terms: usize,
}

impl Default for MatsubaraSpec {
    fn default() -> Self {
        Self {
            relative_tail_tolerance: 1e-9,
            max_terms: 100_000,
        }
    }
}

/// Accuracy knobs for one engine evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
pub struct EngineSpec {
    pub matsubara: MatsubaraSpec,
    pub quadrature: QuadratureSpec,
}

impl EngineSpec {
    /// Same tolerance for the Matsubara tail and the quadrature.
    pub fn with_tolerance(tolerance: f64) -> Self {
        let mut spec = Self::default();
        spec.matsubara.relative_tail_tolerance = tolerance;
        spec.quadrature.relative_tolerance = tolerance;
        spec
    }
}

/// A converged Matsubara sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraSum {
    /// Primed sum of the dimensionless integrals.
    pub value: f64,
    pub terms: usize,
    /// Accumulated quadrature error of all terms.
    pub quadrature_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Integrand {
    FreeEnergy,
    Pressure,
}

struct Point {
    /// `ζ_1`.
    zeta_step: f64,
    /// `Ω`; `None` for the ideal metal.
    omega: Option<f64>,
    approach: ApproachVariant,
}

impl Point {
    fn new(
        k: &Constants,
        a: Separation,
        t: Temperature,
        model: MetalModel,
        approach: ApproachVariant,
    ) -> Result<Self> {
        if t.kelvin() <= 0.0 {
            return Err(CasimirError::domain(
                "temperature",
                "the Matsubara sum needs T > 0",
            ));
        }
        let t_eff = effective_temperature_with(k, a).kelvin();
        Ok(Self {
            zeta_step: 2.0 * k.pi * t.kelvin() / t_eff,
            omega: model
                .plasma_frequency_with(k)
                .map(|wp| 2.0 * a.meters() * wp / k.c),
            approach,
        })
    }
}

/// Squared reflection coefficients `(r_TM², r_TE²)` at `(ζ, y)`.
fn reflectivities(point: &Point, zeta: f64, y: f64) -> (f64, f64) {
    let (tm, te) = match point.omega {
        None => (1.0, 1.0),
        Some(omega) => {
            let r = plasma_reflection_kappa(zeta, y, omega);
            (r.r_tm * r.r_tm, r.r_te * r.r_te)
        }
    };
    if zeta == 0.0 && point.approach == ApproachVariant::ModifiedTE {
        (tm, 0.0)
    } else {
        (tm, te)
    }
}

fn log_term(r2: f64, y: f64) -> f64 {
    if r2 == 0.0 {
        return 0.0;
    }
    if r2 == 1.0 && y < std::f64::consts::LN_2 {
        // ln(1 − e^{−y}) without cancellation near y = 0
        return (-(-y).exp_m1()).ln();
    }
    (-r2 * (-y).exp()).ln_1p()
}

fn occupation_term(r2: f64, y: f64) -> f64 {
    if r2 == 0.0 {
        return 0.0;
    }
    if r2 == 1.0 {
        return 1.0 / y.exp_m1();
    }
    let x = r2 * (-y).exp();
    x / (1.0 - x)
}

fn integrand(point: &Point, kind: Integrand, zeta: f64, y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    let (tm, te) = reflectivities(point, zeta, y);
    match kind {
        Integrand::FreeEnergy => y * (log_term(tm, y) + log_term(te, y)),
        Integrand::Pressure => y * y * (occupation_term(tm, y) + occupation_term(te, y)),
    }
}

/// Bound on `∫_L^∞ |integrand| dy`, using `r² ≤ 1` for both polarizations.
fn tail_bound(kind: Integrand, lower: f64) -> f64 {
    let e = (-lower).exp();
    let occupation = e / (1.0 - e);
    match kind {
        Integrand::FreeEnergy => 2.0 * (lower + 1.0) * occupation,
        Integrand::Pressure => 2.0 * (lower * lower + 2.0 * lower + 2.0) * occupation,
    }
}

fn matsubara_sum(point: &Point, kind: Integrand, spec: &EngineSpec) -> Result<MatsubaraSum> {
    let tol = spec.matsubara.relative_tail_tolerance;
    let mut sum = 0.0;
    let mut quadrature_error = 0.0;
    let mut previous: Option<f64> = None;
    for n in 0..spec.matsubara.max_terms {
        let zeta = n as f64 * point.zeta_step;
        let estimate = integrate_exponential_tail(
            |t| integrand(point, kind, zeta, zeta + t),
            0.0,
            40.0,
            |t| tail_bound(kind, zeta + t),
            &spec.quadrature,
        )?;
        let weight = if n == 0 { 0.5 } else { 1.0 };
        let term = weight * estimate.value;
        sum += term;
        quadrature_error += weight * estimate.error;

        if n >= 1 {
            if term == 0.0 {
                return Ok(MatsubaraSum { value: sum, terms: n + 1, quadrature_error });
            }
            if let Some(prev) = previous.filter(|p| *p != 0.0) {
                let ratio = (term / prev).abs();
                if ratio < 1.0 {
                    let tail = term.abs() * ratio / (1.0 - ratio);
                    if tail < tol * sum.abs() {
                        return Ok(MatsubaraSum { value: sum, terms: n + 1, quadrature_error });
                    }
                }
            }
        }
        previous = Some(term);
    }
    Err(CasimirError::Numerical {
        stage: "Matsubara sum",
        reason: format!(
            "tail did not fall below {tol:e} within {} terms",
            spec.matsubara.max_terms
        ),
        estimate: sum,
        error: quadrature_error,
        evaluations: spec.matsubara.max_terms,
    })
}

/// Dimensionless primed sum `S_E` (see module docs).
pub fn free_energy_sum(
    a: Separation,
    t: Temperature,
    model: MetalModel,
    approach: ApproachVariant,
    spec: &EngineSpec,
) -> Result<MatsubaraSum> {
    let point = Point::new(&Constants::CODATA2018, a, t, model, approach)?;
    matsubara_sum(&point, Integrand::FreeEnergy, spec)
}

/// Dimensionless primed sum `S_P` (see module docs).
pub fn pressure_sum(
    a: Separation,
    t: Temperature,
    model: MetalModel,
    approach: ApproachVariant,
    spec: &EngineSpec,
) -> Result<MatsubaraSum> {
    let point = Point::new(&Constants::CODATA2018, a, t, model, approach)?;
    matsubara_sum(&point, Integrand::Pressure, spec)
}

/// Free energy per unit area, J/m².
pub fn plate_free_energy_per_area(
    a: Separation,
    t: Temperature,
    model: MetalModel,
    approach: ApproachVariant,
    spec: &EngineSpec,
) -> Result<f64> {
    let k = Constants::CODATA2018;
    let s = free_energy_sum(a, t, model, approach, spec)?;
    Ok(k.k_b * t.kelvin() * s.value / (8.0 * k.pi * a.meters().powi(2)))
}

/// Pressure between plates, N/m². Summed from its own integrand rather
/// than by differentiating the free energy.
pub fn plate_pressure(
    a: Separation,
    t: Temperature,
    model: MetalModel,
    approach: ApproachVariant,
    spec: &EngineSpec,
) -> Result<ForceResult> {
    let k = Constants::CODATA2018;
    let s = pressure_sum(a, t, model, approach, spec)?;
    Ok(ForceResult {
        value: -k.k_b * t.kelvin() * s.value / (8.0 * k.pi * a.meters().powi(3)),
        geometry: Geometry::ParallelPlates,
        method: Method::LifshitzOracle { matsubara_terms: s.terms },
        approach,
        validity: classify_validity(a, t, t, model.plasma_wavelength()),
    })
}

/// Sphere–plate force in the proximity-force approximation,
/// `2πR · E(a)` with `E` the plate free energy per area, N.
pub fn sphere_plate_force_pfa(
    a: Separation,
    t: Temperature,
    radius: SphereRadius,
    model: MetalModel,
    approach: ApproachVariant,
    spec: &EngineSpec,
) -> Result<ForceResult> {
    let k = Constants::CODATA2018;
    let s = free_energy_sum(a, t, model, approach, spec)?;
    let energy = k.k_b * t.kelvin() * s.value / (8.0 * k.pi * a.meters().powi(2));
    Ok(ForceResult {
        value: 2.0 * k.pi * radius.meters() * energy,
        geometry: Geometry::SpherePlate { radius: radius.meters() },
        method: Method::LifshitzOracle { matsubara_terms: s.terms },
        approach,
        validity: classify_validity(a, t, t, model.plasma_wavelength())
            .with_sphere_radius(a, radius),
    })
}

/// Zero-frequency TE contribution to the sphere–plate force for the
/// plasma model, by direct quadrature:
///
/// ```text
///   (k_B T R / 8a²) ∫₀^∞ y ln[1 − ((y − √(Ω² + y²))/(y + √(Ω² + y²)))² e^{−y}] dy
/// ```
///
/// with `Ω = 2aω_p/c`. This is the amount by which the modified-TE force
/// exceeds the plasma one.
pub fn te_zero_frequency_sphere_term(
    a: Separation,
    t: Temperature,
    radius: SphereRadius,
    lambda_p: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let k = Constants::CODATA2018;
    let model = MetalModel::plasma(lambda_p)?;
    let omega = 2.0 * a.meters() * model.plasma_frequency_with(&k).unwrap_or_default() / k.c;
    let integral = te_zero_frequency_integral(omega, spec)?;
    Ok(k.k_b * t.kelvin() * radius.meters() / (8.0 * a.meters().powi(2)) * integral)
}

/// `∫₀^∞ y ln(1 − r_TE² e^{−y}) dy` at zero frequency, `Ω` dimensionless.
pub fn te_zero_frequency_integral(omega: f64, spec: &QuadratureSpec) -> Result<f64> {
    let f = |y: f64| {
        if y <= 0.0 {
            return 0.0;
        }
        let root = (omega * omega + y * y).sqrt();
        let r = (y - root) / (y + root);
        y * (-(r * r) * (-y).exp()).ln_1p()
    };
    let bound = |l: f64| {
        let e = (-l).exp();
        (l + 1.0) * e / (1.0 - e)
    };
    // Most of the weight sits at y ≲ min(Ω, 10); split there so the
    // logarithmic-looking knee is resolved before the window grows.
    let knee = omega.clamp(1e-6, 10.0);
    let head = integrate(f, 0.0, knee, spec)?;
    let tail = integrate_exponential_tail(f, knee, 40.0, bound, spec)?;
    Ok(head.value + tail.value)
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

    const PZF: ApproachVariant = ApproachVariant::PlasmaZeroFrequency;

    #[test]
    fn ideal_metal_zero_temperature_energy() {
        let k = Constants::CODATA2018;
        let a = um(1.0);
        let e = plate_free_energy_per_area(a, kelvin(1.0), MetalModel::IdealMetal, PZF, &EngineSpec::default())
            .unwrap();
        let expected = -k.pi.powi(2) * k.hbar_c() / (720.0 * a.meters().powi(3));
        assert!(((e - expected) / expected).abs() < 1e-3, "{e} vs {expected}");
    }

    #[test]
    fn ideal_metal_zero_temperature_pressure() {
        let k = Constants::CODATA2018;
        let a = um(1.0);
        let p = plate_pressure(a, kelvin(1.0), MetalModel::IdealMetal, PZF, &EngineSpec::default())
            .unwrap();
        let expected = -k.pi.powi(2) * k.hbar_c() / (240.0 * a.meters().powi(4));
        assert!(((p.value - expected) / expected).abs() < 1e-3);
        assert!((p.value + 1.3e-3).abs() < 0.01e-3);
    }

    #[test]
    fn ideal_metal_sphere_zero_temperature() {
        let k = Constants::CODATA2018;
        let a = um(1.0);
        let r = SphereRadius::from_millimeters(1.0).unwrap();
        let f = sphere_plate_force_pfa(a, kelvin(1.0), r, MetalModel::IdealMetal, PZF, &EngineSpec::default())
            .unwrap();
        let expected = -k.pi.powi(3) * k.hbar_c() * r.meters() / (360.0 * a.meters().powi(3));
        assert!(((f.value - expected) / expected).abs() < 1e-3);
        assert!(f.validity.a_over_r.is_some());
    }

    #[test]
    fn zero_temperature_is_rejected() {
        let err = plate_pressure(um(1.0), Temperature::ZERO, MetalModel::GOLD, PZF, &EngineSpec::default());
        assert!(matches!(err, Err(CasimirError::Domain { .. })));
    }

    #[test]
    fn term_cap_is_a_numerical_error() {
        let mut spec = EngineSpec::default();
        spec.matsubara.max_terms = 3;
        let err = plate_pressure(um(1.0), kelvin(300.0), MetalModel::GOLD, PZF, &spec).unwrap_err();
        assert!(matches!(err, CasimirError::Numerical { stage: "Matsubara sum", .. }));
    }

    #[test]
    fn approaches_differ_by_half_weighted_te_term() {
        let a = um(0.5);
        let t = kelvin(300.0);
        let spec = EngineSpec::default();
        let plasma = free_energy_sum(a, t, MetalModel::GOLD, PZF, &spec).unwrap();
        let modified = free_energy_sum(a, t, MetalModel::GOLD, ApproachVariant::ModifiedTE, &spec).unwrap();
        let omega = 2.0 * a.meters() * MetalModel::GOLD.plasma_frequency().unwrap()
            / Constants::CODATA2018.c;
        let te = te_zero_frequency_integral(omega, &spec.quadrature).unwrap();
        let diff = plasma.value - modified.value;
        assert!(((diff - 0.5 * te) / te).abs() < 1e-7, "{diff} vs {}", 0.5 * te);
    }

    #[test]
    fn te_integral_ideal_limit_is_minus_zeta3() {
        let v = te_zero_frequency_integral(1e9, &QuadratureSpec::default()).unwrap();
        assert!((v + 1.202_056_903_159_594_3).abs() < 1e-8, "{v}");
    }

    #[test]
    fn converged_sum_stable_under_tighter_tolerance() {
        let a = um(0.7);
        let t = kelvin(300.0);
        let base = EngineSpec::default();
        let mut wide = base;
        wide.matsubara.max_terms *= 2;
        let tight = EngineSpec::with_tolerance(1e-11);
        let s1 = pressure_sum(a, t, MetalModel::GOLD, PZF, &base).unwrap();
        let s2 = pressure_sum(a, t, MetalModel::GOLD, PZF, &wide).unwrap();
        let s3 = pressure_sum(a, t, MetalModel::GOLD, PZF, &tight).unwrap();
        assert_eq!(s1.value, s2.value);
        assert!(((s1.value - s3.value) / s3.value).abs() < 1e-8);
    }
}
