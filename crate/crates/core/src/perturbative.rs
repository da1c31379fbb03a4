//! Low-temperature, small-skin-depth expansions of the Casimir force.
//!
//! Both expansions are kept to first order in `δ/a`. The `(δ/a)^i` terms
//! with `2 ≤ i ≤ 6` carry temperature-independent coefficients that are not
//! reproduced here; results flag them as an omitted remainder. They cancel
//! in every temperature-difference quantity.

use crate::dielectric::{ApproachVariant, MetalModel};
use crate::error::Result;
use crate::force::{ForceResult, Geometry, Method, PerturbativeTerms};
use crate::quantities::{
    classify_validity, Constants, DerivedScales, Separation, SphereRadius, Temperature,
};

/// Orders of `δ/a` left out of the expansions.
pub const OMITTED_CONDUCTIVITY_ORDERS: (u32, u32) = (2, 6);

/// Separation below which the three-term zero-frequency TE expansion is no
/// longer accurate to better than half a percent for gold.
pub const TE_ASYMPTOTIC_MIN_SEPARATION: f64 = 0.5e-6;

/// `−π²ħc / (240 a⁴)`, N/m².
pub fn plate_force_zero_temperature(k: &Constants, a: Separation) -> f64 {
    let a2 = a.meters() * a.meters();
    -(k.pi * k.pi) * k.hbar_c() / (240.0 * a2 * a2)
}

/// `−π³ħcR / (360 a³)`, N.
pub fn sphere_force_zero_temperature(k: &Constants, a: Separation, radius: SphereRadius) -> f64 {
    let a = a.meters();
    -(k.pi * k.pi * k.pi) * k.hbar_c() * radius.meters() / (360.0 * a * a * a)
}

pub fn plate_terms(
    k: &Constants,
    a: Separation,
    t: Temperature,
    model: MetalModel,
) -> Result<PerturbativeTerms> {
    let s = DerivedScales::with_constants(k, a, t, model.plasma_wavelength())?;
    let t3 = s.t_over_teff.powi(3);
    let t4 = s.t_over_teff.powi(4);
    let x = s.delta_over_a;
    Ok(PerturbativeTerms {
        base: plate_force_zero_temperature(k, a),
        thermal_ideal: t4 / 3.0,
        conductivity_first_order: -16.0 / 3.0 * x,
        cross_term: 16.0 / 3.0 * x * (45.0 * k.zeta3 / (8.0 * k.pi.powi(3))) * t3,
    })
}

pub fn sphere_terms(
    k: &Constants,
    a: Separation,
    t: Temperature,
    radius: SphereRadius,
    model: MetalModel,
) -> Result<PerturbativeTerms> {
    let s = DerivedScales::with_constants(k, a, t, model.plasma_wavelength())?;
    let t3 = s.t_over_teff.powi(3);
    let t4 = s.t_over_teff.powi(4);
    let x = s.delta_over_a;
    Ok(PerturbativeTerms {
        base: sphere_force_zero_temperature(k, a, radius),
        thermal_ideal: 45.0 * k.zeta3 / k.pi.powi(3) * t3 - t4,
        conductivity_first_order: -4.0 * x,
        cross_term: -4.0 * x * (-(45.0 * k.zeta3 / (2.0 * k.pi.powi(3))) * t3 + t4),
    })
}

/// Plate–plate pressure, N/m², first order in `δ/a` and through
/// `(T/T_eff)⁴`.
pub fn plate_force_perturbative(
    a: Separation,
    t: Temperature,
    model: MetalModel,
) -> Result<ForceResult> {
    let terms = plate_terms(&Constants::CODATA2018, a, t, model)?;
    Ok(ForceResult {
        value: terms.total(),
        geometry: Geometry::ParallelPlates,
        method: Method::Perturbative {
            omitted_orders: OMITTED_CONDUCTIVITY_ORDERS,
            terms,
        },
        approach: ApproachVariant::PlasmaZeroFrequency,
        validity: classify_validity(a, t, t, model.plasma_wavelength()),
    })
}

/// Sphere–plate force, N, under the plasma zero-frequency prescription.
pub fn sphere_force_perturbative(
    a: Separation,
    t: Temperature,
    radius: SphereRadius,
    model: MetalModel,
) -> Result<ForceResult> {
    let terms = sphere_terms(&Constants::CODATA2018, a, t, radius, model)?;
    Ok(ForceResult {
        value: terms.total(),
        geometry: Geometry::SpherePlate {
            radius: radius.meters(),
        },
        method: Method::Perturbative {
            omitted_orders: OMITTED_CONDUCTIVITY_ORDERS,
            terms,
        },
        approach: ApproachVariant::PlasmaZeroFrequency,
        validity: classify_validity(a, t, t, model.plasma_wavelength())
            .with_sphere_radius(a, radius),
    })
}

/// `1 − 4δ/a + 12δ²/a²`.
pub fn te_conductivity_factor(delta_over_a: f64) -> f64 {
    1.0 - 4.0 * delta_over_a + 12.0 * delta_over_a * delta_over_a
}

/// Zero-frequency TE contribution to the sphere–plate force, N:
/// `−(k_B T ζ(3) R / 8a²)(1 − 4δ/a + 12δ²/a²)`.
pub fn te_zero_frequency_asymptotic(
    a: Separation,
    t: Temperature,
    radius: SphereRadius,
    model: MetalModel,
) -> Result<f64> {
    let k = Constants::CODATA2018;
    let s = DerivedScales::with_constants(&k, a, t, model.plasma_wavelength())?;
    Ok(-k.k_b * t.kelvin() * k.zeta3 * radius.meters() / (8.0 * a.meters().powi(2))
        * te_conductivity_factor(s.delta_over_a))
}

/// Sphere–plate force under the modified-TE prescription: the plasma
/// expansion with the zero-frequency TE contribution removed.
pub fn sphere_force_modified_te(
    a: Separation,
    t: Temperature,
    radius: SphereRadius,
    model: MetalModel,
) -> Result<ForceResult> {
    let mut result = sphere_force_perturbative(a, t, radius, model)?;
    result.value -= te_zero_frequency_asymptotic(a, t, radius, model)?;
    result.approach = ApproachVariant::ModifiedTE;
    if a.meters() < TE_ASYMPTOTIC_MIN_SEPARATION {
        result.validity.warn(format!(
            "zero-frequency TE expansion used at a = {} μm < 0.5 μm",
            a.micrometers()
        ));
    }
    Ok(result)
}
