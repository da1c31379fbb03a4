//! Temperature-difference forces `ΔF = F(a, T₂) − F(a, T₁)` and the sweeps
//! over separation and over the upper temperature.

use serde::Serialize;

use crate::dielectric::{ApproachVariant, MetalModel};
use crate::error::{CasimirError, Result};
use crate::force::Geometry;
use crate::perturbative::{te_conductivity_factor, TE_ASYMPTOTIC_MIN_SEPARATION};
use crate::quantities::{
    classify_validity, Constants, DerivedScales, Separation, SphereRadius, Temperature,
    ValidityReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TemperaturePair {
    pub t1: Temperature,
    pub t2: Temperature,
}

impl TemperaturePair {
    pub fn new(t1: Temperature, t2: Temperature) -> Self {
        Self { t1, t2 }
    }

    pub fn kelvin(t1: f64, t2: f64) -> Result<Self> {
        Ok(Self::new(Temperature::new(t1)?, Temperature::new(t2)?))
    }

    pub fn swapped(self) -> Self {
        Self {
            t1: self.t2,
            t2: self.t1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DifferenceResult {
    /// N/m² for plates, N for sphere–plate.
    pub delta_f: f64,
    /// Temperature-only prefactor (antisymmetric in T₁ ↔ T₂).
    pub factor1: f64,
    /// Dimensionless separation-dependent factor (symmetric in T₁ ↔ T₂).
    pub factor2: f64,
    /// Additive zero-frequency TE term of the modified-TE prescription.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modified_te_term: Option<f64>,
    pub approach: ApproachVariant,
    pub geometry: Geometry,
    pub validity: ValidityReport,
}

fn scales(k: &Constants, a: Separation, model: MetalModel) -> Result<(f64, f64)> {
    // Temperature does not enter δ/a or T_eff; any positive value works.
    let s = DerivedScales::with_constants(k, a, Temperature::ZERO, model.plasma_wavelength())?;
    Ok((s.delta_over_a, s.t_eff))
}

/// Plate–plate difference force, N/m².
pub fn delta_force_plates(
    a: Separation,
    pair: TemperaturePair,
    model: MetalModel,
) -> Result<DifferenceResult> {
    delta_force_plates_with(&Constants::CODATA2018, a, pair, model)
}

pub fn delta_force_plates_with(
    k: &Constants,
    a: Separation,
    pair: TemperaturePair,
    model: MetalModel,
) -> Result<DifferenceResult> {
    let (t1, t2) = (pair.t1.kelvin(), pair.t2.kelvin());
    let (x, t_eff) = scales(k, a, model)?;
    let factor1 = k.pi.powi(2) * k.k_b.powi(4) * (t2.powi(4) - t1.powi(4))
        / (45.0 * k.hbar.powi(3) * k.c.powi(3));
    let factor2 = 1.0
        + 90.0 * k.zeta3 / k.pi.powi(3) * x * t_eff / (t1 + t2)
            * (1.0 + t1 * t2 / (t1 * t1 + t2 * t2));
    Ok(DifferenceResult {
        delta_f: -(factor1 * factor2),
        factor1,
        factor2,
        modified_te_term: None,
        approach: ApproachVariant::PlasmaZeroFrequency,
        geometry: Geometry::ParallelPlates,
        validity: classify_validity(a, pair.t1, pair.t2, model.plasma_wavelength()),
    })
}

/// Sphere–plate difference force, N.
pub fn delta_force_sphere(
    a: Separation,
    pair: TemperaturePair,
    radius: SphereRadius,
    model: MetalModel,
    approach: ApproachVariant,
) -> Result<DifferenceResult> {
    delta_force_sphere_with(&Constants::CODATA2018, a, pair, radius, model, approach)
}

pub fn delta_force_sphere_with(
    k: &Constants,
    a: Separation,
    pair: TemperaturePair,
    radius: SphereRadius,
    model: MetalModel,
    approach: ApproachVariant,
) -> Result<DifferenceResult> {
    let (t1, t2) = (pair.t1.kelvin(), pair.t2.kelvin());
    let r = radius.meters();
    let (x, t_eff) = scales(k, a, model)?;
    let factor1 =
        k.zeta3 * k.k_b.powi(3) / (k.hbar.powi(2) * k.c.powi(2)) * (t2 - t1) * (t1 * t1 + t2 * t2);
    let factor2 = (1.0 + t1 * t2 / (t1 * t1 + t2 * t2)) * (1.0 + 2.0 * x)
        - k.pi.powi(3) / (45.0 * k.zeta3) * (t1 + t2) / t_eff * (1.0 + 4.0 * x);
    let plasma = -(r * factor1 * factor2);

    let mut validity = classify_validity(a, pair.t1, pair.t2, model.plasma_wavelength())
        .with_sphere_radius(a, radius);
    let modified_te_term = match approach {
        ApproachVariant::PlasmaZeroFrequency => None,
        ApproachVariant::ModifiedTE => {
            if a.meters() < TE_ASYMPTOTIC_MIN_SEPARATION {
                validity.warn(format!(
                    "zero-frequency TE expansion used at a = {} μm < 0.5 μm",
                    a.micrometers()
                ));
            }
            Some(
                k.k_b * k.zeta3 * r / (8.0 * a.meters().powi(2))
                    * (t2 - t1)
                    * te_conductivity_factor(x),
            )
        }
    };
    Ok(DifferenceResult {
        delta_f: plasma + modified_te_term.unwrap_or(0.0),
        factor1,
        factor2,
        modified_te_term,
        approach,
        geometry: Geometry::SpherePlate { radius: r },
        validity,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    Linear,
    Log,
}

/// A one-dimensional grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub start: f64,
    pub end: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl SweepSpec {
    /// 75 log-spaced separations in [0.15, 2] μm, in meters.
    pub fn default_separation() -> Self {
        Self {
            start: 0.15e-6,
            end: 2.0e-6,
            points: 75,
            spacing: Spacing::Log,
        }
    }

    /// 51 linear temperatures in [300, 350] K.
    pub fn default_temperature() -> Self {
        Self {
            start: 300.0,
            end: 350.0,
            points: 51,
            spacing: Spacing::Linear,
        }
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        if self.points == 0 {
            return Err(CasimirError::domain("grid", "needs at least one point"));
        }
        if !(self.start.is_finite() && self.end.is_finite()) {
            return Err(CasimirError::domain("grid", "endpoints must be finite"));
        }
        if self.points == 1 {
            if self.start != self.end {
                return Err(CasimirError::domain(
                    "grid",
                    "a single-point grid needs equal endpoints",
                ));
            }
            return Ok(vec![self.start]);
        }
        if self.start >= self.end {
            return Err(CasimirError::domain(
                "grid",
                format!(
                    "start ({}) must be below end ({}) for {} points",
                    self.start, self.end, self.points
                ),
            ));
        }
        if self.spacing == Spacing::Log && self.start <= 0.0 {
            return Err(CasimirError::domain("grid", "log spacing needs a positive start"));
        }
        let last = (self.points - 1) as f64;
        let mut values: Vec<f64> = (0..self.points)
            .map(|i| {
                let f = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + f * (self.end - self.start),
                    Spacing::Log => self.start * (self.end / self.start).powf(f),
                }
            })
            .collect();
        // Pin endpoints exactly.
        values[0] = self.start;
        values[self.points - 1] = self.end;
        Ok(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepGeometry {
    /// ΔF per unit area.
    Plates,
    /// ΔF per unit sphere radius.
    Sphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparationRow {
    pub a: f64,
    pub real: f64,
    pub ideal: f64,
}

fn per_geometry(
    a: Separation,
    pair: TemperaturePair,
    model: MetalModel,
    geometry: SweepGeometry,
    approach: ApproachVariant,
) -> Result<f64> {
    match geometry {
        SweepGeometry::Plates => Ok(delta_force_plates(a, pair, model)?.delta_f),
        SweepGeometry::Sphere => {
            let unit = SphereRadius::new(1.0)?;
            Ok(delta_force_sphere(a, pair, unit, model, approach)?.delta_f)
        }
    }
}

/// Difference force against separation, with the ideal-metal companion
/// column. Sphere rows are per unit radius (N/m).
pub fn sweep_separation(
    pair: TemperaturePair,
    model: MetalModel,
    geometry: SweepGeometry,
    approach: ApproachVariant,
    grid: &SweepSpec,
) -> Result<Vec<SeparationRow>> {
    if geometry == SweepGeometry::Plates && approach == ApproachVariant::ModifiedTE {
        return Err(CasimirError::usage(
            "the modified-TE prescription is only available for the sphere–plate geometry",
        ));
    }
    grid.values()?
        .into_iter()
        .map(|a| {
            let sep = Separation::new(a)?;
            Ok(SeparationRow {
                a,
                real: per_geometry(sep, pair, model, geometry, approach)?,
                ideal: per_geometry(sep, pair, MetalModel::IdealMetal, geometry, approach)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TemperatureRow {
    pub t2: f64,
    pub plasma: f64,
    pub modified_te: f64,
    pub ideal: f64,
}

/// Sphere–plate `ΔF/R` against the upper temperature for both
/// prescriptions, plus the ideal-metal reference.
pub fn sweep_temperature(
    a: Separation,
    t1: Temperature,
    model: MetalModel,
    grid: &SweepSpec,
) -> Result<Vec<TemperatureRow>> {
    let unit = SphereRadius::new(1.0)?;
    grid.values()?
        .into_iter()
        .map(|t2| {
            let pair = TemperaturePair::new(t1, Temperature::new(t2)?);
            let at = |m, ap| delta_force_sphere(a, pair, unit, m, ap).map(|d| d.delta_f);
            Ok(TemperatureRow {
                t2,
                plasma: at(model, ApproachVariant::PlasmaZeroFrequency)?,
                modified_te: at(model, ApproachVariant::ModifiedTE)?,
                ideal: at(MetalModel::IdealMetal, ApproachVariant::PlasmaZeroFrequency)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn um(x: f64) -> Separation {
        Separation::from_micrometers(x).unwrap()
    }

    fn pair(t1: f64, t2: f64) -> TemperaturePair {
        TemperaturePair::kelvin(t1, t2).unwrap()
    }

    const PZF: ApproachVariant = ApproachVariant::PlasmaZeroFrequency;
    const MTE: ApproachVariant = ApproachVariant::ModifiedTE;

    #[test]
    fn equal_temperatures_give_zero() {
        let p = delta_force_plates(um(0.5), pair(300.0, 300.0), MetalModel::GOLD).unwrap();
        assert_eq!(p.delta_f, 0.0);
        let r = SphereRadius::from_millimeters(2.0).unwrap();
        for ap in [PZF, MTE] {
            let s = delta_force_sphere(um(0.5), pair(320.0, 320.0), r, MetalModel::GOLD, ap).unwrap();
            assert_eq!(s.delta_f, 0.0);
        }
    }

    #[test]
    fn ideal_plates_do_not_depend_on_separation() {
        let a = delta_force_plates(um(0.15), pair(300.0, 350.0), MetalModel::IdealMetal).unwrap();
        let b = delta_force_plates(um(2.0), pair(300.0, 350.0), MetalModel::IdealMetal).unwrap();
        assert_eq!(a.factor2, 1.0);
        assert_eq!(a.delta_f, b.delta_f);
    }

    #[test]
    fn plate_ratio_between_grid_ends() {
        let lo = delta_force_plates(um(0.15), pair(300.0, 350.0), MetalModel::GOLD).unwrap();
        let hi = delta_force_plates(um(2.0), pair(300.0, 350.0), MetalModel::GOLD).unwrap();
        let ratio = lo.delta_f / hi.delta_f;
        assert!((ratio - 9.368).abs() < 0.01, "{ratio}");
    }

    #[test]
    fn sphere_gold_half_micron() {
        let r = SphereRadius::from_millimeters(2.0).unwrap();
        let p = delta_force_sphere(um(0.5), pair(300.0, 350.0), r, MetalModel::GOLD, PZF).unwrap();
        assert!((p.delta_f + 9.635e-14).abs() < 0.005e-14, "{}", p.delta_f);
        assert!((p.delta_f / 2e-3 + 4.8e-11).abs() < 0.05e-11);

        let m = delta_force_sphere(um(0.5), pair(300.0, 350.0), r, MetalModel::GOLD, MTE).unwrap();
        assert!(m.delta_f > 0.0);
        assert!((m.delta_f / 2e-3 - 3.0e-10).abs() < 0.05e-10, "{}", m.delta_f / 2e-3);
        assert!(m.delta_f.abs() > 6.0 * p.delta_f.abs());
        let te = m.modified_te_term.unwrap();
        assert!(((m.delta_f - p.delta_f) - te).abs() <= 4.0 * f64::EPSILON * te.abs());
    }

    #[test]
    fn grid_validation() {
        let mut g = SweepSpec::default_separation();
        assert_eq!(g.values().unwrap().len(), 75);
        g.points = 0;
        assert!(g.values().is_err());
        let g = SweepSpec {
            start: 1.0,
            end: 1.0,
            points: 2,
            spacing: Spacing::Linear,
        };
        assert!(g.values().is_err());
        let g = SweepSpec { points: 1, ..g };
        assert_eq!(g.values().unwrap(), vec![1.0]);
    }

    #[test]
    fn plates_reject_modified_te_sweep() {
        let err = sweep_separation(
            pair(300.0, 350.0),
            MetalModel::GOLD,
            SweepGeometry::Plates,
            MTE,
            &SweepSpec::default_separation(),
        );
        assert!(matches!(err, Err(CasimirError::Usage(_))));
    }

    #[test]
    fn temperature_sweep_starts_at_zero() {
        let rows = sweep_temperature(
            um(0.5),
            Temperature::new(300.0).unwrap(),
            MetalModel::GOLD,
            &SweepSpec::default_temperature(),
        )
        .unwrap();
        assert_eq!(rows.len(), 51);
        let first = rows[0];
        assert_eq!((first.plasma, first.modified_te, first.ideal), (0.0, 0.0, 0.0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn antisymmetric_in_temperatures(
                a in 0.15f64..2.0, t1 in 1.0f64..350.0, t2 in 1.0f64..350.0,
                lp in prop_oneof![Just(0.0), 50e-9f64..200e-9], mte in any::<bool>(),
            ) {
                let sep = um(a);
                let p = pair(t1, t2);
                let model = MetalModel::from_plasma_wavelength(lp).unwrap();
                let f = delta_force_plates(sep, p, model).unwrap().delta_f;
                let b = delta_force_plates(sep, p.swapped(), model).unwrap().delta_f;
                prop_assert_eq!(f, -b);

                let r = SphereRadius::from_millimeters(1.5).unwrap();
                let ap = if mte { MTE } else { PZF };
                let f = delta_force_sphere(sep, p, r, model, ap).unwrap().delta_f;
                let b = delta_force_sphere(sep, p.swapped(), r, model, ap).unwrap().delta_f;
                prop_assert_eq!(f, -b);
            }

            #[test]
            fn plasma_difference_negative_when_heating(a in 0.15f64..2.0, t1 in 250.0f64..349.0, dt in 0.1f64..50.0) {
                let p = pair(t1, (t1 + dt).min(350.0));
                prop_assume!(p.t2 > p.t1);
                let r = SphereRadius::from_millimeters(1.0).unwrap();
                prop_assert!(delta_force_plates(um(a), p, MetalModel::GOLD).unwrap().delta_f < 0.0);
                prop_assert!(delta_force_sphere(um(a), p, r, MetalModel::GOLD, PZF).unwrap().delta_f < 0.0);
            }
        }
    }
}
