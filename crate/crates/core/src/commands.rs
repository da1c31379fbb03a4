//! The figure datasets, the single-point record and their assembly from a
//! [`RunConfig`]. The binary is a thin shell around these.

use serde_json::{json, Value};

use crate::config::{ApproachChoice, Command, RunConfig};
use crate::dielectric::ApproachVariant;
use crate::error::{CasimirError, Result};
use crate::force::ForceResult;
use crate::lifshitz;
use crate::output::{round_json, Dataset};
use crate::perturbative::{
    plate_force_perturbative, sphere_force_modified_te, sphere_force_perturbative,
    OMITTED_CONDUCTIVITY_ORDERS,
};
use crate::quantities::{classify_validity, Separation, Temperature};
use crate::scenarios::{
    delta_force_plates, delta_force_sphere, sweep_separation, sweep_temperature, SweepGeometry,
};

fn range_notes(cfg: &RunConfig, separations: &[f64]) -> Result<Vec<String>> {
    let pair = cfg.temperatures()?;
    let lambda_p = cfg.model()?.plasma_wavelength();
    let mut notes = Vec::new();
    for &a in separations {
        for w in classify_validity(Separation::new(a)?, pair.t1, pair.t2, lambda_p).warnings {
            if !notes.contains(&w) {
                notes.push(w);
            }
        }
    }
    Ok(notes)
}

fn separation_dataset(
    cfg: &RunConfig,
    command: Command,
    geometry: SweepGeometry,
    columns: [&'static str; 3],
) -> Result<Dataset> {
    let grid = cfg.separation_grid()?;
    let rows = sweep_separation(
        cfg.temperatures()?,
        cfg.model()?,
        geometry,
        cfg.approach.variant(),
        &grid,
    )?;
    Ok(Dataset {
        command,
        config: cfg.resolved_for(command),
        columns: columns.to_vec(),
        notes: range_notes(cfg, &[grid.start, grid.end])?,
        rows: rows.iter().map(|r| vec![r.a * 1e6, r.real, r.ideal]).collect(),
    })
}

/// Plate–plate `ΔF` against separation.
pub fn cmd_fig1(cfg: &RunConfig) -> Result<Dataset> {
    separation_dataset(
        cfg,
        Command::Fig1,
        SweepGeometry::Plates,
        ["a_um", "dF_real_N_per_m2", "dF_ideal_N_per_m2"],
    )
}

/// Sphere–plate `ΔF/R` against separation.
pub fn cmd_fig2(cfg: &RunConfig) -> Result<Dataset> {
    separation_dataset(
        cfg,
        Command::Fig2,
        SweepGeometry::Sphere,
        ["a_um", "dFps_over_R_real_N_per_m", "dFps_over_R_ideal_N_per_m"],
    )
}

/// Sphere–plate `ΔF/R` against `T₂` for both prescriptions.
pub fn cmd_fig3(cfg: &RunConfig) -> Result<Dataset> {
    let grid = cfg.temperature_grid()?;
    let a = cfg.separation()?;
    let rows = sweep_temperature(a, cfg.t1()?, cfg.model()?, &grid)?;
    Ok(Dataset {
        command: Command::Fig3,
        config: cfg.resolved_for(Command::Fig3),
        columns: vec![
            "T2_K",
            "dFps_over_R_plasma_N_per_m",
            "dFps_over_R_modifiedTE_N_per_m",
            "dFps_over_R_ideal_N_per_m",
        ],
        notes: range_notes(cfg, &[a.meters()])?,
        rows: rows
            .iter()
            .map(|r| vec![r.t2, r.plasma, r.modified_te, r.ideal])
            .collect(),
    })
}

fn relative_deviation(value: f64, reference: f64) -> Option<f64> {
    if reference == 0.0 {
        if value == 0.0 {
            Some(0.0)
        } else {
            None
        }
    } else {
        Some((value - reference) / reference.abs())
    }
}

struct PointForces {
    t1: ForceResult,
    t2: ForceResult,
    delta: crate::scenarios::DifferenceResult,
}

fn perturbative_point(cfg: &RunConfig) -> Result<PointForces> {
    let a = cfg.separation()?;
    let pair = cfg.temperatures()?;
    let model = cfg.model()?;
    let approach = cfg.approach.variant();
    match cfg.geometry {
        SweepGeometry::Plates => {
            if approach == ApproachVariant::ModifiedTE {
                return Err(CasimirError::usage(
                    "the modified-TE prescription is only available for --geometry sphere",
                ));
            }
            Ok(PointForces {
                t1: plate_force_perturbative(a, pair.t1, model)?,
                t2: plate_force_perturbative(a, pair.t2, model)?,
                delta: delta_force_plates(a, pair, model)?,
            })
        }
        SweepGeometry::Sphere => {
            let r = cfg.radius()?;
            let force = |t: Temperature| match approach {
                ApproachVariant::PlasmaZeroFrequency => sphere_force_perturbative(a, t, r, model),
                ApproachVariant::ModifiedTE => sphere_force_modified_te(a, t, r, model),
            };
            Ok(PointForces {
                t1: force(pair.t1)?,
                t2: force(pair.t2)?,
                delta: delta_force_sphere(a, pair, r, model, approach)?,
            })
        }
    }
}

fn oracle_point(cfg: &RunConfig) -> Result<(ForceResult, ForceResult)> {
    let a = cfg.separation()?;
    let pair = cfg.temperatures()?;
    let model = cfg.model()?;
    let approach = cfg.approach.variant();
    let spec = cfg.engine_spec()?;
    match cfg.geometry {
        SweepGeometry::Plates => Ok((
            lifshitz::plate_pressure(a, pair.t1, model, approach, &spec)?,
            lifshitz::plate_pressure(a, pair.t2, model, approach, &spec)?,
        )),
        SweepGeometry::Sphere => {
            let r = cfg.radius()?;
            Ok((
                lifshitz::sphere_plate_force_pfa(a, pair.t1, r, model, approach, &spec)?,
                lifshitz::sphere_plate_force_pfa(a, pair.t2, r, model, approach, &spec)?,
            ))
        }
    }
}

/// Single-point record: forces at both temperatures, their difference,
/// the term decomposition and (with `oracle`) the Lifshitz comparison.
pub fn cmd_compute(cfg: &RunConfig) -> Result<Value> {
    let forces = perturbative_point(cfg)?;
    let approach = match cfg.approach {
        ApproachChoice::Ideal => "ideal".to_string(),
        other => other.variant().to_string(),
    };
    let mut record = json!({
        "geometry": forces.t1.geometry,
        "approach": approach,
        "material": cfg.model()?,
        "unit": forces.t1.geometry.unit(),
        "force_t1": forces.t1.value,
        "force_t2": forces.t2.value,
        "delta_f": forces.delta.delta_f,
        "terms_t1": forces.t1.terms(),
        "terms_t2": forces.t2.terms(),
        "difference": {
            "factor1": forces.delta.factor1,
            "factor2": forces.delta.factor2,
            "modified_te_term": forces.delta.modified_te_term,
        },
        "omitted_conductivity_orders": [OMITTED_CONDUCTIVITY_ORDERS.0, OMITTED_CONDUCTIVITY_ORDERS.1],
        "validity": forces.delta.validity,
    });
    if cfg.oracle {
        let (o1, o2) = oracle_point(cfg)?;
        let delta = o2.value - o1.value;
        let terms = |r: &ForceResult| match r.method {
            crate::force::Method::LifshitzOracle { matsubara_terms } => matsubara_terms,
            _ => 0,
        };
        record["oracle"] = json!({
            "force_t1": o1.value,
            "force_t2": o2.value,
            "delta_f": delta,
            "matsubara_terms_t1": terms(&o1),
            "matsubara_terms_t2": terms(&o2),
            "relative_deviation_force_t1": relative_deviation(forces.t1.value, o1.value),
            "relative_deviation_force_t2": relative_deviation(forces.t2.value, o2.value),
            "relative_deviation_delta_f": relative_deviation(forces.delta.delta_f, delta),
        });
    }
    Ok(round_json(record))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_default_shape() {
        let ds = cmd_fig1(&RunConfig::default()).unwrap();
        assert_eq!(ds.rows.len(), 75);
        let ideal = ds.column("dF_ideal_N_per_m2").unwrap();
        assert!(ideal.iter().all(|v| *v == ideal[0]));
    }

    #[test]
    fn compute_plates_rejects_modified_te() {
        let cfg = RunConfig {
            approach: ApproachChoice::ModifiedTe,
            ..RunConfig::default()
        };
        assert!(matches!(cmd_compute(&cfg), Err(CasimirError::Usage(_))));
    }

    #[test]
    fn compute_ideal_equal_temperatures() {
        let cfg = RunConfig {
            approach: ApproachChoice::Ideal,
            t2_k: 300.0,
            ..RunConfig::default()
        };
        let rec = cmd_compute(&cfg).unwrap();
        assert_eq!(rec["delta_f"].as_f64(), Some(0.0));
        assert_eq!(rec["approach"], "ideal");
    }
}
