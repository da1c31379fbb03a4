//! Sphere–plate `ΔF/R` against separation. Rows are per unit radius, so
//! multiply by `R` for a force.

use casimir_delta::quantities::{Separation, SphereRadius};
use casimir_delta::scenarios::{
    delta_force_sphere, sweep_separation, SweepGeometry, SweepSpec, TemperaturePair,
};
use casimir_delta::{ApproachVariant, MetalModel};

fn main() -> casimir_delta::Result<()> {
    let pair = TemperaturePair::kelvin(300.0, 350.0)?;
    let mut grid = SweepSpec::default_separation();
    grid.points = 10;

    let rows = sweep_separation(
        pair,
        MetalModel::GOLD,
        SweepGeometry::Sphere,
        ApproachVariant::PlasmaZeroFrequency,
        &grid,
    )?;
    for r in &rows {
        println!("a = {:6.3} um   dF/R = {:+.5e} N/m   ideal {:+.5e}", r.a * 1e6, r.real, r.ideal);
    }

    // A 2 mm sphere at 0.5 um.
    let d = delta_force_sphere(
        Separation::from_micrometers(0.5)?,
        pair,
        SphereRadius::from_millimeters(2.0)?,
        MetalModel::GOLD,
        ApproachVariant::PlasmaZeroFrequency,
    )?;
    println!("R = 2 mm, a = 0.5 um: dF = {:.4e} N", d.delta_f);
    for w in &d.validity.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
