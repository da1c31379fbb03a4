//! Plasma versus modified-TE prescriptions for the sphere–plate
//! difference force, as the upper temperature is raised from 300 K.

use casimir_delta::quantities::{Separation, Temperature};
use casimir_delta::scenarios::{sweep_temperature, Spacing, SweepSpec};
use casimir_delta::MetalModel;

fn main() -> casimir_delta::Result<()> {
    let grid = SweepSpec {
        start: 300.0,
        end: 350.0,
        points: 11,
        spacing: Spacing::Linear,
    };
    let rows = sweep_temperature(
        Separation::from_micrometers(0.5)?,
        Temperature::new(300.0)?,
        MetalModel::GOLD,
        &grid,
    )?;

    println!("{:>6} {:>13} {:>13} {:>13}", "T2", "plasma", "modified-TE", "ideal");
    for r in &rows {
        println!("{:>6.1} {:>13.4e} {:>13.4e} {:>13.4e}", r.t2, r.plasma, r.modified_te, r.ideal);
    }
    let last = rows.last().unwrap();
    println!("modified-TE / plasma at 350 K: {:.2}", last.modified_te / last.plasma);
    Ok(())
}
