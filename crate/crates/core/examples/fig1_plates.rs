//! Plate–plate difference force against separation, gold and ideal metal.
//!
//! ```text
//! cargo run --example fig1_plates
//! ```

use casimir_delta::scenarios::{sweep_separation, SweepGeometry, SweepSpec, TemperaturePair};
use casimir_delta::{ApproachVariant, MetalModel};

fn main() -> casimir_delta::Result<()> {
    let pair = TemperaturePair::kelvin(300.0, 350.0)?;
    let mut grid = SweepSpec::default_separation();
    grid.points = 12;

    let rows = sweep_separation(
        pair,
        MetalModel::GOLD,
        SweepGeometry::Plates,
        ApproachVariant::PlasmaZeroFrequency,
        &grid,
    )?;

    println!("{:>8} {:>14} {:>14} {:>7}", "a (um)", "dF Au (N/m2)", "dF ideal", "ratio");
    for r in &rows {
        println!(
            "{:>8.3} {:>14.5e} {:>14.5e} {:>7.3}",
            r.a * 1e6,
            r.real,
            r.ideal,
            r.real / r.ideal
        );
    }
    let (first, last) = (rows.first().unwrap(), rows.last().unwrap());
    println!("|dF| grows by {:.2}x from 2 um down to 0.15 um", first.real / last.real);
    Ok(())
}
