//! Compare the closed-form expansions with the full Matsubara sum.
//!
//! The expansions drop `(δ/a)²` and higher, so at 0.5 μm the absolute
//! force is off by several percent. The temperature difference is not.

use casimir_delta::lifshitz::{plate_pressure, sphere_plate_force_pfa, EngineSpec};
use casimir_delta::perturbative::{plate_force_perturbative, sphere_force_perturbative};
use casimir_delta::quantities::{Separation, SphereRadius, Temperature};
use casimir_delta::scenarios::{delta_force_plates, TemperaturePair};
use casimir_delta::{ApproachVariant, MetalModel};

fn main() -> casimir_delta::Result<()> {
    let spec = EngineSpec::default();
    let gold = MetalModel::GOLD;
    let pzf = ApproachVariant::PlasmaZeroFrequency;
    let t = Temperature::new(300.0)?;
    let radius = SphereRadius::from_millimeters(1.0)?;

    for um in [0.5, 0.7, 1.0, 2.0] {
        let a = Separation::from_micrometers(um)?;
        let series = plate_force_perturbative(a, t, gold)?.value;
        let oracle = plate_pressure(a, t, gold, pzf, &spec)?;
        let sphere_series = sphere_force_perturbative(a, t, radius, gold)?.value;
        let sphere_oracle = sphere_plate_force_pfa(a, t, radius, gold, pzf, &spec)?.value;
        println!(
            "a = {um} um  plates {:+.3}%  sphere {:+.3}%  ({} Matsubara terms)",
            100.0 * (series / oracle.value - 1.0),
            100.0 * (sphere_series / sphere_oracle - 1.0),
            match oracle.method {
                casimir_delta::force::Method::LifshitzOracle { matsubara_terms } => matsubara_terms,
                _ => 0,
            }
        );
    }

    let a = Separation::from_micrometers(1.0)?;
    let pair = TemperaturePair::kelvin(300.0, 350.0)?;
    let series = delta_force_plates(a, pair, gold)?.delta_f;
    let oracle = plate_pressure(a, pair.t2, gold, pzf, &spec)?.value
        - plate_pressure(a, pair.t1, gold, pzf, &spec)?.value;
    println!("dF plates at 1 um: series {series:.5e}, oracle {oracle:.5e}");
    Ok(())
}
