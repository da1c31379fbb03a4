//! The zero-frequency TE term that separates the two prescriptions:
//! three-term expansion against direct quadrature.

use casimir_delta::lifshitz::te_zero_frequency_sphere_term;
use casimir_delta::perturbative::te_zero_frequency_asymptotic;
use casimir_delta::quadrature::QuadratureSpec;
use casimir_delta::quantities::{Separation, SphereRadius, Temperature};
use casimir_delta::MetalModel;

fn main() -> casimir_delta::Result<()> {
    let t = Temperature::new(300.0)?;
    let radius = SphereRadius::from_millimeters(1.0)?;
    let spec = QuadratureSpec::default();
    let lambda_p = MetalModel::GOLD.plasma_wavelength();

    for um in [0.25, 0.5, 0.7, 1.0, 2.0] {
        let a = Separation::from_micrometers(um)?;
        let series = te_zero_frequency_asymptotic(a, t, radius, MetalModel::GOLD)?;
        let exact = te_zero_frequency_sphere_term(a, t, radius, lambda_p, &spec)?;
        println!(
            "a = {um:4} um  series {series:+.5e} N  quadrature {exact:+.5e} N  ({:+.3}%)",
            100.0 * (series / exact - 1.0)
        );
    }
    Ok(())
}
