//! The acceptance checklist: published percentages, the figure claims, and
//! agreement between the closed forms and the Lifshitz engine.
//!
//! Closed-form checks take their constants as a parameter so the report's
//! sensitivity can itself be tested; the engine always runs on CODATA 2018.

use serde::Serialize;
use std::fmt::Write as _;

use crate::dielectric::{ApproachVariant, MetalModel};
use crate::error::Result;
use crate::lifshitz::{self, EngineSpec};
use crate::perturbative::{
    plate_force_zero_temperature, plate_terms, sphere_force_zero_temperature, sphere_terms,
    te_zero_frequency_asymptotic,
};
use crate::quantities::{Constants, Separation, SphereRadius, Temperature};
use crate::scenarios::{
    delta_force_plates, delta_force_plates_with, delta_force_sphere, delta_force_sphere_with,
    sweep_separation, SweepGeometry, SweepSpec, TemperaturePair,
};

const PZF: ApproachVariant = ApproachVariant::PlasmaZeroFrequency;
const MTE: ApproachVariant = ApproachVariant::ModifiedTE;

/// Tolerance for `−∂E/∂a` against the directly summed pressure.
pub const THERMODYNAMIC_IDENTITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub criterion: u8,
    pub description: String,
    pub measured: f64,
    pub expected: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn criterion(&self, n: u8) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.criterion == n)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "[{}] {:>2} {:<44} measured {:>14.6e}  expected {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.criterion,
                c.id,
                c.measured,
                c.expected
            );
            if let Some(note) = &c.note {
                let _ = writeln!(out, "          note: {note}");
            }
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        );
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&serde_json::json!({
            "passed": self.passed(),
            "checks": self.checks,
        }))
        .expect("valid JSON");
        s.push('\n');
        s
    }

    fn push(
        &mut self,
        criterion: u8,
        id: impl Into<String>,
        description: impl Into<String>,
        measured: f64,
        expected: impl Into<String>,
        passed: bool,
    ) -> &mut Check {
        self.checks.push(Check {
            id: id.into(),
            criterion,
            description: description.into(),
            measured,
            expected: expected.into(),
            passed,
            note: None,
        });
        self.checks.last_mut().expect("just pushed")
    }

    fn within_relative(
        &mut self,
        criterion: u8,
        id: impl Into<String>,
        description: impl Into<String>,
        measured: f64,
        target: f64,
        tolerance: f64,
    ) -> &mut Check {
        let passed = ((measured - target) / target).abs() <= tolerance;
        self.push(
            criterion,
            id,
            description,
            measured,
            format!("{target:e} ± {}%", tolerance * 100.0),
            passed,
        )
    }

    fn in_open_interval(
        &mut self,
        criterion: u8,
        id: impl Into<String>,
        description: impl Into<String>,
        measured: f64,
        lo: f64,
        hi: f64,
    ) -> &mut Check {
        self.push(
            criterion,
            id,
            description,
            measured,
            format!("in ({lo}, {hi})"),
            measured > lo && measured < hi,
        )
    }
}

fn um(x: f64) -> Result<Separation> {
    Separation::from_micrometers(x)
}

fn kelvin(x: f64) -> Result<Temperature> {
    Temperature::new(x)
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b) / b.abs()
}

/// Run every check. `k` feeds the closed-form checks (criteria 1–6).
pub fn run_checklist(k: &Constants) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let engine = EngineSpec::default();
    let gold = MetalModel::GOLD;
    let t300 = kelvin(300.0)?;
    let heat = TemperaturePair::kelvin(300.0, 350.0)?;
    let r1 = SphereRadius::from_millimeters(1.0)?;
    let r2 = SphereRadius::from_millimeters(2.0)?;

    // 1. Ideal-metal plate thermal correction.
    for (x, target) in [(1.0, 0.0016), (2.0, 0.025)] {
        let terms = plate_terms(k, um(x)?, t300, MetalModel::IdealMetal)?;
        report.within_relative(
            1,
            format!("ideal-plate-thermal-{x}um"),
            format!("(1/3)(T/T_eff)^4 at a = {x} μm, T = 300 K"),
            terms.thermal_ideal,
            target,
            0.10,
        );
    }

    // 2. Ideal-metal sphere–plate thermal correction.
    let s1 = sphere_terms(k, um(1.0)?, t300, r1, MetalModel::IdealMetal)?;
    report.within_relative(
        2,
        "ideal-sphere-thermal-1um",
        "sphere–plate thermal correction at a = 1 μm, T = 300 K",
        s1.relative_correction(),
        0.027,
        0.10,
    );
    let s2 = sphere_terms(k, um(2.0)?, t300, r1, MetalModel::IdealMetal)?;
    let m = s2.relative_correction();
    report
        .push(
            2,
            "ideal-sphere-thermal-2um",
            "sphere–plate thermal correction at a = 2 μm, T = 300 K",
            m,
            "in [0.17, 0.19]",
            (0.17..=0.19).contains(&m),
        )
        .note = Some(format!(
        "the quoted 18.2% comes from an exact computation; the (T/T_eff)^4-truncated expansion gives {:.1}%",
        m * 100.0
    ));

    // 3. Plates: ΔF at 0.15 μm against 2 μm.
    let lo = delta_force_plates_with(k, um(0.15)?, heat, gold)?.delta_f;
    let hi = delta_force_plates_with(k, um(2.0)?, heat, gold)?.delta_f;
    report.in_open_interval(
        3,
        "fig1-ratio>9",
        "|ΔF_pp(0.15 μm)| / |ΔF_pp(2 μm)|, Au, 300 → 350 K",
        (lo / hi).abs(),
        9.0,
        10.0,
    );

    // 4. Sphere: ΔF/R at 0.15 μm against 2 μm.
    let lo = delta_force_sphere_with(k, um(0.15)?, heat, r1, gold, PZF)?.delta_f;
    let hi = delta_force_sphere_with(k, um(2.0)?, heat, r1, gold, PZF)?.delta_f;
    report.in_open_interval(
        4,
        "fig2-ratio>2",
        "|ΔF_ps/R(0.15 μm)| / |ΔF_ps/R(2 μm)|, Au, 300 → 350 K",
        (lo / hi).abs(),
        2.0,
        2.5,
    );

    // 5. The two prescriptions at a = 0.5 μm.
    let a05 = um(0.5)?;
    let plasma = delta_force_sphere_with(k, a05, heat, r1, gold, PZF)?.delta_f;
    let modified = delta_force_sphere_with(k, a05, heat, r1, gold, MTE)?.delta_f;
    report.push(
        5,
        "fig3-ratio>6",
        "|ΔF_ps(modified TE)| / |ΔF_ps(plasma)| at T2 = 350 K",
        (modified / plasma).abs(),
        "> 6",
        (modified / plasma).abs() > 6.0,
    );
    report.push(5, "fig3-modified-te-positive", "ΔF_ps(modified TE) at T2 = 350 K", modified, "> 0", modified > 0.0);
    report.push(5, "fig3-plasma-negative", "ΔF_ps(plasma) at T2 = 350 K", plasma, "< 0", plasma < 0.0);
    let mut worst_gap: f64 = 0.0;
    for t2 in SweepSpec::default_temperature().values()? {
        let pair = TemperaturePair::kelvin(300.0, t2)?;
        let p = delta_force_sphere_with(k, a05, pair, r1, gold, PZF)?.delta_f;
        let i = delta_force_sphere_with(k, a05, pair, r1, MetalModel::IdealMetal, PZF)?.delta_f;
        if p != 0.0 {
            worst_gap = worst_gap.max(relative(i, p).abs());
        } else if i != 0.0 {
            worst_gap = f64::INFINITY;
        }
    }
    report.push(
        5,
        "fig3-ideal-coincides",
        "largest |ideal − plasma| / |plasma| over T2 ∈ [300, 350] K",
        worst_gap,
        "≤ 0.1",
        worst_gap <= 0.1,
    );

    // 6. Overall magnitude.
    let f = delta_force_sphere_with(k, a05, heat, r2, gold, PZF)?.delta_f.abs();
    report.push(
        6,
        "sphere-magnitude-1e-13",
        "|ΔF_ps| at a = 0.5 μm, R = 2 mm, 300 → 350 K (N)",
        f,
        "in [5e-14, 2e-13]",
        (5e-14..=2e-13).contains(&f),
    );

    // 7. Absolute plate force against the engine.
    for x in [0.5, 0.7, 1.0] {
        for t in [300.0, 350.0] {
            let (a, tk) = (um(x)?, kelvin(t)?);
            let pert = plate_terms(&Constants::CODATA2018, a, tk, gold)?.total();
            let oracle = lifshitz::plate_pressure(a, tk, gold, PZF, &engine)?.value;
            let dev = relative(pert, oracle);
            let check = report.push(
                7,
                format!("oracle-plate-force-{x}um-{t}K"),
                format!("perturbative vs Lifshitz pressure, Au, a = {x} μm, T = {t} K"),
                dev,
                "|dev| ≤ 0.03",
                dev.abs() <= 0.03,
            );
            if dev.abs() > 0.03 {
                check.note = Some(
                    "gap is dominated by the omitted second-order (δ/a)^2 conductivity term".into(),
                );
            }
        }
    }

    // 8. Difference forces against engine finite differences.
    for x in [0.3, 0.5, 1.0] {
        let a = um(x)?;
        let p1 = lifshitz::plate_pressure(a, heat.t1, gold, PZF, &engine)?.value;
        let p2 = lifshitz::plate_pressure(a, heat.t2, gold, PZF, &engine)?.value;
        let formula = delta_force_plates(a, heat, gold)?.delta_f;
        let dev = relative(formula, p2 - p1);
        report.push(
            8,
            format!("oracle-delta-plates-{x}um"),
            format!("ΔF_pp formula vs Lifshitz difference, a = {x} μm"),
            dev,
            "|dev| ≤ 0.05",
            dev.abs() <= 0.05,
        );
        let f1 = lifshitz::sphere_plate_force_pfa(a, heat.t1, r1, gold, PZF, &engine)?.value;
        let f2 = lifshitz::sphere_plate_force_pfa(a, heat.t2, r1, gold, PZF, &engine)?.value;
        let formula = delta_force_sphere(a, heat, r1, gold, PZF)?.delta_f;
        let dev = relative(formula, f2 - f1);
        report.push(
            8,
            format!("oracle-delta-sphere-{x}um"),
            format!("ΔF_ps formula vs Lifshitz difference, a = {x} μm"),
            dev,
            "|dev| ≤ 0.05",
            dev.abs() <= 0.05,
        );
    }

    // 9. Zero-frequency TE term: quadrature against the expansion.
    for x in [0.5, 0.7, 1.0, 2.0] {
        let a = um(x)?;
        let quad = lifshitz::te_zero_frequency_sphere_term(a, t300, r1, 136e-9, &engine.quadrature)?;
        let asym = te_zero_frequency_asymptotic(a, t300, r1, gold)?;
        let dev = relative(asym, quad);
        report.push(
            9,
            format!("te-zero-frequency-{x}um"),
            format!("asymptotic vs quadrature, Au, a = {x} μm"),
            dev,
            "|dev| ≤ 0.005",
            dev.abs() <= 0.005,
        );
    }
    let quad = lifshitz::te_zero_frequency_sphere_term(a05, t300, r1, 1e-12, &engine.quadrature)?;
    let asym = te_zero_frequency_asymptotic(a05, t300, r1, MetalModel::plasma(1e-12)?)?;
    let dev = relative(quad, asym);
    report.push(
        9,
        "te-zero-frequency-ideal-limit",
        "quadrature at λ_p = 1e-12 m vs −k_B T ζ(3) R (1 − 4δ/a) / 8a²",
        dev,
        "|dev| ≤ 1e-6",
        dev.abs() <= 1e-6,
    );

    property_checks(&mut report, &engine)?;
    Ok(report)
}

fn property_checks(report: &mut ValidationReport, engine: &EngineSpec) -> Result<()> {
    let gold = MetalModel::GOLD;
    let heat = TemperaturePair::kelvin(300.0, 350.0)?;
    let r1 = SphereRadius::from_millimeters(1.0)?;

    // Antisymmetry and vanishing at equal temperatures, across a few points.
    let mut antisymmetric = true;
    let mut zero_at_equal = true;
    for x in [0.15, 0.5, 1.0, 2.0] {
        let a = um(x)?;
        for model in [gold, MetalModel::IdealMetal] {
            let f = delta_force_plates(a, heat, model)?.delta_f;
            let b = delta_force_plates(a, heat.swapped(), model)?.delta_f;
            antisymmetric &= f == -b;
            zero_at_equal &= delta_force_plates(a, TemperaturePair::kelvin(310.0, 310.0)?, model)?.delta_f == 0.0;
            for ap in [PZF, MTE] {
                let f = delta_force_sphere(a, heat, r1, model, ap)?.delta_f;
                let b = delta_force_sphere(a, heat.swapped(), r1, model, ap)?.delta_f;
                antisymmetric &= f == -b;
                let same = TemperaturePair::kelvin(310.0, 310.0)?;
                zero_at_equal &= delta_force_sphere(a, same, r1, model, ap)?.delta_f == 0.0;
            }
        }
    }
    report.push(10, "antisymmetry", "ΔF(T1, T2) = −ΔF(T2, T1) exactly", 0.0, "exact", antisymmetric);
    report.push(10, "zero-at-equal-temperatures", "ΔF(T, T) = 0 exactly", 0.0, "exact", zero_at_equal);

    let grid = SweepSpec::default_separation();
    let ideal_rows = sweep_separation(heat, MetalModel::IdealMetal, SweepGeometry::Plates, PZF, &grid)?;
    let spread = ideal_rows
        .iter()
        .map(|r| (r.real - ideal_rows[0].real).abs())
        .fold(0.0, f64::max);
    report.push(10, "ideal-plates-separation-independent", "spread of ideal-metal ΔF_pp over the Fig. 1 grid", spread, "0", spread == 0.0);

    for (geometry, id) in [
        (SweepGeometry::Plates, "monotone-plates"),
        (SweepGeometry::Sphere, "monotone-sphere"),
    ] {
        let rows = sweep_separation(heat, gold, geometry, PZF, &grid)?;
        let violations = rows
            .windows(2)
            .filter(|w| !(w[1].real.abs() < w[0].real.abs()))
            .count();
        report.push(
            10,
            id,
            "adjacent grid pairs where |ΔF| fails to decrease (Au)",
            violations as f64,
            "0",
            violations == 0,
        );
    }

    let t1k = kelvin(1.0)?;
    let a1 = um(1.0)?;
    let k = Constants::CODATA2018;
    let f1 = lifshitz::sphere_plate_force_pfa(a1, t1k, r1, MetalModel::IdealMetal, PZF, engine)?;
    let r2 = SphereRadius::new(2.0 * r1.meters())?;
    let f2 = lifshitz::sphere_plate_force_pfa(a1, t1k, r2, MetalModel::IdealMetal, PZF, engine)?;
    report.push(10, "pfa-linearity", "F(2R) − 2F(R)", f2.value - 2.0 * f1.value, "0", f2.value == 2.0 * f1.value);

    let p = lifshitz::plate_pressure(a1, t1k, MetalModel::IdealMetal, PZF, engine)?.value;
    let dev = relative(p, plate_force_zero_temperature(&k, a1));
    report.push(10, "zero-temperature-plate", "engine at T = 1 K vs −π²ħc/(240a⁴)", dev, "|dev| ≤ 1e-3", dev.abs() <= 1e-3);
    let dev = relative(f1.value, sphere_force_zero_temperature(&k, a1, r1));
    report.push(10, "zero-temperature-sphere", "engine at T = 1 K vs −π³ħcR/(360a³)", dev, "|dev| ≤ 1e-3", dev.abs() <= 1e-3);

    let mut worst: f64 = 0.0;
    for x in [0.5, 1.0, 1.5] {
        let a = um(x)?;
        let t = kelvin(300.0)?;
        let derivative = free_energy_derivative(a, t, gold, engine)?;
        let pressure = lifshitz::plate_pressure(a, t, gold, PZF, engine)?.value;
        worst = worst.max(relative(-derivative, pressure).abs());
    }
    report.push(
        10,
        "thermodynamic-identity",
        "largest |−∂E/∂a − P| / |P| at a ∈ {0.5, 1, 1.5} μm",
        worst,
        format!("≤ {THERMODYNAMIC_IDENTITY_TOLERANCE:e}"),
        worst <= THERMODYNAMIC_IDENTITY_TOLERANCE,
    );
    Ok(())
}

/// Five-point central difference of the free energy per area in `a`.
pub fn free_energy_derivative(
    a: Separation,
    t: Temperature,
    model: MetalModel,
    engine: &EngineSpec,
) -> Result<f64> {
    let h = 1e-2 * a.meters();
    let e = |da: f64| {
        lifshitz::plate_free_energy_per_area(Separation::new(a.meters() + da)?, t, model, PZF, engine)
    };
    Ok((-e(2.0 * h)? + 8.0 * e(h)? - 8.0 * e(-h)? + e(-2.0 * h)?) / (12.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbed_constants_break_percentage_checks() {
        let report = run_checklist(&Constants::CODATA2018.perturbed(0.01)).unwrap();
        let failed: Vec<&str> = report.criterion(1).filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
        assert!(!failed.is_empty(), "{}", report.to_text());
    }

    #[test]
    fn report_carries_claim_identifiers() {
        let report = run_checklist(&Constants::CODATA2018).unwrap();
        for id in ["fig1-ratio>9", "fig2-ratio>2", "fig3-ratio>6", "sphere-magnitude-1e-13"] {
            assert!(report.get(id).is_some(), "missing {id}");
        }
        assert!(report.get("ideal-sphere-thermal-2um").unwrap().note.is_some());
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert!(json["checks"].as_array().unwrap().len() >= 30);
    }
}
