//! Run configuration: defaults, then `CASIMIR_DELTA_PRECISION`, then an
//! optional `key = value` file, then command-line flags. Units here are the
//! user-facing ones (μm, nm, mm, K); conversion to SI happens in the
//! accessors.

use serde::Serialize;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::dielectric::{ApproachVariant, MetalModel};
use crate::error::{CasimirError, Result};
use crate::lifshitz::EngineSpec;
use crate::quantities::{Separation, SphereRadius, Temperature};
use crate::scenarios::{Spacing, SweepGeometry, SweepSpec, TemperaturePair};

pub const PRECISION_ENV: &str = "CASIMIR_DELTA_PRECISION";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproachChoice {
    Plasma,
    ModifiedTe,
    /// Ideal metal; the zero-frequency prescription is irrelevant.
    Ideal,
}

impl ApproachChoice {
    pub fn variant(self) -> ApproachVariant {
        match self {
            ApproachChoice::ModifiedTe => ApproachVariant::ModifiedTE,
            ApproachChoice::Plasma | ApproachChoice::Ideal => ApproachVariant::PlasmaZeroFrequency,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ApproachChoice::Plasma => "plasma",
            ApproachChoice::ModifiedTe => "modified-te",
            ApproachChoice::Ideal => "ideal",
        }
    }
}

impl FromStr for ApproachChoice {
    type Err = CasimirError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plasma" => Ok(ApproachChoice::Plasma),
            "modified-te" => Ok(ApproachChoice::ModifiedTe),
            "ideal" => Ok(ApproachChoice::Ideal),
            other => Err(CasimirError::usage(format!(
                "unknown approach '{other}' (expected plasma, modified-te or ideal)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = CasimirError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(CasimirError::usage(format!(
                "unknown format '{other}' (expected csv or json)"
            ))),
        }
    }
}

fn parse_geometry(s: &str) -> Result<SweepGeometry> {
    match s {
        "plates" => Ok(SweepGeometry::Plates),
        "sphere" => Ok(SweepGeometry::Sphere),
        other => Err(CasimirError::usage(format!(
            "unknown geometry '{other}' (expected plates or sphere)"
        ))),
    }
}

fn geometry_name(g: SweepGeometry) -> &'static str {
    match g {
        SweepGeometry::Plates => "plates",
        SweepGeometry::Sphere => "sphere",
    }
}

/// Optional settings, one per flag. `None` leaves the current value alone.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub geometry: Option<SweepGeometry>,
    pub approach: Option<ApproachChoice>,
    pub lambda_p_nm: Option<f64>,
    pub t1_k: Option<f64>,
    pub t2_k: Option<f64>,
    pub a_um: Option<f64>,
    pub a_min_um: Option<f64>,
    pub a_max_um: Option<f64>,
    pub points: Option<usize>,
    pub radius_mm: Option<f64>,
    pub format: Option<OutputFormat>,
    pub oracle: Option<bool>,
    pub tail_tolerance: Option<f64>,
    pub quadrature_tolerance: Option<f64>,
}

fn parse_number<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| CasimirError::usage(format!("{key}: cannot parse '{value}'")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(CasimirError::usage(format!("{key}: '{other}' is not a boolean"))),
    }
}

impl Overrides {
    /// Set one entry by its flag name (with or without leading dashes;
    /// `-` and `_` are interchangeable).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key_norm = key.trim_start_matches('-').replace('_', "-");
        let value = value.trim();
        match key_norm.as_str() {
            "geometry" => self.geometry = Some(parse_geometry(value)?),
            "approach" => self.approach = Some(value.parse()?),
            "lambda-p-nm" => self.lambda_p_nm = Some(parse_number(key, value)?),
            "t1-k" => self.t1_k = Some(parse_number(key, value)?),
            "t2-k" => self.t2_k = Some(parse_number(key, value)?),
            "a-um" => self.a_um = Some(parse_number(key, value)?),
            "a-min-um" => self.a_min_um = Some(parse_number(key, value)?),
            "a-max-um" => self.a_max_um = Some(parse_number(key, value)?),
            "points" => self.points = Some(parse_number(key, value)?),
            "radius-mm" => self.radius_mm = Some(parse_number(key, value)?),
            "format" => self.format = Some(value.parse()?),
            "oracle" => self.oracle = Some(parse_bool(key, value)?),
            "tail-tolerance" => self.tail_tolerance = Some(parse_number(key, value)?),
            "quadrature-tolerance" => self.quadrature_tolerance = Some(parse_number(key, value)?),
            _ => return Err(CasimirError::usage(format!("unknown configuration key '{key}'"))),
        }
        Ok(())
    }

    /// Parse a `key = value` file. `#` starts a comment.
    pub fn parse_file_contents(text: &str) -> Result<Self> {
        let mut out = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CasimirError::usage(format!("config line {}: expected 'key = value'", lineno + 1))
            })?;
            out.set(key.trim(), value)?;
        }
        Ok(out)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CasimirError::usage(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::parse_file_contents(&text)
    }

    /// Value of `CASIMIR_DELTA_PRECISION`: either one number used for both
    /// tolerances, or `tail=<x>,quad=<y>` (either part optional).
    pub fn from_precision_env(value: &str) -> Result<Self> {
        let mut out = Self::default();
        let value = value.trim();
        if value.is_empty() {
            return Ok(out);
        }
        if let Ok(tol) = value.parse::<f64>() {
            out.tail_tolerance = Some(tol);
            out.quadrature_tolerance = Some(tol);
            return Ok(out);
        }
        for part in value.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(|| {
                CasimirError::usage(format!("{PRECISION_ENV}: cannot parse '{part}'"))
            })?;
            match k.trim() {
                "tail" => out.tail_tolerance = Some(parse_number(PRECISION_ENV, v.trim())?),
                "quad" | "quadrature" => {
                    out.quadrature_tolerance = Some(parse_number(PRECISION_ENV, v.trim())?)
                }
                other => {
                    return Err(CasimirError::usage(format!(
                        "{PRECISION_ENV}: unknown part '{other}'"
                    )))
                }
            }
        }
        Ok(out)
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub geometry: SweepGeometry,
    pub approach: ApproachChoice,
    pub lambda_p_nm: f64,
    pub t1_k: f64,
    pub t2_k: f64,
    pub a_um: f64,
    pub a_min_um: f64,
    pub a_max_um: f64,
    /// `None` picks the command's default grid size.
    pub points: Option<usize>,
    pub radius_mm: f64,
    pub format: OutputFormat,
    pub oracle: bool,
    pub tail_tolerance: f64,
    pub quadrature_tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let engine = EngineSpec::default();
        Self {
            geometry: SweepGeometry::Plates,
            approach: ApproachChoice::Plasma,
            lambda_p_nm: 136.0,
            t1_k: 300.0,
            t2_k: 350.0,
            a_um: 0.5,
            a_min_um: 0.15,
            a_max_um: 2.0,
            points: None,
            radius_mm: 2.0,
            format: OutputFormat::Csv,
            oracle: false,
            tail_tolerance: engine.matsubara.relative_tail_tolerance,
            quadrature_tolerance: engine.quadrature.relative_tolerance,
        }
    }
}

impl RunConfig {
    pub fn apply(&mut self, o: &Overrides) {
        macro_rules! take {
            ($field:ident) => {
                if let Some(v) = o.$field {
                    self.$field = v;
                }
            };
        }
        take!(geometry);
        take!(approach);
        take!(lambda_p_nm);
        take!(t1_k);
        take!(t2_k);
        take!(a_um);
        take!(a_min_um);
        take!(a_max_um);
        take!(radius_mm);
        take!(format);
        take!(oracle);
        take!(tail_tolerance);
        take!(quadrature_tolerance);
        if o.points.is_some() {
            self.points = o.points;
        }
    }

    /// Defaults, then the precision variable (if given), then the file,
    /// then flags.
    pub fn resolve(
        precision_env: Option<&str>,
        file: Option<&Overrides>,
        flags: &Overrides,
    ) -> Result<Self> {
        let mut cfg = Self::default();
        if let Some(env) = precision_env {
            cfg.apply(&Overrides::from_precision_env(env)?);
        }
        if let Some(f) = file {
            cfg.apply(f);
        }
        cfg.apply(flags);
        Ok(cfg)
    }

    pub fn model(&self) -> Result<MetalModel> {
        if self.approach == ApproachChoice::Ideal {
            return Ok(MetalModel::IdealMetal);
        }
        MetalModel::from_plasma_wavelength(self.lambda_p_nm * 1e-9)
            .map_err(|e| CasimirError::usage(e.to_string()))
    }

    pub fn temperatures(&self) -> Result<TemperaturePair> {
        TemperaturePair::kelvin(self.t1_k, self.t2_k).map_err(|e| CasimirError::usage(e.to_string()))
    }

    pub fn separation(&self) -> Result<Separation> {
        Separation::from_micrometers(self.a_um).map_err(|e| CasimirError::usage(e.to_string()))
    }

    pub fn radius(&self) -> Result<SphereRadius> {
        SphereRadius::from_millimeters(self.radius_mm).map_err(|e| CasimirError::usage(e.to_string()))
    }

    pub fn t1(&self) -> Result<Temperature> {
        Temperature::new(self.t1_k).map_err(|e| CasimirError::usage(e.to_string()))
    }

    /// Separation grid in meters.
    pub fn separation_grid(&self) -> Result<SweepSpec> {
        let grid = SweepSpec {
            start: self.a_min_um * 1e-6,
            end: self.a_max_um * 1e-6,
            points: self.points.unwrap_or(75),
            spacing: Spacing::Log,
        };
        grid.values().map_err(|e| CasimirError::usage(e.to_string()))?;
        Ok(grid)
    }

    /// Upper-temperature grid from `t1_k` to `t2_k`.
    pub fn temperature_grid(&self) -> Result<SweepSpec> {
        let grid = SweepSpec {
            start: self.t1_k,
            end: self.t2_k,
            points: self.points.unwrap_or(51),
            spacing: Spacing::Linear,
        };
        grid.values().map_err(|e| CasimirError::usage(e.to_string()))?;
        Ok(grid)
    }

    pub fn engine_spec(&self) -> Result<EngineSpec> {
        for (name, v) in [
            ("tail tolerance", self.tail_tolerance),
            ("quadrature tolerance", self.quadrature_tolerance),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(CasimirError::usage(format!("{name} must be in (0, 1), got {v}")));
            }
        }
        let mut spec = EngineSpec::default();
        spec.matsubara.relative_tail_tolerance = self.tail_tolerance;
        spec.quadrature.relative_tolerance = self.quadrature_tolerance;
        Ok(spec)
    }

    /// `key = value` pairs for the settings the given command reads, in a
    /// fixed order. These are what datasets embed.
    pub fn resolved_for(&self, command: Command) -> Vec<(&'static str, String)> {
        let mut out: Vec<(&'static str, String)> = Vec::new();
        let points = |default: usize| self.points.unwrap_or(default).to_string();
        match command {
            Command::Fig1 => {
                out.push(("approach", self.approach.as_str().into()));
                out.push(("lambda_p_nm", fmt_value(self.lambda_p_nm)));
                out.push(("t1_k", fmt_value(self.t1_k)));
                out.push(("t2_k", fmt_value(self.t2_k)));
                out.push(("a_min_um", fmt_value(self.a_min_um)));
                out.push(("a_max_um", fmt_value(self.a_max_um)));
                out.push(("points", points(75)));
            }
            Command::Fig2 => {
                out.push(("approach", self.approach.as_str().into()));
                out.push(("lambda_p_nm", fmt_value(self.lambda_p_nm)));
                out.push(("t1_k", fmt_value(self.t1_k)));
                out.push(("t2_k", fmt_value(self.t2_k)));
                out.push(("a_min_um", fmt_value(self.a_min_um)));
                out.push(("a_max_um", fmt_value(self.a_max_um)));
                out.push(("points", points(75)));
            }
            Command::Fig3 => {
                out.push(("lambda_p_nm", fmt_value(self.lambda_p_nm)));
                out.push(("t1_k", fmt_value(self.t1_k)));
                out.push(("t2_k", fmt_value(self.t2_k)));
                out.push(("a_um", fmt_value(self.a_um)));
                out.push(("points", points(51)));
            }
            Command::Compute => {
                out.push(("geometry", geometry_name(self.geometry).into()));
                out.push(("approach", self.approach.as_str().into()));
                out.push(("lambda_p_nm", fmt_value(self.lambda_p_nm)));
                out.push(("t1_k", fmt_value(self.t1_k)));
                out.push(("t2_k", fmt_value(self.t2_k)));
                out.push(("a_um", fmt_value(self.a_um)));
                if self.geometry == SweepGeometry::Sphere {
                    out.push(("radius_mm", fmt_value(self.radius_mm)));
                }
                out.push(("oracle", self.oracle.to_string()));
                if self.oracle {
                    out.push(("tail_tolerance", fmt_value(self.tail_tolerance)));
                    out.push(("quadrature_tolerance", fmt_value(self.quadrature_tolerance)));
                }
            }
            Command::Validate => {}
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Fig1,
    Fig2,
    Fig3,
    Compute,
    Validate,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Fig1 => "fig1",
            Command::Fig2 => "fig2",
            Command::Fig3 => "fig3",
            Command::Compute => "compute",
            Command::Validate => "validate",
        })
    }
}

/// Shortest round-trip representation; stable across runs.
pub fn fmt_value(v: f64) -> String {
    format!("{v}")
}
