use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use casimir_delta::commands::{cmd_compute, cmd_fig1, cmd_fig2, cmd_fig3};
use casimir_delta::config::{
    ApproachChoice, Command, OutputFormat, Overrides, RunConfig, PRECISION_ENV,
};
use casimir_delta::output::record_to_csv;
use casimir_delta::validation::run_checklist;
use casimir_delta::{CasimirError, Constants};

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_VALIDATION: u8 = 3;

#[derive(Parser)]
#[command(name = "casimir-delta", version, about = "Thermal Casimir difference forces")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Plate–plate ΔF against separation.
    Fig1(Flags),
    /// Sphere–plate ΔF/R against separation.
    Fig2(Flags),
    /// Sphere–plate ΔF/R against the upper temperature, both prescriptions.
    Fig3(Flags),
    /// One (a, T1, T2) point with term breakdown.
    Compute(Flags),
    /// Run the acceptance checklist.
    Validate {
        #[arg(long, value_parser = parse_format)]
        format: Option<OutputFormat>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Shift the constants by this fraction (sensitivity check).
        #[arg(long, hide = true)]
        perturb_constants: Option<f64>,
    },
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: CasimirError| e.to_string())
}

fn parse_approach(s: &str) -> Result<ApproachChoice, String> {
    s.parse().map_err(|e: CasimirError| e.to_string())
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct Flags {
    #[arg(long, value_parser = ["plates", "sphere"])]
    geometry: Option<String>,
    #[arg(long, value_parser = parse_approach)]
    approach: Option<ApproachChoice>,
    #[arg(long)]
    lambda_p_nm: Option<f64>,
    #[arg(long)]
    t1_k: Option<f64>,
    #[arg(long)]
    t2_k: Option<f64>,
    #[arg(long)]
    a_um: Option<f64>,
    #[arg(long)]
    a_min_um: Option<f64>,
    #[arg(long)]
    a_max_um: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    radius_mm: Option<f64>,
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Also evaluate the full Lifshitz sum (compute only).
    #[arg(long)]
    oracle: bool,
    /// `key = value` file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> Result<Overrides, CasimirError> {
        let mut o = Overrides {
            approach: self.approach,
            lambda_p_nm: self.lambda_p_nm,
            t1_k: self.t1_k,
            t2_k: self.t2_k,
            a_um: self.a_um,
            a_min_um: self.a_min_um,
            a_max_um: self.a_max_um,
            points: self.points,
            radius_mm: self.radius_mm,
            format: self.format,
            oracle: self.oracle.then_some(true),
            ..Overrides::default()
        };
        if let Some(g) = &self.geometry {
            o.set("geometry", g)?;
        }
        Ok(o)
    }

    fn resolve(&self) -> Result<RunConfig, CasimirError> {
        let env = std::env::var(PRECISION_ENV).ok();
        let file = self.config.as_deref().map(Overrides::from_file).transpose()?;
        RunConfig::resolve(env.as_deref(), file.as_ref(), &self.overrides()?)
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CasimirError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CasimirError::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CasimirError::usage(format!("cannot write output: {e}")))
        }
    }
}

fn run_dataset(flags: &Flags, command: Command) -> Result<(), CasimirError> {
    let cfg = flags.resolve()?;
    let text = match command {
        Command::Fig1 => cmd_fig1(&cfg)?.render(cfg.format),
        Command::Fig2 => cmd_fig2(&cfg)?.render(cfg.format),
        Command::Fig3 => cmd_fig3(&cfg)?.render(cfg.format),
        Command::Compute => {
            let record = cmd_compute(&cfg)?;
            let header = cfg.resolved_for(Command::Compute);
            match cfg.format {
                OutputFormat::Csv => record_to_csv(&header, Command::Compute, &record),
                OutputFormat::Json => {
                    let doc = serde_json::json!({
                        "tool": casimir_delta::output::TOOL_NAME,
                        "version": casimir_delta::output::VERSION,
                        "command": "compute",
                        "config": casimir_delta::output::config_object(&header),
                        "result": record,
                    });
                    serde_json::to_string_pretty(&doc).expect("valid JSON") + "\n"
                }
            }
        }
        Command::Validate => unreachable!("validate has its own runner"),
    };
    write_output(flags.output.as_ref(), &text)
}

fn exit_code(err: &CasimirError) -> u8 {
    match err {
        CasimirError::Numerical { .. } => EXIT_NUMERICAL,
        CasimirError::Domain { .. } | CasimirError::Usage(_) => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Cmd::Fig1(f) => run_dataset(f, Command::Fig1),
        Cmd::Fig2(f) => run_dataset(f, Command::Fig2),
        Cmd::Fig3(f) => run_dataset(f, Command::Fig3),
        Cmd::Compute(f) => run_dataset(f, Command::Compute),
        Cmd::Validate {
            format,
            output,
            perturb_constants,
        } => {
            let constants = match perturb_constants {
                Some(frac) => Constants::CODATA2018.perturbed(*frac),
                None => Constants::CODATA2018,
            };
            match run_checklist(&constants) {
                Ok(report) => {
                    let text = match format.unwrap_or(OutputFormat::Csv) {
                        OutputFormat::Json => report.to_json(),
                        OutputFormat::Csv => report.to_text(),
                    };
                    if let Err(e) = write_output(output.as_ref(), &text) {
                        Err(e)
                    } else if report.passed() {
                        return ExitCode::SUCCESS;
                    } else {
                        for c in report.failures() {
                            eprintln!("validation failed: {} (measured {:e}, expected {})", c.id, c.measured, c.expected);
                        }
                        return ExitCode::from(EXIT_VALIDATION);
                    }
                }
                Err(e) => Err(e),
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
