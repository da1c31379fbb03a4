//! One configuration through the same path as `casimir-delta compute`,
//! printed as JSON.

use casimir_delta::commands::cmd_compute;
use casimir_delta::config::{Overrides, RunConfig};

fn main() -> casimir_delta::Result<()> {
    let file = Overrides::parse_file_contents(
        "geometry = sphere\napproach = modified-te\na_um = 0.7\nradius_mm = 2\n",
    )?;
    let mut flags = Overrides::default();
    flags.set("oracle", "true")?;
    let cfg = RunConfig::resolve(None, Some(&file), &flags)?;
    let record = cmd_compute(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&record).unwrap());
    Ok(())
}
