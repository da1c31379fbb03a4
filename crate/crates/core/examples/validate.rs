use casimir_delta::validation::run_checklist;
use casimir_delta::Constants;

fn main() -> casimir_delta::Result<()> {
    let report = run_checklist(&Constants::CODATA2018)?;
    print!("{}", report.to_text());
    let failed: Vec<_> = report.failures().map(|c| c.id.clone()).collect();
    println!("{} checks, {} failed {:?}", report.checks.len(), failed.len(), failed);
    Ok(())
}
