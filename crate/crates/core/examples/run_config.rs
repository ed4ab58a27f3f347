//! Runs a JSON scenario (default `examples/configs/resonant_free.json`) into a
//! directory and prints the manifest summary.

use std::path::PathBuf;

use rabikit::scenario::{run_scenario, ScenarioConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let cfg_path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/resonant_free.json"));
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("rabikit-example"));

    let cfg = ScenarioConfig::load(&cfg_path)?;
    let run = run_scenario(&cfg, Some(&out))?;
    println!("solver {} ({} samples) -> {}", run.manifest.solver, run.manifest.taus.len(), run.dir.display());
    let files = &run.manifest.files;
    println!("  {} state files, {} element files, populations in {}", files.states.len(), files.elements.len(), files.populations);
    let last = run.states.last().unwrap();
    let (pe, pg) = last.populations();
    println!("final tau {:.4}: P_e = {pe:.6}, P_g = {pg:.6}", last.tau);
    Ok(())
}
