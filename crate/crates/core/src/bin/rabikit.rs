use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rabikit::scenario::{compare_dirs, run_scenario, ScenarioConfig};
use rabikit::selftest::run_selftest;

#[derive(Parser)]
#[command(name = "rabikit", version, about = "Momentum-resolved Rabi dynamics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a JSON scenario and write CSV output.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Single-threaded reference path.
        #[arg(long)]
        deterministic: bool,
    },
    /// Compare two output directories.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Built-in identity and unitarity checks.
    Selftest,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.cmd {
        Cmd::Simulate { config, out, deterministic } => {
            let cfg = ScenarioConfig::load(&config)?;
            let go = || run_scenario(&cfg, out.as_deref());
            let res = if deterministic {
                rayon::ThreadPoolBuilder::new().num_threads(1).build()?.install(go)?
            } else {
                go()?
            };
            println!("wrote {} samples to {}", res.states.len(), res.dir.display());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Compare { a, b, tol } => {
            let m = compare_dirs(&a, &b)?;
            println!("tau,max_pointwise,l2,d_pop_e,d_pop_g");
            for s in &m.samples {
                println!("{:.6},{:.3e},{:.3e},{:.3e},{:.3e}", s.tau, s.max_pointwise, s.l2, s.d_pop_e, s.d_pop_g);
            }
            println!(
                "max_pointwise {:.3e}  max_l2 {:.3e}  max_population_diff {:.3e}  tol {:.1e}",
                m.max_pointwise, m.max_l2, m.max_population_diff, tol
            );
            Ok(if m.within(tol) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Selftest => {
            let r = run_selftest();
            for c in &r.checks {
                let tag = if c.passed() { "ok  " } else { "FAIL" };
                println!("{tag} {:<36} worst {:.2e} (tol {:.0e}, {} samples)", c.name, c.worst, c.tol, c.samples);
            }
            Ok(if r.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}
