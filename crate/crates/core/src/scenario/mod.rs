//! JSON-configured runs writing plot-ready CSV, and run-to-run comparison.
//!
//! An output directory holds `manifest.json`, one `state_XXXX.csv` per τ sample
//! (`nu, re_psi_e, im_psi_e, re_psi_g, im_psi_g`), `elements_XXXX.csv`
//! (`nu, abs_u_xx, arg_u_xx` for ee, eg, ge, gg) when the solver builds propagator
//! elements, `populations.csv`, and `noise_path.csv` (`tau, delta_phi`) for noisy runs.

mod compare;
mod config;
mod run;

pub use compare::{compare_dirs, compare_solutions, load_bundle, CompareMetrics, SampleMetrics};
pub use config::{FieldViolation, InitialSpec, PhaseSpec, ScenarioConfig, SolverSpec, TauSpec, ValidationError};
pub use run::{run_scenario, FileRecord, Manifest, PhaseRecord, RunOutput, MANIFEST_VERSION};
