//! Second-order convergence of the split-step integrator and the gain from
//! Richardson extrapolation, measured against the exact free propagator.

use std::f64::consts::PI;

use rabikit::analytic::{free_propagator_elements, lab_frame_to_interaction};
use rabikit::oracle::{richardson, split_step_sample, OracleConfig, PotentialSpec};
use rabikit::phase::PhaseFunction;
use rabikit::{Level, MomentumGrid, SimulationParams, SpinorState};

fn main() -> rabikit::Result<()> {
    let grid = MomentumGrid::new(1024, -8.0, 8.0)?;
    let params = SimulationParams::new(1.0, 0.7);
    let s0 = SpinorState::gaussian(&grid, -1.5, 0.2, Level::Ground);
    let tau = PI;
    let exact = free_propagator_elements(&grid, &params, tau).apply(&s0)?;
    let run = |steps: usize| -> rabikit::Result<SpinorState> {
        let cfg = OracleConfig::new(tau / steps as f64, PotentialSpec::None, PhaseFunction::from_params(&params));
        let s = split_step_sample(&s0, &cfg, &params, &[tau], false)?;
        lab_frame_to_interaction(&s[0], &params, tau, &PotentialSpec::None)
    };

    println!("{:>7} {:>12} {:>12}", "steps", "error", "richardson");
    let mut prev: Option<SpinorState> = None;
    for steps in [250, 500, 1000, 2000, 4000] {
        let s = run(steps)?;
        let rich = prev.as_ref().map(|c| richardson(c, &s).max_abs_diff(&exact));
        let rich = rich.map(|e| format!("{e:12.3e}")).unwrap_or_default();
        println!("{steps:7} {:12.3e} {rich}", s.max_abs_diff(&exact));
        prev = Some(s);
    }
    Ok(())
}
