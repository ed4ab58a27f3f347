//! Resonant Rabi oscillation of a narrow ground-state packet, closed form against
//! the split-step integrator.

use std::f64::consts::PI;

use rabikit::analytic::{free_propagator_elements, lab_frame_to_interaction};
use rabikit::oracle::{split_step_sample, OracleConfig, PotentialSpec};
use rabikit::phase::PhaseFunction;
use rabikit::{resonant_momentum, DetuningBranch, Level, MomentumGrid, SimulationParams, SpinorState};

fn main() -> rabikit::Result<()> {
    let grid = MomentumGrid::new(1024, -8.0, 8.0)?;
    let params = SimulationParams::new(1.0, 1.0);
    let nu0 = resonant_momentum(DetuningBranch::Minus, params.delta_omega, params.omega_r);
    let s0 = SpinorState::gaussian(&grid, nu0, 0.05, Level::Ground);

    let taus: Vec<f64> = (0..=8).map(|j| j as f64 * PI / 8.0).collect();
    let cfg = OracleConfig::new(1e-3, PotentialSpec::None, PhaseFunction::from_params(&params));
    let oracle = split_step_sample(&s0, &cfg, &params, &taus, false)?;

    println!("packet at nu = {nu0}, sigma = 0.05");
    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "tau", "sin^2", "P_e free", "P_e oracle", "max diff");
    for s in &oracle {
        let exact = free_propagator_elements(&grid, &params, s.tau).apply(&s0)?;
        let back = lab_frame_to_interaction(s, &params, s.tau, &PotentialSpec::None)?;
        println!(
            "{:8.4} {:12.8} {:12.8} {:12.8} {:12.3e}",
            s.tau,
            s.tau.sin().powi(2),
            exact.populations().0,
            s.populations().0,
            exact.max_abs_diff(&back)
        );
    }
    Ok(())
}
