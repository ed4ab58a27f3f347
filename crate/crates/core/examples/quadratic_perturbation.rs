//! Order-by-order solution in a weak harmonic trap, checked against the oracle.

use std::f64::consts::PI;

use rabikit::oracle::{external_evolve, split_step_sample, OracleConfig, PotentialSpec};
use rabikit::perturb::perturbative_solve;
use rabikit::phase::PhaseFunction;
use rabikit::{Frame, Level, MomentumGrid, SimulationParams, SpinorState};

fn main() -> rabikit::Result<()> {
    let grid = MomentumGrid::new(1024, -8.0, 8.0)?;
    let params = SimulationParams::new(0.5, -0.5).with_epsilon(1e-3);
    let s0 = SpinorState::gaussian(&grid, 0.0, 0.1, Level::Ground);
    let tend = 2.0 * PI;
    let taus: Vec<f64> = (0..129).map(|j| j as f64 * tend / 128.0).collect();
    let series = perturbative_solve(&s0, &params, &taus, 6)?;

    let pot = PotentialSpec::Quadratic { epsilon: params.epsilon };
    let h = 5e-4;
    let cfg = OracleConfig::new(h, pot.clone(), PhaseFunction::from_params(&params));
    let lab = split_step_sample(&s0, &cfg, &params, &[tend], false)?;
    let mut reference = external_evolve(&lab[0], &pot, params.omega_r, -tend, h)?;
    reference.frame = Frame::Interaction;

    let last = taus.len() - 1;
    println!("{:>5} {:>14} {:>14}", "N", "|eps^N psi_N|", "L2 error");
    for n in 0..=series.max_order() {
        let err = series.resummed_to(n, last).l2_diff(&reference);
        println!("{n:5} {:14.3e} {err:14.3e}", series.correction_norm(n, last));
    }
    Ok(())
}
