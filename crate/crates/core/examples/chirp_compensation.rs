//! A quadratic phase ramp undoes the Doppler drift caused by a linear potential.

use std::f64::consts::PI;

use rabikit::analytic::lab_frame_to_interaction;
use rabikit::oracle::{split_step_sample, OracleConfig, PotentialSpec};
use rabikit::phase::{chirp_for_linear, PhaseFunction};
use rabikit::{Level, MomentumGrid, SimulationParams, SpinorState};

fn main() -> rabikit::Result<()> {
    let grid = MomentumGrid::new(2048, -12.8, 12.8)?;
    let params = SimulationParams::new(0.1, 0.0).with_kappa(1.0);
    let pot = PotentialSpec::Linear { kappa: params.kappa };
    let nu0 = 0.5;
    let s0 = SpinorState::gaussian(&grid, nu0, 0.1, Level::Ground);
    let (i0, i1) = (grid.index_of(nu0).unwrap(), grid.index_of(nu0 + 2.0 * params.omega_r).unwrap());
    let taus: Vec<f64> = (0..=8).map(|j| j as f64 * PI / 8.0).collect();

    let transfer = |phase: PhaseFunction| -> rabikit::Result<Vec<f64>> {
        let cfg = OracleConfig::new(1e-3, pot.clone(), phase);
        split_step_sample(&s0, &cfg, &params, &taus, false)?
            .iter()
            .map(|s| {
                let s = lab_frame_to_interaction(s, &params, s.tau, &pot)?;
                Ok(s.psi_e[i1].norm_sqr() / s0.psi_g[i0].norm_sqr())
            })
            .collect()
    };
    let chirped = transfer(chirp_for_linear(&params, nu0))?;
    let plain = transfer(PhaseFunction::constant_rate(0.0, -(nu0 + params.omega_r)))?;

    println!("{:>8} {:>10} {:>10} {:>10}", "tau", "sin^2", "chirped", "fixed");
    for ((t, c), p) in taus.iter().zip(&chirped).zip(&plain) {
        println!("{t:8.4} {:10.6} {c:10.6} {p:10.6}", t.sin().powi(2));
    }
    Ok(())
}
