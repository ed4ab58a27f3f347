//! Ensemble of resonant Rabi oscillations under white frequency noise on the laser
//! phase. Prints the ensemble-averaged excited population; pass a path to also
//! write the first noise path as CSV.

use std::f64::consts::PI;

use rabikit::analytic::evolve_free_with_phase;
use rabikit::phase::{sample_phase_noise, NoiseParams, PhaseFunction};
use rabikit::{resonant_momentum, DetuningBranch, Frame, Level, MomentumGrid, SimulationParams, SpinorState};

fn main() -> rabikit::Result<()> {
    let csv = std::env::args().nth(1);
    let grid = MomentumGrid::new(128, -8.0, 8.0)?;
    let params = SimulationParams::new(1.0, 1.0);
    let nu0 = resonant_momentum(DetuningBranch::Minus, params.delta_omega, params.omega_r);
    let mut s0 = SpinorState::gaussian(&grid, nu0, 0.05, Level::Ground);
    s0.frame = Frame::Interaction;
    let tend = 2.0 * PI;
    let taus: Vec<f64> = (0..=16).map(|j| j as f64 * tend / 16.0).collect();

    for s in [0.0, 0.05, 0.2] {
        let members = 100;
        let mut mean = vec![0.0; taus.len()];
        for seed in 0..members {
            let path = sample_phase_noise(&NoiseParams { s, seed, d_tau: 0.01 }, tend)?;
            if seed == 0 && s > 0.0 {
                if let Some(p) = &csv {
                    path.write_csv(std::path::Path::new(p))?;
                }
            }
            let phase = PhaseFunction::from_params(&params).with_noise(path);
            for (m, st) in mean.iter_mut().zip(evolve_free_with_phase(&s0, params.omega_r, &phase, &taus)?) {
                *m += st.populations().0 / members as f64;
            }
        }
        let row: Vec<String> = mean.iter().step_by(2).map(|p| format!("{p:.3}")).collect();
        println!("s = {s:<5} <P_e> at tau = 0, pi/4, ..: {}", row.join(" "));
    }
    Ok(())
}
