//! `ψ_lab = R(τ) S(τ) ψ_int` with `S = exp(−iτ(T + V))` and `R` the internal phases.
//!
//! For a linear potential `S = e^{−iκ²τ³/(12ω_r)} e^{−i2κζτ} e^{−iτ(ν−κτ)²/(4ω_r)}`;
//! the middle factor lowers every momentum by `2κτ`.

use num_complex::Complex64;

use crate::elements::SHIFT_TOLERANCE;
use crate::error::Result;
use crate::oracle::{external_evolve, PotentialSpec};
use crate::params::SimulationParams;
use crate::state::{Frame, SpinorState};

/// Substep used when `S` has no closed form (quadratic or tabulated potentials).
const EXTERNAL_SUBSTEP: f64 = 1e-3;

fn kinetic_phase(state: &mut SpinorState, omega_r: f64, tau: f64, offset: f64, sign: f64) {
    let g = state.grid.clone();
    for comp in [&mut state.psi_e, &mut state.psi_g] {
        for (i, a) in comp.iter_mut().enumerate() {
            let p = g.nu(i) - offset;
            *a *= Complex64::from_polar(1.0, -sign * tau * p * p / (4.0 * omega_r));
        }
    }
}

fn internal_phase(state: &mut SpinorState, params: &SimulationParams, tau: f64, sign: f64) {
    let pe = Complex64::from_polar(1.0, -sign * params.eps_e * tau);
    let pg = Complex64::from_polar(1.0, -sign * params.eps_g * tau);
    state.psi_e.iter_mut().for_each(|a| *a *= pe);
    state.psi_g.iter_mut().for_each(|a| *a *= pg);
}

fn momentum_shift(state: &mut SpinorState, s: f64) -> Result<()> {
    state.psi_e = state.grid.shift(&state.psi_e, s, SHIFT_TOLERANCE)?;
    state.psi_g = state.grid.shift(&state.psi_g, s, SHIFT_TOLERANCE)?;
    Ok(())
}

/// Interaction picture → lab frame at time `tau`.
pub fn lab_frame_restore(
    state: &SpinorState,
    params: &SimulationParams,
    tau: f64,
    potential: &PotentialSpec,
) -> Result<SpinorState> {
    state.require_frame(Frame::Interaction)?;
    let wr = params.omega_r;
    let mut out = state.clone();
    match potential {
        PotentialSpec::None => kinetic_phase(&mut out, wr, tau, 0.0, 1.0),
        PotentialSpec::Linear { kappa } => {
            let k = *kappa;
            kinetic_phase(&mut out, wr, tau, k * tau, 1.0);
            momentum_shift(&mut out, -2.0 * k * tau)?;
            let g = Complex64::from_polar(1.0, -k * k * tau.powi(3) / (12.0 * wr));
            out = out.scaled(g);
        }
        other => out = external_evolve(&out, other, wr, tau, EXTERNAL_SUBSTEP)?,
    }
    internal_phase(&mut out, params, tau, 1.0);
    out.frame = Frame::Lab;
    out.tau = tau;
    Ok(out)
}

/// Lab frame → interaction picture at time `tau`; inverse of [`lab_frame_restore`].
pub fn lab_frame_to_interaction(
    state: &SpinorState,
    params: &SimulationParams,
    tau: f64,
    potential: &PotentialSpec,
) -> Result<SpinorState> {
    state.require_frame(Frame::Lab)?;
    let wr = params.omega_r;
    let mut out = state.clone();
    internal_phase(&mut out, params, tau, -1.0);
    match potential {
        PotentialSpec::None => kinetic_phase(&mut out, wr, tau, 0.0, -1.0),
        PotentialSpec::Linear { kappa } => {
            let k = *kappa;
            let g = Complex64::from_polar(1.0, k * k * tau.powi(3) / (12.0 * wr));
            out = out.scaled(g);
            momentum_shift(&mut out, 2.0 * k * tau)?;
            kinetic_phase(&mut out, wr, tau, k * tau, -1.0);
        }
        other => out = external_evolve(&out, other, wr, -tau, EXTERNAL_SUBSTEP)?,
    }
    out.frame = Frame::Interaction;
    out.tau = tau;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::MomentumGrid;
    use crate::state::Level;

    #[test]
    fn identity_at_zero_and_roundtrip() {
        let g = MomentumGrid::new(512, -8.0, 8.0).unwrap();
        let p = SimulationParams::new(0.5, 0.0).with_kappa(0.3).with_internal_energies(0.2, -0.1);
        let s = SpinorState::gaussian(&g, 0.5, 0.2, Level::Ground);
        let pot = PotentialSpec::Linear { kappa: 0.3 };
        let lab = lab_frame_restore(&s, &p, 0.0, &pot).unwrap();
        assert!(lab.max_abs_diff(&s) < 1e-15);
        let lab = lab_frame_restore(&s, &p, 1.7, &pot).unwrap();
        assert!((lab.norm_sqr() - 1.0).abs() < 1e-10);
        let back = lab_frame_to_interaction(&lab, &p, 1.7, &pot).unwrap();
        assert!(back.max_abs_diff(&s) < 1e-11);
    }

    #[test]
    fn free_restore_is_kinetic_phase() {
        let g = MomentumGrid::new(256, -4.0, 4.0).unwrap();
        let p = SimulationParams::new(1.0, 0.0).with_internal_energies(0.3, 0.0);
        let s = SpinorState::gaussian(&g, 0.0, 0.3, Level::Ground);
        let lab = lab_frame_restore(&s, &p, 2.0, &PotentialSpec::None).unwrap();
        for i in 0..g.n() {
            let nu = g.nu(i);
            let want = s.psi_g[i] * Complex64::from_polar(1.0, -nu * nu * 2.0 / 4.0);
            assert!((lab.psi_g[i] - want).norm() < 1e-15);
        }
    }

    #[test]
    fn linear_restore_moves_momentum_down() {
        let g = MomentumGrid::new(1024, -8.0, 8.0).unwrap();
        let k = 0.5;
        let p = SimulationParams::new(0.5, 0.0).with_kappa(k);
        let s = SpinorState::gaussian(&g, 1.0, 0.2, Level::Ground);
        let tau = 2.0;
        let lab = lab_frame_restore(&s, &p, tau, &PotentialSpec::Linear { kappa: k }).unwrap();
        let mean: f64 = (0..g.n()).map(|i| g.nu(i) * lab.psi_g[i].norm_sqr()).sum::<f64>() * g.d_nu();
        assert!((mean - (1.0 - 2.0 * k * tau)).abs() < 1e-9);
    }
}
