use num_complex::Complex64;
use rayon::prelude::*;

use crate::detuning::{detuning, effective_rabi, DetuningBranch};
use crate::elements::{OffDiagonalIndexing, PropagatorElements};
use crate::error::{invalid, Result};
use crate::grid::MomentumGrid;
use crate::params::SimulationParams;
use crate::phase::{phase_eval, PhaseFunction};
use crate::state::{Frame, SpinorState};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Diagonal element `e^{−iδτ}(cos μτ + i δ/μ sin μτ)`.
pub(crate) fn diag(delta: f64, tau: f64) -> Complex64 {
    let mu = effective_rabi(delta);
    let (s, c) = (mu * tau).sin_cos();
    Complex64::from_polar(1.0, -delta * tau) * Complex64::new(c, delta / mu * s)
}

/// Off-diagonal element without the driving phase, `−i e^{−iδτ} sin(μτ)/μ`,
/// with δ taken at the target momentum.
pub(crate) fn off(delta: f64, tau: f64) -> Complex64 {
    let mu = effective_rabi(delta);
    -I * Complex64::from_polar((mu * tau).sin() / mu, -delta * tau)
}

pub(crate) fn diag_dot(delta: f64, tau: f64) -> Complex64 {
    let mu = effective_rabi(delta);
    -Complex64::from_polar((mu * tau).sin() / mu, -delta * tau)
}

pub(crate) fn off_dot(delta: f64, tau: f64) -> Complex64 {
    let mu = effective_rabi(delta);
    let (s, c) = (mu * tau).sin_cos();
    -I * Complex64::from_polar(1.0, -delta * tau) * Complex64::new(c, -delta * s / mu)
}

struct Segment {
    omega_r: f64,
    rate: f64,
    phi_start: f64,
    tau_start: f64,
    dt: f64,
}

impl Segment {
    /// Coupling phase at the segment start for a ground momentum `nu_g`.
    fn theta(&self, nu_g: f64) -> f64 {
        self.phi_start + (nu_g + self.omega_r) * self.tau_start
    }

    fn build(&self, grid: &MomentumGrid, derivative: bool) -> PropagatorElements {
        let wr = self.omega_r;
        let (fd, fo): (fn(f64, f64) -> Complex64, fn(f64, f64) -> Complex64) =
            if derivative { (diag_dot, off_dot) } else { (diag, off) };
        let rows: Vec<[Complex64; 4]> = (0..grid.n())
            .into_par_iter()
            .map(|i| {
                let nu = grid.nu(i);
                let dp = detuning(DetuningBranch::Plus, nu, self.rate, wr);
                let dm = detuning(DetuningBranch::Minus, nu, self.rate, wr);
                [
                    fd(dp, self.dt),
                    fo(-dm, self.dt) * Complex64::from_polar(1.0, self.theta(nu)),
                    fo(-dp, self.dt) * Complex64::from_polar(1.0, -self.theta(nu - 2.0 * wr)),
                    fd(dm, self.dt),
                ]
            })
            .collect();
        PropagatorElements {
            grid: grid.clone(),
            tau: self.dt,
            omega_r: wr,
            u_ee: rows.iter().map(|r| r[0]).collect(),
            u_eg: rows.iter().map(|r| r[1]).collect(),
            u_ge: rows.iter().map(|r| r[2]).collect(),
            u_gg: rows.iter().map(|r| r[3]).collect(),
            indexing: OffDiagonalIndexing::SourceMomentum,
        }
    }
}

/// Free-particle elements from τ = 0 with driving phase `φ = Δω τ`.
pub fn free_propagator_elements(grid: &MomentumGrid, params: &SimulationParams, tau: f64) -> PropagatorElements {
    free_segment_elements(grid, params.omega_r, params.delta_omega, 0.0, 0.0, tau)
}

/// Time derivatives `du_ℓj/dτ` of [`free_propagator_elements`].
pub fn free_derivative_elements(grid: &MomentumGrid, params: &SimulationParams, tau: f64) -> PropagatorElements {
    Segment { omega_r: params.omega_r, rate: params.delta_omega, phi_start: 0.0, tau_start: 0.0, dt: tau }
        .build(grid, true)
}

/// Elements for a segment `[tau_start, tau_start + dt]` on which the driving phase is
/// linear, `φ(τ) = phi_start + rate·(τ − tau_start)`.
pub fn free_segment_elements(
    grid: &MomentumGrid,
    omega_r: f64,
    rate: f64,
    phi_start: f64,
    tau_start: f64,
    dt: f64,
) -> PropagatorElements {
    Segment { omega_r, rate, phi_start, tau_start, dt }.build(grid, false)
}

/// Evolves an interaction-picture state from `state.tau` by `tau` under `φ = Δω τ`.
pub fn apply_free_propagator(state: &SpinorState, params: &SimulationParams, tau: f64) -> Result<SpinorState> {
    state.require_frame(Frame::Interaction)?;
    let t0 = state.tau;
    let el = free_segment_elements(&state.grid, params.omega_r, params.delta_omega, params.delta_omega * t0, t0, tau);
    el.apply(state)
}

/// Piecewise-exact evolution under a phase that is linear between the nodes of its
/// noise path. Returns the state at every requested time.
pub fn evolve_free_with_phase(
    state: &SpinorState,
    omega_r: f64,
    phase: &PhaseFunction,
    taus: &[f64],
) -> Result<Vec<SpinorState>> {
    state.require_frame(Frame::Interaction)?;
    if phase.chirp != 0.0 {
        return Err(invalid("chirp", "piecewise free evolution needs a piecewise-linear phase"));
    }
    let mut nodes: Vec<f64> = match &phase.noise {
        Some(p) => p.taus(),
        None => Vec::new(),
    };
    let mut cur = state.clone();
    let mut out = Vec::with_capacity(taus.len());
    for &target in taus {
        if target < cur.tau {
            return Err(invalid("taus", "sample times must be non-decreasing and start after the state time"));
        }
        nodes.retain(|&t| t > cur.tau);
        let mut breaks: Vec<f64> = nodes.iter().copied().take_while(|&t| t < target).collect();
        breaks.push(target);
        for b in breaks {
            let a = cur.tau;
            let dt = b - a;
            if dt <= 0.0 {
                continue;
            }
            let (phi_a, _) = phase_eval(phase, a)?;
            let (_, rate) = phase_eval(phase, a + 0.5 * dt)?;
            let el = free_segment_elements(&cur.grid, omega_r, rate, phi_a, a, dt);
            let mut next = el.apply(&cur)?;
            next.tau = b;
            cur = next;
        }
        out.push(cur.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Level;

    fn unit_recoil() -> (MomentumGrid, SimulationParams) {
        (MomentumGrid::new(1024, -8.0, 8.0).unwrap(), SimulationParams::new(1.0, 1.0))
    }

    #[test]
    fn identity_at_zero() {
        let (g, p) = unit_recoil();
        let el = free_propagator_elements(&g, &p, 0.0);
        for i in 0..g.n() {
            assert_eq!(el.u_ee[i], Complex64::new(1.0, 0.0));
            assert_eq!(el.u_gg[i], Complex64::new(1.0, 0.0));
            assert_eq!(el.u_eg[i].norm(), 0.0);
            assert_eq!(el.u_ge[i].norm(), 0.0);
        }
    }

    #[test]
    fn resonant_cosine_and_column_unitarity() {
        let (g, p) = unit_recoil();
        // δ_+ vanishes at ν = 0 for these parameters
        let i0 = g.index_of(0.0).unwrap();
        for tau in [0.3, 1.0, std::f64::consts::FRAC_PI_2, 4.0] {
            let el = free_propagator_elements(&g, &p, tau);
            assert!((el.u_ee[i0].norm() - tau.cos().abs()).abs() < 1e-15);
            assert!(el.column_unitarity_defect() < 1e-14);
        }
    }

    #[test]
    fn detuned_transfer_peak() {
        let tau = std::f64::consts::FRAC_PI_2 / 5f64.sqrt();
        assert!((off(2.0, tau).norm_sqr() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        for &(d, t) in &[(0.0, 0.7), (1.3, 2.1), (-2.5, 5.0)] {
            let fd = (diag(d, t + h) - diag(d, t - h)) / (2.0 * h);
            assert!((fd - diag_dot(d, t)).norm() < 1e-9);
            let fo = (off(d, t + h) - off(d, t - h)) / (2.0 * h);
            assert!((fo - off_dot(d, t)).norm() < 1e-9);
        }
    }

    #[test]
    fn norm_and_semigroup() {
        let (g, p) = unit_recoil();
        let s0 = SpinorState::gaussian(&g, -0.5, 0.1, Level::Ground);
        let a = apply_free_propagator(&s0, &p, 1.1).unwrap();
        let b = apply_free_propagator(&a, &p, 2.3).unwrap();
        let c = apply_free_propagator(&s0, &p, 3.4).unwrap();
        assert!((b.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(b.max_abs_diff(&c) < 1e-12);
        assert!((b.tau - 3.4).abs() < 1e-15);
    }

    #[test]
    fn transitions_carry_the_kick() {
        let (g, p) = unit_recoil();
        let s0 = SpinorState::gaussian(&g, -2.0, 0.05, Level::Ground);
        let s = apply_free_propagator(&s0, &p, 1.0).unwrap();
        let peak = s.psi_e.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())).unwrap().0;
        assert!((g.nu(peak) - 0.0).abs() < 1e-12);
    }

    #[test]
    fn piecewise_matches_single_segment_for_linear_phase() {
        let (g, p) = unit_recoil();
        let s0 = SpinorState::gaussian(&g, -0.2, 0.1, Level::Ground);
        let pf = PhaseFunction::from_params(&p);
        let taus = [0.5, 1.7, 3.0];
        let pw = evolve_free_with_phase(&s0, p.omega_r, &pf, &taus).unwrap();
        for (t, s) in taus.iter().zip(&pw) {
            let direct = free_propagator_elements(&g, &p, *t).apply(&s0).unwrap();
            assert!(s.max_abs_diff(&direct) < 1e-12);
        }
    }
}
