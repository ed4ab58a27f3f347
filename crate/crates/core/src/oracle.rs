//! Strang split-step integrator of the full coupled spinor equation.
//!
//! Each step is a kinetic half step in momentum space, the exact position-diagonal
//! 2×2 block (potential, coupling and internal energies) with the driving phase
//! sampled at the step midpoint, and another kinetic half step.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::detuning::{detuning, effective_rabi, DetuningBranch};
use crate::error::{invalid, RabiError, Result};
use crate::grid::MomentumGrid;
use crate::params::SimulationParams;
use crate::phase::{phase_eval, PhaseFunction};
use crate::state::{Frame, SpinorState};

/// Amplitude at which a packet touching a grid edge is reported as aliasing.
pub const ALIAS_TOLERANCE: f64 = 1e-8;

/// External potential `V(ζ)`, common to both internal states, in dimensionless units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PotentialSpec {
    None,
    /// `V = 2κζ`.
    Linear { kappa: f64 },
    /// `V = εζ²`.
    Quadratic { epsilon: f64 },
    /// `V(ζ_j)` sampled on the grid's position axis.
    Tabulated { values: Vec<f64> },
}

impl PotentialSpec {
    /// Potential implied by the κ and ε of a parameter set.
    pub fn from_params(params: &SimulationParams) -> Result<Self> {
        match (params.kappa != 0.0, params.epsilon != 0.0) {
            (false, false) => Ok(PotentialSpec::None),
            (true, false) => Ok(PotentialSpec::Linear { kappa: params.kappa }),
            (false, true) => Ok(PotentialSpec::Quadratic { epsilon: params.epsilon }),
            (true, true) => Err(invalid("params", "kappa and epsilon cannot both be nonzero")),
        }
    }

    pub fn validate(&self, grid: &MomentumGrid) -> Result<()> {
        match self {
            PotentialSpec::Tabulated { values } => {
                if values.len() != grid.n() {
                    return Err(invalid("potential", format!("tabulated length {} != grid size {}", values.len(), grid.n())));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(invalid("potential", "tabulated values must be finite"));
                }
            }
            PotentialSpec::Quadratic { epsilon } if *epsilon < 0.0 => {
                return Err(invalid("potential", "epsilon must be >= 0"));
            }
            _ => {}
        }
        Ok(())
    }

    /// Samples on the position axis.
    pub fn sample(&self, grid: &MomentumGrid) -> Vec<f64> {
        let z = grid.zeta_values();
        match self {
            PotentialSpec::None => vec![0.0; grid.n()],
            PotentialSpec::Linear { kappa } => z.iter().map(|z| 2.0 * kappa * z).collect(),
            PotentialSpec::Quadratic { epsilon } => z.iter().map(|z| epsilon * z * z).collect(),
            PotentialSpec::Tabulated { values } => values.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Largest step; each run uses the largest uniform step not exceeding it.
    pub d_tau: f64,
    pub potential: PotentialSpec,
    pub phase: PhaseFunction,
    /// Store every `store_every`-th step (the initial state is always stored).
    pub store_every: usize,
}

impl OracleConfig {
    pub fn new(d_tau: f64, potential: PotentialSpec, phase: PhaseFunction) -> Self {
        OracleConfig { d_tau, potential, phase, store_every: 1 }
    }

    /// Configuration with the default step `1e-3·2π/μ_max`.
    pub fn with_default_step(grid: &MomentumGrid, params: &SimulationParams, potential: PotentialSpec, phase: PhaseFunction) -> Self {
        Self::new(default_step(grid, params.omega_r, &phase), potential, phase)
    }

    pub fn store_every(mut self, k: usize) -> Self {
        self.store_every = k;
        self
    }

    fn validate(&self, grid: &MomentumGrid) -> Result<()> {
        if !(self.d_tau > 0.0) || !self.d_tau.is_finite() {
            return Err(invalid("d_tau", "must be > 0"));
        }
        if self.store_every == 0 {
            return Err(invalid("store_every", "must be >= 1"));
        }
        self.potential.validate(grid)
    }
}

/// `1e-3·2π/μ_max` with μ_max over both branches on the grid at the phase's base rate.
pub fn default_step(grid: &MomentumGrid, omega_r: f64, phase: &PhaseFunction) -> f64 {
    let mut mu_max = 1.0f64;
    for nu in [grid.nu_min(), grid.nu_max()] {
        for b in [DetuningBranch::Plus, DetuningBranch::Minus] {
            mu_max = mu_max.max(effective_rabi(detuning(b, nu, phase.rate, omega_r)));
        }
    }
    1e-3 * 2.0 * PI / mu_max
}

struct Stepper<'a> {
    grid: &'a MomentumGrid,
    omega_r: f64,
    potential: Vec<f64>,
    phase: Option<&'a PhaseFunction>,
    eps_e: f64,
    eps_g: f64,
    band: usize,
}

impl Stepper<'_> {
    fn kinetic(&self, psi: &mut [Complex64], h: f64) {
        for (i, a) in psi.iter_mut().enumerate() {
            let nu = self.grid.nu(i);
            *a *= Complex64::from_polar(1.0, -h * nu * nu / (4.0 * self.omega_r));
        }
    }

    fn check_edges(&self, psi: &[Complex64], edge: &'static str, tau: f64) -> Result<()> {
        let amp = MomentumGrid::edge_amplitude(psi, self.band);
        if amp > ALIAS_TOLERANCE {
            return Err(RabiError::Aliasing { edge, amplitude: amp, tau });
        }
        Ok(())
    }

    fn step(&self, st: &mut SpinorState, h: f64) -> Result<()> {
        let tau = st.tau;
        let sp = self.grid.spectral();
        self.kinetic(&mut st.psi_e, 0.5 * h);
        self.kinetic(&mut st.psi_g, 0.5 * h);
        sp.to_position(&mut st.psi_e);
        sp.to_position(&mut st.psi_g);
        self.check_edges(&st.psi_e, "position", tau)?;
        self.check_edges(&st.psi_g, "position", tau)?;

        let mid = tau + 0.5 * h;
        let phi = match self.phase {
            Some(pf) => phase_eval(pf, mid)?.0,
            None => 0.0,
        };
        let split = self.eps_e - self.eps_g;
        let mean = 0.5 * (self.eps_e + self.eps_g);
        let half = 0.5 * split;
        let lam = (1.0 + half * half).sqrt();
        let (sn, cs) = (lam * h).sin_cos();
        let sl = sn / lam;
        for j in 0..self.grid.n() {
            let z = sp.zeta[j];
            let c = if self.phase.is_some() {
                Complex64::from_polar(1.0, 2.0 * self.omega_r * z + phi - split * mid)
            } else {
                Complex64::new(0.0, 0.0)
            };
            let e = st.psi_e[j];
            let g = st.psi_g[j];
            let ph = Complex64::from_polar(1.0, -h * (self.potential[j] + mean));
            let ci = Complex64::new(0.0, -sl);
            if self.phase.is_some() {
                st.psi_e[j] = ph * (cs * e + ci * (half * e + c * g));
                st.psi_g[j] = ph * (cs * g + ci * (c.conj() * e - half * g));
            } else {
                // coupling switched off: only potential and internal energies
                st.psi_e[j] = ph * Complex64::from_polar(1.0, -h * half) * e;
                st.psi_g[j] = ph * Complex64::from_polar(1.0, h * half) * g;
            }
        }
        sp.to_momentum(&mut st.psi_e);
        sp.to_momentum(&mut st.psi_g);
        self.kinetic(&mut st.psi_e, 0.5 * h);
        self.kinetic(&mut st.psi_g, 0.5 * h);
        st.tau = tau + h;
        self.check_edges(&st.psi_e, "momentum", st.tau)?;
        self.check_edges(&st.psi_g, "momentum", st.tau)
    }

    /// Advances to `target` with the largest uniform step ≤ `d_tau`.
    fn advance(&self, st: &mut SpinorState, target: f64, d_tau: f64, mut on_step: impl FnMut(usize, &SpinorState)) -> Result<()> {
        let span = target - st.tau;
        if span == 0.0 {
            return Ok(());
        }
        let steps = (span.abs() / d_tau - 1e-9).ceil().max(1.0) as usize;
        let h = span / steps as f64;
        let start = st.tau;
        for k in 0..steps {
            self.step(st, h)?;
            st.tau = start + (k + 1) as f64 * h;
            on_step(k + 1, st);
        }
        st.tau = target;
        Ok(())
    }
}

fn stepper<'a>(state0: &'a SpinorState, cfg: &'a OracleConfig, params: &SimulationParams, lab: bool) -> Result<Stepper<'a>> {
    params.validate()?;
    cfg.validate(&state0.grid)?;
    state0.require_frame(Frame::Lab).or_else(|_| {
        if state0.tau == 0.0 {
            Ok(())
        } else {
            Err(RabiError::Frame { expected: "lab" })
        }
    })?;
    let (eps_e, eps_g) = if lab { (params.eps_e, params.eps_g) } else { (0.0, 0.0) };
    Ok(Stepper {
        grid: &state0.grid,
        omega_r: params.omega_r,
        potential: cfg.potential.sample(&state0.grid),
        phase: Some(&cfg.phase),
        eps_e,
        eps_g,
        band: (state0.grid.n() / 64).max(2),
    })
}

fn trajectory(state0: &SpinorState, cfg: &OracleConfig, params: &SimulationParams, tau_end: f64, lab: bool) -> Result<Vec<SpinorState>> {
    if !(tau_end >= 0.0) {
        return Err(invalid("tau_end", "must be >= 0"));
    }
    let st = stepper(state0, cfg, params, lab)?;
    let mut cur = state0.clone();
    cur.frame = Frame::Lab;
    let target = cur.tau + tau_end;
    let mut out = vec![cur.clone()];
    let every = cfg.store_every;
    let mut stored_last = true;
    st.advance(&mut cur, target, cfg.d_tau, |k, s| {
        stored_last = k % every == 0;
        if stored_last {
            out.push(s.clone());
        }
    })?;
    if !stored_last {
        out.push(cur);
    } else if let Some(last) = out.last_mut() {
        last.tau = target;
    }
    Ok(out)
}

/// Integrates the rotating-frame equation (internal energies ignored). The initial
/// state is taken as a lab-frame state; at τ = 0 both frames coincide.
pub fn split_step_evolve(state0: &SpinorState, cfg: &OracleConfig, params: &SimulationParams, tau_end: f64) -> Result<Vec<SpinorState>> {
    trajectory(state0, cfg, params, tau_end, false)
}

/// As [`split_step_evolve`] with the internal-energy phases `diag(ε_e, ε_g)` and the
/// correspondingly rotating coupling included.
pub fn lab_frame_evolve(state0: &SpinorState, cfg: &OracleConfig, params: &SimulationParams, tau_end: f64) -> Result<Vec<SpinorState>> {
    trajectory(state0, cfg, params, tau_end, true)
}

/// States at the requested (non-decreasing) times.
pub fn split_step_sample(
    state0: &SpinorState,
    cfg: &OracleConfig,
    params: &SimulationParams,
    taus: &[f64],
    lab: bool,
) -> Result<Vec<SpinorState>> {
    let st = stepper(state0, cfg, params, lab)?;
    let mut cur = state0.clone();
    cur.frame = Frame::Lab;
    let mut out = Vec::with_capacity(taus.len());
    for &t in taus {
        if t < cur.tau {
            return Err(invalid("taus", "sample times must be non-decreasing"));
        }
        st.advance(&mut cur, t, cfg.d_tau, |_, _| {})?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Coupling-free evolution `exp(−iτ(T + V))` applied to both components with
/// Strang substeps of at most `d_tau`. Negative `tau` runs backwards.
pub fn external_evolve(state: &SpinorState, potential: &PotentialSpec, omega_r: f64, tau: f64, d_tau: f64) -> Result<SpinorState> {
    potential.validate(&state.grid)?;
    let st = Stepper {
        grid: &state.grid,
        omega_r,
        potential: potential.sample(&state.grid),
        phase: None,
        eps_e: 0.0,
        eps_g: 0.0,
        band: (state.grid.n() / 64).max(2),
    };
    let mut cur = state.clone();
    let t0 = cur.tau;
    cur.tau = 0.0;
    st.advance(&mut cur, tau, d_tau, |_, _| {})?;
    cur.tau = t0;
    Ok(cur)
}

/// Richardson combination `(4·fine − coarse)/3` of two runs whose uniform steps differ
/// by exactly a factor of two; removes the `O(h²)` Strang error.
pub fn richardson(coarse: &SpinorState, fine: &SpinorState) -> SpinorState {
    let mut r = fine.scaled(Complex64::new(4.0 / 3.0, 0.0));
    r.add_assign_scaled(coarse, Complex64::new(-1.0 / 3.0, 0.0));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Level;

    #[test]
    fn unitary_over_many_steps() {
        let g = MomentumGrid::new(256, -8.0, 8.0).unwrap();
        let p = SimulationParams::new(1.0, 1.0);
        let s0 = SpinorState::gaussian(&g, -2.0, 0.3, Level::Ground);
        let cfg = OracleConfig::new(1e-3, PotentialSpec::None, PhaseFunction::from_params(&p)).store_every(10_000);
        let out = split_step_evolve(&s0, &cfg, &p, 10.0).unwrap();
        assert_eq!(out.len(), 2);
        assert!((out[1].norm_sqr() - 1.0).abs() < 1e-10);
        assert!((out[1].tau - 10.0).abs() < 1e-12);
    }

    #[test]
    fn aliasing_is_detected() {
        let g = MomentumGrid::new(128, -4.0, 4.0).unwrap();
        let p = SimulationParams::new(1.0, -4.0);
        // ground resonance at ν = 3 sends excited amplitude to ν = 5, off the grid
        let s0 = SpinorState::gaussian(&g, 3.0, 0.2, Level::Ground);
        let cfg = OracleConfig::new(1e-2, PotentialSpec::None, PhaseFunction::from_params(&p));
        assert!(matches!(split_step_evolve(&s0, &cfg, &p, 2.0), Err(RabiError::Aliasing { .. })));
    }

    #[test]
    fn external_evolution_is_reversible() {
        let g = MomentumGrid::new(256, -8.0, 8.0).unwrap();
        let s0 = SpinorState::gaussian(&g, 0.4, 0.3, Level::Excited);
        let pot = PotentialSpec::Quadratic { epsilon: 0.01 };
        let f = external_evolve(&s0, &pot, 0.5, 1.3, 1e-2).unwrap();
        let b = external_evolve(&f, &pot, 0.5, -1.3, 1e-2).unwrap();
        assert!(b.max_abs_diff(&s0) < 1e-12);
    }

    #[test]
    fn default_step_scale() {
        let g = MomentumGrid::new(1024, -8.0, 8.0).unwrap();
        let p = SimulationParams::new(1.0, 1.0);
        let h = default_step(&g, 1.0, &PhaseFunction::from_params(&p));
        assert!((h - 2e-3 * PI / 26f64.sqrt()).abs() < 1e-15);
    }
}
