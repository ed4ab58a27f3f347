//! Driving-field phase: constant rate, quadratic chirp and sampled phase noise.

use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, RabiError, Result};
use crate::oracle::PotentialSpec;
use crate::params::SimulationParams;
use crate::state::SpinorState;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseParams {
    /// White-noise strength, `⟨δφ̇(τ)δφ̇(τ′)⟩ = s δ(τ − τ′)`.
    pub s: f64,
    pub seed: u64,
    pub d_tau: f64,
}

/// Sampled Wiener path `δφ(τ_i)` on `τ_i = i·d_tau`, starting at zero.
#[derive(Clone, Debug, PartialEq)]
pub struct NoisePath {
    pub params: NoiseParams,
    pub delta_phi: Vec<f64>,
}

impl NoisePath {
    pub fn tau_end(&self) -> f64 {
        (self.delta_phi.len() - 1) as f64 * self.params.d_tau
    }

    pub fn taus(&self) -> Vec<f64> {
        (0..self.delta_phi.len()).map(|i| i as f64 * self.params.d_tau).collect()
    }

    /// Linear interpolation of the path and the slope of the containing segment.
    pub fn eval(&self, tau: f64) -> Result<(f64, f64)> {
        let end = self.tau_end();
        if !(tau >= 0.0 && tau <= end * (1.0 + 1e-12)) {
            return Err(RabiError::PhaseCoverage { tau, end });
        }
        let dt = self.params.d_tau;
        let last = self.delta_phi.len() - 2;
        let i = ((tau / dt).floor() as usize).min(last);
        let slope = (self.delta_phi[i + 1] - self.delta_phi[i]) / dt;
        Ok((self.delta_phi[i] + slope * (tau - i as f64 * dt), slope))
    }

    /// Two-column CSV `tau,delta_phi`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["tau", "delta_phi"])?;
        for (t, p) in self.taus().iter().zip(&self.delta_phi) {
            w.write_record([format!("{t:.17e}"), format!("{p:.17e}")])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `φ(τ) = phi0 + rate·τ + chirp·τ² + δφ(τ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseFunction {
    pub phi0: f64,
    pub rate: f64,
    pub chirp: f64,
    pub noise: Option<NoisePath>,
}

impl PhaseFunction {
    pub fn constant_rate(phi0: f64, rate: f64) -> Self {
        PhaseFunction { phi0, rate, chirp: 0.0, noise: None }
    }

    pub fn from_params(params: &SimulationParams) -> Self {
        Self::constant_rate(0.0, params.delta_omega)
    }

    pub fn with_noise(mut self, path: NoisePath) -> Self {
        self.noise = Some(path);
        self
    }

    pub fn is_linear(&self) -> bool {
        self.chirp == 0.0 && self.noise.is_none()
    }
}

/// Returns `(φ(τ), dφ/dτ)`.
pub fn phase_eval(pf: &PhaseFunction, tau: f64) -> Result<(f64, f64)> {
    let mut phi = pf.phi0 + pf.rate * tau + pf.chirp * tau * tau;
    let mut dphi = pf.rate + 2.0 * pf.chirp * tau;
    if let Some(path) = &pf.noise {
        let (p, d) = path.eval(tau)?;
        phi += p;
        dphi += d;
    }
    Ok((phi, dphi))
}

/// Phase holding the ground-branch resonance at `nu0` fixed in a linear potential.
pub fn chirp_for_linear(params: &SimulationParams, nu0: f64) -> PhaseFunction {
    PhaseFunction { phi0: 0.0, rate: -(nu0 + params.omega_r), chirp: params.kappa, noise: None }
}

/// Second phase derivative needed to keep the mean detuning constant: `⟨V′(ζ)⟩`.
pub fn chirp_condition_rhs(state: &SpinorState, potential: &PotentialSpec, _params: &SimulationParams) -> Result<f64> {
    Ok(match potential {
        PotentialSpec::None => 0.0,
        PotentialSpec::Linear { kappa } => 2.0 * kappa,
        PotentialSpec::Quadratic { epsilon } => 2.0 * epsilon * state.position_expectation(|z| z),
        PotentialSpec::Tabulated { values } => {
            let grid = &state.grid;
            if values.len() != grid.n() {
                return Err(invalid("potential", "tabulated length must equal grid size"));
            }
            let n = values.len();
            let dz = grid.d_zeta();
            let grad: Vec<f64> = (0..n)
                .map(|j| {
                    if j == 0 {
                        (values[1] - values[0]) / dz
                    } else if j == n - 1 {
                        (values[n - 1] - values[n - 2]) / dz
                    } else {
                        (values[j + 1] - values[j - 1]) / (2.0 * dz)
                    }
                })
                .collect();
            let z0 = grid.zeta(0);
            state.position_expectation(|z| {
                let j = ((z - z0) / dz).round() as usize;
                grad[j.min(n - 1)]
            })
        }
    })
}

/// Deterministic Wiener path with increments `N(0, s·d_tau)` covering `[0, tau_end]`.
pub fn sample_phase_noise(np: &NoiseParams, tau_end: f64) -> Result<NoisePath> {
    if !(np.s >= 0.0) || !np.s.is_finite() {
        return Err(invalid("s", "noise strength must be finite and >= 0"));
    }
    if !(np.d_tau > 0.0) || !(tau_end > 0.0) {
        return Err(invalid("d_tau", "noise step and tau_end must be > 0"));
    }
    let steps = (tau_end / np.d_tau - 1e-9).ceil().max(1.0) as usize;
    let mut delta_phi = Vec::with_capacity(steps + 1);
    delta_phi.push(0.0);
    if np.s == 0.0 {
        delta_phi.resize(steps + 1, 0.0);
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(np.seed);
        let normal = Normal::new(0.0, (np.s * np.d_tau).sqrt()).expect("positive standard deviation");
        let mut acc = 0.0;
        for _ in 0..steps {
            acc += normal.sample(&mut rng);
            delta_phi.push(acc);
        }
    }
    Ok(NoisePath { params: *np, delta_phi })
}

/// Writes any number of paths side by side; mainly for ensemble dumps.
pub fn write_paths_csv(paths: &[NoisePath], out: &mut impl Write) -> Result<()> {
    let Some(first) = paths.first() else { return Ok(()) };
    write!(out, "tau")?;
    for p in paths {
        write!(out, ",seed_{}", p.params.seed)?;
    }
    writeln!(out)?;
    for (i, t) in first.taus().iter().enumerate() {
        write!(out, "{t:.17e}")?;
        for p in paths {
            write!(out, ",{:.17e}", p.delta_phi.get(i).copied().unwrap_or(f64::NAN))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::MomentumGrid;
    use crate::state::Level;

    #[test]
    fn constant_rate_and_origin() {
        let pf = PhaseFunction::constant_rate(0.4, 1.3);
        assert_eq!(phase_eval(&pf, 0.0).unwrap().0, 0.4);
        for t in [0.0, 0.7, 5.0] {
            assert_eq!(phase_eval(&pf, t).unwrap().1, 1.3);
        }
    }

    #[test]
    fn chirp_derivative() {
        let c = 0.37;
        let pf = PhaseFunction { phi0: 0.0, rate: 0.0, chirp: c, noise: None };
        for t in [0.1, 1.0, 3.0] {
            let h = 1e-5;
            let fd = (phase_eval(&pf, t + h).unwrap().0 - phase_eval(&pf, t - h).unwrap().0) / (2.0 * h);
            assert!((fd - 2.0 * c * t).abs() < 1e-10);
            assert!((phase_eval(&pf, t).unwrap().1 - 2.0 * c * t).abs() < 1e-15);
        }
    }

    #[test]
    fn chirp_for_linear_limits() {
        let p = SimulationParams::new(0.1, 0.0);
        let pf = chirp_for_linear(&p, 0.5);
        assert_eq!(pf.chirp, 0.0);
        assert_eq!(pf.rate, -0.6);
    }

    #[test]
    fn chirp_rhs_matches_chirp_coefficient() {
        let g = MomentumGrid::new(256, -8.0, 8.0).unwrap();
        let st = SpinorState::gaussian(&g, 0.0, 0.3, Level::Ground);
        let p = SimulationParams::new(0.1, 0.0).with_kappa(0.8);
        let rhs = chirp_condition_rhs(&st, &PotentialSpec::Linear { kappa: 0.8 }, &p).unwrap();
        // integrating φ'' = rhs twice gives the τ² coefficient rhs/2
        assert!((rhs / 2.0 - chirp_for_linear(&p, 0.0).chirp).abs() < 1e-15);
        assert_eq!(chirp_condition_rhs(&st, &PotentialSpec::None, &p).unwrap(), 0.0);
        let q = chirp_condition_rhs(&st, &PotentialSpec::Quadratic { epsilon: 0.01 }, &p).unwrap();
        assert!(q.abs() < 1e-14);
    }

    #[test]
    fn tabulated_gradient_matches_linear() {
        let g = MomentumGrid::new(256, -8.0, 8.0).unwrap();
        let st = SpinorState::gaussian(&g, 0.0, 0.3, Level::Ground);
        let kappa = 0.3;
        let values = g.zeta_values().iter().map(|z| 2.0 * kappa * z).collect();
        let p = SimulationParams::new(0.1, 0.0);
        let rhs = chirp_condition_rhs(&st, &PotentialSpec::Tabulated { values }, &p).unwrap();
        assert!((rhs - 2.0 * kappa).abs() < 1e-12);
    }

    #[test]
    fn noise_determinism_and_zero() {
        let np = NoiseParams { s: 0.3, seed: 7, d_tau: 0.01 };
        let a = sample_phase_noise(&np, 2.0).unwrap();
        let b = sample_phase_noise(&np, 2.0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.delta_phi.len(), 201);
        let z = sample_phase_noise(&NoiseParams { s: 0.0, ..np }, 2.0).unwrap();
        assert!(z.delta_phi.iter().all(|&x| x == 0.0));
        assert!(a.eval(2.5).is_err());
        assert!(a.eval(2.0).is_ok());
    }

    #[test]
    fn noise_interpolation() {
        let np = NoiseParams { s: 1.0, seed: 3, d_tau: 0.5 };
        let p = sample_phase_noise(&np, 1.0).unwrap();
        let (v, d) = p.eval(0.25).unwrap();
        assert!((v - 0.5 * (p.delta_phi[0] + p.delta_phi[1])).abs() < 1e-15);
        assert!((d - (p.delta_phi[1] - p.delta_phi[0]) / 0.5).abs() < 1e-15);
    }
}
