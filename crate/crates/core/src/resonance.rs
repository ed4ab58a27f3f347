//! Displacement/detuning identities and resonant momenta.
//!
//! The displacement `D = e^{i(2ω_r ζ + φ)}` translates momentum by `2ω_r`, so
//! conjugating a momentum-diagonal operator `f(ν)` gives `f(ν ± 2ω_r)`:
//!
//! * `D† ν D = ν + 2ω_r`
//! * `D ν D† = ν − 2ω_r`
//! * `D† δ_+ D = −δ_−`
//! * `D δ_− D† = −δ_+`
//!
//! The "eigenproblem" for the resonant momenta is diagonal here and reduces to the
//! kernels of two affine functions of ν.

use serde::Serialize;

use crate::detuning::{detuning, resonant_momentum, DetuningBranch};
use crate::grid::MomentumGrid;
use crate::params::SimulationParams;

/// Largest absolute deviation of each identity over the grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DisplacementReport {
    pub raise: f64,
    pub lower: f64,
    pub plus_to_minus: f64,
    pub minus_to_plus: f64,
}

impl DisplacementReport {
    pub fn max(&self) -> f64 {
        self.raise.max(self.lower).max(self.plus_to_minus).max(self.minus_to_plus)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

/// Diagonal operator conjugated by the displacement, as a function on the grid.
///
/// `D = e^{i(2ω_r ζ + φ)}` acts as `(Dψ)(ν) = e^{iφ} ψ(ν − 2ω_r)`; for a diagonal
/// operator `f` the phase cancels and `D† f D` is `ν ↦ f(ν + 2ω_r)`, `D f D†` is
/// `ν ↦ f(ν − 2ω_r)`. When `2ω_r` is a whole number of grid steps the composition
/// is done by index arithmetic on the sampled values, otherwise by evaluation.
fn conjugate(grid: &MomentumGrid, f: &dyn Fn(f64) -> f64, kick: f64, dagger_first: bool) -> Vec<f64> {
    let s = if dagger_first { kick } else { -kick };
    let steps = s / grid.d_nu();
    let whole = steps.round();
    let sampled: Vec<f64> = grid.nu_values().iter().map(|&v| f(v)).collect();
    (0..grid.n())
        .map(|i| {
            let j = i as i64 + whole as i64;
            if (steps - whole).abs() < 1e-12 && j >= 0 && (j as usize) < grid.n() {
                sampled[j as usize]
            } else {
                f(grid.nu(i) + s)
            }
        })
        .collect()
}

fn max_dev(a: &[f64], b: impl Fn(usize) -> f64) -> f64 {
    a.iter().enumerate().map(|(i, x)| (x - b(i)).abs()).fold(0.0, f64::max)
}

/// Checks the four conjugation identities on the grid for a constant phase rate.
pub fn check_displacement_algebra(grid: &MomentumGrid, params: &SimulationParams) -> DisplacementReport {
    let (wr, dw) = (params.omega_r, params.delta_omega);
    let kick = 2.0 * wr;
    let nu = |v: f64| v;
    let dp = |v: f64| detuning(DetuningBranch::Plus, v, dw, wr);
    let dm = |v: f64| detuning(DetuningBranch::Minus, v, dw, wr);

    let raise = conjugate(grid, &nu, kick, true);
    let lower = conjugate(grid, &nu, kick, false);
    let p2m = conjugate(grid, &dp, kick, true);
    let m2p = conjugate(grid, &dm, kick, false);
    DisplacementReport {
        raise: max_dev(&raise, |i| grid.nu(i) + kick),
        lower: max_dev(&lower, |i| grid.nu(i) - kick),
        plus_to_minus: max_dev(&p2m, |i| -dm(grid.nu(i))),
        minus_to_plus: max_dev(&m2p, |i| -dp(grid.nu(i))),
    }
}

/// Kernel momenta `(ν_−, ν_+)` of the two detuning branches; `ν_+ − ν_− = 2ω_r`.
pub fn resonant_pair(params: &SimulationParams) -> (f64, f64) {
    (
        resonant_momentum(DetuningBranch::Minus, params.delta_omega, params.omega_r),
        resonant_momentum(DetuningBranch::Plus, params.delta_omega, params.omega_r),
    )
}
