use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::MomentumGrid;
use crate::state::{Frame, SpinorState};

/// Amplitude below which discarded off-grid values are tolerated during shifts.
pub const SHIFT_TOLERANCE: f64 = 1e-12;

/// How the 2ω_r momentum kick is folded into the off-diagonal arrays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OffDiagonalIndexing {
    /// `u_eg[i]` takes ground amplitude at `ν_i` to excited amplitude at `ν_i + 2ω_r`;
    /// `u_ge[i]` takes excited amplitude at `ν_i` to ground amplitude at `ν_i − 2ω_r`.
    SourceMomentum,
}

/// Interaction-picture matrix elements `u_ℓj` on the grid at time `tau`.
#[derive(Clone, Debug, PartialEq)]
pub struct PropagatorElements {
    pub grid: MomentumGrid,
    pub tau: f64,
    pub omega_r: f64,
    pub u_ee: Vec<Complex64>,
    pub u_eg: Vec<Complex64>,
    pub u_ge: Vec<Complex64>,
    pub u_gg: Vec<Complex64>,
    pub indexing: OffDiagonalIndexing,
}

impl PropagatorElements {
    pub fn identity(grid: &MomentumGrid, omega_r: f64) -> Self {
        let n = grid.n();
        let one = vec![Complex64::new(1.0, 0.0); n];
        let zero = vec![Complex64::new(0.0, 0.0); n];
        PropagatorElements {
            grid: grid.clone(),
            tau: 0.0,
            omega_r,
            u_ee: one.clone(),
            u_eg: zero.clone(),
            u_ge: zero,
            u_gg: one,
            indexing: OffDiagonalIndexing::SourceMomentum,
        }
    }

    /// Largest deviation from unit column norm, `max_i | |u_gg|² + |u_eg|² − 1 |` and
    /// the same for the excited column.
    pub fn column_unitarity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.grid.n() {
            let g = self.u_gg[i].norm_sqr() + self.u_eg[i].norm_sqr() - 1.0;
            let e = self.u_ee[i].norm_sqr() + self.u_ge[i].norm_sqr() - 1.0;
            worst = worst.max(g.abs()).max(e.abs());
        }
        worst
    }

    /// Applies the elements to an interaction-picture state taken at τ = 0.
    pub fn apply(&self, state: &SpinorState) -> Result<SpinorState> {
        state.require_frame(Frame::Interaction)?;
        let kick = 2.0 * self.omega_r;
        let up: Vec<Complex64> = self.u_eg.iter().zip(&state.psi_g).map(|(u, p)| u * p).collect();
        let down: Vec<Complex64> = self.u_ge.iter().zip(&state.psi_e).map(|(u, p)| u * p).collect();
        let up = self.grid.shift(&up, kick, SHIFT_TOLERANCE)?;
        let down = self.grid.shift(&down, -kick, SHIFT_TOLERANCE)?;
        let psi_e = self.u_ee.iter().zip(&state.psi_e).zip(&up).map(|((u, p), x)| u * p + x).collect();
        let psi_g = self.u_gg.iter().zip(&state.psi_g).zip(&down).map(|((u, p), x)| u * p + x).collect();
        SpinorState::new(self.grid.clone(), psi_e, psi_g, Frame::Interaction, state.tau + self.tau)
    }
}
