use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RabiError, Result};
use crate::grid::MomentumGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    Interaction,
    Lab,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Excited,
    Ground,
}

/// Excited and ground momentum amplitudes on a common grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorState {
    pub grid: MomentumGrid,
    pub psi_e: Vec<Complex64>,
    pub psi_g: Vec<Complex64>,
    pub frame: Frame,
    pub tau: f64,
}

impl SpinorState {
    pub fn new(grid: MomentumGrid, psi_e: Vec<Complex64>, psi_g: Vec<Complex64>, frame: Frame, tau: f64) -> Result<Self> {
        if psi_e.len() != grid.n() || psi_g.len() != grid.n() {
            return Err(RabiError::InvalidGrid(format!(
                "amplitude lengths {}/{} do not match grid size {}",
                psi_e.len(),
                psi_g.len(),
                grid.n()
            )));
        }
        Ok(SpinorState { grid, psi_e, psi_g, frame, tau })
    }

    pub fn zeros(grid: &MomentumGrid, frame: Frame, tau: f64) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); grid.n()];
        SpinorState { grid: grid.clone(), psi_e: z.clone(), psi_g: z, frame, tau }
    }

    /// Normalized Gaussian `∝ exp(−(ν−c)²/(4σ²))` in one internal level at τ = 0.
    pub fn gaussian(grid: &MomentumGrid, center: f64, sigma: f64, level: Level) -> Self {
        let mut amp: Vec<Complex64> = grid
            .nu_values()
            .iter()
            .map(|nu| Complex64::new((-(nu - center).powi(2) / (4.0 * sigma * sigma)).exp(), 0.0))
            .collect();
        let norm = (grid.d_nu() * amp.iter().map(|a| a.norm_sqr()).sum::<f64>()).sqrt();
        amp.iter_mut().for_each(|a| *a /= norm);
        let mut s = SpinorState::zeros(grid, Frame::Interaction, 0.0);
        match level {
            Level::Excited => s.psi_e = amp,
            Level::Ground => s.psi_g = amp,
        }
        s
    }

    pub fn component(&self, level: Level) -> &[Complex64] {
        match level {
            Level::Excited => &self.psi_e,
            Level::Ground => &self.psi_g,
        }
    }

    /// `(P_e, P_g)` with the `dν` weight.
    pub fn populations(&self) -> (f64, f64) {
        let dn = self.grid.d_nu();
        let pe = self.psi_e.iter().map(|a| a.norm_sqr()).sum::<f64>() * dn;
        let pg = self.psi_g.iter().map(|a| a.norm_sqr()).sum::<f64>() * dn;
        (pe, pg)
    }

    pub fn norm_sqr(&self) -> f64 {
        let (pe, pg) = self.populations();
        pe + pg
    }

    /// Largest pointwise amplitude difference over both components.
    pub fn max_abs_diff(&self, other: &SpinorState) -> f64 {
        self.psi_e
            .iter()
            .zip(&other.psi_e)
            .chain(self.psi_g.iter().zip(&other.psi_g))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `dν`-weighted L² distance.
    pub fn l2_diff(&self, other: &SpinorState) -> f64 {
        let s: f64 = self
            .psi_e
            .iter()
            .zip(&other.psi_e)
            .chain(self.psi_g.iter().zip(&other.psi_g))
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        (s * self.grid.d_nu()).sqrt()
    }

    pub fn scaled(&self, c: Complex64) -> SpinorState {
        let mut out = self.clone();
        out.psi_e.iter_mut().chain(out.psi_g.iter_mut()).for_each(|a| *a *= c);
        out
    }

    pub fn add_assign_scaled(&mut self, other: &SpinorState, c: Complex64) {
        for (a, b) in self.psi_e.iter_mut().zip(&other.psi_e) {
            *a += c * b;
        }
        for (a, b) in self.psi_g.iter_mut().zip(&other.psi_g) {
            *a += c * b;
        }
    }

    /// Expectation of a position-diagonal observable.
    pub fn position_expectation(&self, f: impl Fn(f64) -> f64) -> f64 {
        let sp = self.grid.spectral();
        let mut num = 0.0;
        for comp in [&self.psi_e, &self.psi_g] {
            let mut w = comp.clone();
            sp.to_position(&mut w);
            num += w.iter().zip(&sp.zeta).map(|(a, z)| a.norm_sqr() * f(*z)).sum::<f64>();
        }
        num * self.grid.d_zeta() / self.norm_sqr()
    }

    pub(crate) fn require_frame(&self, frame: Frame) -> Result<()> {
        if self.frame != frame {
            return Err(RabiError::Frame {
                expected: match frame {
                    Frame::Interaction => "interaction",
                    Frame::Lab => "lab",
                },
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_is_normalized() {
        let g = MomentumGrid::new(1024, -8.0, 8.0).unwrap();
        let s = SpinorState::gaussian(&g, 0.3, 0.1, Level::Ground);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        assert_eq!(s.populations().0, 0.0);
        assert_eq!(s.frame, Frame::Interaction);
    }

    #[test]
    fn length_mismatch_rejected() {
        let g = MomentumGrid::new(8, -1.0, 1.0).unwrap();
        let z = vec![Complex64::new(0.0, 0.0); 4];
        assert!(SpinorState::new(g, z.clone(), z, Frame::Lab, 0.0).is_err());
    }

    #[test]
    fn position_mean_of_centered_gaussian() {
        let g = MomentumGrid::new(512, -8.0, 8.0).unwrap();
        let s = SpinorState::gaussian(&g, 1.0, 0.2, Level::Excited);
        assert!(s.position_expectation(|z| z).abs() < 1e-12);
        // ⟨ζ²⟩ = 1/(4σ²)
        assert!((s.position_expectation(|z| z * z) - 6.25).abs() < 1e-9);
    }
}
