//! Uniform momentum grid and its Fourier-dual position axis.
//!
//! Position amplitudes follow `ψ(ζ) = ∫ ψ(ν) e^{iνζ} dν/√(2π)`; the discrete
//! transform pair below is unitary with respect to the `dν` and `dζ` weights.

use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{RabiError, Result};

/// Grid description as it appears in configuration files.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n: usize,
    pub nu_min: f64,
    pub nu_max: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { n: 1024, nu_min: -8.0, nu_max: 8.0 }
    }
}

/// `n` momenta `ν_i = nu_min + i·d_nu` on the half-open interval `[nu_min, nu_max)`.
#[derive(Clone)]
pub struct MomentumGrid {
    n: usize,
    nu_min: f64,
    d_nu: f64,
    spectral: Arc<OnceLock<Spectral>>,
}

impl PartialEq for MomentumGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.nu_min == other.nu_min && self.d_nu == other.d_nu
    }
}

impl fmt::Debug for MomentumGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MomentumGrid")
            .field("n", &self.n)
            .field("nu_min", &self.nu_min)
            .field("d_nu", &self.d_nu)
            .finish()
    }
}

impl MomentumGrid {
    pub fn new(n: usize, nu_min: f64, nu_max: f64) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(RabiError::InvalidGrid(format!("n = {n} must be a power of two >= 2")));
        }
        if !nu_min.is_finite() || !nu_max.is_finite() || nu_max <= nu_min {
            return Err(RabiError::InvalidGrid(format!("bad momentum range [{nu_min}, {nu_max})")));
        }
        Ok(MomentumGrid { n, nu_min, d_nu: (nu_max - nu_min) / n as f64, spectral: Arc::default() })
    }

    pub fn from_spec(spec: &GridSpec) -> Result<Self> {
        Self::new(spec.n, spec.nu_min, spec.nu_max)
    }

    pub fn spec(&self) -> GridSpec {
        GridSpec { n: self.n, nu_min: self.nu_min, nu_max: self.nu_max() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d_nu(&self) -> f64 {
        self.d_nu
    }

    pub fn nu_min(&self) -> f64 {
        self.nu_min
    }

    pub fn nu_max(&self) -> f64 {
        self.nu_min + self.n as f64 * self.d_nu
    }

    pub fn nu(&self, i: usize) -> f64 {
        self.nu_min + i as f64 * self.d_nu
    }

    pub fn nu_values(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.nu(i)).collect()
    }

    /// Index of the grid point nearest to `nu`, if it lies on the grid.
    pub fn index_of(&self, nu: f64) -> Option<usize> {
        let x = ((nu - self.nu_min) / self.d_nu).round();
        (x >= 0.0 && x < self.n as f64).then_some(x as usize)
    }

    pub fn d_zeta(&self) -> f64 {
        2.0 * PI / (self.n as f64 * self.d_nu)
    }

    /// Centered position axis `ζ_j = (j − n/2)·dζ`.
    pub fn zeta(&self, j: usize) -> f64 {
        (j as f64 - (self.n / 2) as f64) * self.d_zeta()
    }

    pub fn zeta_values(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.zeta(j)).collect()
    }

    pub fn spectral(&self) -> &Spectral {
        self.spectral.get_or_init(|| Spectral::new(self))
    }

    /// Returns `f(ν − s)` sampled on the grid: an integer roll by `round(s/dν)`
    /// followed by a spectral sub-grid correction. Fails if amplitude above
    /// `tol` would leave the grid.
    pub fn shift(&self, f: &[Complex64], s: f64, tol: f64) -> Result<Vec<Complex64>> {
        let m = (s / self.d_nu).round();
        let r = s - m * self.d_nu;
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        let mut lost = 0.0f64;
        let mi = m as i64;
        for (i, v) in f.iter().enumerate() {
            let t = i as i64 + mi;
            if t >= 0 && (t as usize) < self.n {
                out[t as usize] = *v;
            } else {
                lost = lost.max(v.norm());
            }
        }
        if lost > tol {
            return Err(RabiError::GridOverflow {
                amplitude: lost,
                context: format!("shift by {s} on [{}, {})", self.nu_min, self.nu_max()),
            });
        }
        if r.abs() > 1e-12 * self.d_nu {
            let sp = self.spectral();
            sp.to_position(&mut out);
            for (j, v) in out.iter_mut().enumerate() {
                *v *= Complex64::from_polar(1.0, r * sp.zeta[j]);
            }
            sp.to_momentum(&mut out);
        }
        Ok(out)
    }

    /// Largest amplitude within `band` points of either end of the array.
    pub fn edge_amplitude(values: &[Complex64], band: usize) -> f64 {
        let n = values.len();
        let b = band.min(n / 2).max(1);
        values[..b].iter().chain(values[n - b..].iter()).map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// FFT plans and phase tables for the momentum ↔ position transform.
pub struct Spectral {
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    sign: Vec<f64>,
    to_pos: Vec<Complex64>,
    to_mom: Vec<Complex64>,
    pub zeta: Vec<f64>,
}

impl Spectral {
    fn new(grid: &MomentumGrid) -> Self {
        let n = grid.n;
        let mut planner = FftPlanner::new();
        let zeta = grid.zeta_values();
        let a = grid.d_nu / (2.0 * PI).sqrt();
        let b = grid.d_zeta() / (2.0 * PI).sqrt();
        Spectral {
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
            sign: (0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect(),
            to_pos: zeta.iter().map(|z| Complex64::from_polar(a, grid.nu_min * z)).collect(),
            to_mom: zeta.iter().map(|z| Complex64::from_polar(b, -grid.nu_min * z)).collect(),
            zeta,
        }
    }

    /// In-place momentum → position transform.
    pub fn to_position(&self, psi: &mut [Complex64]) {
        for (v, s) in psi.iter_mut().zip(&self.sign) {
            *v *= s;
        }
        self.inv.process(psi);
        for (v, p) in psi.iter_mut().zip(&self.to_pos) {
            *v *= p;
        }
    }

    /// In-place position → momentum transform.
    pub fn to_momentum(&self, psi: &mut [Complex64]) {
        for (v, p) in psi.iter_mut().zip(&self.to_mom) {
            *v *= p;
        }
        self.fwd.process(psi);
        for (v, s) in psi.iter_mut().zip(&self.sign) {
            *v *= s;
        }
    }

    /// Applies the position-diagonal operator `f(ζ)` to a momentum-space array.
    pub fn apply_position_fn(&self, psi: &[Complex64], f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        let mut w = psi.to_vec();
        self.to_position(&mut w);
        for (v, z) in w.iter_mut().zip(&self.zeta) {
            *v *= f(*z);
        }
        self.to_momentum(&mut w);
        w
    }
}
