//! Linear-potential propagator.
//!
//! With drift rate `K` the row equation is `u'' + 2i(δ + Kτ)u' + u = 0`. Its two
//! independent solutions are a Hermite function `H(m, y)` and a Kummer function
//! `M(a₁, ½, y²)` with `y = i(δ + Kτ)/√(iK)`, `m = 1/(2iK) − 1`, `a₁ = ½ − 1/(4iK)`,
//! both carrying the prefactor `exp(−2iδτ − iKτ²)`.

use num_complex::Complex64;
use rabikit_specfun::{hermite_h, kummer_1f1, SpecFunError};
use rayon::prelude::*;

use super::free::{diag, off};
use crate::detuning::{detuning, DetuningBranch};
use crate::elements::{OffDiagonalIndexing, PropagatorElements};
use crate::error::{invalid, RabiError, Result};
use crate::grid::MomentumGrid;
use crate::params::SimulationParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Below this |κ| the closed form is replaced by the free propagator with the
/// time-averaged drift folded into the detuning (error `O(κτ²)`).
pub const KAPPA_MIN: f64 = 1e-3;

/// The four combinations entering the closed-form elements.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearBlocks {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub g: Complex64,
}

/// τ-independent part of the solution basis for one `(K, δ)` pair.
#[derive(Clone, Copy, Debug)]
struct Basis {
    drift: f64,
    delta: f64,
    s: Complex64,
    m: Complex64,
    a1: Complex64,
    p0: Complex64,
    hm0: Complex64,
    q0: Complex64,
    r0: Complex64,
    b: Complex64,
}

impl Basis {
    fn new(drift: f64, delta: f64, branch_sign: f64) -> std::result::Result<Self, SpecFunError> {
        let k = Complex64::new(drift, 0.0);
        let s = branch_sign * (I * k).sqrt();
        let y0 = I * delta / s;
        let m = 1.0 / (2.0 * I * k) - 1.0;
        let a1 = 0.5 - 1.0 / (4.0 * I * k);
        let p0 = hermite_h(m, y0)?.value;
        let hm0 = hermite_h(m - 1.0, y0)?.value;
        let q0 = kummer_1f1(a1, Complex64::new(0.5, 0.0), y0 * y0)?.value;
        let r0 = kummer_1f1(a1 + 1.0, Complex64::new(1.5, 0.0), y0 * y0)?.value;
        let b = 2.0 * s * hm0 * q0 + 2.0 * I * delta * p0 * r0;
        Ok(Basis { drift, delta, s, m, a1, p0, hm0, q0, r0, b })
    }

    fn blocks(&self, tau: f64) -> std::result::Result<(LinearBlocks, Complex64), SpecFunError> {
        let (k, d) = (self.drift, self.delta);
        let yt = I * (d + k * tau) / self.s;
        let pt = hermite_h(self.m, yt)?.value;
        let qt = kummer_1f1(self.a1, Complex64::new(0.5, 0.0), yt * yt)?.value;
        let a = pt * self.q0 - self.p0 * qt;
        let w = 2.0 * I * k - 1.0;
        let c = 2.0 * self.s * w * self.hm0 * qt - 4.0 * d * k * self.p0 * qt
            + 4.0 * k * d * pt * self.q0
            + 2.0 * I * d * w * pt * self.r0;
        let pre = (-I * (2.0 * d * tau + k * tau * tau)).exp();
        Ok((LinearBlocks { a, b: self.b, c, g: self.b }, pre))
    }

    /// `(u_diag, u_off)`; the off-diagonal value excludes the driving phase.
    fn elements(&self, tau: f64) -> std::result::Result<(Complex64, Complex64), SpecFunError> {
        let (bl, pre) = self.blocks(tau)?;
        let k = self.drift;
        let w = 2.0 * I * k - 1.0;
        let u_off = -2.0 * k / w * pre * bl.a / bl.b;
        let u_diag = pre * bl.c / (w * bl.g);
        Ok((u_diag, u_off))
    }
}

/// Building blocks A, B, C, G for drift `drift`, detuning `delta` at time `tau`,
/// with `√(iK)` taken on the principal branch (`branch_sign = 1`) or its negative.
pub fn linear_blocks(drift: f64, delta: f64, tau: f64, branch_sign: f64) -> std::result::Result<LinearBlocks, SpecFunError> {
    Ok(Basis::new(drift, delta, branch_sign)?.blocks(tau)?.0)
}

/// Solutions of the row equation with `u(0) = 1, u'(0) = 0` (diagonal) and
/// `u(0) = 0, u'(0) = −i` (off-diagonal, driving phase excluded).
pub fn linear_row_solution(drift: f64, delta: f64, tau: f64, branch_sign: f64) -> std::result::Result<(Complex64, Complex64), SpecFunError> {
    Basis::new(drift, delta, branch_sign)?.elements(tau)
}

/// Row data for one grid point: excited diagonal, g→e, e→g, ground diagonal.
#[derive(Clone, Copy, Debug)]
struct PointBasis {
    ee: Basis,
    eg: Basis,
    ge: Basis,
    gg: Basis,
}

/// Linear-potential propagator with the τ-independent special-function values cached.
pub struct LinearPropagator {
    grid: MomentumGrid,
    params: SimulationParams,
    basis: Option<Vec<PointBasis>>,
}

fn spec_err(nu: f64, tau: f64) -> impl Fn(SpecFunError) -> RabiError {
    move |source| RabiError::SpecFun { nu, tau, source }
}

impl LinearPropagator {
    pub fn new(grid: &MomentumGrid, params: &SimulationParams) -> Result<Self> {
        params.validate()?;
        if params.kappa == 0.0 {
            return Err(invalid("kappa", "linear propagator needs kappa != 0"));
        }
        let basis = if params.kappa.abs() < KAPPA_MIN {
            None
        } else {
            let (k, wr, dw) = (params.kappa, params.omega_r, params.delta_omega);
            let b: Result<Vec<PointBasis>> = (0..grid.n())
                .into_par_iter()
                .map(|i| {
                    let nu = grid.nu(i);
                    let dp = detuning(DetuningBranch::Plus, nu, dw, wr);
                    let dm = detuning(DetuningBranch::Minus, nu, dw, wr);
                    let e = spec_err(nu, 0.0);
                    Ok(PointBasis {
                        ee: Basis::new(k, dp, 1.0).map_err(&e)?,
                        eg: Basis::new(k, -dm, 1.0).map_err(&e)?,
                        ge: Basis::new(-k, -dp, 1.0).map_err(&e)?,
                        gg: Basis::new(-k, dm, 1.0).map_err(&e)?,
                    })
                })
                .collect();
            Some(b?)
        };
        Ok(LinearPropagator { grid: grid.clone(), params: *params, basis })
    }

    pub fn elements(&self, tau: f64) -> Result<PropagatorElements> {
        if !(tau >= 0.0) {
            return Err(invalid("tau", "must be >= 0"));
        }
        let (k, wr, dw) = (self.params.kappa, self.params.omega_r, self.params.delta_omega);
        let grid = &self.grid;
        let rows: Result<Vec<[Complex64; 4]>> = match &self.basis {
            None => Ok((0..grid.n())
                .map(|i| {
                    let nu = grid.nu(i);
                    let dp = detuning(DetuningBranch::Plus, nu, dw, wr);
                    let dm = detuning(DetuningBranch::Minus, nu, dw, wr);
                    let h = 0.5 * k * tau;
                    [diag(dp + h, tau), off(-dm + h, tau), off(-dp - h, tau), diag(dm - h, tau)]
                })
                .collect()),
            Some(basis) => basis
                .par_iter()
                .enumerate()
                .map(|(i, pb)| {
                    let e = spec_err(grid.nu(i), tau);
                    if tau == 0.0 {
                        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
                        return Ok([one, zero, zero, one]);
                    }
                    let (ee, _) = pb.ee.elements(tau).map_err(&e)?;
                    let (_, eg) = pb.eg.elements(tau).map_err(&e)?;
                    let (_, ge) = pb.ge.elements(tau).map_err(&e)?;
                    let (gg, _) = pb.gg.elements(tau).map_err(&e)?;
                    Ok([ee, eg, ge, gg])
                })
                .collect(),
        };
        let rows = rows?;
        Ok(PropagatorElements {
            grid: grid.clone(),
            tau,
            omega_r: wr,
            u_ee: rows.iter().map(|r| r[0]).collect(),
            u_eg: rows.iter().map(|r| r[1]).collect(),
            u_ge: rows.iter().map(|r| r[2]).collect(),
            u_gg: rows.iter().map(|r| r[3]).collect(),
            indexing: OffDiagonalIndexing::SourceMomentum,
        })
    }
}

/// Closed-form linear-potential elements at `tau` (driving phase `φ = Δω τ`).
pub fn linear_propagator_elements(grid: &MomentumGrid, params: &SimulationParams, tau: f64) -> Result<PropagatorElements> {
    LinearPropagator::new(grid, params)?.elements(tau)
}
