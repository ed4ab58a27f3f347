//! Order-by-order Green's-function solver for weak potentials.
//!
//! The Heisenberg momentum is expanded as `ν_S = ν + Σ_k ε^k (g_k ν + h_k ζ)`, so the
//! row detunings become `δ_{±,S} = δ_± ∓ Σ_k ε^k δ^(k)` with `δ^(k) = (g_k ν + h_k ζ)/2`.
//! Order `k` then solves the free oscillator equation with source
//! `±2i Σ_{l<k} δ^(k−l) ψ̇^(l)` (upper sign for the excited row) and zero initial data,
//! integrated against the retarded kernel `G(Δ) = θ(Δ) e^{−iδΔ} sin(μΔ)/μ` with an
//! end-corrected (Gregory) trapezoid rule on the uniform τ grid.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic::{free_derivative_elements, free_propagator_elements};
use crate::detuning::{detuning, effective_rabi, DetuningBranch};
use crate::elements::SHIFT_TOLERANCE;
use crate::error::{invalid, RabiError, Result};
use crate::grid::MomentumGrid;
use crate::params::SimulationParams;
use crate::state::{Frame, SpinorState};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// End-correction order of the Gregory rule used for the kernel convolutions; the
/// quadrature error is `O(dτ^{ORDER+2})`.
pub const GREGORY_ORDER: usize = 6;

const GREGORY: [f64; 7] = [
    1.0 / 12.0,
    1.0 / 24.0,
    19.0 / 720.0,
    3.0 / 160.0,
    863.0 / 60480.0,
    275.0 / 24192.0,
    33953.0 / 3628800.0,
];

/// Gregory weights for `n` unit intervals: trapezoid plus difference corrections at
/// both ends, order `min(order, n)`.
pub fn gregory_weights(n: usize, order: usize) -> Vec<f64> {
    assert!(order <= GREGORY.len(), "Gregory order at most {}", GREGORY.len());
    if n == 0 {
        return vec![0.0];
    }
    let mut w = vec![1.0; n + 1];
    w[0] = 0.5;
    w[n] = 0.5;
    let q = order.min(n);
    let mut binom = vec![1.0f64];
    for k in 1..=q {
        binom = (0..=k).map(|m| if m == 0 || m == k { 1.0 } else { binom[m - 1] + binom[m] }).collect();
        let ck = GREGORY[k - 1];
        for m in 0..=k {
            let alt = if m % 2 == 0 { 1.0 } else { -1.0 };
            // ∇^k f_n
            w[n - m] -= ck * alt * binom[m];
            // (−1)^k Δ^k f_0
            w[m] -= ck * alt * binom[m];
        }
    }
    w
}

/// Complex values the derivative tracks may hold in total.
pub const TRACK_CAPACITY: usize = 1 << 26;

/// Series coefficients of the Heisenberg momentum in powers of a small parameter.
pub trait DetuningExpansion: Sync {
    fn epsilon(&self) -> f64;
    /// `(g_k(τ), h_k(τ))` for `k ≥ 1`.
    fn coeffs(&self, k: usize, tau: f64) -> (f64, f64);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffConvention {
    /// Expansion of `cos(ϖτ)ν − (2ε/ϖ) sin(ϖτ)ζ` with `ϖ = √(ε/ω_r)`.
    Physical,
    /// `g_k = (−1)^k (2/ω_r)^k τ^{2k}/(2k)!`, `h_k = 2(−1)^{k−1} (2/ω_r)^{k−1} τ^{2k−1}/(2k−1)!`.
    AsPrinted,
}

/// Coefficient generator for `V = εζ²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticCoeffs {
    pub epsilon: f64,
    pub omega_r: f64,
    pub convention: CoeffConvention,
}

/// `x^n / n!` without overflow in the intermediate factorial.
fn power_over_factorial(x: f64, n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * x / j as f64)
}

/// Physical coefficients `(g_k, h_k)` of the quadratic-potential expansion.
pub fn quadratic_detuning_coeffs(k: usize, tau: f64, omega_r: f64) -> (f64, f64) {
    assert!(k >= 1, "expansion orders start at 1");
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let w = 1.0 / omega_r;
    let g = sign * w.powi(k as i32) * power_over_factorial(tau, 2 * k);
    let h = 2.0 * sign * w.powi(k as i32 - 1) * power_over_factorial(tau, 2 * k - 1);
    (g, h)
}

/// The alternative closed form with frequency `√(2ε/ω_r)` and positive ζ coefficient.
pub fn quadratic_detuning_coeffs_as_printed(k: usize, tau: f64, omega_r: f64) -> (f64, f64) {
    assert!(k >= 1, "expansion orders start at 1");
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let w = 2.0 / omega_r;
    let g = sign * w.powi(k as i32) * power_over_factorial(tau, 2 * k);
    let h = -2.0 * sign * w.powi(k as i32 - 1) * power_over_factorial(tau, 2 * k - 1);
    (g, h)
}

impl QuadraticCoeffs {
    pub fn new(epsilon: f64, omega_r: f64) -> Self {
        QuadraticCoeffs { epsilon, omega_r, convention: CoeffConvention::Physical }
    }

    pub fn as_printed(epsilon: f64, omega_r: f64) -> Self {
        QuadraticCoeffs { epsilon, omega_r, convention: CoeffConvention::AsPrinted }
    }

    /// Trap frequency of the expansion.
    pub fn trap_frequency(&self) -> f64 {
        match self.convention {
            CoeffConvention::Physical => (self.epsilon / self.omega_r).sqrt(),
            CoeffConvention::AsPrinted => (2.0 * self.epsilon / self.omega_r).sqrt(),
        }
    }

    pub fn g(&self, k: usize, tau: f64) -> f64 {
        self.coeffs(k, tau).0
    }

    pub fn h(&self, k: usize, tau: f64) -> f64 {
        self.coeffs(k, tau).1
    }
}

impl DetuningExpansion for QuadraticCoeffs {
    fn epsilon(&self) -> f64 {
        self.epsilon
    }

    fn coeffs(&self, k: usize, tau: f64) -> (f64, f64) {
        match self.convention {
            CoeffConvention::Physical => quadratic_detuning_coeffs(k, tau, self.omega_r),
            CoeffConvention::AsPrinted => quadratic_detuning_coeffs_as_printed(k, tau, self.omega_r),
        }
    }
}

/// Retarded kernel `θ(τ−τ′) e^{−iδΔ} sin(μΔ)/μ` of `u'' + 2iδu' + u`.
pub fn greens_kernel(branch: DetuningBranch, nu: f64, tau: f64, tau_prime: f64, params: &SimulationParams) -> Complex64 {
    let d = detuning(branch, nu, params.delta_omega, params.omega_r);
    kernel(d, tau - tau_prime)
}

fn kernel(delta: f64, dt: f64) -> Complex64 {
    if dt < 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mu = effective_rabi(delta);
    Complex64::from_polar((mu * dt).sin() / mu, -delta * dt)
}

/// `∂_τ G`, equal to 1 at `Δ = 0⁺`.
fn kernel_dot(delta: f64, dt: f64) -> Complex64 {
    if dt < 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mu = effective_rabi(delta);
    let (s, c) = (mu * dt).sin_cos();
    Complex64::from_polar(1.0, -delta * dt) * Complex64::new(c, -delta * s / mu)
}

/// Distributional impulse check of a kernel normalization.
///
/// Integrates `∫ G(τ−τ′)(φ'' − 2iδφ' + φ) dτ` for the Gaussian test function
/// `φ(τ) = exp(−(τ−c)²/w²)` with the kernel scaled by `norm_factor·μ` (so `1/μ`
/// corresponds to `norm_factor = 1/μ`), and returns `(integral, φ(τ′))`.
pub fn impulse_response(delta: f64, norm_factor: f64, tau_prime: f64, center: f64, width: f64, h: f64) -> (Complex64, f64) {
    let mu = effective_rabi(delta);
    let phi = |t: f64| (-(t - center).powi(2) / (width * width)).exp();
    let dphi = |t: f64| -2.0 * (t - center) / (width * width) * phi(t);
    let ddphi = |t: f64| {
        let x = (t - center) / width;
        (4.0 * x * x - 2.0) / (width * width) * phi(t)
    };
    let t_end = center + 12.0 * width;
    let steps = ((t_end - tau_prime) / h).ceil() as usize;
    let h = (t_end - tau_prime) / steps as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=steps {
        let t = tau_prime + j as f64 * h;
        let w = if j == 0 || j == steps { 0.5 * h } else { h };
        let g = kernel(delta, t - tau_prime) * (norm_factor * mu);
        acc += w * g * (ddphi(t) - 2.0 * I * delta * dphi(t) + phi(t));
    }
    (acc, phi(tau_prime))
}

fn row_branch(branch: DetuningBranch) -> f64 {
    // δ_{±,S} = δ_± ∓ Σ ε^k δ^(k)
    -branch.sigma()
}

/// Order-`order` piece of the branch's detuning applied to its row of `state`:
/// `∓δ^(order) ψ_±`, with `ν` acting by multiplication and `ζ` spectrally.
pub fn apply_order_correction(
    order: usize,
    state: &SpinorState,
    tau: f64,
    coeffs: &dyn DetuningExpansion,
    branch: DetuningBranch,
) -> Result<SpinorState> {
    if order == 0 {
        return Err(invalid("order", "corrections start at order 1"));
    }
    let (g, h) = coeffs.coeffs(order, tau);
    let mut out = SpinorState::zeros(&state.grid, state.frame, state.tau);
    let (src, dst) = match branch {
        DetuningBranch::Plus => (&state.psi_e, &mut out.psi_e),
        DetuningBranch::Minus => (&state.psi_g, &mut out.psi_g),
    };
    let edge = MomentumGrid::edge_amplitude(src, (state.grid.n() / 64).max(2));
    if edge > SHIFT_TOLERANCE.max(1e-8) {
        return Err(RabiError::GridOverflow { amplitude: edge, context: "position operator on a packet touching the grid edge".into() });
    }
    *dst = delta_op(&state.grid, src, g, h, 0.5 * row_branch(branch));
    Ok(out)
}

/// `c·(g ν + h ζ) ψ`.
fn delta_op(grid: &MomentumGrid, psi: &[Complex64], g: f64, h: f64, c: f64) -> Vec<Complex64> {
    let zpart = if h != 0.0 {
        grid.spectral().apply_position_fn(psi, |z| Complex64::new(z, 0.0))
    } else {
        vec![Complex64::new(0.0, 0.0); psi.len()]
    };
    psi.iter()
        .zip(&zpart)
        .enumerate()
        .map(|(i, (p, zp))| c * (g * grid.nu(i) * p + h * zp))
        .collect()
}

/// Orders, derivative tracks and the resummed state on a uniform τ grid.
#[derive(Clone, Debug)]
pub struct PerturbationSeries {
    pub tau_grid: Vec<f64>,
    pub epsilon: f64,
    /// `orders[k][j]` is `ψ^(k)(τ_j)`.
    pub orders: Vec<Vec<SpinorState>>,
    /// `derivatives[k][j]` is `dψ^(k)/dτ(τ_j)`.
    pub derivatives: Vec<Vec<SpinorState>>,
    /// `Σ_k ε^k ψ^(k)(τ_j)` over all computed orders.
    pub resummed: Vec<SpinorState>,
}

impl PerturbationSeries {
    pub fn max_order(&self) -> usize {
        self.orders.len() - 1
    }

    /// `Σ_{k≤n} ε^k ψ^(k)(τ_j)`.
    pub fn resummed_to(&self, n: usize, j: usize) -> SpinorState {
        let mut acc = self.orders[0][j].clone();
        let mut w = 1.0;
        for k in 1..=n.min(self.max_order()) {
            w *= self.epsilon;
            acc.add_assign_scaled(&self.orders[k][j], Complex64::new(w, 0.0));
        }
        acc
    }

    /// `‖ε^k ψ^(k)(τ_j)‖` with the `dν` weight.
    pub fn correction_norm(&self, k: usize, j: usize) -> f64 {
        self.orders[k][j].norm_sqr().sqrt() * self.epsilon.powi(k as i32)
    }
}

fn check_tau_grid(tau_grid: &[f64]) -> Result<f64> {
    if tau_grid.is_empty() || tau_grid[0] != 0.0 {
        return Err(RabiError::InvalidGrid("tau grid must start at 0".into()));
    }
    if tau_grid.len() == 1 {
        return Ok(0.0);
    }
    let dt = tau_grid[1];
    if !(dt > 0.0) {
        return Err(RabiError::InvalidGrid("tau grid must increase".into()));
    }
    for (j, t) in tau_grid.iter().enumerate() {
        if (t - j as f64 * dt).abs() > 1e-9 * dt.max(1.0) * (j as f64).max(1.0) {
            return Err(RabiError::InvalidGrid(format!("tau grid not uniform at index {j}")));
        }
    }
    Ok(dt)
}

/// Quadratic-potential series using `params.epsilon` and the physical coefficients.
pub fn perturbative_solve(state0: &SpinorState, params: &SimulationParams, tau_grid: &[f64], n: usize) -> Result<PerturbationSeries> {
    let coeffs = QuadraticCoeffs::new(params.epsilon, params.omega_r);
    perturbative_solve_with(state0, params, tau_grid, n, &coeffs)
}

/// Series for an arbitrary coefficient generator.
pub fn perturbative_solve_with(
    state0: &SpinorState,
    params: &SimulationParams,
    tau_grid: &[f64],
    n: usize,
    expansion: &dyn DetuningExpansion,
) -> Result<PerturbationSeries> {
    params.validate()?;
    state0.require_frame(Frame::Interaction)?;
    let dt = check_tau_grid(tau_grid)?;
    let grid = &state0.grid;
    let t = tau_grid.len();
    let requested = (n + 1) * t * grid.n() * 2;
    if requested > TRACK_CAPACITY {
        return Err(RabiError::Capacity { requested, limit: TRACK_CAPACITY });
    }

    let mut orders: Vec<Vec<SpinorState>> = Vec::with_capacity(n + 1);
    let mut derivs: Vec<Vec<SpinorState>> = Vec::with_capacity(n + 1);
    let zero: Result<Vec<(SpinorState, SpinorState)>> = tau_grid
        .iter()
        .map(|&tau| {
            let mut s = free_propagator_elements(grid, params, tau).apply(state0)?;
            let mut d = free_derivative_elements(grid, params, tau).apply(state0)?;
            s.tau = tau;
            d.tau = tau;
            Ok((s, d))
        })
        .collect();
    let (s0, d0): (Vec<_>, Vec<_>) = zero?.into_iter().unzip();
    orders.push(s0);
    derivs.push(d0);

    if n > 0 {
        let (wr, dw) = (params.omega_r, params.delta_omega);
        let tables = |branch: DetuningBranch| -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
            let deltas: Vec<f64> = (0..grid.n()).map(|i| detuning(branch, grid.nu(i), dw, wr)).collect();
            let g = (0..t).map(|d| deltas.iter().map(|&x| kernel(x, d as f64 * dt)).collect()).collect();
            let gd = (0..t).map(|d| deltas.iter().map(|&x| kernel_dot(x, d as f64 * dt)).collect()).collect();
            (g, gd)
        };
        let (ge, gde) = tables(DetuningBranch::Plus);
        let (gg, gdg) = tables(DetuningBranch::Minus);
        let quad: Vec<Vec<f64>> = (0..t).map(|j| gregory_weights(j, GREGORY_ORDER)).collect();

        for k in 1..=n {
            let sources: Vec<(Vec<Complex64>, Vec<Complex64>)> = (0..t)
                .into_par_iter()
                .map(|j| {
                    let tau = tau_grid[j];
                    let mut xe_nu = vec![Complex64::new(0.0, 0.0); grid.n()];
                    let mut xe_z = xe_nu.clone();
                    let mut xg_nu = xe_nu.clone();
                    let mut xg_z = xe_nu.clone();
                    for l in 0..k {
                        let (cg, ch) = expansion.coeffs(k - l, tau);
                        let d = &derivs[l][j];
                        for i in 0..grid.n() {
                            xe_nu[i] += cg * d.psi_e[i];
                            xe_z[i] += ch * d.psi_e[i];
                            xg_nu[i] += cg * d.psi_g[i];
                            xg_z[i] += ch * d.psi_g[i];
                        }
                    }
                    let sp = grid.spectral();
                    let ze = sp.apply_position_fn(&xe_z, |z| Complex64::new(z, 0.0));
                    let zg = sp.apply_position_fn(&xg_z, |z| Complex64::new(z, 0.0));
                    let fe = (0..grid.n()).map(|i| I * (grid.nu(i) * xe_nu[i] + ze[i])).collect();
                    let fg = (0..grid.n()).map(|i| -I * (grid.nu(i) * xg_nu[i] + zg[i])).collect();
                    (fe, fg)
                })
                .collect();

            let conv = |j: usize, table: &[Vec<Complex64>], row: fn(&(Vec<Complex64>, Vec<Complex64>)) -> &Vec<Complex64>| {
                let mut acc = vec![Complex64::new(0.0, 0.0); grid.n()];
                let weights = &quad[j];
                for i in 0..=j {
                    let w = weights[i] * dt;
                    let ker = &table[j - i];
                    let f = row(&sources[i]);
                    for q in 0..grid.n() {
                        acc[q] += w * ker[q] * f[q];
                    }
                }
                acc
            };
            let fe_row: fn(&(Vec<Complex64>, Vec<Complex64>)) -> &Vec<Complex64> = |s| &s.0;
            let fg_row: fn(&(Vec<Complex64>, Vec<Complex64>)) -> &Vec<Complex64> = |s| &s.1;
            let results: Vec<(SpinorState, SpinorState)> = (0..t)
                .into_par_iter()
                .map(|j| {
                    let tau = tau_grid[j];
                    let s = SpinorState {
                        grid: grid.clone(),
                        psi_e: conv(j, &ge, fe_row),
                        psi_g: conv(j, &gg, fg_row),
                        frame: Frame::Interaction,
                        tau,
                    };
                    let d = SpinorState {
                        grid: grid.clone(),
                        psi_e: conv(j, &gde, fe_row),
                        psi_g: conv(j, &gdg, fg_row),
                        frame: Frame::Interaction,
                        tau,
                    };
                    (s, d)
                })
                .collect();
            let (sk, dk): (Vec<_>, Vec<_>) = results.into_iter().unzip();
            orders.push(sk);
            derivs.push(dk);
        }
    }

    let eps = expansion.epsilon();
    let mut series = PerturbationSeries { tau_grid: tau_grid.to_vec(), epsilon: eps, orders, derivatives: derivs, resummed: Vec::new() };
    series.resummed = (0..t).map(|j| series.resummed_to(n, j)).collect();
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Level;

    #[test]
    fn coefficient_values() {
        assert_eq!(quadratic_detuning_coeffs_as_printed(1, 1.0, 0.5), (-2.0, 2.0));
        assert_eq!(quadratic_detuning_coeffs(1, 1.0, 0.5), (-1.0, -2.0));
        for k in 1..6 {
            assert_eq!(quadratic_detuning_coeffs(k, 0.0, 0.7), (0.0, 0.0));
        }
    }

    #[test]
    fn partial_sums_reproduce_trajectory() {
        let (eps, wr) = (0.02, 0.5);
        let c = QuadraticCoeffs::new(eps, wr);
        let w = c.trap_frequency();
        for tau in [0.5, 3.0, 9.0] {
            assert!(w * tau <= 2.0);
            let (mut sg, mut sh) = (0.0, 0.0);
            for k in 1..=30 {
                let (g, h) = c.coeffs(k, tau);
                sg += eps.powi(k as i32) * g;
                sh += eps.powi(k as i32) * h;
            }
            assert!((sg - ((w * tau).cos() - 1.0)).abs() < 1e-14);
            assert!((sh + 2.0 * eps / w * (w * tau).sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn gregory_rule_is_high_order() {
        for n in [1usize, 3, 6, 7, 20] {
            let w = gregory_weights(n, GREGORY_ORDER);
            let exact_to = if n >= GREGORY_ORDER { GREGORY_ORDER + 1 } else { n.max(1) };
            for e in 0..=exact_to as i32 {
                let q: f64 = w.iter().enumerate().map(|(i, w)| w * (i as f64).powi(e)).sum();
                let want = (n as f64).powi(e + 1) / (e + 1) as f64;
                assert!((q - want).abs() <= 1e-10 * want.max(1.0), "n {n} degree {e}: {q} vs {want}");
            }
        }
        assert_eq!(gregory_weights(5, 0), vec![0.5, 1.0, 1.0, 1.0, 1.0, 0.5]);
    }

    #[test]
    fn kernel_is_retarded() {
        let p = SimulationParams::new(0.5, 0.0);
        assert_eq!(greens_kernel(DetuningBranch::Plus, 0.3, 1.0, 2.0, &p), Complex64::new(0.0, 0.0));
        assert_eq!(greens_kernel(DetuningBranch::Minus, 0.3, 1.0, 1.0, &p), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn kernel_solves_homogeneous_equation_with_unit_jump() {
        let d = 0.8;
        let h = 1e-4;
        for t in [0.4, 1.3, 2.9] {
            let f = |x: f64| kernel(d, x);
            let dd = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
            let d1 = (f(t + h) - f(t - h)) / (2.0 * h);
            assert!((dd + 2.0 * I * d * d1 + f(t)).norm() < 1e-6);
            assert!((d1 - kernel_dot(d, t)).norm() < 1e-7);
        }
        assert_eq!(kernel_dot(d, 0.0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn impulse_fixes_normalization() {
        for d in [0.0, 0.7, -2.0] {
            let mu = effective_rabi(d);
            let (val, want) = impulse_response(d, 1.0 / mu, 1.0, 2.0, 0.5, 1e-3);
            assert!((val - want).norm() < 1e-6, "δ = {d}: {val} vs {want}");
            let (half, _) = impulse_response(d, 0.5 / mu, 1.0, 2.0, 0.5, 1e-3);
            assert!((half - 0.5 * want).norm() < 1e-6);
        }
    }

    #[test]
    fn zero_epsilon_and_zero_order() {
        let g = MomentumGrid::new(256, -8.0, 8.0).unwrap();
        let p = SimulationParams::new(0.5, -0.5);
        let s0 = SpinorState::gaussian(&g, 0.0, 0.3, Level::Ground);
        let taus: Vec<f64> = (0..9).map(|j| j as f64 * 0.25).collect();
        let ser = perturbative_solve(&s0, &p, &taus, 2).unwrap();
        for j in 0..taus.len() {
            assert!(ser.resummed[j].max_abs_diff(&ser.orders[0][j]) == 0.0);
            let direct = free_propagator_elements(&g, &p, taus[j]).apply(&s0).unwrap();
            assert!(ser.orders[0][j].max_abs_diff(&direct) < 1e-12);
        }
    }

    #[test]
    fn order_correction_expectation() {
        let g = MomentumGrid::new(512, -8.0, 8.0).unwrap();
        let s = SpinorState::gaussian(&g, 1.5, 0.2, Level::Excited);
        let c = QuadraticCoeffs::new(1e-3, 0.5);
        let out = apply_order_correction(1, &s, 0.0, &c, DetuningBranch::Plus).unwrap();
        assert!(out.norm_sqr() == 0.0);
        // real momentum profile ⇒ ⟨ζ⟩ = 0, so ⟨ψ|−δ^(1)|ψ⟩ = −g·1.5/2
        let tau = 1.3;
        let (gk, _) = c.coeffs(1, tau);
        let out = apply_order_correction(1, &s, tau, &c, DetuningBranch::Plus).unwrap();
        let ev: Complex64 = s.psi_e.iter().zip(&out.psi_e).map(|(a, b)| a.conj() * b).sum::<Complex64>() * g.d_nu();
        assert!((ev.re + 0.75 * gk).abs() < 1e-10, "{ev}");
        assert!(ev.im.abs() < 1e-10);
        assert!(out.psi_g.iter().all(|z| z.norm() == 0.0));
        let out = apply_order_correction(1, &s, tau, &c, DetuningBranch::Minus).unwrap();
        assert!(out.norm_sqr() == 0.0);
        assert!(apply_order_correction(0, &s, tau, &c, DetuningBranch::Plus).is_err());
    }

    #[test]
    fn invalid_tau_grid() {
        let g = MomentumGrid::new(64, -4.0, 4.0).unwrap();
        let p = SimulationParams::new(0.5, 0.0);
        let s0 = SpinorState::gaussian(&g, 0.0, 0.3, Level::Ground);
        assert!(matches!(perturbative_solve(&s0, &p, &[0.0, 0.1, 0.3], 1), Err(RabiError::InvalidGrid(_))));
        assert!(matches!(perturbative_solve(&s0, &p, &[0.1, 0.2], 1), Err(RabiError::InvalidGrid(_))));
    }

    #[test]
    fn capacity_limit() {
        let g = MomentumGrid::new(4096, -8.0, 8.0).unwrap();
        let p = SimulationParams::new(0.5, 0.0);
        let s0 = SpinorState::gaussian(&g, 0.0, 0.3, Level::Ground);
        let taus: Vec<f64> = (0..1000).map(|j| j as f64 * 0.01).collect();
        assert!(matches!(perturbative_solve(&s0, &p, &taus, 10), Err(RabiError::Capacity { .. })));
    }
}
