//! Detuning operators, effective Rabi frequency and resonant momenta.
//!
//! The plus branch belongs to the excited row, the minus branch to the ground row.
//! Both operators are diagonal in momentum, so everything here is scalar algebra
//! on their eigenvalues.

use serde::{Deserialize, Serialize};

use crate::params::SimulationParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetuningBranch {
    Plus,
    Minus,
}

impl DetuningBranch {
    /// σ_z eigenvalue of the row the branch belongs to.
    pub fn sigma(self) -> f64 {
        match self {
            DetuningBranch::Plus => 1.0,
            DetuningBranch::Minus => -1.0,
        }
    }

    pub fn other(self) -> Self {
        match self {
            DetuningBranch::Plus => DetuningBranch::Minus,
            DetuningBranch::Minus => DetuningBranch::Plus,
        }
    }
}

/// `δ_± = (∓dφ/dτ ∓ ν + ω_r)/2`.
pub fn detuning(branch: DetuningBranch, nu: f64, dphi_dtau: f64, omega_r: f64) -> f64 {
    let s = branch.sigma();
    0.5 * (-s * dphi_dtau - s * nu + omega_r)
}

/// Detuning at the Heisenberg momentum `ν − 2κτ` of a linear potential.
pub fn detuning_time_dependent(branch: DetuningBranch, nu: f64, tau: f64, params: &SimulationParams) -> f64 {
    detuning(branch, nu - 2.0 * params.kappa * tau, params.delta_omega, params.omega_r)
}

/// `μ = √(1 + δ²)`.
pub fn effective_rabi(delta: f64) -> f64 {
    1.0f64.hypot(delta)
}

/// Momentum in the kernel of the chosen branch.
pub fn resonant_momentum(branch: DetuningBranch, delta_omega: f64, omega_r: f64) -> f64 {
    -delta_omega + branch.sigma() * omega_r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use DetuningBranch::*;

    #[test]
    fn reference_points() {
        assert_eq!(detuning(Plus, 0.0, 1.0, 1.0), 0.0);
        assert_eq!(detuning(Plus, 1.0, 1.0, 1.0), -0.5);
        assert_eq!(detuning(Plus, 2.0, 0.0, 1.0), -0.5);
        assert_eq!(detuning(Minus, -0.3 - 0.7, 0.3, 0.7), 0.0);
        assert_eq!(resonant_momentum(Minus, 0.0, 1.0), -1.0);
        assert_eq!(resonant_momentum(Minus, 0.0, 0.0), 0.0);
        assert_eq!(resonant_momentum(Plus, 0.0, 0.0), 0.0);
    }

    #[test]
    fn rabi_values() {
        assert_eq!(effective_rabi(0.0), 1.0);
        assert!((effective_rabi(2.0) - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn time_dependent_limits() {
        let p = SimulationParams::new(0.1, 0.0).with_kappa(1.0);
        assert_eq!(detuning_time_dependent(Minus, 0.3, 0.0, &p), detuning(Minus, 0.3, 0.0, 0.1));
        let free = SimulationParams::new(0.1, 0.4);
        for tau in [0.0, 1.0, 7.5] {
            assert_eq!(detuning_time_dependent(Plus, 0.3, tau, &free), detuning(Plus, 0.3, 0.4, 0.1));
        }
        // ground-row detuning falls by κτ as the momentum drifts down
        assert!((detuning_time_dependent(Minus, 0.0, 1.0, &p) - (0.05 - 1.0)).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn shifted_branch_relation(nu in -50.0..50.0f64, dw in -5.0..5.0f64, wr in 0.0..5.0f64) {
            let lhs = detuning(Plus, nu + 2.0 * wr, dw, wr);
            let rhs = -detuning(Minus, nu, dw, wr);
            prop_assert!((lhs - rhs).abs() <= 1e-14 * (1.0 + nu.abs()));
        }

        #[test]
        fn rabi_even_and_bounded(d in -1e3..1e3f64) {
            prop_assert_eq!(effective_rabi(d), effective_rabi(-d));
            prop_assert!(effective_rabi(d) >= 1.0);
            if d != 0.0 && d.abs() > 1e-7 {
                prop_assert!(effective_rabi(d) > 1.0);
            }
        }

        #[test]
        fn affine_slope(nu in -20.0..20.0f64, dw in -3.0..3.0f64, wr in 0.01..3.0f64) {
            let h = 1e-3;
            for b in [Plus, Minus] {
                let fd = (detuning(b, nu + h, dw, wr) - detuning(b, nu - h, dw, wr)) / (2.0 * h);
                prop_assert!((fd + 0.5 * b.sigma()).abs() < 1e-10);
            }
        }

        #[test]
        fn resonant_split(dw in -5.0..5.0f64, wr in 0.0..5.0f64) {
            let d = resonant_momentum(Plus, dw, wr) - resonant_momentum(Minus, dw, wr);
            prop_assert!((d - 2.0 * wr).abs() <= 1e-15 * (1.0 + dw.abs() + wr));
            prop_assert!(detuning(Minus, resonant_momentum(Minus, dw, wr), dw, wr).abs() < 1e-15 * (1.0 + dw.abs() + wr));
            prop_assert!(detuning(Plus, resonant_momentum(Plus, dw, wr), dw, wr).abs() < 1e-15 * (1.0 + dw.abs() + wr));
        }
    }
}
