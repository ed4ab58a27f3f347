//! Physical and dimensionless parameter sets.
//!
//! Time is measured in units of the inverse Rabi frequency and momenta as Doppler
//! frequencies `ν = k p / (m Ω)`; the position variable ζ is the conjugate with
//! `[ζ, ν] = i`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Reduced Planck constant in J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Dimensionless parameters; frequencies in units of Ω, time τ = Ω t.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationParams {
    /// Recoil frequency ℏk²/(2mΩ).
    pub omega_r: f64,
    /// Constant phase rate dφ/dτ.
    pub delta_omega: f64,
    /// Linear potential strength.
    #[serde(default)]
    pub kappa: f64,
    /// Quadratic potential strength, V = ε ζ².
    #[serde(default)]
    pub epsilon: f64,
    #[serde(default)]
    pub eps_e: f64,
    #[serde(default)]
    pub eps_g: f64,
}

impl SimulationParams {
    pub fn new(omega_r: f64, delta_omega: f64) -> Self {
        SimulationParams { omega_r, delta_omega, kappa: 0.0, epsilon: 0.0, eps_e: 0.0, eps_g: 0.0 }
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_internal_energies(mut self, eps_e: f64, eps_g: f64) -> Self {
        self.eps_e = eps_e;
        self.eps_g = eps_g;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.omega_r, self.delta_omega, self.kappa, self.epsilon, self.eps_e, self.eps_g];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(invalid("params", "all parameters must be finite"));
        }
        if self.omega_r <= 0.0 {
            return Err(invalid("omega_r", "must be > 0"));
        }
        if self.epsilon < 0.0 {
            return Err(invalid("epsilon", "must be >= 0"));
        }
        Ok(())
    }
}

/// Laboratory parameters in SI units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabParams {
    /// Atomic mass, kg.
    pub mass: f64,
    /// Effective wavenumber, 1/m.
    pub wavenumber: f64,
    /// Rabi frequency Ω, rad/s.
    pub rabi_frequency: f64,
    /// Constant external force `a` of the potential `a z`, N.
    pub acceleration_coefficient: f64,
    /// Laser frequency ω_L, rad/s.
    pub laser_frequency: f64,
    /// Internal level energies divided by ℏ, rad/s.
    pub eps_e: f64,
    pub eps_g: f64,
    /// Laser phase φ_L(0), rad.
    pub laser_phase0: f64,
    /// Constant laser phase rate dφ_L/dt, rad/s.
    #[serde(default)]
    pub laser_phase_rate: f64,
}

/// Converts laboratory parameters to the dimensionless set.
///
/// `ω_r = ℏk²/(2mΩ)`, `κ = k a/(2mΩ²)`, `Δω = (ε_e − ε_g − ω_L − dφ_L/dt)/Ω`.
pub fn to_dimensionless(lab: &LabParams) -> Result<SimulationParams> {
    if !(lab.mass > 0.0) {
        return Err(invalid("mass", "must be > 0"));
    }
    if !(lab.rabi_frequency > 0.0) {
        return Err(invalid("rabi_frequency", "must be > 0"));
    }
    if lab.wavenumber == 0.0 || !lab.wavenumber.is_finite() {
        return Err(invalid("wavenumber", "must be finite and nonzero"));
    }
    let (m, k, om) = (lab.mass, lab.wavenumber, lab.rabi_frequency);
    let params = SimulationParams {
        omega_r: HBAR * k * k / (2.0 * m * om),
        delta_omega: (lab.eps_e - lab.eps_g - lab.laser_frequency - lab.laser_phase_rate) / om,
        kappa: k * lab.acceleration_coefficient / (2.0 * m * om * om),
        epsilon: 0.0,
        eps_e: lab.eps_e / om,
        eps_g: lab.eps_g / om,
    };
    params.validate()?;
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rb87() -> LabParams {
        LabParams {
            mass: 1.4192e-25,
            wavenumber: 8.055e6,
            rabi_frequency: 2.0 * std::f64::consts::PI * 25e3,
            acceleration_coefficient: 1.4192e-25 * 9.81,
            laser_frequency: 0.0,
            eps_e: 0.0,
            eps_g: 0.0,
            laser_phase0: 0.0,
            laser_phase_rate: 0.0,
        }
    }

    #[test]
    fn rubidium_recoil() {
        let p = to_dimensionless(&rb87()).unwrap();
        assert!((p.omega_r - 0.1534).abs() < 2e-4, "{}", p.omega_r);
    }

    #[test]
    fn rabi_doubling() {
        let mut lab = rb87();
        lab.eps_e = 3e4;
        lab.laser_frequency = 1e4;
        let p1 = to_dimensionless(&lab).unwrap();
        lab.rabi_frequency *= 2.0;
        let p2 = to_dimensionless(&lab).unwrap();
        assert!((p2.omega_r - p1.omega_r / 2.0).abs() < 1e-15 * p1.omega_r);
        assert!((p2.delta_omega - p1.delta_omega / 2.0).abs() < 1e-15 * p1.delta_omega.abs());
        assert!((p2.kappa - p1.kappa / 4.0).abs() < 1e-15 * p1.kappa);
    }

    #[test]
    fn zero_force_gives_zero_kappa() {
        let mut lab = rb87();
        lab.acceleration_coefficient = 0.0;
        assert_eq!(to_dimensionless(&lab).unwrap().kappa, 0.0);
    }

    #[test]
    fn rejects_bad_lab_params() {
        let mut lab = rb87();
        lab.rabi_frequency = 0.0;
        assert!(to_dimensionless(&lab).is_err());
        let mut lab = rb87();
        lab.mass = -1.0;
        assert!(to_dimensionless(&lab).is_err());
    }
}
