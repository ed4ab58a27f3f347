//! Simulation toolkit for laser-driven two-level atoms with quantized motion.
//!
//! The driven Hamiltonian `H = [[T+V, D],[D†, T+V]]` with `T = ν²/(4ω_r)` and
//! `D = e^{i(2ω_r ζ + φ(τ))}` is treated in momentum space. Every matrix element of
//! the interaction-picture propagator obeys a scalar damped-oscillator equation per
//! momentum, which gives
//!
//! * closed-form propagators for zero and linear potentials ([`analytic`]),
//! * an order-by-order Green's-function solver for weak potentials ([`perturb`]),
//! * a split-step spectral integrator used as reference ([`oracle`]),
//! * driving-phase models with chirps and phase noise ([`phase`]),
//! * the displacement/detuning identities as checkable API ([`resonance`]),
//! * a JSON-configured scenario runner that writes CSV ([`scenario`]).
//!
//! Sign conventions are collected in [`conventions`].

pub mod analytic;
pub mod conventions;
pub mod detuning;
pub mod elements;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod params;
pub mod perturb;
pub mod phase;
pub mod resonance;
pub mod scenario;
pub mod selftest;
pub mod state;

pub use detuning::{detuning, detuning_time_dependent, effective_rabi, resonant_momentum, DetuningBranch};
pub use elements::{OffDiagonalIndexing, PropagatorElements};
pub use error::{RabiError, Result};
pub use grid::{GridSpec, MomentumGrid};
pub use params::{to_dimensionless, LabParams, SimulationParams};
pub use state::{Frame, Level, SpinorState};

pub use num_complex::Complex64;
