//! Fast built-in verification: displacement identities, special-function
//! identities on seeded random samples, kernel normalization and propagator
//! unitarity.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rabikit_specfun::{hermite_h, kummer_1f1};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::{free_propagator_elements, LinearPropagator};
use crate::detuning::effective_rabi;
use crate::grid::MomentumGrid;
use crate::params::SimulationParams;
use crate::perturb::impulse_response;
use crate::resonance::{check_displacement_algebra, resonant_pair};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// Worst observed deviation (relative where the check says so).
    pub worst: f64,
    pub tol: f64,
    pub samples: usize,
    pub failures: usize,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.worst <= self.tol
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

struct Acc {
    check: Check,
}

impl Acc {
    fn new(name: &'static str, tol: f64) -> Self {
        Acc { check: Check { name, worst: 0.0, tol, samples: 0, failures: 0 } }
    }

    fn push(&mut self, dev: Option<f64>) {
        self.check.samples += 1;
        match dev {
            Some(d) if d.is_finite() => self.check.worst = self.check.worst.max(d),
            _ => self.check.failures += 1,
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn m(a: Complex64, b: Complex64, z: Complex64) -> Option<Complex64> {
    kummer_1f1(a, b, z).ok().map(|r| r.value)
}

fn displacement(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut alg = Acc::new("displacement identities", 1e-14);
    let mut pair = Acc::new("resonant pair split 2 omega_r", 1e-14);
    for _ in 0..100 {
        let p = SimulationParams::new(rng.random_range(0.0..3.0), rng.random_range(-5.0..5.0));
        let g = MomentumGrid::new(1 << rng.random_range(4..10u32), -10.0, 10.0).expect("valid grid");
        alg.push(Some(check_displacement_algebra(&g, &p).max()));
        let (lo, hi) = resonant_pair(&p);
        pair.push(Some(((hi - lo) - 2.0 * p.omega_r).abs()));
    }
    vec![alg.check, pair.check]
}

fn special_functions(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut zero = Acc::new("1F1 at z = 0", 0.0);
    let mut expo = Acc::new("1F1(a; a; z) = exp(z)", 1e-8);
    let mut kummer = Acc::new("Kummer transformation", 1e-8);
    let mut contig = Acc::new("contiguous relation", 1e-8);
    let mut herm = Acc::new("Hermite integer degree", 1e-12);
    for _ in 0..1000 {
        let a = c(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let b = c(rng.random_range(0.2..4.0), rng.random_range(-3.0..3.0));
        let z = Complex64::from_polar(rng.random_range(0.0..20.0), rng.random_range(0.0..TAU));

        zero.push(m(a, b, c(0.0, 0.0)).map(|v| (v - 1.0).norm()));

        let ze = Complex64::from_polar(rng.random_range(0.0..40.0), rng.random_range(0.0..TAU));
        expo.push(m(a, a, ze).map(|v| (v - ze.exp()).norm() / ze.exp().norm()));

        kummer.push(m(a, b, z).zip(m(b - a, b, -z)).map(|(l, r)| {
            let r = z.exp() * r;
            (l - r).norm() / (1.0 + l.norm())
        }));

        contig.push(m(a, b, z).zip(m(a - 1.0, b, z)).zip(m(a, b + 1.0, z)).map(|((v, vm), vp)| {
            let t = [b * v, b * vm, z * vp];
            (t[0] - t[1] - t[2]).norm() / t.iter().map(|x| x.norm()).sum::<f64>()
        }));

        let n = rng.random_range(0..=20usize);
        let x: f64 = rng.random_range(-5.0..5.0);
        let (mut h0, mut h1) = (1.0f64, 2.0 * x);
        let exact = if n == 0 {
            1.0
        } else {
            for k in 1..n {
                let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
                h0 = h1;
                h1 = h2;
            }
            h1
        };
        herm.push(hermite_h(c(n as f64, 0.0), c(x, 0.0)).ok().map(|h| (h.value.re - exact).abs() / exact.abs().max(1.0)));
    }
    vec![zero.check, expo.check, kummer.check, contig.check, herm.check]
}

fn kernel_and_unitarity() -> Vec<Check> {
    let mut imp = Acc::new("Green's kernel impulse response", 1e-6);
    for d in [-2.0, 0.0, 0.7, 3.0] {
        let (val, want) = impulse_response(d, 1.0 / effective_rabi(d), 1.0, 2.0, 0.5, 1e-3);
        imp.push(Some((val - want).norm()));
    }

    let g = MomentumGrid::new(256, -8.0, 8.0).expect("valid grid");
    let mut free = Acc::new("free column unitarity", 1e-10);
    let p = SimulationParams::new(1.0, 1.0);
    for t in [0.5, 2.0, TAU] {
        free.push(Some(free_propagator_elements(&g, &p, t).column_unitarity_defect()));
    }
    let mut lin = Acc::new("linear column unitarity", 1e-6);
    let pl = SimulationParams::new(0.1, 0.0).with_kappa(1.0);
    match LinearPropagator::new(&g, &pl) {
        Ok(prop) => {
            for t in [0.5, 1.5, 3.0] {
                lin.push(prop.elements(t).ok().map(|e| e.column_unitarity_defect()));
            }
        }
        Err(_) => lin.push(None),
    }
    vec![imp.check, free.check, lin.check]
}

/// Runs every check with a fixed seed.
pub fn run_selftest() -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checks = displacement(&mut rng);
    checks.extend(special_functions(&mut rng));
    checks.extend(kernel_and_unitarity());
    SelftestReport { checks }
}
