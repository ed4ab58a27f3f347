use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use super::run::{Manifest, RunOutput};
use crate::error::{RabiError, Result};
use crate::grid::MomentumGrid;
use crate::state::SpinorState;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleMetrics {
    pub tau: f64,
    pub max_pointwise: f64,
    pub l2: f64,
    /// `p_e(a) − p_e(b)`.
    pub d_pop_e: f64,
    pub d_pop_g: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareMetrics {
    pub samples: Vec<SampleMetrics>,
    pub max_pointwise: f64,
    pub max_l2: f64,
    pub max_population_diff: f64,
}

impl CompareMetrics {
    pub fn within(&self, tol: f64) -> bool {
        self.max_pointwise <= tol
    }
}

fn parse(field: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| RabiError::Incomparable(format!("unparsable number `{field}`")))
}

fn read_state(path: &Path, grid: &MomentumGrid, tau: f64, frame: crate::state::Frame) -> Result<SpinorState> {
    let mut r = csv::Reader::from_path(path)?;
    let (mut e, mut g) = (Vec::new(), Vec::new());
    for rec in r.records() {
        let rec = rec?;
        if rec.len() != 5 {
            return Err(RabiError::Incomparable(format!("{}: expected 5 columns", path.display())));
        }
        e.push(Complex64::new(parse(&rec[1])?, parse(&rec[2])?));
        g.push(Complex64::new(parse(&rec[3])?, parse(&rec[4])?));
    }
    SpinorState::new(grid.clone(), e, g, frame, tau)
}

/// Reads a bundle written by [`super::run_scenario`].
pub fn load_bundle(dir: &Path) -> Result<RunOutput> {
    let manifest: Manifest = serde_json::from_str(&fs::read_to_string(dir.join("manifest.json"))?)?;
    let grid = MomentumGrid::from_spec(&manifest.config.grid)?;
    if manifest.files.states.len() != manifest.taus.len() {
        return Err(RabiError::Incomparable(format!("{}: state files do not match tau samples", dir.display())));
    }
    let states = manifest
        .files
        .states
        .iter()
        .zip(&manifest.taus)
        .map(|(f, &t)| read_state(&dir.join(f), &grid, t, manifest.frame))
        .collect::<Result<Vec<_>>>()?;
    Ok(RunOutput { dir: dir.to_path_buf(), manifest, states })
}

/// Amplitude and population differences per τ sample.
pub fn compare_solutions(a: &RunOutput, b: &RunOutput) -> Result<CompareMetrics> {
    let (ga, gb) = (a.manifest.config.grid, b.manifest.config.grid);
    if ga != gb {
        return Err(RabiError::Incomparable(format!("grids differ: {ga:?} vs {gb:?}")));
    }
    if a.manifest.frame != b.manifest.frame {
        return Err(RabiError::Incomparable("runs are stored in different frames".into()));
    }
    if a.states.len() != b.states.len() {
        return Err(RabiError::Incomparable(format!("{} vs {} tau samples", a.states.len(), b.states.len())));
    }
    let mut samples = Vec::with_capacity(a.states.len());
    for (sa, sb) in a.states.iter().zip(&b.states) {
        if (sa.tau - sb.tau).abs() > 1e-12 * sa.tau.abs().max(1.0) {
            return Err(RabiError::Incomparable(format!("tau samples differ: {} vs {}", sa.tau, sb.tau)));
        }
        let (pea, pga) = sa.populations();
        let (peb, pgb) = sb.populations();
        samples.push(SampleMetrics {
            tau: sa.tau,
            max_pointwise: sa.max_abs_diff(sb),
            l2: sa.l2_diff(sb),
            d_pop_e: pea - peb,
            d_pop_g: pga - pgb,
        });
    }
    let fold = |f: fn(&SampleMetrics) -> f64| samples.iter().map(f).fold(0.0, f64::max);
    Ok(CompareMetrics {
        max_pointwise: fold(|s| s.max_pointwise),
        max_l2: fold(|s| s.l2),
        max_population_diff: fold(|s| s.d_pop_e.abs().max(s.d_pop_g.abs())),
        samples,
    })
}

/// [`compare_solutions`] on two output directories.
pub fn compare_dirs(a: &Path, b: &Path) -> Result<CompareMetrics> {
    compare_solutions(&load_bundle(a)?, &load_bundle(b)?)
}
