use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::grid::GridSpec;
use crate::oracle::PotentialSpec;
use crate::params::SimulationParams;
use crate::phase::NoiseParams;
use crate::state::Level;

/// Gaussian initial packet in one internal level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    pub center: f64,
    pub sigma: f64,
    pub level: Level,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SolverSpec {
    Free,
    Linear,
    Perturbative {
        order: usize,
        /// Internal τ steps per output interval.
        #[serde(default)]
        refine: Option<usize>,
    },
    Oracle {
        /// Largest step; defaults to `1e-3·2π/μ_max`.
        #[serde(default)]
        d_tau: Option<f64>,
    },
}

impl SolverSpec {
    pub fn name(&self) -> &'static str {
        match self {
            SolverSpec::Free => "free",
            SolverSpec::Linear => "linear",
            SolverSpec::Perturbative { .. } => "perturbative",
            SolverSpec::Oracle { .. } => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseSpec {
    /// Adds `κτ²` so the ground resonance `−Δω − ω_r` stays put in a linear potential.
    #[serde(default)]
    pub chirp: bool,
    #[serde(default)]
    pub noise: Option<NoiseParams>,
}

/// Samples `τ_j = j·end/(samples−1)`, or the single time `end` if `samples` is 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauSpec {
    pub end: f64,
    pub samples: usize,
}

impl TauSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.samples <= 1 {
            return vec![self.end];
        }
        let h = self.end / (self.samples - 1) as f64;
        (0..self.samples).map(|j| j as f64 * h).collect()
    }
}

fn default_true() -> bool {
    true
}

/// Full description of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub params: SimulationParams,
    #[serde(default)]
    pub grid: GridSpec,
    pub initial: InitialSpec,
    pub solver: SolverSpec,
    /// Overrides the potential implied by `params.kappa`/`params.epsilon`.
    #[serde(default)]
    pub potential: Option<PotentialSpec>,
    #[serde(default)]
    pub phase: PhaseSpec,
    pub tau: TauSpec,
    /// Write `|u|`, `arg u` grids for solvers that build propagator elements.
    #[serde(default = "default_true")]
    pub write_elements: bool,
    /// Output directory; the command line takes precedence.
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldViolation {
    pub field: String,
    pub reason: String,
}

/// Every problem found in a configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationError {
    pub violations: Vec<FieldViolation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid scenario configuration:")?;
        for v in &self.violations {
            write!(f, "\n  {}: {}", v.field, v.reason)?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationError {}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Reads a configuration file, or the configuration echoed in a run manifest.
    pub fn load(path: &Path) -> crate::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        if let Some(obj) = value.as_object() {
            if obj.contains_key("manifest_version") {
                if let Some(cfg) = obj.get("config") {
                    return Ok(serde_json::from_value(cfg.clone())?);
                }
            }
        }
        Ok(serde_json::from_value(value)?)
    }

    /// Potential used by the run.
    pub fn resolved_potential(&self) -> PotentialSpec {
        if let Some(p) = &self.potential {
            return p.clone();
        }
        match (self.params.kappa != 0.0, self.params.epsilon != 0.0) {
            (true, false) => PotentialSpec::Linear { kappa: self.params.kappa },
            (false, true) => PotentialSpec::Quadratic { epsilon: self.params.epsilon },
            _ => PotentialSpec::None,
        }
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        let mut v = Vec::new();
        let mut bad = |field: &str, reason: String| v.push(FieldViolation { field: field.into(), reason });
        let p = &self.params;

        for (name, x) in [
            ("params.omega_r", p.omega_r),
            ("params.delta_omega", p.delta_omega),
            ("params.kappa", p.kappa),
            ("params.epsilon", p.epsilon),
            ("params.eps_e", p.eps_e),
            ("params.eps_g", p.eps_g),
        ] {
            if !x.is_finite() {
                bad(name, "must be finite".into());
            }
        }
        if !(p.omega_r > 0.0) {
            bad("params.omega_r", "must be > 0".into());
        }
        if p.epsilon < 0.0 {
            bad("params.epsilon", "must be >= 0".into());
        }
        if p.kappa != 0.0 && p.epsilon != 0.0 {
            bad("params", "kappa and epsilon cannot both be nonzero".into());
        }

        let g = &self.grid;
        if g.n < 16 || !g.n.is_power_of_two() {
            bad("grid.n", "must be a power of two >= 16".into());
        }
        if !(g.nu_max > g.nu_min) || !g.nu_min.is_finite() || !g.nu_max.is_finite() {
            bad("grid", "need finite nu_min < nu_max".into());
        }

        let i = &self.initial;
        if !(i.sigma > 0.0) || !i.sigma.is_finite() {
            bad("initial.sigma", "must be > 0".into());
        }
        if !(i.center > g.nu_min && i.center < g.nu_max) {
            bad("initial.center", "must lie inside the grid".into());
        }

        if !(self.tau.end >= 0.0) || !self.tau.end.is_finite() {
            bad("tau.end", "must be finite and >= 0".into());
        }
        if self.tau.samples == 0 {
            bad("tau.samples", "must be >= 1".into());
        }

        let pot = self.resolved_potential();
        if let Some(explicit) = &self.potential {
            let implied_none = p.kappa == 0.0 && p.epsilon == 0.0;
            let consistent = match explicit {
                PotentialSpec::None | PotentialSpec::Tabulated { .. } => implied_none,
                PotentialSpec::Linear { kappa } => *kappa == p.kappa && p.epsilon == 0.0,
                PotentialSpec::Quadratic { epsilon } => *epsilon == p.epsilon && p.kappa == 0.0,
            };
            if !consistent {
                bad("potential", "disagrees with params.kappa/params.epsilon".into());
            }
            if let PotentialSpec::Tabulated { values } = explicit {
                if values.len() != g.n {
                    bad("potential.values", format!("length {} != grid.n {}", values.len(), g.n));
                }
                if values.iter().any(|x| !x.is_finite()) {
                    bad("potential.values", "must be finite".into());
                }
            }
            if let PotentialSpec::Quadratic { epsilon } = explicit {
                if *epsilon < 0.0 {
                    bad("potential.epsilon", "must be >= 0".into());
                }
            }
        }

        if let Some(n) = &self.phase.noise {
            if !(n.s >= 0.0) || !n.s.is_finite() {
                bad("phase.noise.s", "must be finite and >= 0".into());
            }
            if !(n.d_tau > 0.0) || !n.d_tau.is_finite() {
                bad("phase.noise.d_tau", "must be > 0".into());
            }
        }
        if self.phase.chirp && !matches!(pot, PotentialSpec::Linear { .. }) {
            bad("phase.chirp", "the chirp compensates a linear potential; set params.kappa".into());
        }

        match self.solver {
            SolverSpec::Free => {
                if pot != PotentialSpec::None {
                    bad("solver", "free solver requires no potential".into());
                }
            }
            SolverSpec::Linear => {
                if !matches!(pot, PotentialSpec::Linear { .. }) {
                    bad("solver", "linear solver requires a linear potential (params.kappa != 0)".into());
                }
                if self.phase.chirp {
                    bad("phase.chirp", "not supported by the linear solver; use the oracle".into());
                }
                if self.phase.noise.is_some() {
                    bad("phase.noise", "not supported by the linear solver; use the free solver or the oracle".into());
                }
            }
            SolverSpec::Perturbative { order, refine } => {
                match pot {
                    PotentialSpec::Quadratic { .. } => {}
                    PotentialSpec::Tabulated { .. } => {
                        bad("potential", "tabulated potentials have no momentum expansion here; use the oracle".into())
                    }
                    _ => bad("solver", "perturbative solver requires a quadratic potential (params.epsilon > 0)".into()),
                }
                if refine == Some(0) {
                    bad("solver.refine", "must be >= 1".into());
                }
                if order > 64 {
                    bad("solver.order", "must be <= 64".into());
                }
                if self.phase.noise.is_some() {
                    bad("phase.noise", "not supported by the perturbative solver".into());
                }
                if self.tau.samples < 2 {
                    bad("tau.samples", "perturbative solver needs >= 2 samples (uniform grid from 0)".into());
                }
            }
            SolverSpec::Oracle { d_tau } => {
                if let Some(h) = d_tau {
                    if !(h > 0.0) || !h.is_finite() {
                        bad("solver.d_tau", "must be > 0".into());
                    }
                }
            }
        }

        if v.is_empty() {
            Ok(())
        } else {
            Err(ValidationError { violations: v })
        }
    }
}
