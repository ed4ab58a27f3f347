use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{ScenarioConfig, SolverSpec};
use crate::analytic::{evolve_free_with_phase, free_propagator_elements, lab_frame_to_interaction, LinearPropagator};
use crate::conventions;
use crate::detuning::{resonant_momentum, DetuningBranch};
use crate::elements::PropagatorElements;
use crate::error::Result;
use crate::grid::MomentumGrid;
use crate::oracle::{default_step, split_step_sample, OracleConfig};
use crate::perturb::perturbative_solve;
use crate::phase::{chirp_for_linear, sample_phase_noise, NoisePath, PhaseFunction};
use crate::state::{Frame, SpinorState};

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub phi0: f64,
    pub rate: f64,
    pub chirp: f64,
    pub noise_seed: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FileRecord {
    pub states: Vec<String>,
    pub elements: Vec<String>,
    pub populations: String,
    pub noise_path: Option<String>,
}

/// Everything needed to regenerate a run's files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub manifest_version: u32,
    pub crate_version: String,
    /// Configuration with every default filled in.
    pub config: ScenarioConfig,
    pub solver: String,
    pub frame: Frame,
    pub taus: Vec<f64>,
    pub phase: PhaseRecord,
    pub conventions: BTreeMap<String, String>,
    pub files: FileRecord,
}

/// A run as written to (or read back from) its output directory.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub dir: PathBuf,
    pub manifest: Manifest,
    pub states: Vec<SpinorState>,
}

impl RunOutput {
    pub fn grid(&self) -> &MomentumGrid {
        &self.states[0].grid
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.17e}")
}

fn write_state(path: &Path, s: &SpinorState) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["nu", "re_psi_e", "im_psi_e", "re_psi_g", "im_psi_g"])?;
    for i in 0..s.grid.n() {
        let (e, g) = (s.psi_e[i], s.psi_g[i]);
        w.write_record([fmt(s.grid.nu(i)), fmt(e.re), fmt(e.im), fmt(g.re), fmt(g.im)])?;
    }
    w.flush()?;
    Ok(())
}

fn write_elements(path: &Path, el: &PropagatorElements) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "nu", "abs_u_ee", "arg_u_ee", "abs_u_eg", "arg_u_eg", "abs_u_ge", "arg_u_ge", "abs_u_gg", "arg_u_gg",
    ])?;
    for i in 0..el.grid.n() {
        let mut rec = vec![fmt(el.grid.nu(i))];
        for u in [el.u_ee[i], el.u_eg[i], el.u_ge[i], el.u_gg[i]] {
            rec.push(fmt(u.norm()));
            rec.push(fmt(u.arg()));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn write_populations(path: &Path, states: &[SpinorState]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["tau", "p_e", "p_g", "norm"])?;
    for s in states {
        let (pe, pg) = s.populations();
        w.write_record([fmt(s.tau), fmt(pe), fmt(pg), fmt(pe + pg)])?;
    }
    w.flush()?;
    Ok(())
}

struct Solved {
    states: Vec<SpinorState>,
    elements: Vec<PropagatorElements>,
}

fn phase_function(cfg: &ScenarioConfig, noise: Option<NoisePath>) -> PhaseFunction {
    let p = &cfg.params;
    let mut pf = if cfg.phase.chirp {
        chirp_for_linear(p, resonant_momentum(DetuningBranch::Minus, p.delta_omega, p.omega_r))
    } else {
        PhaseFunction::from_params(p)
    };
    if let Some(path) = noise {
        pf = pf.with_noise(path);
    }
    pf
}

fn solve(cfg: &ScenarioConfig, grid: &MomentumGrid, taus: &[f64], phase: &PhaseFunction) -> Result<(Solved, Option<f64>)> {
    let p = &cfg.params;
    let state0 = SpinorState::gaussian(grid, cfg.initial.center, cfg.initial.sigma, cfg.initial.level);
    let potential = cfg.resolved_potential();
    let mut oracle_step = None;
    let solved = match cfg.solver {
        SolverSpec::Free => {
            if phase.noise.is_some() {
                let states = evolve_free_with_phase(&state0, p.omega_r, phase, taus)?;
                Solved { states, elements: Vec::new() }
            } else {
                let elements: Vec<_> = taus.iter().map(|&t| free_propagator_elements(grid, p, t)).collect();
                let states = elements.iter().map(|e| e.apply(&state0)).collect::<Result<_>>()?;
                Solved { states, elements }
            }
        }
        SolverSpec::Linear => {
            let prop = LinearPropagator::new(grid, p)?;
            let elements: Vec<_> = taus.iter().map(|&t| prop.elements(t)).collect::<Result<_>>()?;
            let states = elements.iter().map(|e| e.apply(&state0)).collect::<Result<_>>()?;
            Solved { states, elements }
        }
        SolverSpec::Perturbative { order, refine } => {
            let r = refine.unwrap_or(1);
            let h = if taus.len() > 1 { taus[1] / r as f64 } else { 0.0 };
            let fine: Vec<f64> = (0..=(taus.len() - 1) * r).map(|j| j as f64 * h).collect();
            let series = perturbative_solve(&state0, p, &fine, order)?;
            let states = (0..taus.len())
                .map(|j| {
                    let mut s = series.resummed[j * r].clone();
                    s.tau = taus[j];
                    s
                })
                .collect();
            Solved { states, elements: Vec::new() }
        }
        SolverSpec::Oracle { d_tau } => {
            let h = d_tau.unwrap_or_else(|| default_step(grid, p.omega_r, phase));
            oracle_step = Some(h);
            let ocfg = OracleConfig::new(h, potential.clone(), phase.clone());
            let lab = split_step_sample(&state0, &ocfg, p, taus, true)?;
            let states = lab
                .iter()
                .zip(taus)
                .map(|(s, &t)| lab_frame_to_interaction(s, p, t, &potential))
                .collect::<Result<_>>()?;
            Solved { states, elements: Vec::new() }
        }
    };
    Ok((solved, oracle_step))
}

/// Validates `cfg`, runs its solver and writes the output bundle.
///
/// `out` overrides `cfg.out_dir`. All states are written in the interaction picture.
pub fn run_scenario(cfg: &ScenarioConfig, out: Option<&Path>) -> Result<RunOutput> {
    cfg.validate()?;
    let dir = match (out, &cfg.out_dir) {
        (Some(d), _) => d.to_path_buf(),
        (None, Some(d)) => d.clone(),
        (None, None) => return Err(crate::error::invalid("out_dir", "no output directory given")),
    };
    let grid = MomentumGrid::from_spec(&cfg.grid)?;
    let taus = cfg.tau.values();

    let noise = match &cfg.phase.noise {
        Some(np) => Some(sample_phase_noise(np, cfg.tau.end.max(np.d_tau))?),
        None => None,
    };
    let phase = phase_function(cfg, noise.clone());
    let (solved, oracle_step) = solve(cfg, &grid, &taus, &phase)?;

    fs::create_dir_all(&dir)?;
    let mut files = FileRecord { populations: "populations.csv".into(), ..Default::default() };
    for (j, s) in solved.states.iter().enumerate() {
        let name = format!("state_{j:04}.csv");
        write_state(&dir.join(&name), s)?;
        files.states.push(name);
    }
    if cfg.write_elements {
        for (j, e) in solved.elements.iter().enumerate() {
            let name = format!("elements_{j:04}.csv");
            write_elements(&dir.join(&name), e)?;
            files.elements.push(name);
        }
    }
    write_populations(&dir.join(&files.populations), &solved.states)?;
    if let Some(path) = &noise {
        let name = "noise_path.csv".to_string();
        path.write_csv(&dir.join(&name))?;
        files.noise_path = Some(name);
    }

    let mut resolved = cfg.clone();
    resolved.out_dir = Some(dir.clone());
    if let (SolverSpec::Oracle { .. }, Some(h)) = (resolved.solver, oracle_step) {
        resolved.solver = SolverSpec::Oracle { d_tau: Some(h) };
    }
    if resolved.potential.is_none() {
        resolved.potential = Some(cfg.resolved_potential());
    }
    let manifest = Manifest {
        manifest_version: MANIFEST_VERSION,
        crate_version: env!("CARGO_PKG_VERSION").into(),
        config: resolved,
        solver: cfg.solver.name().into(),
        frame: Frame::Interaction,
        taus,
        phase: PhaseRecord {
            phi0: phase.phi0,
            rate: phase.rate,
            chirp: phase.chirp,
            noise_seed: cfg.phase.noise.map(|n| n.seed),
        },
        conventions: conventions::as_map(),
        files,
    };
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;
    Ok(RunOutput { dir, manifest, states: solved.states })
}
