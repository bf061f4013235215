//! End-to-end pipeline: load inputs, build relevance, solve, write artifacts.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::baselines::trivial_schedule;
use crate::error::{Error, Result};
use crate::io::{
    self, load_features, load_inventory, load_program, load_rel, ValenceScale, REPORT_FORMAT,
};
use crate::model::{AdInventory, ProgramSpec, RelevanceMatrix, RewardParams, Schedule};
use crate::profile::{build_profile, total_variation, VpsProfile};
use crate::relevance::{build_relevance_matrix, Pairing};
use crate::solvers::{solve, SolveOptions, SolveReport, SolverKind, DEFAULT_CANDIDATE_CAP};
use crate::validate::{validate_schedule, Mode};

pub const SCHEDULE_FILE: &str = "schedule.json";
pub const REPORT_FILE: &str = "report.json";
pub const PROFILE_FILE: &str = "profile.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SolverChoice {
    Brute,
    Bnb,
    Lp,
    Trivial,
}

impl SolverChoice {
    pub fn kind(self) -> Option<SolverKind> {
        match self {
            SolverChoice::Brute => Some(SolverKind::BruteForce),
            SolverChoice::Bnb => Some(SolverKind::BranchAndBound),
            SolverChoice::Lp => Some(SolverKind::LpRelax),
            SolverChoice::Trivial => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub program: PathBuf,
    pub inventory: PathBuf,
    pub features_dir: Option<PathBuf>,
    pub rel_file: Option<PathBuf>,
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub solver: SolverChoice,
    pub pairing: Pairing,
    pub scale: ValenceScale,
    pub seed: u64,
    pub out: PathBuf,
    pub cap: u128,
    pub threads: Option<usize>,
}

impl RunConfig {
    /// Defaults: K=8, alpha=beta=0.5, branch-and-bound, aligned pairing,
    /// 0-100 valences, seed 0, output to `out/`.
    pub fn new(program: impl Into<PathBuf>, inventory: impl Into<PathBuf>) -> Self {
        Self {
            program: program.into(),
            inventory: inventory.into(),
            features_dir: None,
            rel_file: None,
            k: 8,
            alpha: 0.5,
            beta: 0.5,
            solver: SolverChoice::Bnb,
            pairing: Pairing::Aligned,
            scale: ValenceScale::Hundred,
            seed: 0,
            out: PathBuf::from("out"),
            cap: DEFAULT_CANDIDATE_CAP,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<RewardParams> {
        let params = RewardParams::new(self.alpha, self.beta, self.k)?;
        for (what, path) in [("program", &self.program), ("inventory", &self.inventory)] {
            if !path.is_file() {
                return Err(Error::Config(format!(
                    "{what} file {} does not exist",
                    path.display()
                )));
            }
        }
        if let Some(rel) = &self.rel_file {
            if !rel.is_file() {
                return Err(Error::Config(format!("rel file {} does not exist", rel.display())));
            }
        }
        if let Some(dir) = &self.features_dir {
            if !dir.is_dir() {
                return Err(Error::Config(format!(
                    "features directory {} does not exist",
                    dir.display()
                )));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::Config("--threads must be at least 1".into()));
        }
        Ok(params)
    }
}

/// Contents of `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format: String,
    pub solver: SolverChoice,
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    /// Set for the trivial baseline only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Solver statistics; absent for the trivial baseline.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveReport>,
    pub profile_total_variation: f64,
    pub program_total_variation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub schedule: Schedule,
    pub profile: VpsProfile,
    pub report: RunReport,
    pub schedule_path: PathBuf,
    pub report_path: PathBuf,
    pub profile_path: PathBuf,
}

/// Relevance from a grid file, from features, or all-zero when beta is 0 and
/// neither is given.
pub fn resolve_relevance(
    config: &RunConfig,
    program: &ProgramSpec,
    inventory: &AdInventory,
) -> Result<RelevanceMatrix> {
    if let Some(path) = &config.rel_file {
        let rel = load_rel(path)?;
        rel.check_dims(program, inventory)?;
        return Ok(rel);
    }
    match &config.features_dir {
        Some(dir) if config.beta > 0.0 => {
            let scenes = load_features(dir, program.scenes().iter().map(|s| s.id.as_str()))?;
            let ads = load_features(dir, inventory.ads().iter().map(|a| a.id()))?;
            build_relevance_matrix(program, inventory, &scenes, &ads, config.pairing)
        }
        _ if config.beta > 0.0 => Err(Error::Config(
            "beta > 0 needs relevance: pass --rel-file or --features".into(),
        )),
        _ => RelevanceMatrix::constant(program.scene_count(), inventory.len(), 0.0),
    }
}

pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let params = config.validate()?;
    let program = load_program(&config.program, config.scale)?;
    let inventory = load_inventory(&config.inventory, config.scale)?;

    let (schedule, solve_report) = match config.solver.kind() {
        Some(kind) => {
            let rel = resolve_relevance(config, &program, &inventory)?;
            let options = SolveOptions {
                threads: config.threads,
                candidate_cap: config.cap,
            };
            let report = solve(kind, &program, &inventory, &rel, &params, &options)?;
            (report.schedule.clone(), Some(report))
        }
        None => {
            let s = trivial_schedule(&program, &inventory, config.k, config.seed)?;
            validate_schedule(&s, &program, &inventory, &params, Mode::Baseline)
                .map_err(|v| Error::Invariant(format!("trivial schedule invalid: {v}")))?;
            (s, None)
        }
    };

    let profile = build_profile(&schedule, &program, &inventory)?;
    let bare = build_profile(&Schedule::empty(), &program, &inventory)?;
    let report = RunReport {
        format: REPORT_FORMAT.into(),
        solver: config.solver,
        k: params.k(),
        alpha: params.alpha(),
        beta: params.beta(),
        seed: (config.solver == SolverChoice::Trivial).then_some(config.seed),
        solve: solve_report,
        profile_total_variation: total_variation(&profile)?,
        program_total_variation: total_variation(&bare)?,
    };

    fs::create_dir_all(&config.out).map_err(|source| Error::Io {
        path: config.out.clone(),
        source,
    })?;
    let schedule_path = config.out.join(SCHEDULE_FILE);
    let report_path = config.out.join(REPORT_FILE);
    let profile_path = config.out.join(PROFILE_FILE);
    io::write_text(&schedule_path, &io::schedule_to_string(&schedule))?;
    io::write_text(&report_path, &io::json(&report))?;
    io::write_text(&profile_path, &io::profile_to_string(&profile))?;

    Ok(RunOutcome {
        schedule: schedule.sorted(),
        profile,
        report,
        schedule_path,
        report_path,
        profile_path,
    })
}

pub fn load_report(path: &Path) -> Result<RunReport> {
    let report: RunReport = io::from_json(path, &io::read_text(path)?)?;
    if report.format != REPORT_FORMAT {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            message: format!("field `format`: expected `{REPORT_FORMAT}`"),
        });
    }
    Ok(report)
}
