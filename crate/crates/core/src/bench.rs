//! Benchmark harness comparing brute force with branch-and-bound on seeded
//! random instances.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::random_instance;
use crate::model::{RewardParams, TOLERANCE};
use crate::solvers::{
    count_candidates, solve_branch_and_bound, solve_brute_force, SolveOptions,
};

/// One grid cell: `P` ads, `M` slots, `K` ads to embed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchCell {
    pub ads: usize,
    pub slots: usize,
    pub k: usize,
}

impl FromStr for BenchCell {
    type Err = Error;

    /// `PxMxK`, e.g. `20x11x8`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split('x')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Config(format!("bad grid cell `{s}`, expected PxMxK")))?;
        match parts[..] {
            [ads, slots, k] => Ok(Self { ads, slots, k }),
            _ => Err(Error::Config(format!("bad grid cell `{s}`, expected PxMxK"))),
        }
    }
}

/// Parses a comma-separated grid such as `6x4x2,20x11x8`. Empty input is an
/// empty grid.
pub fn parse_grid(s: &str) -> Result<Vec<BenchCell>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(BenchCell::from_str)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverRun {
    pub reward: f64,
    pub candidates_evaluated: u64,
    pub nodes_explored: u64,
    pub nodes_pruned: u64,
    pub wall_time_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub ads: usize,
    pub slots: usize,
    pub k: usize,
    pub seed: u64,
    pub brute_force_candidates: String,
    /// `None` when skipped by the cap or on error.
    pub brute_force: Option<SolverRun>,
    pub brute_force_skipped: bool,
    pub branch_and_bound: Option<SolverRun>,
    /// Both solvers ran and their rewards agree to 1e-9.
    pub rewards_agree: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchOptions {
    pub seed: u64,
    pub alpha: f64,
    pub cap: u128,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            alpha: 0.5,
            cap: crate::solvers::DEFAULT_CANDIDATE_CAP,
        }
    }
}

fn bench_cell(cell: BenchCell, seed: u64, opts: &BenchOptions) -> BenchRow {
    let mut row = BenchRow {
        ads: cell.ads,
        slots: cell.slots,
        k: cell.k,
        seed,
        brute_force_candidates: "0".into(),
        brute_force: None,
        brute_force_skipped: false,
        branch_and_bound: None,
        rewards_agree: None,
        error: None,
    };
    if cell.ads == 0 || cell.slots == 0 {
        row.error = Some("P and M must be positive".into());
        return row;
    }
    let params = match RewardParams::with_alpha(opts.alpha, cell.k) {
        Ok(p) => p,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let inst = random_instance(cell.ads, cell.slots, seed);
    let candidates = count_candidates(&inst.inventory, cell.slots, cell.k);
    row.brute_force_candidates = candidates.to_string();

    let bnb = solve_branch_and_bound(&inst.program, &inst.inventory, &inst.rel, &params);
    match bnb {
        Ok(r) => {
            row.branch_and_bound = Some(SolverRun {
                reward: r.reward,
                candidates_evaluated: r.candidates_evaluated,
                nodes_explored: r.nodes_explored,
                nodes_pruned: r.nodes_pruned,
                wall_time_secs: r.wall_time.as_secs_f64(),
            })
        }
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    }

    if candidates > opts.cap {
        row.brute_force_skipped = true;
        return row;
    }
    let bf_opts = SolveOptions {
        threads: None,
        candidate_cap: opts.cap,
    };
    match solve_brute_force(&inst.program, &inst.inventory, &inst.rel, &params, &bf_opts) {
        Ok(r) => {
            let bnb_reward = row.branch_and_bound.as_ref().map(|b| b.reward);
            row.rewards_agree = bnb_reward.map(|b| (b - r.reward).abs() <= TOLERANCE);
            row.brute_force = Some(SolverRun {
                reward: r.reward,
                candidates_evaluated: r.candidates_evaluated,
                nodes_explored: 0,
                nodes_pruned: 0,
                wall_time_secs: r.wall_time.as_secs_f64(),
            });
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Runs every cell. Cell `i` uses instance seed `opts.seed + i`.
pub fn benchmark(grid: &[BenchCell], opts: &BenchOptions) -> Vec<BenchRow> {
    grid.iter()
        .enumerate()
        .map(|(i, &cell)| bench_cell(cell, opts.seed.wrapping_add(i as u64), opts))
        .collect()
}
