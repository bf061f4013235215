//! Solvers for the placement problem.
//!
//! All three take the same inputs and return a [`SolveReport`] whose schedule
//! is strict-mode feasible:
//!
//! * [`solve_brute_force`] scores every balanced subset in every block-respecting
//!   placement. Exact, exponential, and the reference the others are tested against.
//! * [`solve_branch_and_bound`] assigns one ad per block depth-first and prunes with
//!   an admissible bound. Exact.
//! * [`solve_lp_relax`] solves the continuous relaxation, reports its objective as an
//!   upper bound, and rounds greedily block by block. Feasible, not always optimal.

mod assignment;
mod bnb;
mod brute;
mod enumerate;
mod lp_relax;
pub mod simplex;

use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use bnb::solve_branch_and_bound;
pub use brute::{count_candidates, solve_brute_force};
pub use enumerate::{enumerate_balanced_subsets, enumerate_placements};
pub use lp_relax::solve_lp_relax;

use crate::error::{Error, Result};
use crate::model::{slot_blocks, AdInventory, ProgramSpec, RelevanceMatrix, RewardParams, Schedule};
use crate::reward::{entry_contribution, reward};
use crate::validate::{validate_schedule, Mode};

/// Default refusal threshold for brute force, in scored candidates.
pub const DEFAULT_CANDIDATE_CAP: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    BruteForce,
    BranchAndBound,
    LpRelax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Worker threads for parallel scoring; `None` uses the global pool.
    pub threads: Option<usize>,
    pub candidate_cap: u128,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            threads: None,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub solver: SolverKind,
    pub schedule: Schedule,
    pub reward: f64,
    /// Complete schedules scored.
    pub candidates_evaluated: u64,
    /// Search-tree nodes expanded (branch-and-bound only).
    pub nodes_explored: u64,
    /// Subtrees cut by the bound (branch-and-bound only).
    pub nodes_pruned: u64,
    /// Relaxation objective (LP only).
    pub upper_bound: Option<f64>,
    #[serde(with = "duration_secs")]
    pub wall_time: Duration,
}

impl SolveReport {
    /// Copy with the wall time zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time: Duration::ZERO,
            ..self.clone()
        }
    }
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let secs = f64::deserialize(d)?;
        Duration::try_from_secs_f64(secs).map_err(serde::de::Error::custom)
    }
}

/// Borrowed instance plus the per-(slot, ad) contribution table every solver uses.
pub(crate) struct Instance<'a> {
    pub program: &'a ProgramSpec,
    pub inventory: &'a AdInventory,
    pub rel: &'a RelevanceMatrix,
    pub params: &'a RewardParams,
    /// Inclusive 1-based slot ranges, one per block.
    pub blocks: Vec<(usize, usize)>,
    /// `contrib[(slot - 1) * P + ad]`.
    contrib: Vec<f64>,
}

impl<'a> Instance<'a> {
    pub fn new(
        program: &'a ProgramSpec,
        inventory: &'a AdInventory,
        rel: &'a RelevanceMatrix,
        params: &'a RewardParams,
    ) -> Result<Self> {
        rel.check_dims(program, inventory)?;
        let (k, m) = (params.k(), program.slot_count());
        if !k.is_multiple_of(2) {
            return Err(Error::OddK { k });
        }
        if k > m {
            return Err(Error::KExceedsSlots { k, slots: m });
        }
        inventory.check_balanced_supply(k)?;

        let p = inventory.len();
        let mut contrib = Vec::with_capacity(m * p);
        for slot in 1..=m {
            for ad in 0..p {
                contrib.push(entry_contribution(program, inventory, rel, params, slot, ad));
            }
        }
        let blocks = slot_blocks(m, k)
            .into_iter()
            .map(|r| (*r.start(), *r.end()))
            .collect();
        Ok(Self {
            program,
            inventory,
            rel,
            params,
            blocks,
            contrib,
        })
    }

    #[inline]
    pub fn contrib(&self, slot: usize, ad: usize) -> f64 {
        self.contrib[(slot - 1) * self.inventory.len() + ad]
    }

    pub fn k(&self) -> usize {
        self.params.k()
    }

    /// Builds the report for `(slot, ad)` pairs, re-evaluating the reward and
    /// re-checking feasibility.
    pub fn finish(
        &self,
        solver: SolverKind,
        pairs: &[(usize, usize)],
        stats: SearchStats,
        upper_bound: Option<f64>,
        started: std::time::Instant,
    ) -> Result<SolveReport> {
        let mut pairs = pairs.to_vec();
        pairs.sort_unstable();
        let schedule = Schedule::from_pairs(
            pairs
                .iter()
                .map(|&(slot, ad)| (slot, self.inventory.get(ad).id().to_string())),
        );
        validate_schedule(
            &schedule,
            self.program,
            self.inventory,
            self.params,
            Mode::Strict,
        )
        .map_err(|v| Error::Invariant(format!("{solver:?} produced an infeasible schedule: {v}")))?;
        let reward = reward(&schedule, self.program, self.inventory, self.rel, self.params)?;
        Ok(SolveReport {
            solver,
            schedule,
            reward,
            candidates_evaluated: stats.candidates,
            nodes_explored: stats.nodes,
            nodes_pruned: stats.pruned,
            upper_bound,
            wall_time: started.elapsed(),
        })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct SearchStats {
    pub candidates: u64,
    pub nodes: u64,
    pub pruned: u64,
}

/// Dispatches to the named solver.
pub fn solve(
    kind: SolverKind,
    program: &ProgramSpec,
    inventory: &AdInventory,
    rel: &RelevanceMatrix,
    params: &RewardParams,
    options: &SolveOptions,
) -> Result<SolveReport> {
    match kind {
        SolverKind::BruteForce => solve_brute_force(program, inventory, rel, params, options),
        SolverKind::BranchAndBound => solve_branch_and_bound(program, inventory, rel, params),
        SolverKind::LpRelax => solve_lp_relax(program, inventory, rel, params),
    }
}
