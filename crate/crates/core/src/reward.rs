//! The placement reward.
//!
//! For every scheduled pair (slot `i`, ad `j`):
//!
//! ```text
//! alpha * i * (1 - val(A_j))  +  beta * |val(S_i) - val(A_j)| * rel(S_i, A_j)
//! ```
//!
//! where `S_i` is the scene right before slot `i`. The first term pushes
//! low-valence ads towards the tail; the second rewards emotional contrast
//! with content similarity.

use crate::error::{Error, Result};
use crate::model::{AdInventory, ProgramSpec, RelevanceMatrix, RewardParams, Schedule};
use crate::validate::{validate_schedule, Mode};

/// Positional part of one entry, before weighting by alpha.
#[inline]
pub fn position_term(slot: usize, ad_valence: f64) -> f64 {
    slot as f64 * (1.0 - ad_valence)
}

/// Matching part of one entry, before weighting by beta.
#[inline]
pub fn matching_term(scene_valence: f64, ad_valence: f64, rel: f64) -> f64 {
    (scene_valence - ad_valence).abs() * rel
}

/// Weighted contribution of putting inventory ad `ad` (0-based) at 1-based `slot`.
#[inline]
pub fn entry_contribution(
    program: &ProgramSpec,
    inventory: &AdInventory,
    rel: &RelevanceMatrix,
    params: &RewardParams,
    slot: usize,
    ad: usize,
) -> f64 {
    let av = inventory.get(ad).valence().value();
    let sv = program.scene_before_slot(slot).valence.value();
    params.alpha() * position_term(slot, av)
        + params.beta() * matching_term(sv, av, rel.get(slot - 1, ad))
}

/// Reward split into its unweighted position and matching sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardTerms {
    pub position: f64,
    pub matching: f64,
}

impl RewardTerms {
    pub fn weighted(&self, params: &RewardParams) -> f64 {
        params.alpha() * self.position + params.beta() * self.matching
    }
}

/// Unweighted sums for a strict schedule. Entries are summed in slot order so
/// the result does not depend on how the schedule container is ordered.
pub fn reward_terms(
    schedule: &Schedule,
    program: &ProgramSpec,
    inventory: &AdInventory,
    rel: &RelevanceMatrix,
    params: &RewardParams,
) -> Result<RewardTerms> {
    rel.check_dims(program, inventory)?;
    validate_schedule(schedule, program, inventory, params, Mode::Strict)
        .map_err(Error::InfeasibleSchedule)?;

    let mut pairs: Vec<(usize, usize)> = schedule
        .entries
        .iter()
        .map(|e| (e.slot, inventory.index_of(&e.ad_id).expect("validated")))
        .collect();
    pairs.sort_unstable();

    let mut terms = RewardTerms {
        position: 0.0,
        matching: 0.0,
    };
    for (slot, ad) in pairs {
        let av = inventory.get(ad).valence().value();
        let sv = program.scene_before_slot(slot).valence.value();
        terms.position += position_term(slot, av);
        terms.matching += matching_term(sv, av, rel.get(slot - 1, ad));
    }
    Ok(terms)
}

pub fn reward(
    schedule: &Schedule,
    program: &ProgramSpec,
    inventory: &AdInventory,
    rel: &RelevanceMatrix,
    params: &RewardParams,
) -> Result<f64> {
    Ok(reward_terms(schedule, program, inventory, rel, params)?.weighted(params))
}
