//! Feasibility checks for schedules.
//!
//! Strict mode is what every ACAD solver must produce: at most one ad per
//! slot, exactly K ads, one ad in each of the K contiguous slot blocks and an
//! even HV/LV split. Baseline mode is the looser shape used by the trivial
//! scheduler, which stacks several ads at the head and middle of the program.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{slot_blocks, AdInventory, Polarity, ProgramSpec, RewardParams, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Strict,
    Baseline,
}

/// The first constraint a schedule breaks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    UnknownAd { ad_id: String },
    DuplicateAd { ad_id: String },
    InvalidSlot { slot: usize, max: usize },
    NonZeroRank { slot: usize, rank: usize },
    DuplicateSlotRank { slot: usize, rank: usize },
    /// Constraint (a): more than one ad in a slot.
    SlotOverfilled { slot: usize, ad_ids: Vec<String> },
    /// Constraint (b): wrong number of ads.
    WrongCount { expected: usize, found: usize },
    /// Constraint (c): a block without exactly one ad.
    BlockViolation {
        block: usize,
        slots: (usize, usize),
        ad_ids: Vec<String>,
    },
    /// Constraint (d): HV/LV counts differ from K/2 each.
    PolarityImbalance {
        hv: usize,
        lv: usize,
        expected_each: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownAd { ad_id } => write!(f, "unknown ad `{ad_id}`"),
            Violation::DuplicateAd { ad_id } => write!(f, "ad `{ad_id}` scheduled more than once"),
            Violation::InvalidSlot { slot, max } => {
                write!(f, "slot {slot} outside the valid range (max {max})")
            }
            Violation::NonZeroRank { slot, rank } => {
                write!(f, "strict schedules need rank 0, slot {slot} has rank {rank}")
            }
            Violation::DuplicateSlotRank { slot, rank } => {
                write!(f, "two ads share slot {slot} rank {rank}")
            }
            Violation::SlotOverfilled { slot, ad_ids } => {
                write!(f, "(a) slot {slot} holds {} ads: {}", ad_ids.len(), ad_ids.join(", "))
            }
            Violation::WrongCount { expected, found } => {
                write!(f, "(b) expected {expected} ads, found {found}")
            }
            Violation::BlockViolation {
                block,
                slots,
                ad_ids,
            } => write!(
                f,
                "(c) block {block} (slots {}-{}) holds {} ads, expected exactly 1",
                slots.0,
                slots.1,
                ad_ids.len()
            ),
            Violation::PolarityImbalance {
                hv,
                lv,
                expected_each,
            } => write!(
                f,
                "(d) {hv} HV and {lv} LV ads, expected {expected_each} of each"
            ),
        }
    }
}

pub type Validation = Result<(), Violation>;

pub fn validate_schedule(
    schedule: &Schedule,
    program: &ProgramSpec,
    inventory: &AdInventory,
    params: &RewardParams,
    mode: Mode,
) -> Validation {
    let m = program.slot_count();
    let k = params.k();

    let mut seen_ads = HashSet::with_capacity(schedule.len());
    for e in &schedule.entries {
        if inventory.index_of(&e.ad_id).is_none() {
            return Err(Violation::UnknownAd {
                ad_id: e.ad_id.clone(),
            });
        }
        if !seen_ads.insert(e.ad_id.as_str()) {
            return Err(Violation::DuplicateAd {
                ad_id: e.ad_id.clone(),
            });
        }
        let min_slot = match mode {
            Mode::Strict => 1,
            Mode::Baseline => 0,
        };
        if e.slot < min_slot || e.slot > m {
            return Err(Violation::InvalidSlot { slot: e.slot, max: m });
        }
        if mode == Mode::Strict && e.rank != 0 {
            return Err(Violation::NonZeroRank {
                slot: e.slot,
                rank: e.rank,
            });
        }
    }

    let mut by_slot: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for e in &schedule.entries {
        by_slot.entry(e.slot).or_default().push(&e.ad_id);
    }

    match mode {
        Mode::Baseline => {
            let mut seen = HashSet::with_capacity(schedule.len());
            for e in &schedule.entries {
                if !seen.insert((e.slot, e.rank)) {
                    return Err(Violation::DuplicateSlotRank {
                        slot: e.slot,
                        rank: e.rank,
                    });
                }
            }
            check_count(schedule, k)
        }
        Mode::Strict => {
            // (a)
            if let Some((&slot, ids)) = by_slot.iter().find(|(_, ids)| ids.len() > 1) {
                return Err(Violation::SlotOverfilled {
                    slot,
                    ad_ids: ids.iter().map(|s| s.to_string()).collect(),
                });
            }
            // (b)
            check_count(schedule, k)?;
            // (c)
            for (b, block) in slot_blocks(m, k).into_iter().enumerate() {
                let ads: Vec<String> = by_slot
                    .range(block.clone())
                    .flat_map(|(_, ids)| ids.iter().map(|s| s.to_string()))
                    .collect();
                if ads.len() != 1 {
                    return Err(Violation::BlockViolation {
                        block: b + 1,
                        slots: (*block.start(), *block.end()),
                        ad_ids: ads,
                    });
                }
            }
            // (d)
            let hv = schedule
                .entries
                .iter()
                .filter(|e| {
                    let idx = inventory.index_of(&e.ad_id).expect("checked above");
                    inventory.get(idx).polarity() == Polarity::Hv
                })
                .count();
            let lv = schedule.len() - hv;
            if hv != k / 2 || lv != k / 2 {
                return Err(Violation::PolarityImbalance {
                    hv,
                    lv,
                    expected_each: k / 2,
                });
            }
            Ok(())
        }
    }
}

fn check_count(schedule: &Schedule, k: usize) -> Validation {
    if schedule.len() != k {
        return Err(Violation::WrongCount {
            expected: k,
            found: schedule.len(),
        });
    }
    Ok(())
}
