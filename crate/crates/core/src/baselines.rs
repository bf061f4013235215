//! The trivial scheduler: a random balanced pick of ads, half stacked before
//! the first scene and half at the program midpoint.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{AdInventory, Placement, Polarity, ProgramSpec, Schedule};

/// Slot holding ads shown before scene 1.
pub const HEAD_SLOT: usize = 0;

/// Slot right before scene `ceil(N/2) + 1`; for 12 scenes that is the slot
/// before scene 7.
pub fn midpoint_slot(program: &ProgramSpec) -> usize {
    program.scene_count().div_ceil(2).min(program.slot_count())
}

/// Draws `k/2` HV and `k/2` LV ads with a ChaCha8 generator seeded from
/// `seed`, shuffles them, puts the first half at the head slot and the rest at
/// the midpoint slot. Ranks give the order inside each slot.
pub fn trivial_schedule(
    program: &ProgramSpec,
    inventory: &AdInventory,
    k: usize,
    seed: u64,
) -> Result<Schedule> {
    if !k.is_multiple_of(2) {
        return Err(Error::OddK { k });
    }
    inventory.check_balanced_supply(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut picked: Vec<usize> = Vec::with_capacity(k);
    for polarity in [Polarity::Hv, Polarity::Lv] {
        let pool = inventory.indices_with(polarity);
        picked.extend(pool.choose_multiple(&mut rng, k / 2).copied());
    }
    picked.shuffle(&mut rng);

    let mid = midpoint_slot(program);
    let entries = picked
        .iter()
        .enumerate()
        .map(|(n, &ad)| {
            let (slot, rank) = if n < k / 2 {
                (HEAD_SLOT, n)
            } else {
                (mid, n - k / 2)
            };
            Placement {
                slot,
                rank,
                ad_id: inventory.get(ad).id().to_string(),
            }
        })
        .collect();
    Ok(Schedule { entries })
}
