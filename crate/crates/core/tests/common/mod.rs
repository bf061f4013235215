//! Helpers shared by the integration tests: independent re-implementations of
//! the objective and the feasibility rules, used as oracles.

#![allow(dead_code)]

use adplace::instance::{random_instance, Instance};
use adplace::{AdInventory, ProgramSpec, RelevanceMatrix, Schedule};

/// The objective computed straight from the inputs, with no shared code.
pub fn direct_reward(
    program: &ProgramSpec,
    inventory: &AdInventory,
    rel: &RelevanceMatrix,
    alpha: f64,
    beta: f64,
    schedule: &Schedule,
) -> f64 {
    let mut total = 0.0;
    for e in &schedule.entries {
        let j = inventory
            .ads()
            .iter()
            .position(|a| a.id() == e.ad_id)
            .expect("scheduled ad exists");
        let val_a = inventory.ads()[j].valence().value();
        let val_s = program.scenes()[e.slot - 1].valence.value();
        total += alpha * e.slot as f64 * (1.0 - val_a);
        total += beta * (val_s - val_a).abs() * rel.get(e.slot - 1, j);
    }
    total
}

/// Block index (0-based) of `slot` for `m` slots split into `k` near-equal
/// contiguous blocks, found by scanning the boundaries `floor(b * m / k)`.
pub fn block_of(slot: usize, m: usize, k: usize) -> usize {
    (0..k)
        .find(|&b| slot > b * m / k && slot <= (b + 1) * m / k)
        .expect("slot inside 1..=m")
}

/// Strict feasibility checked from first principles.
pub fn strictly_feasible(program: &ProgramSpec, inventory: &AdInventory, k: usize, s: &Schedule) -> bool {
    let m = program.slot_count();
    if s.entries.len() != k {
        return false;
    }
    let mut slots: Vec<usize> = s.entries.iter().map(|e| e.slot).collect();
    slots.sort_unstable();
    slots.dedup();
    let mut ads: Vec<&str> = s.entries.iter().map(|e| e.ad_id.as_str()).collect();
    ads.sort_unstable();
    ads.dedup();
    if slots.len() != k || ads.len() != k {
        return false;
    }
    if s.entries.iter().any(|e| e.rank != 0 || e.slot == 0 || e.slot > m) {
        return false;
    }
    let mut blocks: Vec<usize> = s.entries.iter().map(|e| block_of(e.slot, m, k)).collect();
    blocks.sort_unstable();
    blocks.dedup();
    if blocks.len() != k {
        return false;
    }
    let hv = s
        .entries
        .iter()
        .filter(|e| {
            let a = inventory.ads().iter().find(|a| a.id() == e.ad_id);
            a.is_some_and(|a| a.valence().value() > 0.5)
        })
        .count();
    let known = s
        .entries
        .iter()
        .all(|e| inventory.ads().iter().any(|a| a.id() == e.ad_id));
    known && hv * 2 == k
}

/// Best reward over every injective (slot -> ad) map of size `k`, kept only
/// when it passes [`strictly_feasible`]. Independent of the block-wise
/// enumeration the library uses; feasible only for tiny shapes.
pub fn literal_optimum(
    program: &ProgramSpec,
    inventory: &AdInventory,
    rel: &RelevanceMatrix,
    alpha: f64,
    beta: f64,
    k: usize,
) -> Option<f64> {
    let m = program.slot_count();
    let p = inventory.len();
    let mut best: Option<f64> = None;
    let mut chosen_slots = Vec::new();
    let mut chosen_ads = Vec::new();
    fn pick_ads(
        depth: usize,
        slots: &[usize],
        chosen: &mut Vec<usize>,
        p: usize,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if depth == slots.len() {
            visit(chosen);
            return;
        }
        for j in 0..p {
            if !chosen.contains(&j) {
                chosen.push(j);
                pick_ads(depth + 1, slots, chosen, p, visit);
                chosen.pop();
            }
        }
    }
    fn pick_slots(
        from: usize,
        m: usize,
        k: usize,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if chosen.len() == k {
            visit(chosen);
            return;
        }
        for s in from..=m {
            chosen.push(s);
            pick_slots(s + 1, m, k, chosen, visit);
            chosen.pop();
        }
    }
    pick_slots(1, m, k, &mut chosen_slots, &mut |slots| {
        pick_ads(0, slots, &mut chosen_ads, p, &mut |ads| {
            let s = Schedule::from_pairs(
                slots
                    .iter()
                    .zip(ads)
                    .map(|(&slot, &j)| (slot, inventory.ads()[j].id().to_string())),
            );
            if strictly_feasible(program, inventory, k, &s) {
                let r = direct_reward(program, inventory, rel, alpha, beta, &s);
                if best.is_none_or(|b| r > b) {
                    best = Some(r);
                }
            }
        });
    });
    best
}

/// A reproducible spread of small instances: `P` in 4..=10, `M` in 2..=8,
/// `K` cycling through 0, 2, 4 (capped at the largest even value <= M).
pub fn small_instances(count: usize) -> Vec<(Instance, usize)> {
    (0..count)
        .map(|i| {
            let ads = 4 + i % 7;
            let slots = 2 + (i / 7) % 7;
            let k = [0, 2, 4][i % 3].min(slots - slots % 2);
            (random_instance(ads, slots, 1000 + i as u64), k)
        })
        .collect()
}
