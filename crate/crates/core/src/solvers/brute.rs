use std::time::Instant;

use rayon::prelude::*;

use super::enumerate::{enumerate_balanced_subsets, for_each_placement};
use super::{Instance, SearchStats, SolveOptions, SolveReport, SolverKind};
use crate::error::{Error, Result};
use crate::model::{slot_blocks, AdInventory, Polarity, ProgramSpec, RelevanceMatrix, RewardParams};

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of (subset, placement) pairs brute force would score, saturating.
pub fn count_candidates(inventory: &AdInventory, slot_count: usize, k: usize) -> u128 {
    if k > slot_count {
        return 0;
    }
    let half = k / 2;
    let subsets = binomial(inventory.count(Polarity::Hv), half)
        .saturating_mul(binomial(inventory.count(Polarity::Lv), half));
    let orderings = (1..=k as u128).fold(1u128, |a, x| a.saturating_mul(x));
    let slot_choices = slot_blocks(slot_count, k)
        .iter()
        .fold(1u128, |a, r| a.saturating_mul((r.end() - r.start() + 1) as u128));
    subsets.saturating_mul(orderings).saturating_mul(slot_choices)
}

#[derive(Debug, Clone)]
struct Best {
    reward: f64,
    /// Enumeration position of the winning subset.
    subset: usize,
    pairs: Vec<(usize, usize)>,
    scored: u64,
}

fn score_subset(inst: &Instance<'_>, subset_index: usize, subset: &[usize]) -> Best {
    let mut best = Best {
        reward: f64::NEG_INFINITY,
        subset: subset_index,
        pairs: Vec::new(),
        scored: 0,
    };
    for_each_placement(subset, &inst.blocks, |order, slots| {
        best.scored += 1;
        let value: f64 = slots
            .iter()
            .zip(order)
            .map(|(&s, &a)| inst.contrib(s, a))
            .sum();
        if value > best.reward {
            best.reward = value;
            best.pairs.clear();
            best.pairs.extend(slots.iter().copied().zip(order.iter().copied()));
        }
    });
    best
}

/// Earlier subset wins ties so the parallel reduction agrees with a
/// sequential scan.
fn better(a: Best, b: Best) -> Best {
    let scored = a.scored + b.scored;
    let mut winner = if b.reward > a.reward || (b.reward == a.reward && b.subset < a.subset) {
        b
    } else {
        a
    };
    winner.scored = scored;
    winner
}

/// Exhaustive search over balanced subsets and block-respecting placements.
///
/// Ties go to the first schedule in enumeration order (subset, then ad
/// ordering, then slot choice). Refuses instances whose candidate count
/// exceeds `options.candidate_cap`.
pub fn solve_brute_force(
    program: &ProgramSpec,
    inventory: &AdInventory,
    rel: &RelevanceMatrix,
    params: &RewardParams,
    options: &SolveOptions,
) -> Result<SolveReport> {
    let started = Instant::now();
    let inst = Instance::new(program, inventory, rel, params)?;
    let candidates = count_candidates(inventory, program.slot_count(), params.k());
    if candidates > options.candidate_cap {
        return Err(Error::InstanceTooLarge {
            candidates,
            cap: options.candidate_cap,
        });
    }

    let subsets: Vec<Vec<usize>> = enumerate_balanced_subsets(inventory, params.k())?.collect();
    let search = || {
        subsets
            .par_iter()
            .enumerate()
            .map(|(i, s)| score_subset(&inst, i, s))
            .reduce_with(better)
    };
    let best = match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(search),
        None => search(),
    }
    .ok_or_else(|| Error::Invariant("no balanced subset enumerated".into()))?;

    let stats = SearchStats {
        candidates: best.scored,
        ..SearchStats::default()
    };
    inst.finish(SolverKind::BruteForce, &best.pairs, stats, None, started)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Schedule;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(12, 4), 495);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(7, 0), 1);
    }

    #[test]
    fn candidate_count_matches_enumeration() {
        let inv = AdInventory::from_valences(&[0.9, 0.8, 0.7, 0.1, 0.2]).unwrap();
        // C(3,1)*C(2,1) subsets, 2! orderings, blocks {1,2},{3,4} -> 2*2
        assert_eq!(count_candidates(&inv, 4, 2), 6 * 2 * 4);
        let p = ProgramSpec::from_valences(&[0.5; 5]).unwrap();
        let rel = RelevanceMatrix::constant(5, 5, 0.3).unwrap();
        let params = RewardParams::new(0.5, 0.5, 2).unwrap();
        let r = solve_brute_force(&p, &inv, &rel, &params, &SolveOptions::default()).unwrap();
        assert_eq!(r.candidates_evaluated, 48);
    }

    #[test]
    fn two_ad_two_slot_instance() {
        let p = ProgramSpec::from_valences(&[0.9, 0.1, 0.8]).unwrap();
        let inv = AdInventory::from_valences(&[0.8, 0.2]).unwrap();
        let rel = RelevanceMatrix::constant(3, 2, 1.0).unwrap();
        let params = RewardParams::new(0.5, 0.5, 2).unwrap();
        let r = solve_brute_force(&p, &inv, &rel, &params, &SolveOptions::default()).unwrap();
        assert_eq!(r.schedule, Schedule::from_pairs([(1, "a2"), (2, "a1")]));
        assert!((r.reward - 1.3).abs() < 1e-9);
        assert_eq!(r.candidates_evaluated, 2);
    }

    #[test]
    fn k_zero_and_errors() {
        let p = ProgramSpec::from_valences(&[0.9, 0.1, 0.8]).unwrap();
        let inv = AdInventory::from_valences(&[0.8, 0.2]).unwrap();
        let rel = RelevanceMatrix::constant(3, 2, 1.0).unwrap();
        let opts = SolveOptions::default();
        let r = solve_brute_force(&p, &inv, &rel, &RewardParams::new(0.5, 0.5, 0).unwrap(), &opts)
            .unwrap();
        assert!(r.schedule.is_empty());
        assert_eq!(r.reward, 0.0);
        assert_eq!(r.candidates_evaluated, 1);

        let k4 = RewardParams::new(0.5, 0.5, 4).unwrap();
        assert!(matches!(
            solve_brute_force(&p, &inv, &rel, &k4, &opts),
            Err(Error::KExceedsSlots { k: 4, slots: 2 })
        ));
        let capped = SolveOptions {
            candidate_cap: 1,
            ..opts
        };
        let k2 = RewardParams::new(0.5, 0.5, 2).unwrap();
        assert!(matches!(
            solve_brute_force(&p, &inv, &rel, &k2, &capped),
            Err(Error::InstanceTooLarge { candidates: 2, cap: 1 })
        ));
    }

    #[test]
    fn pure_position_prefers_lowest_valences() {
        // a1,a2 HV (0.9, 0.6); a3,a4 LV (0.4, 0.1)
        let p = ProgramSpec::from_valences(&[0.5, 0.5, 0.5]).unwrap();
        let inv = AdInventory::from_valences(&[0.9, 0.6, 0.4, 0.1]).unwrap();
        let rel = RelevanceMatrix::constant(3, 4, 0.5).unwrap();
        let params = RewardParams::new(1.0, 0.0, 2).unwrap();
        let r = solve_brute_force(&p, &inv, &rel, &params, &SolveOptions::default()).unwrap();
        assert_eq!(r.schedule, Schedule::from_pairs([(1, "a2"), (2, "a4")]));
    }
}
