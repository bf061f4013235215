use std::time::Instant;

use super::simplex::{LinearProgram, Relation};
use super::{Instance, SearchStats, SolveReport, SolverKind};
use crate::error::{Error, Result};
use crate::model::{AdInventory, Polarity, ProgramSpec, RelevanceMatrix, RewardParams};

const MASS_TIE: f64 = 1e-9;

/// The continuous relaxation with `y[slot, ad]` in `[0, 1]`:
///
/// * at most one unit of ad mass per slot, and per ad,
/// * exactly one unit per block,
/// * `K/2` units of HV mass and `K/2` of LV mass,
/// * `K` units in total.
pub(crate) fn relaxation(inst: &Instance<'_>) -> LinearProgram {
    let m = inst.program.slot_count();
    let p = inst.inventory.len();
    let var = |slot: usize, ad: usize| (slot - 1) * p + ad;
    let mut lp = LinearProgram::new(m * p);
    for slot in 1..=m {
        for ad in 0..p {
            lp.objective[var(slot, ad)] = inst.contrib(slot, ad);
        }
    }
    for slot in 1..=m {
        lp.add((0..p).map(|j| (var(slot, j), 1.0)).collect(), Relation::Le, 1.0);
    }
    for ad in 0..p {
        lp.add((1..=m).map(|i| (var(i, ad), 1.0)).collect(), Relation::Le, 1.0);
    }
    for &(lo, hi) in &inst.blocks {
        let terms = (lo..=hi)
            .flat_map(|i| (0..p).map(move |j| (var(i, j), 1.0)))
            .collect();
        lp.add(terms, Relation::Eq, 1.0);
    }
    let half = (inst.k() / 2) as f64;
    for polarity in [Polarity::Hv, Polarity::Lv] {
        let ads = inst.inventory.indices_with(polarity);
        let terms = (1..=m)
            .flat_map(|i| ads.iter().map(move |&j| (var(i, j), 1.0)))
            .collect();
        lp.add(terms, Relation::Eq, half);
    }
    let all = (0..m * p).map(|v| (v, 1.0)).collect();
    lp.add(all, Relation::Eq, inst.k() as f64);
    lp
}

/// LP relaxation followed by greedy rounding.
///
/// Rounding walks the blocks in order and picks, among slots of the block and
/// ads that are unused and whose polarity quota is still open, the pair with
/// the most fractional mass. Near-ties (within 1e-9) go to the larger reward
/// contribution, then the lower slot, then the lower ad index.
pub fn solve_lp_relax(
    program: &ProgramSpec,
    inventory: &AdInventory,
    rel: &RelevanceMatrix,
    params: &RewardParams,
) -> Result<SolveReport> {
    let started = Instant::now();
    let inst = Instance::new(program, inventory, rel, params)?;
    if inst.k() == 0 {
        return inst.finish(
            SolverKind::LpRelax,
            &[],
            SearchStats::default(),
            Some(0.0),
            started,
        );
    }

    let lp = relaxation(&inst);
    let solution = lp.solve().map_err(|e| Error::Lp(e.to_string()))?;
    let p = inventory.len();
    let mass = |slot: usize, ad: usize| solution.x[(slot - 1) * p + ad];

    let mut used = vec![false; p];
    let mut quota = [inst.k() / 2, inst.k() / 2];
    let quota_slot = |ad: usize| match inventory.get(ad).polarity() {
        Polarity::Hv => 0,
        Polarity::Lv => 1,
    };
    let mut pairs = Vec::with_capacity(inst.k());
    for &(lo, hi) in &inst.blocks {
        let mut pick: Option<(f64, f64, usize, usize)> = None;
        for slot in lo..=hi {
            for ad in 0..p {
                if used[ad] || quota[quota_slot(ad)] == 0 {
                    continue;
                }
                let cand = (mass(slot, ad), inst.contrib(slot, ad), slot, ad);
                pick = match pick {
                    None => Some(cand),
                    Some(cur) => {
                        let better = cand.0 > cur.0 + MASS_TIE
                            || ((cand.0 - cur.0).abs() <= MASS_TIE && cand.1 > cur.1);
                        Some(if better { cand } else { cur })
                    }
                };
            }
        }
        let (_, _, slot, ad) =
            pick.ok_or_else(|| Error::Invariant("rounding found no eligible ad".into()))?;
        used[ad] = true;
        quota[quota_slot(ad)] -= 1;
        pairs.push((slot, ad));
    }

    let stats = SearchStats {
        candidates: 1,
        ..SearchStats::default()
    };
    inst.finish(
        SolverKind::LpRelax,
        &pairs,
        stats,
        Some(solution.objective),
        started,
    )
}
