use std::time::Instant;

use super::assignment::max_weight_assignment;
use super::{Instance, SearchStats, SolveReport, SolverKind};
use crate::error::Result;
use crate::model::{AdInventory, Polarity, ProgramSpec, RelevanceMatrix, RewardParams};

/// Bisection steps on the Lagrange multiplier per bound evaluation.
const LAGRANGE_STEPS: usize = 12;

/// Depth-first search assigning one ad per block, in block order.
///
/// Once an ad is fixed to a block its best slot inside that block is
/// independent of every other decision, so each node only branches on the
/// ad. Two relaxations bound the unassigned blocks:
///
/// * polarity split (cheap, tried first): per block, the best unused HV and
///   LV ads, with the remaining HV quota given to the blocks where HV gains
///   most; ads may repeat across blocks.
/// * Lagrangian assignment: a maximum-weight matching of blocks to distinct
///   unused ads, with the HV quota moved into the objective as a penalty
///   `lambda * (#HV - quota)`. Every `lambda` gives a valid bound; a short
///   bisection on `lambda` tightens it, stopping as soon as the node prunes.
///   With one polarity exhausted the matching is the exact remaining problem.
struct Search {
    is_hv: Vec<bool>,
    /// `best[b][j]`: value and slot of ad `j` at its best slot in block `b`.
    best: Vec<Vec<(f64, usize)>>,
    used: Vec<bool>,
    path: Vec<(usize, usize)>,
    incumbent: f64,
    incumbent_pairs: Vec<(usize, usize)>,
    stats: SearchStats,
    scratch: Vec<f64>,
    matrix: Vec<f64>,
}

impl Search {
    fn new(inst: &Instance<'_>) -> Self {
        let p = inst.inventory.len();
        let is_hv = (0..p)
            .map(|j| inst.inventory.get(j).polarity() == Polarity::Hv)
            .collect();
        let best = inst
            .blocks
            .iter()
            .map(|&(lo, hi)| {
                (0..p)
                    .map(|j| {
                        let mut top = (inst.contrib(lo, j), lo);
                        for s in lo + 1..=hi {
                            let v = inst.contrib(s, j);
                            if v > top.0 {
                                top = (v, s);
                            }
                        }
                        top
                    })
                    .collect()
            })
            .collect();
        Self {
            is_hv,
            best,
            used: vec![false; p],
            path: Vec::with_capacity(inst.k()),
            incumbent: f64::NEG_INFINITY,
            incumbent_pairs: Vec::new(),
            stats: SearchStats::default(),
            scratch: Vec::with_capacity(inst.k()),
            matrix: Vec::new(),
        }
    }

    /// Upper bound on what blocks `from..` can add, given remaining quotas.
    /// May return early with any value `<= target` once pruning is certain.
    fn bound(&mut self, from: usize, hv_left: usize, target: f64) -> f64 {
        let split = self.split_bound(from, hv_left);
        if split <= target || from + 1 >= self.best.len() {
            // with one block left the split bound is exact
            return split;
        }
        split.min(self.lagrangian_bound(from, hv_left, target))
    }

    fn lagrangian_bound(&mut self, from: usize, hv_left: usize, target: f64) -> f64 {
        let rows = self.best.len() - from;
        let lv_left = rows - hv_left;
        let eligible: Vec<usize> = (0..self.used.len())
            .filter(|&j| {
                !self.used[j] && if self.is_hv[j] { hv_left > 0 } else { lv_left > 0 }
            })
            .collect();
        let only_one_polarity = hv_left == 0 || lv_left == 0;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for b in from..self.best.len() {
            for &j in &eligible {
                lo = lo.min(self.best[b][j].0);
                hi = hi.max(self.best[b][j].0);
            }
        }
        // penalties beyond the weight spread cannot change the matching further
        let spread = (hi - lo) + 1.0;
        let (mut lam_lo, mut lam_hi) = (-spread, spread);
        let mut lambda = 0.0;
        let mut best = f64::INFINITY;
        for _ in 0..LAGRANGE_STEPS {
            self.matrix.clear();
            for b in from..self.best.len() {
                self.matrix.extend(eligible.iter().map(|&j| {
                    self.best[b][j].0 + if self.is_hv[j] { lambda } else { 0.0 }
                }));
            }
            let (total, cols) = max_weight_assignment(&self.matrix, rows, eligible.len());
            best = best.min(total - lambda * hv_left as f64);
            if only_one_polarity || best <= target {
                break;
            }
            let hv_taken = cols.iter().filter(|&&c| self.is_hv[eligible[c]]).count();
            match hv_taken.cmp(&hv_left) {
                std::cmp::Ordering::Equal => break, // quota met: bound is exact
                std::cmp::Ordering::Greater => lam_hi = lambda,
                std::cmp::Ordering::Less => lam_lo = lambda,
            }
            lambda = 0.5 * (lam_lo + lam_hi);
        }
        best
    }

    fn split_bound(&mut self, from: usize, hv_left: usize) -> f64 {
        let lv_left = self.best.len() - from - hv_left;
        let mut hv_sum = 0.0;
        let mut lv_sum = 0.0;
        self.scratch.clear();
        for b in from..self.best.len() {
            let (mut top_hv, mut top_lv) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
            for (j, &(v, _)) in self.best[b].iter().enumerate() {
                if self.used[j] {
                    continue;
                }
                if self.is_hv[j] {
                    top_hv = top_hv.max(v);
                } else {
                    top_lv = top_lv.max(v);
                }
            }
            hv_sum += top_hv;
            lv_sum += top_lv;
            self.scratch.push(top_hv - top_lv);
        }
        if lv_left == 0 {
            return hv_sum;
        }
        if hv_left == 0 {
            return lv_sum;
        }
        // both quotas open, so both polarities still have unused ads
        self.scratch
            .sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite contributions"));
        lv_sum + self.scratch[..hv_left].iter().sum::<f64>()
    }

    fn descend(&mut self, block: usize, value: f64, hv_left: usize, lv_left: usize) {
        self.stats.nodes += 1;
        if block == self.best.len() {
            self.stats.candidates += 1;
            if value > self.incumbent {
                self.incumbent = value;
                self.incumbent_pairs.clone_from(&self.path);
            }
            return;
        }

        let mut children: Vec<(f64, usize, usize)> = self.best[block]
            .iter()
            .enumerate()
            .filter(|&(j, _)| {
                !self.used[j] && if self.is_hv[j] { hv_left > 0 } else { lv_left > 0 }
            })
            .map(|(j, &(v, s))| (v, j, s))
            .collect();
        // most promising first, inventory order on ties
        children.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));

        for (v, ad, slot) in children {
            let (h, l) = if self.is_hv[ad] {
                (hv_left - 1, lv_left)
            } else {
                (hv_left, lv_left - 1)
            };
            self.used[ad] = true;
            let target = self.incumbent - value - v;
            let optimistic = value + v + self.bound(block + 1, h, target);
            if optimistic <= self.incumbent {
                self.stats.pruned += 1;
                self.used[ad] = false;
                continue;
            }
            self.path.push((slot, ad));
            self.descend(block + 1, value + v, h, l);
            self.path.pop();
            self.used[ad] = false;
        }
    }
}

/// Exact branch-and-bound. Returns the same optimal reward as brute force;
/// among equally good schedules it keeps the first one its search order
/// reaches.
pub fn solve_branch_and_bound(
    program: &ProgramSpec,
    inventory: &AdInventory,
    rel: &RelevanceMatrix,
    params: &RewardParams,
) -> Result<SolveReport> {
    let started = Instant::now();
    let inst = Instance::new(program, inventory, rel, params)?;
    let half = params.k() / 2;
    let mut search = Search::new(&inst);
    search.descend(0, 0.0, half, half);
    let pairs = std::mem::take(&mut search.incumbent_pairs);
    inst.finish(
        SolverKind::BranchAndBound,
        &pairs,
        search.stats,
        None,
        started,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Schedule;
    use crate::solvers::{solve_brute_force, SolveOptions};

    #[test]
    fn matches_hand_instance() {
        let p = ProgramSpec::from_valences(&[0.9, 0.1, 0.8]).unwrap();
        let inv = AdInventory::from_valences(&[0.8, 0.2]).unwrap();
        let rel = RelevanceMatrix::constant(3, 2, 1.0).unwrap();
        let params = RewardParams::new(0.5, 0.5, 2).unwrap();
        let r = solve_branch_and_bound(&p, &inv, &rel, &params).unwrap();
        assert_eq!(r.schedule, Schedule::from_pairs([(1, "a2"), (2, "a1")]));
        assert!((r.reward - 1.3).abs() < 1e-9);
    }

    #[test]
    fn identical_ads_return_first_schedule() {
        let p = ProgramSpec::from_valences(&[0.3, 0.6, 0.2, 0.9, 0.4]).unwrap();
        // two HV and two LV copies; polarity differs so "identical" means
        // identical within each polarity
        let inv = AdInventory::from_valences(&[0.7, 0.7, 0.3, 0.3]).unwrap();
        let rel = RelevanceMatrix::constant(5, 4, 0.5).unwrap();
        let params = RewardParams::new(0.5, 0.5, 2).unwrap();
        let a = solve_branch_and_bound(&p, &inv, &rel, &params).unwrap();
        let b = solve_branch_and_bound(&p, &inv, &rel, &params).unwrap();
        assert_eq!(a.schedule, b.schedule);
        let bf = solve_brute_force(&p, &inv, &rel, &params, &SolveOptions::default()).unwrap();
        assert!((a.reward - bf.reward).abs() < 1e-9);
        // the lower-index copy of each polarity is chosen
        let ids: Vec<_> = a.schedule.entries.iter().map(|e| e.ad_id.as_str()).collect();
        assert!(ids.contains(&"a1") && ids.contains(&"a3"));
    }

    #[test]
    fn pruning_fires_with_dominant_ad() {
        // one very low-valence LV ad, steep slot weights under alpha = 1
        let p = ProgramSpec::from_valences(&[0.5; 9]).unwrap();
        let inv = AdInventory::from_valences(&[0.0, 0.45, 0.4, 0.35, 0.99, 0.98, 0.97, 0.96])
            .unwrap();
        let rel = RelevanceMatrix::constant(9, 8, 0.1).unwrap();
        let params = RewardParams::new(1.0, 0.0, 4).unwrap();
        let r = solve_branch_and_bound(&p, &inv, &rel, &params).unwrap();
        assert!(r.nodes_pruned > 0);
        let bf = solve_brute_force(&p, &inv, &rel, &params, &SolveOptions::default()).unwrap();
        assert!((r.reward - bf.reward).abs() < 1e-9);
        assert_eq!(r.schedule.ad_at(8), Some("a1"));
    }
}
