//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use adplace::baselines::trivial_schedule;
use adplace::instance::{paper_scale_instance, random_instance, Instance};
use adplace::io::{save_inventory, save_program, save_rel, ValenceScale};
use adplace::run::{run, RunConfig, SolverChoice};
use adplace::{
    build_profile, cosine_similarity, pair_relevance, reward, slot_blocks, solve_branch_and_bound,
    solve_brute_force, solve_lp_relax, total_variation, validate_schedule, AdInventory,
    KeyframeFeatures, Mode, Pairing, Polarity, ProgramSpec, RelevanceMatrix, RewardParams,
    Schedule, SolveOptions, SolveReport,
};
use common::{direct_reward, small_instances, strictly_feasible};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Solved small instances, shared by the oracle, sandwich and constraint checks.
struct Solved {
    inst: Instance,
    params: RewardParams,
    brute: SolveReport,
    bnb: SolveReport,
    lp: SolveReport,
}

fn solve_small(count: usize) -> Vec<Solved> {
    small_instances(count)
        .into_iter()
        .map(|(inst, k)| {
            let params = RewardParams::new(0.5, 0.5, k).unwrap();
            let (p, i, r) = (&inst.program, &inst.inventory, &inst.rel);
            let brute = solve_brute_force(p, i, r, &params, &SolveOptions::default()).unwrap();
            let bnb = solve_branch_and_bound(p, i, r, &params).unwrap();
            let lp = solve_lp_relax(p, i, r, &params).unwrap();
            Solved { inst, params, brute, bnb, lp }
        })
        .collect()
}

fn oracle_equivalence(solved: &[Solved]) -> Outcome {
    let agree = solved
        .iter()
        .filter(|s| (s.brute.reward - s.bnb.reward).abs() <= TOL)
        .count();
    outcome(
        agree == solved.len() && solved.len() >= 200,
        format!("branch-and-bound matches brute force on {agree}/{} instances (P<=10, M<=8, K in {{0,2,4}})", solved.len()),
    )
}

fn relaxation_sandwich(solved: &[Solved]) -> Outcome {
    let ok = solved
        .iter()
        .filter(|s| {
            let ub = s.lp.upper_bound.unwrap_or(f64::NEG_INFINITY);
            s.lp.reward <= s.brute.reward + TOL && s.brute.reward <= ub + TOL
        })
        .count();
    let gaps = solved.iter().filter(|s| s.brute.reward - s.lp.reward > TOL).count();
    outcome(
        ok == solved.len(),
        format!("rounded <= optimum <= LP bound on {ok}/{} instances ({gaps} with a rounding gap)", solved.len()),
    )
}

fn constraint_suite(solved: &[Solved]) -> Outcome {
    let mut checked = 0;
    let mut failed = 0;
    for s in solved {
        let (p, i) = (&s.inst.program, &s.inst.inventory);
        for r in [&s.brute, &s.bnb, &s.lp] {
            checked += 1;
            let lib = validate_schedule(&r.schedule, p, i, &s.params, Mode::Strict).is_ok();
            let own = strictly_feasible(p, i, s.params.k(), &r.schedule);
            let rew = direct_reward(p, i, &s.inst.rel, 0.5, 0.5, &r.schedule);
            if !(lib && own && (rew - r.reward).abs() <= TOL) {
                failed += 1;
            }
        }
    }
    // the paper-scale instance through each exact/relaxed solver as well
    let big = paper_scale_instance(1).unwrap();
    let params = RewardParams::new(0.5, 0.5, 8).unwrap();
    for r in [
        solve_branch_and_bound(&big.program, &big.inventory, &big.rel, &params).unwrap(),
        solve_lp_relax(&big.program, &big.inventory, &big.rel, &params).unwrap(),
    ] {
        checked += 1;
        if !strictly_feasible(&big.program, &big.inventory, 8, &r.schedule) {
            failed += 1;
        }
    }
    outcome(
        failed == 0,
        format!("{}/{checked} solver schedules strictly feasible", checked - failed),
    )
}

fn tail_placement() -> Outcome {
    let mut ok = 0;
    let total = 120;
    for i in 0..total {
        let slots = 4 + i % 5;
        let ads = 4 + i % 5;
        let k = if i % 2 == 0 { 4 } else { 2 };
        let inst = random_instance(ads, slots, 5000 + i as u64);
        let params = RewardParams::new(1.0, 0.0, k).unwrap();
        let r = solve_brute_force(&inst.program, &inst.inventory, &inst.rel, &params, &SolveOptions::default())
            .unwrap();
        let blocks = slot_blocks(slots, k);
        let sorted = r.schedule.clone().sorted();
        let at_tail = sorted
            .entries
            .iter()
            .zip(&blocks)
            .all(|(e, b)| e.slot == *b.end());
        let vals: Vec<f64> = sorted
            .entries
            .iter()
            .map(|e| {
                let j = inst.inventory.index_of(&e.ad_id).unwrap();
                inst.inventory.get(j).valence().value()
            })
            .collect();
        let non_increasing = vals.windows(2).all(|w| w[0] >= w[1]);
        if at_tail && non_increasing {
            ok += 1;
        }
    }
    outcome(
        ok == total,
        format!("alpha=1: {ok}/{total} optima put every ad last in its block with valences non-increasing"),
    )
}

fn paper_scale() -> Outcome {
    let inst = paper_scale_instance(1).unwrap();
    let params = RewardParams::new(0.5, 0.5, 8).unwrap();
    let started = Instant::now();
    let r = solve_branch_and_bound(&inst.program, &inst.inventory, &inst.rel, &params).unwrap();
    let elapsed = started.elapsed();
    let with_ads = total_variation(&build_profile(&r.schedule, &inst.program, &inst.inventory).unwrap()).unwrap();
    let bare = total_variation(&build_profile(&Schedule::empty(), &inst.program, &inst.inventory).unwrap()).unwrap();
    outcome(
        elapsed < Duration::from_secs(10) && with_ads > bare,
        format!(
            "12 scenes / 24 ads / K=8 solved in {:.3}s ({} nodes); total variation {with_ads:.2} > {bare:.2} without ads",
            elapsed.as_secs_f64(),
            r.nodes_explored
        ),
    )
}

fn mean_lv_slot(inst: &Instance, s: &Schedule) -> f64 {
    let slots: Vec<usize> = s
        .entries
        .iter()
        .filter(|e| {
            let j = inst.inventory.index_of(&e.ad_id).unwrap();
            inst.inventory.get(j).polarity() == Polarity::Lv
        })
        .map(|e| e.slot)
        .collect();
    slots.iter().sum::<usize>() as f64 / slots.len() as f64
}

fn ablation() -> Outcome {
    let mut details = Vec::new();
    let mut passed = true;
    for seed in [1, 0, 2, 3, 4] {
        let inst = paper_scale_instance(seed).unwrap();
        let solve = |alpha: f64| {
            let params = RewardParams::new(alpha, 1.0 - alpha, 8).unwrap();
            solve_branch_and_bound(&inst.program, &inst.inventory, &inst.rel, &params).unwrap()
        };
        let with_pos = mean_lv_slot(&inst, &solve(0.5).schedule);
        let without = mean_lv_slot(&inst, &solve(0.0).schedule);
        passed &= with_pos >= without;
        details.push(format!("seed {seed}: {with_pos:.2} vs {without:.2}"));
    }
    outcome(
        passed,
        format!("mean LV slot, alpha=0.5 vs alpha=0: {}", details.join("; ")),
    )
}

fn hand_reward() -> Outcome {
    let program = ProgramSpec::from_valences(&[0.9, 0.1, 0.8]).unwrap();
    let inventory = AdInventory::from_valences(&[0.8, 0.2]).unwrap();
    let rel = RelevanceMatrix::constant(3, 2, 1.0).unwrap();
    let params = RewardParams::new(0.5, 0.5, 2).unwrap();
    let good = Schedule::from_pairs([(1, "a2"), (2, "a1")]);
    let other = Schedule::from_pairs([(1, "a1"), (2, "a2")]);
    let r_good = reward(&good, &program, &inventory, &rel, &params).unwrap();
    let r_other = reward(&other, &program, &inventory, &rel, &params).unwrap();
    let best = solve_brute_force(&program, &inventory, &rel, &params, &SolveOptions::default()).unwrap();
    outcome(
        (r_good - 1.3).abs() <= TOL && (r_other - 1.0).abs() <= TOL && best.schedule == good,
        format!("{{a2@1, a1@2}} = {r_good}, {{a1@1, a2@2}} = {r_other}, solver picks the first"),
    )
}

fn scalar_cosine(u: &[f64], v: &[f64]) -> f64 {
    let (mut d, mut nu, mut nv) = (0.0, 0.0, 0.0);
    for i in 0..u.len() {
        d += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    d / (nu.sqrt() * nv.sqrt())
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn relevance_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut worst_cos: f64 = 0.0;
    let mut worst_pair: f64 = 0.0;
    for _ in 0..1000 {
        let dim = rng.gen_range(1..64);
        let u: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        worst_cos = worst_cos.max(rel_err(cosine_similarity(&u, &v).unwrap(), scalar_cosine(&u, &v)));

        let frames = rng.gen_range(1..6);
        let mut feats = |id: &str| {
            let fs: Vec<Vec<f64>> = (0..frames)
                .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            KeyframeFeatures::new(id, fs).unwrap()
        };
        let (s, a) = (feats("s"), feats("a"));
        let aligned: f64 = (0..frames)
            .map(|f| scalar_cosine(&s.frames()[f], &a.frames()[f]))
            .sum::<f64>()
            / frames as f64;
        let mut all = 0.0;
        for x in s.frames() {
            for y in a.frames() {
                all += scalar_cosine(x, y);
            }
        }
        all /= (frames * frames) as f64;
        worst_pair = worst_pair
            .max(rel_err(pair_relevance(&s, &a, Pairing::Aligned).unwrap(), aligned))
            .max(rel_err(pair_relevance(&s, &a, Pairing::AllPairs).unwrap(), all));
    }
    outcome(
        worst_cos <= 1e-12 && worst_pair <= 1e-12,
        format!("1000 pairs: worst relative error {worst_cos:.1e} (cosine), {worst_pair:.1e} (pair relevance)"),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    let inst = random_instance(10, 8, 9);
    save_program(&inst.program, ValenceScale::Unit, &root.join("program.json")).unwrap();
    save_inventory(&inst.inventory, ValenceScale::Unit, &root.join("inventory.json")).unwrap();
    save_rel(&inst.rel, &root.join("rel.txt")).unwrap();

    let mut identical = 0;
    let mut compared = 0;
    for solver in [SolverChoice::Brute, SolverChoice::Bnb, SolverChoice::Lp, SolverChoice::Trivial] {
        let mut files = Vec::new();
        for (rep, threads) in [None, None, Some(1), Some(2), Some(4)].into_iter().enumerate() {
            let config = RunConfig {
                rel_file: Some(root.join("rel.txt")),
                k: 4,
                solver,
                scale: ValenceScale::Unit,
                seed: 7,
                threads,
                out: root.join(format!("{solver:?}-{rep}")),
                ..RunConfig::new(root.join("program.json"), root.join("inventory.json"))
            };
            let out = run(&config).unwrap();
            files.push(std::fs::read(out.schedule_path).unwrap());
        }
        compared += 1;
        if files.windows(2).all(|w| w[0] == w[1]) {
            identical += 1;
        }
    }
    // the baseline called directly, across seeds
    let same_seed = (0..20).all(|seed| {
        trivial_schedule(&inst.program, &inst.inventory, 4, seed).unwrap()
            == trivial_schedule(&inst.program, &inst.inventory, 4, seed).unwrap()
    });
    outcome(
        identical == compared && same_seed,
        format!("{identical}/{compared} solvers wrote byte-identical schedule files over 5 runs (threads default/1/2/4)"),
    )
}

fn main() {
    let started = Instant::now();
    let solved = solve_small(210);
    type Check<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let checks: Vec<Check> = vec![
        ("oracle_equivalence", Box::new(|| oracle_equivalence(&solved))),
        ("relaxation_sandwich", Box::new(|| relaxation_sandwich(&solved))),
        ("constraint_suite", Box::new(|| constraint_suite(&solved))),
        ("tail_placement", Box::new(tail_placement)),
        ("paper_scale_run", Box::new(paper_scale)),
        ("ablation_lv_position", Box::new(ablation)),
        ("hand_computed_reward", Box::new(hand_reward)),
        ("relevance_correctness", Box::new(relevance_correctness)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failures = 0;
    for (name, check) in &checks {
        let o = check();
        if !o.passed {
            failures += 1;
        }
        println!("{} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        checks.len() - failures,
        checks.len(),
        started.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
