// Exhaustive search: enumerate balanced ad subsets, count every
// block-respecting placement, and score them all in parallel.

use adplace::instance::random_instance;
use adplace::solvers::{count_candidates, enumerate_balanced_subsets};
use adplace::{solve_brute_force, Polarity, RewardParams, SolveOptions};

pub fn run_example() -> adplace::Result<()> {
    let inst = random_instance(10, 8, 42);
    let k = 4;
    let params = RewardParams::new(0.5, 0.5, k)?;

    println!(
        "{} ads ({} HV, {} LV), {} slots, K = {k}",
        inst.inventory.len(),
        inst.inventory.count(Polarity::Hv),
        inst.inventory.count(Polarity::Lv),
        inst.program.slot_count()
    );
    let subsets = enumerate_balanced_subsets(&inst.inventory, k)?.count();
    let candidates = count_candidates(&inst.inventory, inst.program.slot_count(), k);
    println!("{subsets} balanced subsets, {candidates} candidate schedules");

    for threads in [1, 4] {
        let options = SolveOptions {
            threads: Some(threads),
            ..SolveOptions::default()
        };
        let r = solve_brute_force(&inst.program, &inst.inventory, &inst.rel, &params, &options)?;
        assert_eq!(r.candidates_evaluated as u128, candidates);
        println!(
            "{threads} thread(s): reward {:.6} in {:?}",
            r.reward, r.wall_time
        );
        for e in &r.schedule.entries {
            let ad = inst.inventory.get(inst.inventory.index_of(&e.ad_id).unwrap());
            println!("  slot {}  {} (valence {:.3})", e.slot, e.ad_id, ad.valence().value());
        }
    }

    // the cap refuses instances that would take too long
    let tiny_cap = SolveOptions {
        candidate_cap: 1_000,
        ..SolveOptions::default()
    };
    match solve_brute_force(&inst.program, &inst.inventory, &inst.rel, &params, &tiny_cap) {
        Err(e) => println!("with a cap of 1000: {e} (exit code {})", e.exit_code()),
        Ok(_) => unreachable!("the instance exceeds the cap"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
