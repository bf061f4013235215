// Exact branch-and-bound on a full-size instance: twelve scenes, eleven
// slots, 24 ads, eight to place. Brute force would score roughly 10^12
// candidates here; the search below expands a few hundred nodes.

use adplace::instance::paper_scale_instance;
use adplace::solvers::count_candidates;
use adplace::{build_profile, solve_branch_and_bound, total_variation, RewardParams, Schedule};

pub fn run_example() -> adplace::Result<()> {
    let inst = paper_scale_instance(1)?;
    let params = RewardParams::new(0.5, 0.5, 8)?;
    println!(
        "brute force would score {} candidates",
        count_candidates(&inst.inventory, inst.program.slot_count(), 8)
    );

    let r = solve_branch_and_bound(&inst.program, &inst.inventory, &inst.rel, &params)?;
    println!(
        "reward {:.6}: {} nodes expanded, {} pruned, {} complete schedules, {:?}",
        r.reward, r.nodes_explored, r.nodes_pruned, r.candidates_evaluated, r.wall_time
    );
    for e in &r.schedule.entries {
        let ad = inst.inventory.get(inst.inventory.index_of(&e.ad_id).unwrap());
        println!(
            "  slot {:>2}  {:<4} {:?} valence {:.3}",
            e.slot,
            e.ad_id,
            ad.polarity(),
            ad.valence().value()
        );
    }

    let with_ads = total_variation(&build_profile(&r.schedule, &inst.program, &inst.inventory)?)?;
    let bare = total_variation(&build_profile(&Schedule::empty(), &inst.program, &inst.inventory)?)?;
    println!("profile total variation {with_ads:.2} vs {bare:.2} without ads");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
