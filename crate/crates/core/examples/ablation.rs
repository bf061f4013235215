// What the position term does: solve the same instance with and without it
// and compare where the low-valence ads land and how spiky the profile is.

use adplace::instance::paper_scale_instance;
use adplace::profile::PointKind;
use adplace::{
    build_profile, solve_branch_and_bound, total_variation, Polarity, RewardParams, Schedule,
};

pub fn run_example() -> adplace::Result<()> {
    let inst = paper_scale_instance(1)?;
    let bare = build_profile(&Schedule::empty(), &inst.program, &inst.inventory)?;
    println!("no ads: total variation {:.2}", total_variation(&bare)?);

    for alpha in [0.5, 0.0] {
        let params = RewardParams::with_alpha(alpha, 8)?;
        let r = solve_branch_and_bound(&inst.program, &inst.inventory, &inst.rel, &params)?;
        let lv_slots: Vec<usize> = r
            .schedule
            .entries
            .iter()
            .filter(|e| {
                let j = inst.inventory.index_of(&e.ad_id).unwrap();
                inst.inventory.get(j).polarity() == Polarity::Lv
            })
            .map(|e| e.slot)
            .collect();
        let mean = lv_slots.iter().sum::<usize>() as f64 / lv_slots.len() as f64;
        let profile = build_profile(&r.schedule, &inst.program, &inst.inventory)?;
        println!(
            "alpha {alpha:.1}, beta {:.1}: LV ads at {lv_slots:?} (mean {mean:.2}), total variation {:.2}",
            params.beta(),
            total_variation(&profile)?
        );
        let trace: Vec<String> = profile
            .points
            .iter()
            .map(|p| match p.kind {
                PointKind::Scene => format!("{:.0}", p.valence_0_100),
                PointKind::Ad => format!("[{:.0}]", p.valence_0_100),
            })
            .collect();
        println!("  {}", trace.join(" "));
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
