// The random baseline: half the ads before the first scene, half after the
// middle scene, chosen and ordered by a seeded generator.

use adplace::baselines::{midpoint_slot, trivial_schedule, HEAD_SLOT};
use adplace::instance::paper_scale_instance;
use adplace::{build_profile, total_variation, validate_schedule, Mode, RewardParams};

pub fn run_example() -> adplace::Result<()> {
    let inst = paper_scale_instance(1)?;
    let k = 8;
    println!(
        "head slot {HEAD_SLOT}, midpoint slot {}",
        midpoint_slot(&inst.program)
    );

    for seed in [7, 7, 8] {
        let s = trivial_schedule(&inst.program, &inst.inventory, k, seed)?;
        validate_schedule(&s, &inst.program, &inst.inventory, &RewardParams::with_alpha(0.5, k)?, Mode::Baseline)
            .expect("baseline schedules are baseline-valid");
        let line: Vec<String> = s
            .entries
            .iter()
            .map(|e| format!("{}@{}.{}", e.ad_id, e.slot, e.rank))
            .collect();
        let tv = total_variation(&build_profile(&s, &inst.program, &inst.inventory)?)?;
        println!("seed {seed}: {}  (total variation {tv:.2})", line.join(" "));
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
