// Smallest end-to-end use: build an instance by hand, score two schedules,
// and let a solver pick the better one.
//
// Three scenes give two slots; one HV and one LV ad; K = 2, so each slot is
// its own block and each gets one ad.

use adplace::{
    reward, solve_brute_force, validate_schedule, AdInventory, Mode, ProgramSpec,
    RelevanceMatrix, RewardParams, Schedule, SolveOptions,
};

pub fn run_example() -> adplace::Result<()> {
    let program = ProgramSpec::from_valences(&[0.9, 0.1, 0.8])?; // s1, s2, s3
    let inventory = AdInventory::from_valences(&[0.8, 0.2])?; // a1 (HV), a2 (LV)
    let rel = RelevanceMatrix::constant(3, 2, 1.0)?;
    let params = RewardParams::new(0.5, 0.5, 2)?;

    let lv_first = Schedule::from_pairs([(1, "a2"), (2, "a1")]);
    let hv_first = Schedule::from_pairs([(1, "a1"), (2, "a2")]);
    for (name, s) in [("a2@1 a1@2", &lv_first), ("a1@1 a2@2", &hv_first)] {
        validate_schedule(s, &program, &inventory, &params, Mode::Strict)
            .expect("both schedules are feasible");
        println!("{name}: reward {:.6}", reward(s, &program, &inventory, &rel, &params)?);
    }

    let best = solve_brute_force(&program, &inventory, &rel, &params, &SolveOptions::default())?;
    println!(
        "brute force picks {:?} with reward {:.6} after {} candidates",
        best.schedule
            .entries
            .iter()
            .map(|e| format!("{}@{}", e.ad_id, e.slot))
            .collect::<Vec<_>>(),
        best.reward,
        best.candidates_evaluated
    );
    assert_eq!(best.schedule, lv_first);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
