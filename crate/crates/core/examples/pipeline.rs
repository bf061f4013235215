// File-driven pipeline, as the `adplace run` command does it: write program,
// inventory and feature files, run the solver, read the artifacts back.

use adplace::instance::{random_instance, synthetic_features};
use adplace::io::{
    load_profile, load_schedule, save_features, save_inventory, save_program, ValenceScale,
};
use adplace::run::{load_report, run, RunConfig, SolverChoice};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> adplace::Result<()> {
    let dir = tempfile::tempdir().expect("temporary directory");
    let root = dir.path();

    let inst = random_instance(8, 6, 3);
    save_program(&inst.program, ValenceScale::Hundred, &root.join("program.json"))?;
    save_inventory(&inst.inventory, ValenceScale::Hundred, &root.join("inventory.json"))?;
    let features = root.join("features");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ids: Vec<String> = inst
        .program
        .scenes()
        .iter()
        .map(|s| s.id.clone())
        .chain(inst.inventory.ads().iter().map(|a| a.id().to_string()))
        .collect();
    for f in synthetic_features(&ids, 4, 16, 3, &mut rng) {
        save_features(&features, &f)?;
    }

    for solver in [SolverChoice::Bnb, SolverChoice::Trivial] {
        let config = RunConfig {
            features_dir: Some(features.clone()),
            k: 4,
            solver,
            seed: 7,
            out: root.join(format!("out-{solver:?}").to_lowercase()),
            ..RunConfig::new(root.join("program.json"), root.join("inventory.json"))
        };
        let outcome = run(&config)?;
        let schedule = load_schedule(&outcome.schedule_path)?;
        let report = load_report(&outcome.report_path)?;
        let profile = load_profile(&outcome.profile_path)?;
        println!(
            "{solver:?}: {} ads, profile of {} points, total variation {:.2} (program alone {:.2})",
            schedule.len(),
            profile.len(),
            report.profile_total_variation,
            report.program_total_variation
        );
        if let Some(s) = &report.solve {
            println!("  reward {:.6}", s.reward);
        }
        println!("{}", std::fs::read_to_string(&outcome.schedule_path).unwrap());
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
