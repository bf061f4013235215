// Benchmark harness: brute force against branch-and-bound over a grid of
// instance shapes. Cells over the candidate cap skip brute force.

use adplace::bench::{benchmark, parse_grid, BenchOptions};

pub fn run_example() -> adplace::Result<()> {
    let grid = parse_grid("6x4x2,8x6x4,10x8x4,20x11x8")?;
    let rows = benchmark(&grid, &BenchOptions::default());
    println!("  P   M   K  brute candidates  brute reward   B&B reward  B&B nodes  agree");
    for r in &rows {
        let brute = r
            .brute_force
            .as_ref()
            .map_or("skipped".to_string(), |b| format!("{:.6}", b.reward));
        let bnb = r.branch_and_bound.as_ref().expect("B&B always runs");
        println!(
            "{:>3} {:>3} {:>3}  {:>16}  {:>12}  {:>11.6}  {:>9}  {}",
            r.ads,
            r.slots,
            r.k,
            r.brute_force_candidates,
            brute,
            bnb.reward,
            bnb.nodes_explored,
            r.rewards_agree.map_or("-".into(), |a| a.to_string())
        );
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
