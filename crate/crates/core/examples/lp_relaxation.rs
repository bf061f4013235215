// LP relaxation with greedy rounding: a fast feasible schedule plus an upper
// bound that brackets the true optimum.

use adplace::instance::random_instance;
use adplace::{solve_branch_and_bound, solve_lp_relax, RewardParams};

pub fn run_example() -> adplace::Result<()> {
    println!("seed   rounded   optimum   LP bound   gap");
    for seed in 0..8 {
        let inst = random_instance(12, 9, seed);
        let params = RewardParams::new(0.5, 0.5, 4)?;
        let lp = solve_lp_relax(&inst.program, &inst.inventory, &inst.rel, &params)?;
        let opt = solve_branch_and_bound(&inst.program, &inst.inventory, &inst.rel, &params)?;
        let bound = lp.upper_bound.expect("the LP solver reports its bound");
        assert!(lp.reward <= opt.reward + 1e-9 && opt.reward <= bound + 1e-9);
        println!(
            "{seed:>4}  {:>8.4}  {:>8.4}  {:>9.4}  {:>5.2}%",
            lp.reward,
            opt.reward,
            bound,
            100.0 * (opt.reward - lp.reward) / opt.reward.abs().max(1e-12)
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
