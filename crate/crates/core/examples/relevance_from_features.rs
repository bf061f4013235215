// Scene-ad relevance from keyframe features: cosine similarity per frame
// pair, averaged, under either pairing scheme.

use adplace::instance::synthetic_features;
use adplace::{
    build_relevance_matrix, cosine_similarity, pair_relevance, AdInventory, Pairing, ProgramSpec,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> adplace::Result<()> {
    println!("cos((1,2,3), (4,5,6)) = {:.6}", cosine_similarity(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0])?);

    let program = ProgramSpec::from_valences(&[0.7, 0.2, 0.5, 0.9])?;
    let inventory = AdInventory::from_valences(&[0.8, 0.3, 0.6])?;
    let scene_ids: Vec<String> = program.scenes().iter().map(|s| s.id.clone()).collect();
    let ad_ids: Vec<String> = inventory.ads().iter().map(|a| a.id().to_string()).collect();

    // ten keyframes of 64-D features, drawn around three topics
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let scenes = synthetic_features(&scene_ids, 10, 64, 3, &mut rng);
    let ads = synthetic_features(&ad_ids, 10, 64, 3, &mut rng);

    println!(
        "s1 vs a1: aligned {:.4}, all pairs {:.4}",
        pair_relevance(&scenes[0], &ads[0], Pairing::Aligned)?,
        pair_relevance(&scenes[0], &ads[0], Pairing::AllPairs)?
    );

    let rel = build_relevance_matrix(&program, &inventory, &scenes, &ads, Pairing::Aligned)?;
    print!("      ");
    for id in &ad_ids {
        print!("{id:>8}");
    }
    println!();
    for (i, id) in scene_ids.iter().enumerate() {
        print!("{id:<6}");
        for v in rel.row(i) {
            print!("{v:>8.4}");
        }
        println!();
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
