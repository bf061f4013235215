//! Seeded random instances for tests, examples and benchmarks.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64`, so an instance is a
//! pure function of its shape and seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::model::{Ad, AdInventory, ProgramSpec, RelevanceMatrix, Scene, Valence};
use crate::relevance::{build_relevance_matrix, KeyframeFeatures, Pairing};

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub program: ProgramSpec,
    pub inventory: AdInventory,
    pub rel: RelevanceMatrix,
}

/// A valence strictly above one half.
fn high_valence(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - 0.5 * rng.gen::<f64>()
}

/// A valence in `[0, 0.5)`.
fn low_valence(rng: &mut ChaCha8Rng) -> f64 {
    0.5 * rng.gen::<f64>()
}

fn inventory(rng: &mut ChaCha8Rng, hv: usize, lv: usize) -> AdInventory {
    let mut vals: Vec<f64> = (0..hv).map(|_| high_valence(rng)).collect();
    vals.extend((0..lv).map(|_| low_valence(rng)));
    vals.shuffle(rng);
    let ads = vals
        .into_iter()
        .enumerate()
        .map(|(i, v)| Ad::new(format!("a{}", i + 1), Valence::new(v).expect("in range")))
        .collect();
    AdInventory::new(ads).expect("non-empty, unique ids")
}

fn program(rng: &mut ChaCha8Rng, scenes: usize) -> ProgramSpec {
    let scenes = (0..scenes)
        .map(|i| Scene::new(format!("s{}", i + 1), Valence::new(rng.gen()).expect("in range")))
        .collect();
    ProgramSpec::new(scenes).expect("at least two scenes")
}

/// `slots + 1` scenes with uniform valences, `ads` ads split as evenly as
/// possible between HV and LV (extra one HV), relevance uniform in `[0, 1)`.
///
/// Panics if `slots == 0` or `ads == 0`.
pub fn random_instance(ads: usize, slots: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let program = program(&mut rng, slots + 1);
    let hv = ads.div_ceil(2);
    let inventory = inventory(&mut rng, hv, ads - hv);
    let values = (0..program.scene_count() * ads).map(|_| rng.gen()).collect();
    let rel = RelevanceMatrix::from_vec(program.scene_count(), ads, values).expect("in range");
    Instance {
        program,
        inventory,
        rel,
    }
}

/// Synthetic keyframe features: each entity belongs to one of `topics`
/// non-negative prototype vectors and its frames are the prototype plus
/// non-negative noise, so same-topic pairs score high and others lower.
pub fn synthetic_features(
    ids: &[String],
    frames: usize,
    dim: usize,
    topics: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<KeyframeFeatures> {
    let prototypes: Vec<Vec<f64>> = (0..topics)
        .map(|_| {
            (0..dim)
                .map(|_| if rng.gen_bool(0.2) { rng.gen::<f64>() * 4.0 } else { 0.0 })
                .collect()
        })
        .collect();
    ids.iter()
        .map(|id| {
            let proto = &prototypes[rng.gen_range(0..topics)];
            let fs = (0..frames)
                .map(|_| proto.iter().map(|&x| x + rng.gen::<f64>() * 0.5).collect())
                .collect();
            KeyframeFeatures::new(id.clone(), fs).expect("positive noise keeps norms non-zero")
        })
        .collect()
}

/// Twelve scenes (eleven slots), 24 ads split 12 HV / 12 LV, relevance
/// built from synthetic 40 x 512 keyframe features with aligned pairing.
pub fn paper_scale_instance(seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let program = program(&mut rng, 12);
    let inventory = inventory(&mut rng, 12, 12);
    let scene_ids: Vec<String> = program.scenes().iter().map(|s| s.id.clone()).collect();
    let ad_ids: Vec<String> = inventory.ads().iter().map(|a| a.id().to_string()).collect();
    let scene_feats = synthetic_features(&scene_ids, 40, 512, 5, &mut rng);
    let ad_feats = synthetic_features(&ad_ids, 40, 512, 5, &mut rng);
    let rel = build_relevance_matrix(
        &program,
        &inventory,
        &scene_feats,
        &ad_feats,
        Pairing::Aligned,
    )?;
    Ok(Instance {
        program,
        inventory,
        rel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Polarity;

    #[test]
    fn reproducible_and_balanced() {
        let a = random_instance(7, 5, 11);
        let b = random_instance(7, 5, 11);
        assert_eq!(a, b);
        assert_ne!(a, random_instance(7, 5, 12));
        assert_eq!(a.program.slot_count(), 5);
        assert_eq!(a.inventory.count(Polarity::Hv), 4);
        assert_eq!(a.inventory.count(Polarity::Lv), 3);
        assert_eq!((a.rel.rows(), a.rel.cols()), (6, 7));
    }

    #[test]
    fn paper_scale_shape() {
        let inst = paper_scale_instance(1).unwrap();
        assert_eq!(inst.program.scene_count(), 12);
        assert_eq!(inst.program.slot_count(), 11);
        assert_eq!(inst.inventory.count(Polarity::Hv), 12);
        assert_eq!(inst.inventory.count(Polarity::Lv), 12);
        for i in 0..12 {
            for j in 0..24 {
                let r = inst.rel.get(i, j);
                assert!((0.0..=1.0).contains(&r));
            }
        }
    }
}
