//! Scene-ad content relevance from precomputed keyframe features.
//!
//! Each scene and ad carries `F` keyframe vectors (40 x 512-D by default).
//! Relevance is the mean cosine similarity over frame pairs. Values stay in
//! `[-1, 1]` and are never clamped to be non-negative.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AdInventory, ProgramSpec, RelevanceMatrix};

pub const DEFAULT_FRAMES: usize = 40;
pub const DEFAULT_DIM: usize = 512;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Pairing {
    /// Frame `k` of the scene against frame `k` of the ad: `F` pairs.
    #[default]
    Aligned,
    /// Every scene frame against every ad frame: `F * F` pairs.
    #[value(name = "all_pairs")]
    AllPairs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeyframeFeatures {
    entity_id: String,
    frames: Vec<Vec<f64>>,
}

impl KeyframeFeatures {
    pub fn new(entity_id: impl Into<String>, frames: Vec<Vec<f64>>) -> Result<Self> {
        let entity_id = entity_id.into();
        let dim = frames
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::DimensionMismatch(format!("`{entity_id}` has no frames")))?;
        if dim == 0 {
            return Err(Error::DimensionMismatch(format!(
                "`{entity_id}` has zero-dimensional features"
            )));
        }
        for f in &frames {
            if f.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "`{entity_id}` mixes {dim}-D and {}-D frames",
                    f.len()
                )));
            }
            if norm(f) == 0.0 {
                return Err(Error::ZeroNormVector);
            }
        }
        Ok(Self { entity_id, frames })
    }

    pub fn entity_id(&self) -> &str {
        &self.entity_id
    }

    pub fn frames(&self) -> &[Vec<f64>] {
        &self.frames
    }

    pub fn frame_count(&self) -> usize {
        self.frames.len()
    }

    pub fn dim(&self) -> usize {
        self.frames[0].len()
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn norm(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {} and {}",
            u.len(),
            v.len()
        )));
    }
    let denom = norm(u) * norm(v);
    if denom == 0.0 {
        return Err(Error::ZeroNormVector);
    }
    // rounding can push |cos| a hair past 1
    Ok((dot(u, v) / denom).clamp(-1.0, 1.0))
}

pub fn pair_relevance(
    scene: &KeyframeFeatures,
    ad: &KeyframeFeatures,
    pairing: Pairing,
) -> Result<f64> {
    if scene.frame_count() != ad.frame_count() {
        return Err(Error::FrameCountMismatch {
            left: scene.frame_count(),
            right: ad.frame_count(),
        });
    }
    match pairing {
        Pairing::Aligned => {
            let mut total = 0.0;
            for (s, a) in scene.frames.iter().zip(&ad.frames) {
                total += cosine_similarity(s, a)?;
            }
            Ok(total / scene.frame_count() as f64)
        }
        Pairing::AllPairs => {
            let mut total = 0.0;
            for s in &scene.frames {
                for a in &ad.frames {
                    total += cosine_similarity(s, a)?;
                }
            }
            Ok(total / (scene.frame_count() * ad.frame_count()) as f64)
        }
    }
}

/// Relevance for every (scene, ad) pair, looked up by entity id. Rows follow
/// program order and columns follow inventory order.
pub fn build_relevance_matrix(
    program: &ProgramSpec,
    inventory: &AdInventory,
    scene_features: &[KeyframeFeatures],
    ad_features: &[KeyframeFeatures],
    pairing: Pairing,
) -> Result<RelevanceMatrix> {
    let by_id = |feats: &'_ [KeyframeFeatures]| -> HashMap<String, usize> {
        feats
            .iter()
            .enumerate()
            .map(|(i, f)| (f.entity_id.clone(), i))
            .collect()
    };
    let scene_idx = by_id(scene_features);
    let ad_idx = by_id(ad_features);

    let rows: Vec<&KeyframeFeatures> = program
        .scenes()
        .iter()
        .map(|s| {
            scene_idx
                .get(&s.id)
                .map(|&i| &scene_features[i])
                .ok_or_else(|| Error::MissingEntity(s.id.clone()))
        })
        .collect::<Result<_>>()?;
    let cols: Vec<&KeyframeFeatures> = inventory
        .ads()
        .iter()
        .map(|a| {
            ad_idx
                .get(a.id())
                .map(|&i| &ad_features[i])
                .ok_or_else(|| Error::MissingEntity(a.id().to_string()))
        })
        .collect::<Result<_>>()?;

    let values: Vec<f64> = rows
        .par_iter()
        .map(|s| {
            cols.iter()
                .map(|a| pair_relevance(s, a, pairing))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<Vec<f64>>>>()?
        .into_iter()
        .flatten()
        .collect();
    RelevanceMatrix::from_vec(rows.len(), cols.len(), values)
}
