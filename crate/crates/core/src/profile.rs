//! Valence profile of the program with ads spliced in, on the 0-100 scale.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AdInventory, ProgramSpec, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Scene,
    Ad,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub position: usize,
    pub kind: PointKind,
    pub entity_id: String,
    pub valence_0_100: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VpsProfile {
    pub points: Vec<ProfilePoint>,
}

impl VpsProfile {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ads(&self) -> impl Iterator<Item = &ProfilePoint> {
        self.points.iter().filter(|p| p.kind == PointKind::Ad)
    }

    pub fn scenes(&self) -> impl Iterator<Item = &ProfilePoint> {
        self.points.iter().filter(|p| p.kind == PointKind::Scene)
    }
}

/// Interleaves scenes and ads in presentation order. Head-slot ads come
/// before scene 1; ads at slot `i` follow scene `i` in rank order.
pub fn build_profile(
    schedule: &Schedule,
    program: &ProgramSpec,
    inventory: &AdInventory,
) -> Result<VpsProfile> {
    let mut by_slot: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for e in &schedule.entries {
        let ad = inventory
            .index_of(&e.ad_id)
            .ok_or_else(|| Error::UnknownAdId(e.ad_id.clone()))?;
        by_slot.entry(e.slot).or_default().push((e.rank, ad));
    }
    for ads in by_slot.values_mut() {
        ads.sort_unstable();
    }

    let mut points = Vec::with_capacity(program.scene_count() + schedule.len());
    let mut push = |kind, id: &str, valence: f64| {
        points.push(ProfilePoint {
            position: points.len() + 1,
            kind,
            entity_id: id.to_string(),
            valence_0_100: valence * 100.0,
        });
    };
    let push_ads = |slot: usize, push: &mut dyn FnMut(PointKind, &str, f64)| {
        for &(_, ad) in by_slot.get(&slot).map(Vec::as_slice).unwrap_or(&[]) {
            let a = inventory.get(ad);
            push(PointKind::Ad, a.id(), a.valence().value());
        }
    };

    push_ads(0, &mut push);
    for (i, scene) in program.scenes().iter().enumerate() {
        push(PointKind::Scene, &scene.id, scene.valence.value());
        push_ads(i + 1, &mut push);
    }
    Ok(VpsProfile { points })
}

/// Sum of absolute valence jumps between consecutive points, 0-100 scale.
pub fn total_variation(profile: &VpsProfile) -> Result<f64> {
    if profile.len() < 2 {
        return Err(Error::TooShort(profile.len()));
    }
    Ok(profile
        .points
        .windows(2)
        .map(|w| (w[1].valence_0_100 - w[0].valence_0_100).abs())
        .sum())
}
