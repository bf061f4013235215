//! Domain types shared by every solver: valences, scenes, ads, the program
//! and inventory they live in, trade-off parameters, schedules and the
//! scene-ad relevance matrix.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Valence strictly above this value is high valence.
pub const HV_THRESHOLD: f64 = 0.5;

/// Absolute tolerance used when comparing rewards and the alpha/beta sum.
pub const TOLERANCE: f64 = 1e-9;

/// Emotional valence normalized to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Valence(f64);

impl Valence {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::InvalidValence { value })
        }
    }

    /// Builds a valence from the 0-100 display scale.
    pub fn from_percent(value: f64) -> Result<Self> {
        Self::new(value / 100.0).map_err(|_| Error::InvalidValence { value })
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn percent(self) -> f64 {
        self.0 * 100.0
    }

    #[inline]
    pub fn polarity(self) -> Polarity {
        classify_polarity(self)
    }
}

impl TryFrom<f64> for Valence {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Valence::new(value)
    }
}

impl From<Valence> for f64 {
    fn from(v: Valence) -> f64 {
        v.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Polarity {
    /// High valence: pleasant, promotional content.
    Hv,
    /// Low valence: unpleasant content such as public-awareness messages.
    Lv,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarity::Hv => f.write_str("HV"),
            Polarity::Lv => f.write_str("LV"),
        }
    }
}

/// HV iff the valence is strictly above one half; 0.5 itself is LV.
pub fn classify_polarity(v: Valence) -> Polarity {
    if v.value() > HV_THRESHOLD {
        Polarity::Hv
    } else {
        Polarity::Lv
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub id: String,
    pub valence: Valence,
}

impl Scene {
    pub fn new(id: impl Into<String>, valence: Valence) -> Self {
        Self {
            id: id.into(),
            valence,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ad {
    id: String,
    valence: Valence,
    polarity: Polarity,
}

impl Ad {
    pub fn new(id: impl Into<String>, valence: Valence) -> Self {
        Self {
            id: id.into(),
            valence,
            polarity: classify_polarity(valence),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn valence(&self) -> Valence {
        self.valence
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }
}

/// An ordered program. Slot `i` (1-based) sits right after scene `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgramSpec {
    scenes: Vec<Scene>,
    slot_count: usize,
}

impl ProgramSpec {
    /// Program with one slot at every scene transition (`M = N - 1`).
    pub fn new(scenes: Vec<Scene>) -> Result<Self> {
        let m = scenes.len().saturating_sub(1);
        Self::with_slot_count(scenes, m)
    }

    pub fn with_slot_count(scenes: Vec<Scene>, slot_count: usize) -> Result<Self> {
        if scenes.len() < 2 {
            return Err(Error::TooFewScenes(scenes.len()));
        }
        if slot_count == 0 || slot_count > scenes.len() - 1 {
            return Err(Error::InvalidSlotCount {
                slots: slot_count,
                scenes: scenes.len(),
            });
        }
        let mut seen = HashMap::with_capacity(scenes.len());
        for s in &scenes {
            if seen.insert(s.id.as_str(), ()).is_some() {
                return Err(Error::DuplicateSceneId(s.id.clone()));
            }
        }
        Ok(Self { scenes, slot_count })
    }

    /// Convenience constructor from raw `[0, 1]` valences; ids are `s1`, `s2`, ...
    pub fn from_valences(valences: &[f64]) -> Result<Self> {
        let scenes = valences
            .iter()
            .enumerate()
            .map(|(i, &v)| Ok(Scene::new(format!("s{}", i + 1), Valence::new(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(scenes)
    }

    pub fn scenes(&self) -> &[Scene] {
        &self.scenes
    }

    pub fn scene_count(&self) -> usize {
        self.scenes.len()
    }

    pub fn slot_count(&self) -> usize {
        self.slot_count
    }

    /// Valence of the scene preceding the 1-based `slot`.
    pub fn scene_before_slot(&self, slot: usize) -> &Scene {
        &self.scenes[slot - 1]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdInventory {
    ads: Vec<Ad>,
    index: HashMap<String, usize>,
}

impl AdInventory {
    pub fn new(ads: Vec<Ad>) -> Result<Self> {
        if ads.is_empty() {
            return Err(Error::EmptyInventory);
        }
        let mut index = HashMap::with_capacity(ads.len());
        for (i, ad) in ads.iter().enumerate() {
            if index.insert(ad.id.clone(), i).is_some() {
                return Err(Error::DuplicateAdId(ad.id.clone()));
            }
        }
        Ok(Self { ads, index })
    }

    /// Convenience constructor from raw `[0, 1]` valences; ids are `a1`, `a2`, ...
    pub fn from_valences(valences: &[f64]) -> Result<Self> {
        let ads = valences
            .iter()
            .enumerate()
            .map(|(i, &v)| Ok(Ad::new(format!("a{}", i + 1), Valence::new(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ads)
    }

    pub fn ads(&self) -> &[Ad] {
        &self.ads
    }

    pub fn len(&self) -> usize {
        self.ads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ads.is_empty()
    }

    pub fn get(&self, index: usize) -> &Ad {
        &self.ads[index]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn count(&self, polarity: Polarity) -> usize {
        self.ads.iter().filter(|a| a.polarity == polarity).count()
    }

    /// Indices of ads with the given polarity, in inventory order.
    pub fn indices_with(&self, polarity: Polarity) -> Vec<usize> {
        self.ads
            .iter()
            .enumerate()
            .filter(|(_, a)| a.polarity == polarity)
            .map(|(i, _)| i)
            .collect()
    }

    /// Fails unless the inventory holds at least `k / 2` ads of each polarity.
    pub fn check_balanced_supply(&self, k: usize) -> Result<()> {
        let (hv, lv) = (self.count(Polarity::Hv), self.count(Polarity::Lv));
        if hv < k / 2 || lv < k / 2 {
            return Err(Error::InfeasibleInventory { k, hv, lv });
        }
        Ok(())
    }
}

/// Trade-off weights and the number of ads to embed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RewardParams {
    alpha: f64,
    beta: f64,
    k: usize,
}

impl RewardParams {
    pub fn new(alpha: f64, beta: f64, k: usize) -> Result<Self> {
        let in_unit = |x: f64| x.is_finite() && (0.0..=1.0).contains(&x);
        if !in_unit(alpha) || !in_unit(beta) || (alpha + beta - 1.0).abs() > TOLERANCE {
            return Err(Error::InvalidTradeoff { alpha, beta });
        }
        if !k.is_multiple_of(2) {
            return Err(Error::OddK { k });
        }
        Ok(Self { alpha, beta, k })
    }

    /// `beta` is set to `1 - alpha`.
    pub fn with_alpha(alpha: f64, k: usize) -> Result<Self> {
        Self::new(alpha, 1.0 - alpha, k)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Same weights, different K.
    pub fn with_k(self, k: usize) -> Result<Self> {
        Self::new(self.alpha, self.beta, k)
    }
}

/// Partition of slots `1..=M` into `K` contiguous blocks whose sizes differ by
/// at most one. Block `b` (1-based) spans `floor((b-1)M/K)+1 ..= floor(bM/K)`.
pub fn slot_blocks(slot_count: usize, k: usize) -> Vec<RangeInclusive<usize>> {
    assert!(k <= slot_count, "K={k} exceeds slot count {slot_count}");
    (1..=k)
        .map(|b| ((b - 1) * slot_count / k + 1)..=(b * slot_count / k))
        .collect()
}

/// 1-based block index containing `slot`, if any.
pub fn block_of(slot: usize, slot_count: usize, k: usize) -> Option<usize> {
    if k == 0 || slot == 0 || slot > slot_count {
        return None;
    }
    // slot lies in block b iff floor((b-1)M/K) < slot <= floor(bM/K)
    (1..=k).find(|&b| slot <= b * slot_count / k)
}

/// One scheduled ad. `slot` 0 is the head insertion point before scene 1 and
/// is only legal for baseline schedules.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub slot: usize,
    pub rank: usize,
    pub ad_id: String,
}

/// The decision variable: which ad is shown at which slot, and in which
/// order when several ads share a slot.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub entries: Vec<Placement>,
}

impl Schedule {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Strict schedule from `(slot, ad_id)` pairs, rank 0 everywhere.
    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (usize, S)>) -> Self {
        let entries = pairs
            .into_iter()
            .map(|(slot, id)| Placement {
                slot,
                rank: 0,
                ad_id: id.into(),
            })
            .collect();
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by `(slot, rank)`, i.e. presentation order.
    pub fn sorted(mut self) -> Self {
        self.entries.sort();
        self
    }

    pub fn ad_at(&self, slot: usize) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| e.slot == slot)
            .map(|e| e.ad_id.as_str())
    }
}

/// Dense `N x P` content relevance, rows are scenes and columns ads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelevanceMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl RelevanceMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let p = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != p) {
            return Err(Error::DimensionMismatch(
                "relevance rows have different lengths".into(),
            ));
        }
        Self::from_vec(n, p, rows.into_iter().flatten().collect())
    }

    pub fn from_vec(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        if let Some(bad) = values
            .iter()
            .find(|v| !v.is_finite() || v.abs() > 1.0 + TOLERANCE)
        {
            return Err(Error::DimensionMismatch(format!(
                "relevance entry {bad} outside [-1, 1]"
            )));
        }
        Ok(Self { rows, cols, values })
    }

    /// Every entry set to `value`.
    pub fn constant(rows: usize, cols: usize, value: f64) -> Result<Self> {
        Self::from_vec(rows, cols, vec![value; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Zero-based scene row, zero-based ad column.
    #[inline]
    pub fn get(&self, scene: usize, ad: usize) -> f64 {
        self.values[scene * self.cols + ad]
    }

    pub fn row(&self, scene: usize) -> &[f64] {
        &self.values[scene * self.cols..(scene + 1) * self.cols]
    }

    pub fn check_dims(&self, program: &ProgramSpec, inventory: &AdInventory) -> Result<()> {
        if self.rows != program.scene_count() || self.cols != inventory.len() {
            return Err(Error::DimensionMismatch(format!(
                "relevance is {}x{}, program/inventory need {}x{}",
                self.rows,
                self.cols,
                program.scene_count(),
                inventory.len()
            )));
        }
        Ok(())
    }
}
