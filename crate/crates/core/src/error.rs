use std::path::PathBuf;

use thiserror::Error;

use crate::validate::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("valence {value} is outside [0, 1]")]
    InvalidValence { value: f64 },

    #[error("duplicate scene id `{0}`")]
    DuplicateSceneId(String),

    #[error("duplicate ad id `{0}`")]
    DuplicateAdId(String),

    #[error("program needs at least 2 scenes, got {0}")]
    TooFewScenes(usize),

    #[error("slot count {slots} is invalid for {scenes} scenes (expected 1..={max})", max = scenes.saturating_sub(1))]
    InvalidSlotCount { slots: usize, scenes: usize },

    #[error("ad inventory is empty")]
    EmptyInventory,

    #[error("alpha + beta must equal 1 (got alpha={alpha}, beta={beta})")]
    InvalidTradeoff { alpha: f64, beta: f64 },

    #[error("K={k} violates the HV/LV balance constraint: K must be even so that K/2 HV and K/2 LV ads are embedded")]
    OddK { k: usize },

    #[error("K={k} exceeds the number of ad slots M={slots}")]
    KExceedsSlots { k: usize, slots: usize },

    #[error("inventory cannot supply a balanced selection of K={k} ads: need {need} HV and {need} LV, have {hv} HV and {lv} LV", need = k / 2)]
    InfeasibleInventory { k: usize, hv: usize, lv: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("schedule is infeasible: {0}")]
    InfeasibleSchedule(Violation),

    #[error("unknown ad id `{0}`")]
    UnknownAdId(String),

    #[error("feature vector has zero norm")]
    ZeroNormVector,

    #[error("frame count mismatch: {left} vs {right}")]
    FrameCountMismatch { left: usize, right: usize },

    #[error("no keyframe features for `{0}`")]
    MissingEntity(String),

    #[error("profile needs at least 2 points, got {0}")]
    TooShort(usize),

    #[error("brute force would score {candidates} candidates, above the cap of {cap}; use branch-and-bound instead")]
    InstanceTooLarge { candidates: u128, cap: u128 },

    #[error("LP relaxation failed: {0}")]
    Lp(String),

    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error("{}: field `{field}`: valence {value} out of range for scale {scale}", path.display())]
    ValenceOutOfRange {
        path: PathBuf,
        field: String,
        value: f64,
        scale: &'static str,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::OddK { .. }
            | Error::KExceedsSlots { .. }
            | Error::InfeasibleInventory { .. }
            | Error::InfeasibleSchedule(_) => 2,
            Error::InstanceTooLarge { .. } => 3,
            Error::Invariant(_) | Error::Lp(_) => 4,
            _ => 1,
        }
    }
}
