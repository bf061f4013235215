//! Affect-aware ad selection and placement inside program videos.
//!
//! Given per-scene and per-ad valence scores and a scene-ad content relevance
//! matrix, choose `K` ads (half high valence, half low valence) and place them
//! at scene transitions so as to maximize
//!
//! ```text
//! alpha * sum i * (1 - val(ad))  +  beta * sum |val(scene) - val(ad)| * rel(scene, ad)
//! ```
//!
//! over scheduled (slot `i`, ad) pairs, with one ad per contiguous block of
//! slots. Three solvers share one interface: exhaustive enumeration, an
//! exact branch-and-bound, and an LP relaxation with greedy rounding. A
//! random "trivial" scheduler serves as a baseline.
//!
//! The crate's `examples/` directory has one runnable program per capability;
//! the `adplace` binary wraps [`run::run`] and [`bench::benchmark`].

pub mod baselines;
pub mod bench;
pub mod error;
pub mod instance;
pub mod io;
pub mod model;
pub mod profile;
pub mod relevance;
pub mod reward;
pub mod run;
pub mod solvers;
pub mod validate;

pub use error::{Error, Result};
pub use model::{
    classify_polarity, slot_blocks, Ad, AdInventory, Placement, Polarity, ProgramSpec,
    RelevanceMatrix, RewardParams, Scene, Schedule, Valence,
};
pub use profile::{build_profile, total_variation, VpsProfile};
pub use relevance::{build_relevance_matrix, cosine_similarity, pair_relevance, KeyframeFeatures, Pairing};
pub use reward::reward;
pub use solvers::{
    solve, solve_branch_and_bound, solve_brute_force, solve_lp_relax, SolveOptions, SolveReport,
    SolverKind,
};
pub use validate::{validate_schedule, Mode, Violation};
