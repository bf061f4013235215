//! On-disk formats.
//!
//! * Program and inventory: JSON objects with a `format` header, e.g.
//!   `{"format": "adplace-program/1", "scenes": [{"id": "s1", "valence": 90}]}`.
//!   Valences are read on the scale chosen by [`ValenceScale`].
//! * Keyframe features: one text file per entity, `<dir>/<id>.txt`, holding
//!   F rows of D numbers separated by whitespace or commas.
//! * Relevance grid: text, first line `# adplace-rel/1`, then N rows of P numbers.
//! * Outputs (schedule, report, profile): JSON with a `format` header.
//!
//! Numbers are written with serde_json's shortest round-trip representation,
//! so every written value parses back to the identical `f64`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Ad, AdInventory, ProgramSpec, RelevanceMatrix, Scene, Schedule, Valence};
use crate::profile::VpsProfile;
use crate::relevance::KeyframeFeatures;

pub const PROGRAM_FORMAT: &str = "adplace-program/1";
pub const INVENTORY_FORMAT: &str = "adplace-inventory/1";
pub const SCHEDULE_FORMAT: &str = "adplace-schedule/1";
pub const REPORT_FORMAT: &str = "adplace-report/1";
pub const PROFILE_FORMAT: &str = "adplace-profile/1";
pub const REL_HEADER: &str = "# adplace-rel/1";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ValenceScale {
    /// Valences already in `[0, 1]`.
    Unit,
    /// Valences on the 0-100 display scale.
    #[default]
    Hundred,
}

impl ValenceScale {
    fn name(self) -> &'static str {
        match self {
            ValenceScale::Unit => "unit",
            ValenceScale::Hundred => "hundred",
        }
    }

    fn divisor(self) -> f64 {
        match self {
            ValenceScale::Unit => 1.0,
            ValenceScale::Hundred => 100.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct EntityRecord {
    id: String,
    valence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ProgramFile {
    format: String,
    scenes: Vec<EntityRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    slots: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct InventoryFile {
    format: String,
    ads: Vec<EntityRecord>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `contents`, creating missing parent directories.
fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|source| Error::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| parse_error(path, e.to_string()))
}

fn check_format(path: &Path, found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(parse_error(
            path,
            format!("field `format`: expected `{expected}`, found `{found}`"),
        ));
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn valence(path: &Path, field: &str, raw: f64, scale: ValenceScale) -> Result<Valence> {
    Valence::new(raw / scale.divisor()).map_err(|_| Error::ValenceOutOfRange {
        path: path.to_path_buf(),
        field: field.to_string(),
        value: raw,
        scale: scale.name(),
    })
}

pub fn parse_program(path: &Path, text: &str, scale: ValenceScale) -> Result<ProgramSpec> {
    let file: ProgramFile = parse_json(path, text)?;
    check_format(path, &file.format, PROGRAM_FORMAT)?;
    if file.scenes.is_empty() {
        return Err(parse_error(path, "field `scenes`: scene list is empty"));
    }
    let scenes = file
        .scenes
        .iter()
        .enumerate()
        .map(|(i, r)| {
            Ok(Scene::new(
                r.id.clone(),
                valence(path, &format!("scenes[{i}].valence"), r.valence, scale)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let slots = file.slots.unwrap_or(scenes.len().saturating_sub(1));
    ProgramSpec::with_slot_count(scenes, slots).map_err(|e| match e {
        Error::DuplicateSceneId(_) => e,
        other => parse_error(path, other.to_string()),
    })
}

pub fn load_program(path: &Path, scale: ValenceScale) -> Result<ProgramSpec> {
    parse_program(path, &read(path)?, scale)
}

pub fn program_to_string(program: &ProgramSpec, scale: ValenceScale) -> String {
    let slots = (program.slot_count() != program.scene_count() - 1).then_some(program.slot_count());
    to_json(&ProgramFile {
        format: PROGRAM_FORMAT.into(),
        scenes: program
            .scenes()
            .iter()
            .map(|s| EntityRecord {
                id: s.id.clone(),
                valence: s.valence.value() * scale.divisor(),
            })
            .collect(),
        slots,
    })
}

pub fn save_program(program: &ProgramSpec, scale: ValenceScale, path: &Path) -> Result<()> {
    write(path, &program_to_string(program, scale))
}

pub fn parse_inventory(path: &Path, text: &str, scale: ValenceScale) -> Result<AdInventory> {
    let file: InventoryFile = parse_json(path, text)?;
    check_format(path, &file.format, INVENTORY_FORMAT)?;
    if file.ads.is_empty() {
        return Err(parse_error(path, "field `ads`: ad list is empty"));
    }
    let ads = file
        .ads
        .iter()
        .enumerate()
        .map(|(i, r)| {
            Ok(Ad::new(
                r.id.clone(),
                valence(path, &format!("ads[{i}].valence"), r.valence, scale)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    AdInventory::new(ads)
}

pub fn load_inventory(path: &Path, scale: ValenceScale) -> Result<AdInventory> {
    parse_inventory(path, &read(path)?, scale)
}

pub fn inventory_to_string(inventory: &AdInventory, scale: ValenceScale) -> String {
    to_json(&InventoryFile {
        format: INVENTORY_FORMAT.into(),
        ads: inventory
            .ads()
            .iter()
            .map(|a| EntityRecord {
                id: a.id().to_string(),
                valence: a.valence().value() * scale.divisor(),
            })
            .collect(),
    })
}

pub fn save_inventory(inventory: &AdInventory, scale: ValenceScale, path: &Path) -> Result<()> {
    write(path, &inventory_to_string(inventory, scale))
}

/// Rows of numbers; blank lines and `#` comments are skipped. Errors carry
/// the 1-based line and column, and a row whose width differs from the first
/// row is reported at its line.
fn parse_grid(path: &Path, text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .enumerate()
            .map(|(col, tok)| {
                tok.parse::<f64>().map_err(|_| {
                    parse_error(
                        path,
                        format!("line {} field {}: `{tok}` is not a number", ln + 1, col + 1),
                    )
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(parse_error(
                    path,
                    format!("line {}: {} values, expected {first}", ln + 1, row.len()),
                ));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_features(path: &Path, entity_id: &str, text: &str) -> Result<KeyframeFeatures> {
    let rows = parse_grid(path, text)?;
    KeyframeFeatures::new(entity_id, rows).map_err(|e| parse_error(path, e.to_string()))
}

pub fn feature_path(dir: &Path, entity_id: &str) -> PathBuf {
    dir.join(format!("{entity_id}.txt"))
}

/// Loads `<dir>/<id>.txt` for each id; a missing file is [`Error::MissingEntity`].
pub fn load_features<'a>(
    dir: &Path,
    ids: impl IntoIterator<Item = &'a str>,
) -> Result<Vec<KeyframeFeatures>> {
    ids.into_iter()
        .map(|id| {
            let path = feature_path(dir, id);
            if !path.exists() {
                return Err(Error::MissingEntity(id.to_string()));
            }
            parse_features(&path, id, &read(&path)?)
        })
        .collect()
}

pub fn features_to_string(features: &KeyframeFeatures) -> String {
    let mut out = String::new();
    for frame in features.frames() {
        let line: Vec<String> = frame.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn save_features(dir: &Path, features: &KeyframeFeatures) -> Result<()> {
    write(
        &feature_path(dir, features.entity_id()),
        &features_to_string(features),
    )
}

pub fn parse_rel(path: &Path, text: &str) -> Result<RelevanceMatrix> {
    if let Some(first) = text.lines().map(str::trim).find(|l| !l.is_empty()) {
        if first.starts_with("# adplace-rel/") && first != REL_HEADER {
            return Err(parse_error(
                path,
                format!("line 1: unsupported header `{first}`, expected `{REL_HEADER}`"),
            ));
        }
    }
    let rows = parse_grid(path, text)?;
    if rows.is_empty() {
        return Err(parse_error(path, "relevance grid is empty"));
    }
    RelevanceMatrix::from_rows(rows).map_err(|e| parse_error(path, e.to_string()))
}

pub fn load_rel(path: &Path) -> Result<RelevanceMatrix> {
    parse_rel(path, &read(path)?)
}

pub fn rel_to_string(rel: &RelevanceMatrix) -> String {
    let mut out = format!("{REL_HEADER}\n");
    for i in 0..rel.rows() {
        let line: Vec<String> = rel.row(i).iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn save_rel(rel: &RelevanceMatrix, path: &Path) -> Result<()> {
    write(path, &rel_to_string(rel))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ScheduleFile {
    format: String,
    #[serde(flatten)]
    schedule: Schedule,
}

pub fn schedule_to_string(schedule: &Schedule) -> String {
    to_json(&ScheduleFile {
        format: SCHEDULE_FORMAT.into(),
        schedule: schedule.clone().sorted(),
    })
}

pub fn parse_schedule(path: &Path, text: &str) -> Result<Schedule> {
    let file: ScheduleFile = parse_json(path, text)?;
    check_format(path, &file.format, SCHEDULE_FORMAT)?;
    Ok(file.schedule)
}

pub fn load_schedule(path: &Path) -> Result<Schedule> {
    parse_schedule(path, &read(path)?)
}

pub fn save_schedule(schedule: &Schedule, path: &Path) -> Result<()> {
    write(path, &schedule_to_string(schedule))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ProfileFile {
    format: String,
    #[serde(flatten)]
    profile: VpsProfile,
}

pub fn profile_to_string(profile: &VpsProfile) -> String {
    to_json(&ProfileFile {
        format: PROFILE_FORMAT.into(),
        profile: profile.clone(),
    })
}

pub fn parse_profile(path: &Path, text: &str) -> Result<VpsProfile> {
    let file: ProfileFile = parse_json(path, text)?;
    check_format(path, &file.format, PROFILE_FORMAT)?;
    Ok(file.profile)
}

pub fn load_profile(path: &Path) -> Result<VpsProfile> {
    parse_profile(path, &read(path)?)
}

pub fn save_profile(profile: &VpsProfile, path: &Path) -> Result<()> {
    write(path, &profile_to_string(profile))
}

pub(crate) fn write_text(path: &Path, contents: &str) -> Result<()> {
    write(path, contents)
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    read(path)
}

pub(crate) fn json<T: Serialize>(value: &T) -> String {
    to_json(value)
}

pub(crate) fn from_json<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T> {
    parse_json(path, text)
}
