//! File formats: scene files, result files, prior and template files,
//! SVG floorplans. All writers are atomic (temp file + rename) and
//! byte-deterministic for a given value.

mod result;
mod scene_file;
mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub use result::{
    region_from_record, region_record, ExtractFile, FloorRecord, FunctionRegionRecord, InputRecord, InscribedRecord,
    ObjectRecordOut, PlacementRecord, PolygonRecord, PostRecord, PriorFile, ResultFile, SceneRecord, SimplifiedRecord,
    SolutionRecord, TemplateFile, TransformRecord, EXTRACT_FORMAT, PRIOR_FORMAT, RESULT_FORMAT, RESULT_VERSION,
};
pub use scene_file::{
    load_scene, load_scene_str, save_scene, scene_to_string, LoadedScene, ObbRecord, ObjectRecord, RoomRecord, SceneFile,
    SCENE_VERSION,
};
pub use svg::{render_svg, svg_string, Artifact, PX_PER_M};

use crate::scene::SceneError;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Syntax {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}:{line}: `{field}`{object}: {reason}", object = object.as_ref().map(|o| format!(" of object `{o}`")).unwrap_or_default())]
    Schema {
        path: PathBuf,
        line: usize,
        object: Option<String>,
        field: String,
        reason: String,
    },
    #[error("{path}: unsupported schema version {found} (expected {expected})")]
    Version { path: PathBuf, found: u32, expected: u32 },
    #[error("{path}: contents changed since the result was written (sha256 {expected}, now {found})")]
    DigestMismatch { path: PathBuf, expected: String, found: String },
    #[error("{path}: {source}")]
    Scene {
        path: PathBuf,
        #[source]
        source: SceneError,
    },
}

impl IoError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        IoError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn syntax(path: &Path, e: &serde_json::Error) -> Self {
        IoError::Syntax {
            path: path.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }

    /// True for failures of the file system rather than of the contents.
    pub fn is_io(&self) -> bool {
        matches!(self, IoError::Io { .. })
    }
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, IoError> {
    std::fs::read(path).map_err(|e| IoError::io(path, e))
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::io(path, e))
}

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), IoError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| IoError::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| IoError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| IoError::io(path, e))?;
    tmp.persist(path).map_err(|e| IoError::io(path, e.error))?;
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Angle in degrees rounded to 10 decimals, so that a saved value reads
/// back and saves again to the same text.
pub fn to_degrees(rad: f64) -> f64 {
    let d = (rad.to_degrees() * 1e10).round() / 1e10;
    if d == 0.0 {
        0.0
    } else {
        d
    }
}
