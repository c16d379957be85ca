use std::path::Path;

use geo::Coord;
use serde::{Deserialize, Serialize};

use super::{read_text, to_degrees, to_json, write_atomic, IoError};
use crate::geometry::{GeometryError, Region};
use crate::scene::{CategoryTable, Obb, Room, SceneError, SceneObject};

pub const SCENE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub schema_version: u32,
    pub room: RoomRecord,
    #[serde(default)]
    pub objects: Vec<ObjectRecord>,
}

/// Rings are closed: the first vertex is repeated at the end.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoomRecord {
    pub id: String,
    pub boundary: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub holes: Vec<Vec<[f64; 2]>>,
    pub room_function: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectRecord {
    pub id: String,
    pub category: String,
    pub obb: ObbRecord,
    pub pose: [f64; 2],
    pub height_range: [f64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObbRecord {
    pub cx: f64,
    pub cy: f64,
    pub hx: f64,
    pub hy: f64,
    /// Degrees.
    pub yaw: f64,
}

impl ObbRecord {
    pub fn from_obb(b: &Obb) -> Self {
        Self {
            cx: b.cx,
            cy: b.cy,
            hx: b.hx,
            hy: b.hy,
            yaw: to_degrees(b.yaw),
        }
    }

    pub fn to_obb(self) -> Obb {
        Obb::new(self.cx, self.cy, self.hx, self.hy, self.yaw.to_radians())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoadedScene {
    pub room: Room,
    /// Non-fatal findings, e.g. categories missing from the table.
    pub warnings: Vec<String>,
}

fn closed(ring: &[Coord<f64>]) -> Vec<[f64; 2]> {
    let mut v: Vec<[f64; 2]> = ring.iter().map(|c| [c.x, c.y]).collect();
    if let Some(&f) = v.first() {
        v.push(f);
    }
    v
}

impl SceneFile {
    pub fn from_room(room: &Room) -> SceneFile {
        let poly = &room.boundary.polygons()[0];
        let open = |ls: &geo::LineString<f64>| -> Vec<Coord<f64>> {
            let mut pts = ls.0.clone();
            if pts.len() > 1 && pts.first() == pts.last() {
                pts.pop();
            }
            pts
        };
        SceneFile {
            schema_version: SCENE_VERSION,
            room: RoomRecord {
                id: room.id.clone(),
                boundary: closed(&open(poly.exterior())),
                holes: poly.interiors().iter().map(|h| closed(&open(h))).collect(),
                room_function: room.room_function.clone(),
            },
            objects: room
                .objects
                .iter()
                .map(|o| ObjectRecord {
                    id: o.id.clone(),
                    category: o.category.clone(),
                    obb: ObbRecord::from_obb(&o.footprint),
                    pose: [o.pose.x, o.pose.y],
                    height_range: [o.height_range.0, o.height_range.1],
                })
                .collect(),
        }
    }
}

/// 1-based line of the first occurrence of `needle` at or after `from`.
fn line_of(text: &str, needle: &str, from: usize) -> usize {
    let at = text[from.min(text.len())..].find(needle).map(|i| i + from).unwrap_or(0);
    text[..at].matches('\n').count() + 1
}

fn ring(path: &Path, text: &str, field: &str, pts: &[[f64; 2]]) -> Result<Vec<(f64, f64)>, IoError> {
    let schema = |reason: &str| IoError::Schema {
        path: path.to_path_buf(),
        line: line_of(text, &format!("\"{}\"", field.split('[').next().unwrap_or(field)), 0),
        object: None,
        field: field.to_string(),
        reason: reason.to_string(),
    };
    if pts.len() < 4 {
        return Err(schema("a closed ring needs at least three distinct vertices plus the closing vertex"));
    }
    if pts.first() != pts.last() {
        return Err(schema("ring is not closed (last vertex must repeat the first)"));
    }
    Ok(pts[..pts.len() - 1].iter().map(|p| (p[0], p[1])).collect())
}

/// Parses and validates a scene file held in memory; `path` only labels
/// errors.
pub fn load_scene_str(text: &str, path: &Path, table: &CategoryTable) -> Result<LoadedScene, IoError> {
    let file: SceneFile = serde_json::from_str(text).map_err(|e| IoError::syntax(path, &e))?;
    if file.schema_version != SCENE_VERSION {
        return Err(IoError::Version {
            path: path.to_path_buf(),
            found: file.schema_version,
            expected: SCENE_VERSION,
        });
    }
    let outer = ring(path, text, "boundary", &file.room.boundary)?;
    let holes = file
        .room
        .holes
        .iter()
        .enumerate()
        .map(|(i, h)| ring(path, text, &format!("holes[{i}]"), h))
        .collect::<Result<Vec<_>, _>>()?;
    let boundary = Region::with_holes(&outer, &holes).map_err(|e: GeometryError| IoError::Schema {
        path: path.to_path_buf(),
        line: line_of(text, "\"boundary\"", 0),
        object: None,
        field: "boundary".into(),
        reason: e.to_string(),
    })?;
    let objects_at = text.find("\"objects\"").unwrap_or(0);
    let mut warnings = Vec::new();
    let mut objects = Vec::with_capacity(file.objects.len());
    for o in &file.objects {
        let line = line_of(text, &format!("\"{}\"", o.id), objects_at);
        let category = o.category.to_ascii_lowercase();
        if !table.contains(&category) {
            let w = format!("{}:{line}: object `{}` has unknown category `{}`; it provides no function", path.display(), o.id, o.category);
            log::warn!("{w}");
            warnings.push(w);
        }
        let obj = SceneObject::new(
            o.id.clone(),
            category,
            o.obb.to_obb(),
            Coord { x: o.pose[0], y: o.pose[1] },
            (o.height_range[0], o.height_range[1]),
            table,
        )
        .map_err(|e| match e {
            SceneError::InvalidObject { id, field, reason } => IoError::Schema {
                path: path.to_path_buf(),
                line,
                object: Some(id),
                field,
                reason,
            },
            other => IoError::Scene {
                path: path.to_path_buf(),
                source: other,
            },
        })?;
        objects.push(obj);
    }
    let room = Room::new(file.room.id, boundary, objects, file.room.room_function).map_err(|e| IoError::Scene {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(LoadedScene { room, warnings })
}

pub fn load_scene(path: &Path, table: &CategoryTable) -> Result<LoadedScene, IoError> {
    load_scene_str(&read_text(path)?, path, table)
}

pub fn scene_to_string(room: &Room) -> String {
    to_json(&SceneFile::from_room(room))
}

pub fn save_scene(room: &Room, path: &Path) -> Result<(), IoError> {
    write_atomic(path, scene_to_string(room).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    const BEDROOM: &str = r#"{
  "schema_version": 1,
  "room": {
    "id": "bedroom-a",
    "boundary": [[0, 0], [4, 0], [4, 3], [0, 3], [0, 0]],
    "room_function": "bedroom"
  },
  "objects": [
    {
      "id": "bed",
      "category": "bed",
      "obb": {"cx": 1.0, "cy": 1.5, "hx": 1.0, "hy": 0.8, "yaw": 0},
      "pose": [1, 0],
      "height_range": [0, 0.6]
    },
    {
      "id": "desk",
      "category": "desk",
      "obb": {"cx": 3.4, "cy": 0.5, "hx": 0.5, "hy": 0.3, "yaw": 90},
      "pose": [0, 1],
      "height_range": [0, 0.75]
    }
  ]
}"#;

    fn load(text: &str) -> Result<LoadedScene, IoError> {
        load_scene_str(text, Path::new("test.json"), &CategoryTable::default())
    }

    #[test]
    fn valid_file_loads() {
        let s = load(BEDROOM).unwrap();
        assert_eq!(s.room.objects.len(), 2);
        assert!(s.warnings.is_empty());
        assert!((s.room.objects[1].footprint.yaw - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn negative_extent_names_object_and_line() {
        let bad = BEDROOM.replace("\"hx\": 0.5", "\"hx\": -0.5");
        match load(&bad) {
            Err(IoError::Schema { line, object, field, .. }) => {
                assert_eq!(object.as_deref(), Some("desk"));
                assert_eq!(field, "obb.hx");
                assert_eq!(line, 17);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_unit_pose_and_open_ring_are_rejected() {
        assert!(matches!(load(&BEDROOM.replace("\"pose\": [0, 1]", "\"pose\": [0, 2]")), Err(IoError::Schema { .. })));
        let open = BEDROOM.replace("[0, 3], [0, 0]]", "[0, 3]]");
        match load(&open) {
            Err(IoError::Schema { field, line, .. }) => {
                assert_eq!(field, "boundary");
                assert_eq!(line, 5);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        match load("{\n  \"schema_version\": 1,\n  \"room\": [\n") {
            Err(IoError::Syntax { line, .. }) => assert!(line >= 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_category_warns() {
        let s = load(&BEDROOM.replace("\"category\": \"desk\"", "\"category\": \"orb\"")).unwrap();
        assert_eq!(s.warnings.len(), 1);
        assert!(s.room.objects[1].functions.is_empty());
    }

    #[test]
    fn save_load_save_is_stable() {
        let a = load(BEDROOM).unwrap().room;
        let text = scene_to_string(&a);
        let b = load(&text).unwrap().room;
        assert_eq!(a, b);
        assert_eq!(text, scene_to_string(&b));
    }
}
