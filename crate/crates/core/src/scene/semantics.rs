use geo::Coord;
use serde::{Deserialize, Serialize};

use super::{FunctionClass, Room, SceneObject};
use crate::geometry::{union_all, Region};

/// Objects reaching into `[0, WALKABLE_HEIGHT]` block walking.
pub const WALKABLE_HEIGHT: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionRegion {
    pub region: Region,
    pub class: FunctionClass,
    pub pose: Option<Coord<f64>>,
    pub source_object_ids: Vec<String>,
}

fn blocks_walking(o: &SceneObject, height_limit: f64) -> bool {
    o.height_range.0 <= height_limit && o.height_range.1 >= 0.0
}

/// Room minus the footprints of every object within the human height
/// range.
pub fn extract_walkable(room: &Room) -> FunctionRegion {
    extract_walkable_with(room, WALKABLE_HEIGHT)
}

pub fn extract_walkable_with(room: &Room, height_limit: f64) -> FunctionRegion {
    let obstacles = obstacle_union(room, height_limit);
    FunctionRegion {
        region: room.boundary.difference(&obstacles),
        class: FunctionClass::Walkable,
        pose: None,
        source_object_ids: vec![],
    }
}

/// Union of blocking footprints, clipped to the boundary.
pub fn obstacle_union(room: &Room, height_limit: f64) -> Region {
    let footprints: Vec<Region> = room
        .objects
        .iter()
        .filter(|o| blocks_walking(o, height_limit))
        .map(|o| o.footprint.region())
        .collect();
    union_all(footprints.iter()).intersection(&room.boundary)
}

/// One region per object providing `class`, clipped to the boundary.
/// Walkable requests return the single walkable region.
pub fn extract_function_regions(room: &Room, class: FunctionClass) -> Vec<FunctionRegion> {
    if class == FunctionClass::Walkable {
        return vec![extract_walkable(room)];
    }
    room.objects
        .iter()
        .filter(|o| o.has_function(class))
        .filter_map(|o| {
            let region = o.footprint.region().intersection(&room.boundary);
            (!region.is_empty()).then(|| FunctionRegion {
                region,
                class,
                pose: Some(o.pose),
                source_object_ids: vec![o.id.clone()],
            })
        })
        .collect()
}
