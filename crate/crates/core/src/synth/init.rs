use std::collections::BTreeMap;

use geo::Coord;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PlacedObject, Provenance, SynthError, SyntheticScene, CONTACT_TOLERANCE};
use crate::align::{mutual_function_pose, mutual_region, PreparedRoom};
use crate::geometry::{apply_rigid, min_area_bounding_rect, union_all, Region, RigidTransform2D};
use crate::scene::{AssociationTable, CategoryTable, FunctionClass, FunctionRegion, Obb, Room, SceneObject};

/// Mutual function components smaller than this (m²) are not furnished.
pub const MIN_MUTUAL_AREA: f64 = 0.05;

/// Height given to furniture placed on mutual function regions.
const MUTUAL_OBJECT_HEIGHT: f64 = 0.8;

fn check(rooms: &[Room], transforms: &[RigidTransform2D]) -> Result<(), SynthError> {
    if rooms.is_empty() {
        return Err(SynthError::NoRooms);
    }
    if rooms.len() != transforms.len() {
        return Err(SynthError::CountMismatch {
            rooms: rooms.len(),
            transforms: transforms.len(),
        });
    }
    Ok(())
}

/// Smallest rectangle around the union of all transformed boundaries.
pub fn init_floor(rooms: &[Room], transforms: &[RigidTransform2D]) -> Result<crate::geometry::ScaledPlacement, SynthError> {
    check(rooms, transforms)?;
    let moved: Vec<Region> = rooms.iter().zip(transforms).map(|(r, g)| apply_rigid(&r.boundary, g)).collect();
    Ok(min_area_bounding_rect(&union_all(moved.iter()))?)
}

/// Objects that can be copied into the virtual room unchanged: their
/// transformed footprint touches no other room's walkable space and no
/// object accepted before it. Rooms are scanned in order, objects by id.
pub fn collect_non_colliding(rooms: &[Room], transforms: &[RigidTransform2D]) -> Vec<PlacedObject> {
    collect_non_colliding_with(rooms, transforms, &[])
}

/// As [`collect_non_colliding`], additionally avoiding `existing`.
pub fn collect_non_colliding_with(
    rooms: &[Room],
    transforms: &[RigidTransform2D],
    existing: &[PlacedObject],
) -> Vec<PlacedObject> {
    let walkable: Vec<Region> = rooms
        .iter()
        .zip(transforms)
        .map(|(r, g)| apply_rigid(PreparedRoom::new(r).region(FunctionClass::Walkable), g))
        .collect();
    let mut accepted: Vec<PlacedObject> = Vec::new();
    for (i, (room, g)) in rooms.iter().zip(transforms).enumerate() {
        let mut objects: Vec<&SceneObject> = room.objects.iter().collect();
        objects.sort_by(|a, b| a.id.cmp(&b.id));
        for o in objects {
            let moved = o.transformed(g);
            let fp = moved.footprint.region();
            let blocks_walk = walkable
                .iter()
                .enumerate()
                .any(|(j, w)| j != i && fp.intersection(w).area() > 1e-9);
            if blocks_walk {
                continue;
            }
            let hits = existing
                .iter()
                .chain(accepted.iter())
                .any(|p| p.object.footprint.overlaps(&moved.footprint, CONTACT_TOLERANCE));
            if hits {
                continue;
            }
            accepted.push(PlacedObject {
                object: SceneObject {
                    id: format!("{}/{}", room.id, o.id),
                    ..moved
                },
                provenance: Provenance::NonCollidingTransfer {
                    room_id: room.id.clone(),
                },
            });
        }
    }
    accepted
}

/// The user's choice if given, else the most frequent room function; ties
/// are broken by a seeded pick among the tied labels (sorted).
pub fn assign_room_function(rooms: &[Room], user_choice: Option<&str>, seed: u64) -> String {
    if let Some(c) = user_choice {
        return c.to_ascii_lowercase();
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for r in rooms {
        *counts.entry(r.room_function.as_str()).or_default() += 1;
    }
    let top = counts.values().copied().max().unwrap_or(0);
    let tied: Vec<&str> = counts.iter().filter(|(_, &c)| c == top).map(|(k, _)| *k).collect();
    match tied.len() {
        0 => String::new(),
        1 => tied[0].to_string(),
        n => tied[ChaCha8Rng::seed_from_u64(seed).random_range(0..n)].to_string(),
    }
}

/// Furniture for each sizable component of the mutual sittable and
/// workable space: its minimum-area rectangle, with the category the
/// association table gives for the room function and the shared pose of
/// the contributing objects. Components that would leave the floor or
/// overlap a placed object are skipped.
pub fn place_mutual_objects(
    scene: &mut SyntheticScene,
    rooms: &[Room],
    transforms: &[RigidTransform2D],
    associations: &AssociationTable,
    categories: &CategoryTable,
    min_area: f64,
) -> Result<(), SynthError> {
    check(rooms, transforms)?;
    if rooms.len() < 2 {
        return Ok(());
    }
    let prepared: Vec<PreparedRoom> = rooms.iter().map(PreparedRoom::new).collect();
    let center = scene.floor_center();
    for class in [FunctionClass::Sittable, FunctionClass::Workable] {
        let Some(category) = associations.category(&scene.room_function, class) else {
            continue;
        };
        let mutual = mutual_region(&prepared, transforms, class);
        let mut components = mutual.components();
        components.sort_by(|a, b| b.area().total_cmp(&a.area()));
        for (k, comp) in components.iter().enumerate() {
            if comp.area() < min_area {
                continue;
            }
            let rect = min_area_bounding_rect(comp)?;
            let c = rect.center();
            let footprint = Obb::new(c.x, c.y, 0.5 * rect.sx, 0.5 * rect.sy, rect.transform.theta);
            if !scene.fits(&footprint) {
                continue;
            }
            let contributing: Vec<FunctionRegion> = prepared
                .iter()
                .zip(transforms)
                .flat_map(|(p, g)| {
                    p.parts[&class].iter().filter_map(move |f| {
                        let region = apply_rigid(&f.region, g);
                        (region.intersection(comp).area() > 1e-9).then(|| FunctionRegion {
                            region,
                            class,
                            pose: f.pose.map(|v| g.rotate_vec(v)),
                            source_object_ids: f.source_object_ids.clone(),
                        })
                    })
                })
                .collect();
            let pose = if contributing.is_empty() {
                Coord { x: 1.0, y: 0.0 }
            } else {
                mutual_function_pose(&contributing, comp, center)?
            };
            let object = SceneObject::new(
                format!("mutual-{class}-{k}"),
                category,
                footprint,
                pose,
                (0.0, MUTUAL_OBJECT_HEIGHT),
                categories,
            )?;
            scene.objects.push(PlacedObject {
                object,
                provenance: Provenance::MutualFunction,
            });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct InitConfig {
    pub room_function: Option<String>,
    pub seed: u64,
    pub min_mutual_area: f64,
    pub categories: CategoryTable,
    pub associations: AssociationTable,
}

impl Default for InitConfig {
    fn default() -> Self {
        Self {
            room_function: None,
            seed: 0,
            min_mutual_area: MIN_MUTUAL_AREA,
            categories: CategoryTable::default(),
            associations: AssociationTable::default(),
        }
    }
}

/// Floor, room function, mutual-function furniture, then every transfer
/// that also lies inside the floor.
pub fn initialize_scene(rooms: &[Room], transforms: &[RigidTransform2D], cfg: &InitConfig) -> Result<SyntheticScene, SynthError> {
    let floor = init_floor(rooms, transforms)?;
    let function = assign_room_function(rooms, cfg.room_function.as_deref(), cfg.seed);
    let mut scene = SyntheticScene::new(floor, function);
    place_mutual_objects(&mut scene, rooms, transforms, &cfg.associations, &cfg.categories, cfg.min_mutual_area)?;
    let transfers = collect_non_colliding_with(rooms, transforms, &scene.objects);
    for t in transfers {
        if scene.floor_contains(&t.object.footprint) {
            scene.objects.push(t);
        }
    }
    Ok(scene)
}
