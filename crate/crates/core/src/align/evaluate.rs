use std::collections::BTreeMap;

use super::AlignError;
use crate::geometry::{apply_rigid, union_all, Region, RigidTransform2D};
use crate::scene::{extract_function_regions, extract_walkable, FunctionClass, FunctionRegion, Room};

/// Mutual region of `class` under the given per-room transforms.
///
/// Walkable space is the plain intersection of the transformed walkable
/// regions. For sittable and workable space any object may pair with any
/// object of another room, so the result is the union, over every choice
/// of one function region per room, of their transformed intersection.
pub fn evaluate_mutual(
    rooms: &[Room],
    transforms: &[RigidTransform2D],
    class: FunctionClass,
) -> Result<(Region, f64), AlignError> {
    check_counts(rooms.len(), transforms.len())?;
    let per_room: Vec<Vec<Region>> = rooms
        .iter()
        .zip(transforms)
        .map(|(room, g)| {
            extract_function_regions(room, class)
                .iter()
                .map(|f| apply_rigid(&f.region, g))
                .filter(|r| !r.is_empty())
                .collect()
        })
        .collect();
    let mut pieces = Vec::new();
    combine(&per_room, 0, None, &mut pieces);
    let region = union_all(pieces.iter());
    let area = region.area();
    Ok((region, area))
}

fn combine(per_room: &[Vec<Region>], i: usize, acc: Option<Region>, out: &mut Vec<Region>) {
    if i == per_room.len() {
        if let Some(r) = acc {
            out.push(r);
        }
        return;
    }
    for r in &per_room[i] {
        let next = match &acc {
            None => r.clone(),
            Some(a) => a.intersection(r),
        };
        if !next.is_empty() {
            combine(per_room, i + 1, Some(next), out);
        }
    }
}

fn check_counts(rooms: usize, transforms: usize) -> Result<(), AlignError> {
    if rooms < 2 {
        return Err(AlignError::TooFewRooms(rooms));
    }
    if rooms != transforms {
        return Err(AlignError::CountMismatch { rooms, transforms });
    }
    Ok(())
}

/// Per-room function regions extracted once, for repeated evaluation.
#[derive(Clone, Debug)]
pub struct PreparedRoom {
    pub parts: BTreeMap<FunctionClass, Vec<FunctionRegion>>,
    /// Union of each class's parts.
    pub unions: BTreeMap<FunctionClass, Region>,
}

impl PreparedRoom {
    pub fn new(room: &Room) -> PreparedRoom {
        let mut parts = BTreeMap::new();
        let mut unions = BTreeMap::new();
        for class in FunctionClass::ALL {
            let p = if class == FunctionClass::Walkable {
                vec![extract_walkable(room)]
            } else {
                extract_function_regions(room, class)
            };
            unions.insert(class, union_all(p.iter().map(|f| &f.region)));
            parts.insert(class, p);
        }
        PreparedRoom { parts, unions }
    }

    pub fn region(&self, class: FunctionClass) -> &Region {
        &self.unions[&class]
    }
}

/// Same value as [`evaluate_mutual`], computed as the intersection of the
/// per-room unions (intersection distributes over union).
pub fn mutual_region(prepared: &[PreparedRoom], transforms: &[RigidTransform2D], class: FunctionClass) -> Region {
    let mut acc: Option<Region> = None;
    for (p, g) in prepared.iter().zip(transforms) {
        let r = apply_rigid(p.region(class), g);
        let next = match acc {
            None => r,
            Some(a) => a.intersection(&r),
        };
        if next.is_empty() {
            return Region::empty();
        }
        acc = Some(next);
    }
    acc.unwrap_or_default()
}
