//! Random scene generators shared by the integration suites.
#![allow(dead_code)]

use geo::Coord;
use mss::geometry::Region;
use mss::scene::{CategoryTable, Obb, Room, SceneObject};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CATEGORIES: [&str; 8] = ["bed", "chair", "sofa", "desk", "table", "cabinet", "lamp", "plant"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Union of one to three overlapping axis-aligned rectangles, inside a
/// `size × size` square.
pub fn rectilinear_boundary(rng: &mut impl Rng, size: f64) -> Region {
    let q = |v: f64| (v * 10.0).round() / 10.0;
    let w = q(rng.random_range(0.5 * size..=size));
    let h = q(rng.random_range(0.4 * size..=0.8 * size));
    let mut r = Region::rect(0.0, 0.0, w, h);
    for _ in 0..rng.random_range(0..=2) {
        let x0 = q(rng.random_range(0.0..w * 0.7));
        let x1 = q(rng.random_range(x0 + 0.5..=size.max(x0 + 0.6)).min(size));
        let y1 = q(rng.random_range(h * 0.5..=size));
        let y0 = q(rng.random_range(0.0..h * 0.6));
        if x1 - x0 >= 0.3 && y1 - y0 >= 0.3 {
            r = r.union(&Region::rect(x0, y0, x1, y1));
        }
    }
    r
}

pub fn random_object(rng: &mut impl Rng, id: String, boundary: &Region, table: &CategoryTable) -> Option<SceneObject> {
    let b = boundary.bounds()?;
    for _ in 0..50 {
        let cx = rng.random_range(b.min.x..b.max.x);
        let cy = rng.random_range(b.min.y..b.max.y);
        if !boundary.contains_point(Coord { x: cx, y: cy }) {
            continue;
        }
        let hx = rng.random_range(0.15..0.8);
        let hy = rng.random_range(0.15..0.6);
        let yaw = if rng.random::<bool>() {
            0.0
        } else {
            rng.random_range(0.0..std::f64::consts::TAU)
        };
        let cat = CATEGORIES[rng.random_range(0..CATEGORIES.len())];
        let top = if cat == "lamp" { rng.random_range(1.0..2.5) } else { rng.random_range(0.4..1.2) };
        let bottom = if rng.random_range(0..10) == 0 { 2.1 } else { 0.0 };
        let fp = Obb::new(cx, cy, hx, hy, yaw);
        let (s, c) = yaw.sin_cos();
        if let Ok(o) = SceneObject::new(id.clone(), cat, fp, Coord { x: c, y: s }, (bottom, bottom + top), table) {
            return Some(o);
        }
    }
    None
}

/// Room with a rectilinear boundary and up to `max_objects` objects.
pub fn random_room(rng: &mut impl Rng, id: &str, size: f64, max_objects: usize) -> Room {
    let table = CategoryTable::default();
    let boundary = rectilinear_boundary(rng, size);
    let count = rng.random_range(0..=max_objects);
    let objects = (0..count)
        .filter_map(|i| random_object(rng, format!("{id}-o{i}"), &boundary, &table))
        .collect();
    Room::new(id, boundary, objects, "living").expect("generated room is valid")
}

/// Room made of a rectangle and explicit objects `(id, category, obb)`.
pub fn furnished(id: &str, w: f64, h: f64, function: &str, objects: &[(&str, &str, Obb)]) -> Room {
    let table = CategoryTable::default();
    let objs = objects
        .iter()
        .map(|(oid, cat, obb)| {
            let (s, c) = obb.yaw.sin_cos();
            SceneObject::new(*oid, *cat, *obb, Coord { x: c, y: s }, (0.0, 0.8), &table).unwrap()
        })
        .collect();
    Room::new(id, Region::rect(0.0, 0.0, w, h), objs, function).unwrap()
}

/// Dining rooms in which every chair sits 0.3–0.5 m (center to table
/// edge) from the table and faces it.
pub fn chair_table_corpus(rng: &mut impl Rng, rooms: usize) -> Vec<Room> {
    let table = CategoryTable::default();
    (0..rooms)
        .map(|r| {
            let (w, h) = (rng.random_range(4.0..6.0), rng.random_range(4.0..6.0));
            let (tx, ty) = (rng.random_range(1.6..w - 1.6), rng.random_range(1.6..h - 1.6));
            let t = Obb::new(tx, ty, 0.6, 0.4, 0.0);
            let mut objects = vec![SceneObject::facing_yaw("table", "table", t, 0.75, &table).unwrap()];
            for (k, side) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)].iter().enumerate() {
                if k > 0 && rng.random::<bool>() {
                    continue;
                }
                let d = rng.random_range(0.3..0.5);
                let reach = if side.0 != 0.0 { t.hx } else { t.hy };
                let c = Coord { x: tx + side.0 * (reach + d), y: ty + side.1 * (reach + d) };
                let yaw = (-side.1 as f64).atan2(-side.0 as f64);
                let chair = Obb::new(c.x, c.y, 0.22, 0.22, yaw);
                objects.push(SceneObject::facing_yaw(format!("chair{k}"), "chair", chair, 0.9, &table).unwrap());
            }
            Room::new(format!("train{r}"), Region::rect(0.0, 0.0, w, h), objects, "dining").unwrap()
        })
        .collect()
}

/// Every way `scene` breaks the synthesis invariants: overlapping
/// footprints, footprints leaving the floor, transferred objects on
/// another room's walkable floor. Checked with polygon booleans rather
/// than the separating-axis tests the synthesizer uses.
pub fn scene_violations(
    scene: &mss::synth::SyntheticScene,
    rooms: &[Room],
    transforms: &[mss::geometry::RigidTransform2D],
) -> Vec<String> {
    use mss::geometry::apply_rigid;
    use mss::scene::extract_walkable;
    use mss::synth::Provenance;
    const AREA_TOL: f64 = 1e-6;
    let mut out = Vec::new();
    let floor = scene.floor.rect_region();
    let regions: Vec<Region> = scene.objects.iter().map(|o| o.object.footprint.region()).collect();
    for (i, a) in regions.iter().enumerate() {
        for (j, b) in regions.iter().enumerate().skip(i + 1) {
            let overlap = a.intersection(b).area();
            if overlap >= AREA_TOL {
                out.push(format!("{} overlaps {} by {overlap:.2e} m²", scene.objects[i].object.id, scene.objects[j].object.id));
            }
        }
        let outside = a.difference(&floor).area();
        if outside >= AREA_TOL {
            out.push(format!("{} leaves the floor by {outside:.2e} m²", scene.objects[i].object.id));
        }
    }
    let walkable: Vec<Region> = rooms.iter().zip(transforms).map(|(r, g)| apply_rigid(&extract_walkable(r).region, g)).collect();
    for (o, fp) in scene.objects.iter().zip(&regions) {
        if let Provenance::NonCollidingTransfer { room_id } = &o.provenance {
            for (r, w) in rooms.iter().zip(&walkable) {
                if &r.id == room_id {
                    continue;
                }
                let hit = fp.intersection(w).area();
                if hit >= AREA_TOL {
                    out.push(format!("transfer {} covers {hit:.2e} m² of {}'s walkable floor", o.object.id, r.id));
                }
            }
        }
    }
    out
}

/// `room` moved by `g`, keeping ids.
pub fn moved(room: &Room, g: &mss::geometry::RigidTransform2D) -> Room {
    room.transformed(g)
}

pub fn random_rigid(rng: &mut impl Rng) -> mss::geometry::RigidTransform2D {
    mss::geometry::RigidTransform2D::new(
        rng.random_range(-20.0..20.0),
        rng.random_range(-20.0..20.0),
        rng.random_range(0.0..std::f64::consts::TAU),
    )
}
