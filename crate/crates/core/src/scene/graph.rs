//! Per-relation scene graphs over a room's objects.
//!
//! Positional relations: `NextTo`, `EdgeOfRoom`, `MiddleOfRoom`.
//! Orientational relations: `Facing`, `SameDirection`. Every relation is
//! its own edge list; all thresholds are metric or angular, so the graphs
//! do not change under a rigid motion of the whole room.

use std::collections::BTreeMap;
use std::fmt;

use geo::Coord;
use serde::{Deserialize, Serialize};

use super::{Obb, Room, SceneObject};
use crate::geometry::{dot, norm, segment_distance};

/// Node id used for the room itself.
pub const ROOM_NODE: &str = "#room";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Relation {
    NextTo,
    EdgeOfRoom,
    MiddleOfRoom,
    Facing,
    SameDirection,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::NextTo,
        Relation::EdgeOfRoom,
        Relation::MiddleOfRoom,
        Relation::Facing,
        Relation::SameDirection,
    ];
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphThresholds {
    pub next_to: f64,
    pub edge_of_room: f64,
    /// Half-angle of the facing cone, radians.
    pub facing_half_angle: f64,
    pub same_direction: f64,
}

impl Default for GraphThresholds {
    fn default() -> Self {
        Self {
            next_to: 0.5,
            edge_of_room: 0.5,
            facing_half_angle: 30f64.to_radians(),
            same_direction: 45f64.to_radians(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SceneGraphSet {
    pub nodes: Vec<String>,
    pub graphs: BTreeMap<Relation, Vec<(String, String)>>,
}

impl SceneGraphSet {
    pub fn edges(&self, rel: Relation) -> &[(String, String)] {
        self.graphs.get(&rel).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn has_edge(&self, rel: Relation, from: &str, to: &str) -> bool {
        self.edges(rel).iter().any(|(a, b)| a == from && b == to)
    }
}

pub fn build_scene_graphs(room: &Room) -> SceneGraphSet {
    build_scene_graphs_with(room, &GraphThresholds::default())
}

pub fn build_scene_graphs_with(room: &Room, t: &GraphThresholds) -> SceneGraphSet {
    let mut objs: Vec<&SceneObject> = room.objects.iter().collect();
    objs.sort_by(|a, b| a.id.cmp(&b.id));

    let mut nodes: Vec<String> = objs.iter().map(|o| o.id.clone()).collect();
    nodes.push(ROOM_NODE.to_string());
    let mut graphs: BTreeMap<Relation, Vec<(String, String)>> = Relation::ALL.iter().map(|r| (*r, Vec::new())).collect();
    let boundary = room.boundary.segments();

    for a in &objs {
        let wall = a
            .footprint
            .corners()
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let q = a.footprint.corners()[(i + 1) % 4];
                boundary.iter().map(move |&(s, e)| segment_distance(p, q, s, e))
            })
            .fold(f64::INFINITY, f64::min);
        let rel = if wall < t.edge_of_room { Relation::EdgeOfRoom } else { Relation::MiddleOfRoom };
        graphs.get_mut(&rel).unwrap().push((a.id.clone(), ROOM_NODE.to_string()));

        for b in &objs {
            if a.id == b.id {
                continue;
            }
            let pair = (a.id.clone(), b.id.clone());
            if a.footprint.distance(&b.footprint) < t.next_to {
                graphs.get_mut(&Relation::NextTo).unwrap().push(pair.clone());
            }
            if faces(a.footprint.center(), a.pose, &b.footprint, t.facing_half_angle) {
                graphs.get_mut(&Relation::Facing).unwrap().push(pair.clone());
            }
            if angle_between(a.pose, b.pose) < t.same_direction {
                graphs.get_mut(&Relation::SameDirection).unwrap().push(pair);
            }
        }
    }
    SceneGraphSet { nodes, graphs }
}

fn angle_between(a: Coord<f64>, b: Coord<f64>) -> f64 {
    let na = norm(a);
    let nb = norm(b);
    if na == 0.0 || nb == 0.0 {
        return std::f64::consts::PI;
    }
    (dot(a, b) / (na * nb)).clamp(-1.0, 1.0).acos()
}

/// Whether some ray from `origin` within `half_angle` of `dir` hits `target`.
fn faces(origin: Coord<f64>, dir: Coord<f64>, target: &Obb, half_angle: f64) -> bool {
    if target.contains(origin) {
        return true;
    }
    let corners = target.corners();
    if corners.iter().any(|&c| angle_between(dir, c - origin) <= half_angle) {
        return true;
    }
    // The cone may pass through an edge without containing a corner.
    let base = dir.y.atan2(dir.x);
    [-half_angle, half_angle].iter().any(|&off| {
        let ray = Coord { x: (base + off).cos(), y: (base + off).sin() };
        (0..4).any(|i| ray_hits_segment(origin, ray, corners[i], corners[(i + 1) % 4]))
    })
}

fn ray_hits_segment(o: Coord<f64>, d: Coord<f64>, a: Coord<f64>, b: Coord<f64>) -> bool {
    let e = b - a;
    let denom = d.x * e.y - d.y * e.x;
    if denom.abs() < 1e-15 {
        return false;
    }
    let w = a - o;
    let t = (w.x * e.y - w.y * e.x) / denom;
    let u = (w.x * d.y - w.y * d.x) / denom;
    t >= 0.0 && (0.0..=1.0).contains(&u)
}
