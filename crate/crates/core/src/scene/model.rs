use std::collections::{BTreeSet, HashSet};

use geo::Coord;
use serde::{Deserialize, Serialize};

use super::{CategoryTable, FunctionClass, SceneError};
use crate::geometry::{apply_rigid, dot, normalize_angle, segment_distance, Region, RigidTransform2D};

/// Oriented bounding box of an object's floor footprint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Obb {
    pub cx: f64,
    pub cy: f64,
    pub hx: f64,
    pub hy: f64,
    /// Radians.
    pub yaw: f64,
}

impl Obb {
    pub fn new(cx: f64, cy: f64, hx: f64, hy: f64, yaw: f64) -> Self {
        Self { cx, cy, hx, hy, yaw }
    }

    /// Axis-aligned box from corner coordinates.
    pub fn from_corners(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self::new(0.5 * (x0 + x1), 0.5 * (y0 + y1), 0.5 * (x1 - x0).abs(), 0.5 * (y1 - y0).abs(), 0.0)
    }

    pub fn center(&self) -> Coord<f64> {
        Coord { x: self.cx, y: self.cy }
    }

    pub fn axes(&self) -> (Coord<f64>, Coord<f64>) {
        let (s, c) = self.yaw.sin_cos();
        (Coord { x: c, y: s }, Coord { x: -s, y: c })
    }

    /// Counter-clockwise corners.
    pub fn corners(&self) -> [Coord<f64>; 4] {
        let (u, v) = self.axes();
        let c = self.center();
        let (a, b) = (u * self.hx, v * self.hy);
        [c - a - b, c + a - b, c + a + b, c - a + b]
    }

    pub fn area(&self) -> f64 {
        4.0 * self.hx * self.hy
    }

    pub fn region(&self) -> Region {
        let pts = self.corners().map(|c| (c.x, c.y));
        Region::polygon(&pts).unwrap_or_default()
    }

    pub fn transformed(&self, g: &RigidTransform2D) -> Obb {
        let c = g.apply(self.center());
        Obb::new(c.x, c.y, self.hx, self.hy, normalize_angle(self.yaw + g.theta))
    }

    /// Circumradius.
    pub fn radius(&self) -> f64 {
        self.hx.hypot(self.hy)
    }

    /// Separating-axis overlap test; boxes that only touch (penetration
    /// below `tol`) do not overlap.
    pub fn overlaps(&self, other: &Obb, tol: f64) -> bool {
        if (self.center() - other.center()).x.hypot((self.center() - other.center()).y) > self.radius() + other.radius() {
            return false;
        }
        let (a1, a2) = self.axes();
        let (b1, b2) = other.axes();
        let ca = self.corners();
        let cb = other.corners();
        for axis in [a1, a2, b1, b2] {
            let (lo_a, hi_a) = project(&ca, axis);
            let (lo_b, hi_b) = project(&cb, axis);
            if hi_a <= lo_b + tol || hi_b <= lo_a + tol {
                return false;
            }
        }
        true
    }

    /// Boundary-to-boundary distance, zero when overlapping or nested.
    pub fn distance(&self, other: &Obb) -> f64 {
        if self.overlaps(other, 0.0) || self.contains(other.center()) || other.contains(self.center()) {
            return 0.0;
        }
        let ca = self.corners();
        let cb = other.corners();
        let mut best = f64::INFINITY;
        for i in 0..4 {
            for j in 0..4 {
                best = best.min(segment_distance(ca[i], ca[(i + 1) % 4], cb[j], cb[(j + 1) % 4]));
            }
        }
        best
    }

    /// Distance from a point to the box (zero inside).
    pub fn distance_to_point(&self, p: Coord<f64>) -> f64 {
        let (u, v) = self.axes();
        let d = p - self.center();
        let lx = (dot(d, u).abs() - self.hx).max(0.0);
        let ly = (dot(d, v).abs() - self.hy).max(0.0);
        lx.hypot(ly)
    }

    pub fn contains(&self, p: Coord<f64>) -> bool {
        let (u, v) = self.axes();
        let d = p - self.center();
        dot(d, u).abs() <= self.hx + 1e-12 && dot(d, v).abs() <= self.hy + 1e-12
    }
}

fn project(pts: &[Coord<f64>; 4], axis: Coord<f64>) -> (f64, f64) {
    pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| {
        let t = dot(p, axis);
        (lo.min(t), hi.max(t))
    })
}

/// A labeled piece of furniture.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneObject {
    pub id: String,
    pub category: String,
    pub footprint: Obb,
    /// Unit facing direction.
    pub pose: Coord<f64>,
    /// `(min_z, max_z)` in meters.
    pub height_range: (f64, f64),
    pub functions: BTreeSet<FunctionClass>,
}

impl SceneObject {
    pub fn new(
        id: impl Into<String>,
        category: impl Into<String>,
        footprint: Obb,
        pose: Coord<f64>,
        height_range: (f64, f64),
        table: &CategoryTable,
    ) -> Result<Self, SceneError> {
        let id = id.into();
        let category = category.into().to_ascii_lowercase();
        let bad = |field: &str, reason: &str| SceneError::InvalidObject {
            id: id.clone(),
            field: field.to_string(),
            reason: reason.to_string(),
        };
        let f = &footprint;
        if ![f.cx, f.cy, f.hx, f.hy, f.yaw].iter().all(|v| v.is_finite()) {
            return Err(bad("obb", "non-finite value"));
        }
        if f.hx <= 0.0 {
            return Err(bad("obb.hx", "half-extent must be positive"));
        }
        if f.hy <= 0.0 {
            return Err(bad("obb.hy", "half-extent must be positive"));
        }
        if !pose.x.is_finite() || !pose.y.is_finite() || (pose.x.hypot(pose.y) - 1.0).abs() > 1e-9 {
            return Err(bad("pose", "must be a unit vector"));
        }
        if !(height_range.0.is_finite() && height_range.1.is_finite()) || height_range.0 > height_range.1 {
            return Err(bad("height_range", "expected finite z0 <= z1"));
        }
        let functions = table.functions(&category);
        Ok(Self {
            id,
            category,
            footprint,
            pose,
            height_range,
            functions,
        })
    }

    /// Facing along the footprint's local +x axis.
    pub fn facing_yaw(id: impl Into<String>, category: impl Into<String>, footprint: Obb, height: f64, table: &CategoryTable) -> Result<Self, SceneError> {
        let (s, c) = footprint.yaw.sin_cos();
        Self::new(id, category, footprint, Coord { x: c, y: s }, (0.0, height), table)
    }

    pub fn transformed(&self, g: &RigidTransform2D) -> SceneObject {
        SceneObject {
            footprint: self.footprint.transformed(g),
            pose: g.rotate_vec(self.pose),
            ..self.clone()
        }
    }

    pub fn has_function(&self, class: FunctionClass) -> bool {
        self.functions.contains(&class)
    }
}

/// A labeled floorplan with its furniture.
#[derive(Clone, Debug, PartialEq)]
pub struct Room {
    pub id: String,
    pub boundary: Region,
    pub objects: Vec<SceneObject>,
    pub room_function: String,
}

impl Room {
    pub fn new(
        id: impl Into<String>,
        boundary: Region,
        objects: Vec<SceneObject>,
        room_function: impl Into<String>,
    ) -> Result<Self, SceneError> {
        let id = id.into();
        if boundary.is_empty() || boundary.area() <= 0.0 {
            return Err(SceneError::EmptyBoundary(id));
        }
        if boundary.polygons().len() != 1 {
            return Err(SceneError::DisconnectedBoundary(id));
        }
        let mut seen = HashSet::new();
        for o in &objects {
            if !seen.insert(o.id.as_str()) {
                return Err(SceneError::DuplicateObject(o.id.clone()));
            }
            if o.footprint.region().intersection(&boundary).area() <= 0.0 {
                return Err(SceneError::ObjectOutsideRoom(o.id.clone()));
            }
        }
        Ok(Self {
            id,
            boundary,
            objects,
            room_function: room_function.into().to_ascii_lowercase(),
        })
    }

    /// The whole room moved by `g`.
    pub fn transformed(&self, g: &RigidTransform2D) -> Room {
        Room {
            id: self.id.clone(),
            boundary: apply_rigid(&self.boundary, g),
            objects: self.objects.iter().map(|o| o.transformed(g)).collect(),
            room_function: self.room_function.clone(),
        }
    }

    pub fn object(&self, id: &str) -> Option<&SceneObject> {
        self.objects.iter().find(|o| o.id == id)
    }
}
