//! Integer search lattice over per-room rigid motions.
//!
//! Each room carries a frame (area centroid plus a direction that turns
//! with the room). A gene `(ix, iy, ir)` places room `i` so that its
//! frame sits at `c₀ + R(α₀)·(ix, iy)·step` with relative turn
//! `ir·rotation_step`, measured from room 0's frame. Because everything is
//! expressed relative to frames, applying one rigid motion to all inputs
//! leaves the gene → objective map unchanged.

use std::f64::consts::{FRAC_PI_2, TAU};

use geo::Coord;
use serde::{Deserialize, Serialize};

use super::AlignError;
use crate::geometry::{canonical_angle, min_area_bounding_rect, normalize_angle, Region, RigidTransform2D};

/// Centroid and orientation attached to a region.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub origin: Coord<f64>,
    /// Radians in `[0, 2π)`.
    pub angle: f64,
}

impl Frame {
    /// Frame of `r`: area centroid, and the minimum-area-rectangle axis
    /// (one of four) along which the region's third moment is largest.
    pub fn of(r: &Region) -> Result<Frame, AlignError> {
        Frame::with_holes_of(r, &[])
    }

    /// Like [`Frame::of`], but the third moment is taken of `r` minus the
    /// (possibly overlapping) `cutouts`, summed piecewise so that no
    /// boolean operation is involved.
    pub fn with_holes_of(r: &Region, cutouts: &[Region]) -> Result<Frame, AlignError> {
        let origin = r.centroid().ok_or(AlignError::EmptyRegion)?;
        let base = canonical_angle(r)?;
        let scale = r.bounds().map(|b| b.diagonal()).unwrap_or(1.0).max(1e-12);
        let tol = 1e-9 * r.area() * scale.powi(3);
        let mut best = (f64::NEG_INFINITY, 0.0);
        for k in 0..4 {
            let a = base + k as f64 * FRAC_PI_2;
            let m = third_moment(r, origin, a) - cutouts.iter().map(|c| third_moment(c, origin, a)).sum::<f64>();
            if m > best.0 + tol {
                best = (m, a);
            }
        }
        Ok(Frame {
            origin,
            angle: normalize_angle(best.1),
        })
    }

    pub fn identity() -> Frame {
        Frame {
            origin: Coord { x: 0.0, y: 0.0 },
            angle: 0.0,
        }
    }

    /// Map from frame-local to world coordinates.
    pub fn to_world(&self) -> RigidTransform2D {
        RigidTransform2D::new(self.origin.x, self.origin.y, self.angle)
    }

    pub fn transformed(&self, g: &RigidTransform2D) -> Frame {
        Frame {
            origin: g.apply(self.origin),
            angle: normalize_angle(self.angle + g.theta),
        }
    }
}

/// `∫ ((p − c)·u)³ dA` with `u = (cos a, sin a)`, by Green's theorem over
/// every oriented ring.
fn third_moment(r: &Region, c: Coord<f64>, a: f64) -> f64 {
    let (s, co) = a.sin_cos();
    let local = |p: Coord<f64>| {
        let d = p - c;
        Coord {
            x: co * d.x + s * d.y,
            y: -s * d.x + co * d.y,
        }
    };
    let mut total = 0.0;
    for ring in r.rings() {
        let n = ring.len();
        for i in 0..n {
            let p = local(ring[i]);
            let q = local(ring[(i + 1) % n]);
            let cr = p.x * q.y - q.x * p.y;
            total += cr * (p.x.powi(3) + p.x * p.x * q.x + p.x * q.x * q.x + q.x.powi(3));
        }
    }
    total / 20.0
}

/// One room's position on the lattice, relative to room 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gene {
    pub ix: i32,
    pub iy: i32,
    pub ir: u32,
}

impl Gene {
    pub const ZERO: Gene = Gene { ix: 0, iy: 0, ir: 0 };
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub frames: Vec<Frame>,
    pub translation_step: f64,
    pub rotation_step: f64,
    /// Number of distinct rotation indices.
    pub rotation_count: u32,
    /// Translation indices range over `-max_index..=max_index`.
    pub max_index: i32,
}

impl Lattice {
    /// `bound` is the largest centroid offset per axis, in meters.
    pub fn new(frames: Vec<Frame>, translation_step: f64, rotation_step: f64, bound: f64) -> Lattice {
        let turns = TAU / rotation_step;
        let rotation_count = if (turns - turns.round()).abs() < 1e-9 {
            turns.round()
        } else {
            turns.ceil()
        }
        .max(1.0) as u32;
        let max_index = (bound / translation_step - 1e-9).ceil().max(0.0) as i32;
        Lattice {
            frames,
            translation_step,
            rotation_step,
            rotation_count,
            max_index,
        }
    }

    pub fn rooms(&self) -> usize {
        self.frames.len()
    }

    /// Lattice points per moving room.
    pub fn points_per_room(&self) -> u64 {
        let side = 2 * self.max_index as u64 + 1;
        side * side * self.rotation_count as u64
    }

    pub fn contains(&self, g: &Gene) -> bool {
        g.ix.abs() <= self.max_index && g.iy.abs() <= self.max_index && g.ir < self.rotation_count
    }

    /// Transform of room `room ≥ 1` for gene `g`.
    pub fn transform(&self, room: usize, g: Gene) -> RigidTransform2D {
        let f0 = self.frames[0];
        let fi = self.frames[room];
        let theta = f0.angle + g.ir as f64 * self.rotation_step - fi.angle;
        let d = RigidTransform2D::rotation(f0.angle).rotate_vec(Coord {
            x: g.ix as f64 * self.translation_step,
            y: g.iy as f64 * self.translation_step,
        });
        let r = RigidTransform2D::rotation(theta);
        let rc = r.rotate_vec(fi.origin);
        RigidTransform2D::new(f0.origin.x + d.x - rc.x, f0.origin.y + d.y - rc.y, theta)
    }

    /// All transforms for a genome of `rooms() - 1` genes; room 0 gets the
    /// identity.
    pub fn transforms(&self, genome: &[Gene]) -> Vec<RigidTransform2D> {
        std::iter::once(RigidTransform2D::identity())
            .chain(genome.iter().enumerate().map(|(k, g)| self.transform(k + 1, *g)))
            .collect()
    }
}

/// Default per-axis translation bound: half the sum of the two largest
/// minimum-area bounding-rectangle diagonals, enough for any two rooms to
/// be slid fully past each other. Oriented rectangles keep the bound
/// independent of how the inputs are rotated.
pub fn default_bound(regions: &[&Region]) -> f64 {
    let mut diags: Vec<f64> = regions
        .iter()
        .filter_map(|r| min_area_bounding_rect(r).ok())
        .map(|p| p.sx.hypot(p.sy))
        .collect();
    diags.sort_by(|a, b| b.total_cmp(a));
    0.5 * diags.iter().take(2).sum::<f64>()
}
