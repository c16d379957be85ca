use std::f64::consts::TAU;

use geo::Coord;
use serde::{Deserialize, Serialize};

use super::Region;

/// Planar rotation about the origin followed by a translation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigidTransform2D {
    pub tx: f64,
    pub ty: f64,
    /// Radians in `[0, 2π)`.
    pub theta: f64,
}

impl Default for RigidTransform2D {
    fn default() -> Self {
        Self::identity()
    }
}

/// Wraps an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

impl RigidTransform2D {
    pub fn new(tx: f64, ty: f64, theta: f64) -> Self {
        Self {
            tx,
            ty,
            theta: normalize_angle(theta),
        }
    }

    pub fn identity() -> Self {
        Self {
            tx: 0.0,
            ty: 0.0,
            theta: 0.0,
        }
    }

    pub fn rotation(theta: f64) -> Self {
        Self::new(0.0, 0.0, theta)
    }

    pub fn translation(tx: f64, ty: f64) -> Self {
        Self::new(tx, ty, 0.0)
    }

    /// Rotation by `theta` about `pivot`.
    pub fn rotation_about(pivot: Coord<f64>, theta: f64) -> Self {
        let r = Self::rotation(theta);
        let p = r.rotate_vec(pivot);
        Self::new(pivot.x - p.x, pivot.y - p.y, theta)
    }

    pub fn is_identity(&self) -> bool {
        self.tx == 0.0 && self.ty == 0.0 && self.theta == 0.0
    }

    pub fn rotate_vec(&self, v: Coord<f64>) -> Coord<f64> {
        let (s, c) = self.theta.sin_cos();
        Coord {
            x: c * v.x - s * v.y,
            y: s * v.x + c * v.y,
        }
    }

    pub fn apply(&self, p: Coord<f64>) -> Coord<f64> {
        let r = self.rotate_vec(p);
        Coord {
            x: r.x + self.tx,
            y: r.y + self.ty,
        }
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &RigidTransform2D) -> RigidTransform2D {
        let t = self.apply(Coord {
            x: other.tx,
            y: other.ty,
        });
        RigidTransform2D::new(t.x, t.y, self.theta + other.theta)
    }

    pub fn inverse(&self) -> RigidTransform2D {
        let inv_rot = RigidTransform2D::rotation(-self.theta);
        let t = inv_rot.rotate_vec(Coord {
            x: -self.tx,
            y: -self.ty,
        });
        RigidTransform2D::new(t.x, t.y, -self.theta)
    }
}

/// Applies a rigid motion to every vertex of a region.
pub fn apply_rigid(r: &Region, g: &RigidTransform2D) -> Region {
    if g.is_identity() {
        return r.clone();
    }
    let (s, c) = g.theta.sin_cos();
    r.map_coords(|p| Coord {
        x: c * p.x - s * p.y + g.tx,
        y: s * p.x + c * p.y + g.ty,
    })
}

/// Anisotropic scale about the origin, then a rigid motion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledPlacement {
    pub transform: RigidTransform2D,
    pub sx: f64,
    pub sy: f64,
}

impl ScaledPlacement {
    pub fn new(transform: RigidTransform2D, sx: f64, sy: f64) -> Self {
        Self { transform, sx, sy }
    }

    pub fn apply_point(&self, p: Coord<f64>) -> Coord<f64> {
        self.transform.apply(Coord {
            x: p.x * self.sx,
            y: p.y * self.sy,
        })
    }

    pub fn apply(&self, r: &Region) -> Region {
        if self.sx <= 0.0 || self.sy <= 0.0 {
            return Region::empty();
        }
        r.map_coords(|p| self.apply_point(p))
    }

    pub fn center(&self) -> Coord<f64> {
        Coord {
            x: self.transform.tx,
            y: self.transform.ty,
        }
    }

    /// Corners of the placed unit square `[-½, ½]²`, counter-clockwise.
    pub fn corners(&self) -> [Coord<f64>; 4] {
        [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)].map(|(x, y)| self.apply_point(Coord { x, y }))
    }

    /// The placed unit square as a region.
    pub fn rect_region(&self) -> Region {
        self.apply(&unit_square())
    }

    pub fn area(&self) -> f64 {
        self.sx * self.sy
    }

    /// Inverse-maps a world point into the unit-square frame.
    pub fn to_local(&self, p: Coord<f64>) -> Coord<f64> {
        let q = self.transform.inverse().apply(p);
        Coord {
            x: q.x / self.sx,
            y: q.y / self.sy,
        }
    }
}

/// `[-½, ½]²`, the reference shape for rectangle placements.
pub fn unit_square() -> Region {
    Region::rect(-0.5, -0.5, 0.5, 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn rotate_quarter_turn() {
        let sq = Region::rect(0.0, 0.0, 1.0, 1.0);
        let r = apply_rigid(&sq, &RigidTransform2D::rotation(FRAC_PI_2));
        let b = r.bounds().unwrap();
        assert!((b.min.x + 1.0).abs() < 1e-12 && b.max.x.abs() < 1e-12);
        assert!(b.min.y.abs() < 1e-12 && (b.max.y - 1.0).abs() < 1e-12);
        assert!((r.area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_is_noop() {
        let sq = Region::rect(0.0, 0.0, 1.0, 1.0);
        assert_eq!(apply_rigid(&sq, &RigidTransform2D::identity()), sq);
    }

    #[test]
    fn inverse_roundtrip() {
        let g = RigidTransform2D::new(1.5, -2.0, 4.0);
        let p = Coord { x: 0.3, y: 7.0 };
        let q = g.inverse().apply(g.apply(p));
        assert!((p.x - q.x).abs() < 1e-9 && (p.y - q.y).abs() < 1e-9);
        let id = g.compose(&g.inverse());
        assert!(id.tx.abs() < 1e-9 && id.ty.abs() < 1e-9);
        assert!(id.theta < 1e-9 || TAU - id.theta < 1e-9);
    }

    #[test]
    fn scaled_area() {
        let p = ScaledPlacement::new(RigidTransform2D::new(2.0, 1.0, 0.7), 3.0, 0.5);
        assert!((p.rect_region().area() - 1.5).abs() < 1e-9);
    }

    #[test]
    fn angle_wraps() {
        assert_eq!(normalize_angle(-FRAC_PI_2), 3.0 * FRAC_PI_2);
        assert_eq!(normalize_angle(TAU), 0.0);
    }
}
