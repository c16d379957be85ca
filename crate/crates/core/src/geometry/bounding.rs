use geo::Coord;

use super::region::{cross, dot, norm};
use super::transform::{normalize_angle, RigidTransform2D, ScaledPlacement};
use super::{GeometryError, Region};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundingMode {
    /// Minimum-area rectangle over all orientations.
    #[default]
    Oriented,
    AxisAligned,
}

/// Convex hull (Andrew's monotone chain), counter-clockwise, collinear
/// points dropped.
pub fn convex_hull(points: &[Coord<f64>]) -> Vec<Coord<f64>> {
    let mut pts: Vec<Coord<f64>> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Coord<f64>> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 1] - lower[lower.len() - 2], p - lower[lower.len() - 2]) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Coord<f64>> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 1] - upper[upper.len() - 2], p - upper[upper.len() - 2]) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Smallest rectangle containing `r`, as a placement of the unit square
/// `[-½, ½]²`. Oriented mode tries every hull edge direction (the
/// rotating-calipers candidate set), which is exact for the hull.
pub fn min_area_bounding_rect(r: &Region) -> Result<ScaledPlacement, GeometryError> {
    bounding_rect(r, BoundingMode::Oriented)
}

pub fn bounding_rect(r: &Region, mode: BoundingMode) -> Result<ScaledPlacement, GeometryError> {
    let pts: Vec<Coord<f64>> = r.vertices().collect();
    if pts.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    if mode == BoundingMode::AxisAligned {
        return Ok(rect_along(&pts, Coord { x: 1.0, y: 0.0 }));
    }
    let hull = convex_hull(&pts);
    let mut best: Option<(f64, ScaledPlacement)> = None;
    let n = hull.len();
    if n < 2 {
        return Ok(rect_along(&pts, Coord { x: 1.0, y: 0.0 }));
    }
    for i in 0..n {
        let e = hull[(i + 1) % n] - hull[i];
        let len = norm(e);
        if len == 0.0 {
            continue;
        }
        let cand = rect_along(&hull, e / len);
        let area = cand.sx * cand.sy;
        if best.as_ref().is_none_or(|(a, _)| area < *a * (1.0 - 1e-12)) {
            best = Some((area, cand));
        }
    }
    Ok(best.map(|(_, p)| p).unwrap_or_else(|| rect_along(&pts, Coord { x: 1.0, y: 0.0 })))
}

/// Bounding rectangle with sides parallel to unit vector `u`.
fn rect_along(pts: &[Coord<f64>], u: Coord<f64>) -> ScaledPlacement {
    let v = Coord { x: -u.y, y: u.x };
    let (mut lo_u, mut hi_u, mut lo_v, mut hi_v) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &p in pts {
        let a = dot(p, u);
        let b = dot(p, v);
        lo_u = lo_u.min(a);
        hi_u = hi_u.max(a);
        lo_v = lo_v.min(b);
        hi_v = hi_v.max(b);
    }
    let cu = 0.5 * (lo_u + hi_u);
    let cv = 0.5 * (lo_v + hi_v);
    let center = u * cu + v * cv;
    let theta = normalize_angle(u.y.atan2(u.x));
    ScaledPlacement::new(RigidTransform2D::new(center.x, center.y, theta), hi_u - lo_u, hi_v - lo_v)
}

/// Orientation of the minimum-area rectangle folded into `[0, π/2)`;
/// rotates along with the region, so it serves as a canonical frame angle.
pub fn canonical_angle(r: &Region) -> Result<f64, GeometryError> {
    let rect = min_area_bounding_rect(r)?;
    let q = std::f64::consts::FRAC_PI_2;
    let mut a = rect.transform.theta.rem_euclid(q);
    if q - a < 1e-12 {
        a = 0.0;
    }
    Ok(a)
}
