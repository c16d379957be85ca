use geo::Coord;

use super::AlignError;
use crate::geometry::{norm, Region};
use crate::scene::FunctionRegion;

/// Poses closer than this are treated as one shared direction.
pub const POSE_TOLERANCE: f64 = 15.0 * std::f64::consts::PI / 180.0;

/// Facing direction for a mutual function region.
///
/// When every contributing region has a pose and all of them agree within
/// [`POSE_TOLERANCE`], the normalized mean is used. Otherwise the region
/// faces from its centroid toward `room_center`.
pub fn mutual_function_pose(
    contributing: &[FunctionRegion],
    mutual: &Region,
    room_center: Coord<f64>,
) -> Result<Coord<f64>, AlignError> {
    if contributing.is_empty() {
        return Err(AlignError::NoContributingRegions);
    }
    let poses: Option<Vec<Coord<f64>>> = contributing.iter().map(|f| f.pose).collect();
    if let Some(poses) = poses {
        let agree = poses.iter().enumerate().all(|(i, a)| {
            poses[i + 1..].iter().all(|b| {
                let c = (a.x * b.x + a.y * b.y) / (norm(*a) * norm(*b));
                c.clamp(-1.0, 1.0).acos() <= POSE_TOLERANCE + 1e-12
            })
        });
        let sum = poses.iter().fold(Coord { x: 0.0, y: 0.0 }, |s, p| s + *p / norm(*p));
        if agree && norm(sum) > 0.0 {
            return Ok(sum / norm(sum));
        }
    }
    let from = mutual
        .centroid()
        .or_else(|| contributing.iter().find_map(|f| f.region.centroid()))
        .unwrap_or(room_center);
    let d = room_center - from;
    if norm(d) > 1e-12 {
        Ok(d / norm(d))
    } else {
        // Region already centered: keep the first available pose, else +x.
        Ok(contributing
            .iter()
            .find_map(|f| f.pose)
            .filter(|p| norm(*p) > 0.0)
            .map(|p| p / norm(p))
            .unwrap_or(Coord { x: 1.0, y: 0.0 }))
    }
}
