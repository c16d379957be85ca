//! Exhaustive alignment over the full lattice, used to check the
//! evolutionary search and to align small annotated regions directly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lattice::{default_bound, Frame, Gene, Lattice};
use super::AlignError;
use crate::geometry::{apply_rigid, Bounds, Region, RigidTransform2D};

/// Default evaluation budget for the exhaustive search.
pub const ORACLE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    /// Per-axis translation radius around the coinciding centroids;
    /// `None` uses the same default bound as the evolutionary search.
    pub translation_radius: Option<f64>,
    /// Maximum lattice points visited before refusing to run.
    pub budget: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            translation_radius: None,
            budget: ORACLE_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub transforms: Vec<RigidTransform2D>,
    pub genome: Vec<Gene>,
    pub area: f64,
    /// Intersections actually computed after pruning.
    pub evaluations: u64,
}

/// Grid-optimal intersection area of 2–3 regions.
///
/// Regions are placed on a common lattice whose origin is their coinciding
/// centroids; every rotation and translation point is visited, with
/// branches skipped only when their bounding-box overlap cannot beat the
/// best area found so far. Ties go to the earliest lattice point.
pub fn brute_force_align(
    regions: &[Region],
    rotation_step: f64,
    translation_step: f64,
) -> Result<OracleResult, AlignError> {
    brute_force_align_with(regions, rotation_step, translation_step, &OracleOptions::default())
}

pub fn brute_force_align_with(
    regions: &[Region],
    rotation_step: f64,
    translation_step: f64,
    opts: &OracleOptions,
) -> Result<OracleResult, AlignError> {
    if !(2..=3).contains(&regions.len()) {
        return Err(AlignError::OracleRoomCount(regions.len()));
    }
    if !(rotation_step > 0.0 && translation_step > 0.0) {
        return Err(AlignError::InvalidConfig("oracle steps must be positive".into()));
    }
    let frames = regions.iter().map(Frame::of).collect::<Result<Vec<_>, _>>()?;
    let bound = opts
        .translation_radius
        .unwrap_or_else(|| default_bound(&regions.iter().collect::<Vec<_>>()));
    let lattice = Lattice::new(frames, translation_step, rotation_step, bound);
    brute_force_on(regions, &lattice, opts.budget)
}

/// Exhaustive search on a given lattice (frames must belong to
/// `regions`).
pub fn brute_force_on(regions: &[Region], lattice: &Lattice, budget: u64) -> Result<OracleResult, AlignError> {
    let per_room = lattice.points_per_room() as u128;
    let total = per_room.pow((regions.len() - 1) as u32);
    if total > budget as u128 {
        return Err(AlignError::GridTooFine {
            evaluations: total.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    // Rotated copies of each moving region with the translation set to
    // the zero gene; translations are then applied as pure shifts.
    let rotated: Vec<Vec<(Region, Bounds)>> = (1..regions.len())
        .map(|room| {
            (0..lattice.rotation_count)
                .map(|ir| {
                    let g = lattice.transform(room, Gene { ix: 0, iy: 0, ir });
                    let r = apply_rigid(&regions[room], &g);
                    let b = r.bounds().expect("nonempty region");
                    (r, b)
                })
                .collect()
        })
        .collect();
    let base = &regions[0];
    let k = lattice.max_index;
    let per_rotation: Vec<Best> = (0..lattice.rotation_count)
        .into_par_iter()
        .map(|ir| {
            let mut best = Best::default();
            let mut genome = Vec::with_capacity(regions.len() - 1);
            for ix in -k..=k {
                for iy in -k..=k {
                    genome.clear();
                    genome.push(Gene { ix, iy, ir });
                    search(lattice, &rotated, base, 0, &mut genome, &mut best);
                }
            }
            best
        })
        .collect();
    let mut best = Best::default();
    let mut evaluations = 0;
    for b in per_rotation {
        evaluations += b.evaluations;
        if b.area > best.area {
            best.area = b.area;
            best.genome = b.genome;
        }
    }
    if best.genome.is_empty() {
        // Nothing overlapped anywhere: report the first lattice point.
        best.genome = vec![Gene { ix: -k, iy: -k, ir: 0 }; regions.len() - 1];
    }
    Ok(OracleResult {
        transforms: lattice.transforms(&best.genome),
        genome: best.genome,
        area: best.area,
        evaluations,
    })
}

#[derive(Default)]
struct Best {
    area: f64,
    genome: Vec<Gene>,
    evaluations: u64,
}

fn shift(lattice: &Lattice, g: Gene) -> geo::Coord<f64> {
    let z = lattice.transform(1, Gene { ix: 0, iy: 0, ir: 0 });
    let t = lattice.transform(1, Gene { ir: 0, ..g });
    geo::Coord { x: t.tx - z.tx, y: t.ty - z.ty }
}

/// Depth-first over moving rooms; `genome[level]` is already fixed for
/// this level. Candidates are visited in lattice order, so requiring a
/// strict improvement keeps the earliest optimum.
fn search(
    lattice: &Lattice,
    rotated: &[Vec<(Region, Bounds)>],
    acc: &Region,
    level: usize,
    genome: &mut Vec<Gene>,
    best: &mut Best,
) {
    let g = genome[level];
    let d = shift(lattice, g);
    let (r, b) = &rotated[level][g.ir as usize];
    let moved_bounds = b.translated(d);
    let Some(acc_bounds) = acc.bounds() else { return };
    if acc_bounds.overlap_area(&moved_bounds) <= best.area {
        return;
    }
    best.evaluations += 1;
    let next = acc.intersection(&r.translated(d));
    let area = next.area();
    if area <= best.area {
        return;
    }
    if level + 1 == rotated.len() {
        best.area = area;
        best.genome = genome.clone();
        return;
    }
    let k = lattice.max_index;
    for ir in 0..lattice.rotation_count {
        for ix in -k..=k {
            for iy in -k..=k {
                genome.push(Gene { ix, iy, ir });
                search(lattice, rotated, &next, level + 1, genome, best);
                genome.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_squares_align_fully() {
        let a = Region::rect(0.0, 0.0, 1.0, 1.0);
        let b = Region::rect(3.0, 3.0, 4.0, 4.0);
        let r = brute_force_align(&[a, b], 15f64.to_radians(), 0.1).unwrap();
        assert!((r.area - 1.0).abs() < 1e-6);
    }

    #[test]
    fn square_meets_diamond() {
        let a = Region::rect(-0.5, -0.5, 0.5, 0.5);
        let h = 0.5f64.sqrt();
        let b = Region::polygon(&[(h, 0.0), (0.0, h), (-h, 0.0), (0.0, -h)]).unwrap();
        let opts = OracleOptions {
            translation_radius: Some(0.0),
            ..Default::default()
        };
        let r = brute_force_align_with(&[a, b], 15f64.to_radians(), 0.1, &opts).unwrap();
        assert!((r.area - 1.0).abs() < 1e-6, "{}", r.area);
    }

    #[test]
    fn too_fine_grid_is_refused() {
        let a = Region::rect(0.0, 0.0, 5.0, 5.0);
        let res = brute_force_align(&[a.clone(), a.clone(), a], 1f64.to_radians(), 0.01);
        assert!(matches!(res, Err(AlignError::GridTooFine { .. })));
    }

    #[test]
    fn needs_two_or_three_regions() {
        let a = Region::rect(0.0, 0.0, 1.0, 1.0);
        assert!(matches!(brute_force_align(&[a], 0.5, 0.1), Err(AlignError::OracleRoomCount(1))));
    }
}
