//! Statistical placement prior: per-category histograms of simple
//! layout features, learned from example rooms.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use geo::Coord;
use serde::{Deserialize, Serialize};

use super::{SynthError, SyntheticScene};
use crate::geometry::{min_area_bounding_rect, norm, segment_distance};
use crate::scene::Room;

/// Half extents used for categories never seen in training.
pub const DEFAULT_HALF_EXTENT: f64 = 0.25;

/// Pseudo-count added to every bin.
const SMOOTHING: f64 = 0.05;
const DISTANCE_BIN: f64 = 0.1;
const DISTANCE_RANGE: f64 = 6.0;
const CENTER_BIN: f64 = 0.25;
const CENTER_RANGE: f64 = 8.0;
const BEARING_BIN: f64 = 15.0 * PI / 180.0;

/// Plausibility of putting an object of `category` at `position` facing
/// `yaw`, ignoring collisions (those are handled by the caller).
pub trait PlacementScorer: Sync {
    fn likelihood(&self, scene: &SyntheticScene, category: &str, position: Coord<f64>, yaw: f64) -> f64;

    /// Footprint half extents for a new object of `category`.
    fn half_extents(&self, category: &str) -> (f64, f64);

    /// Category visiting order for augmentation.
    fn categories(&self) -> Vec<String>;
}

/// Scores every placement 1.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct UniformScorer {
    pub categories: Vec<String>,
}

impl PlacementScorer for UniformScorer {
    fn likelihood(&self, _: &SyntheticScene, _: &str, _: Coord<f64>, _: f64) -> f64 {
        1.0
    }

    fn half_extents(&self, _: &str) -> (f64, f64) {
        (DEFAULT_HALF_EXTENT, DEFAULT_HALF_EXTENT)
    }

    fn categories(&self) -> Vec<String> {
        self.categories.clone()
    }
}

/// Fixed-width histogram over `[0, ∞)`, last bin catching overflow,
/// normalized and smoothed so no bin is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_width: f64,
    pub masses: Vec<f64>,
    pub samples: usize,
}

impl Histogram {
    pub fn from_samples(samples: &[f64], bin_width: f64, bins: usize) -> Histogram {
        let mut counts = vec![0.0; bins];
        for &s in samples {
            counts[Self::bin_of(s, bin_width, bins)] += 1.0;
        }
        let total = samples.len() as f64 + SMOOTHING * bins as f64;
        Histogram {
            bin_width,
            masses: counts.iter().map(|c| (c + SMOOTHING) / total).collect(),
            samples: samples.len(),
        }
    }

    fn bin_of(x: f64, w: f64, bins: usize) -> usize {
        if !(x >= 0.0) {
            return 0;
        }
        ((x / w).floor() as usize).min(bins - 1)
    }

    pub fn mass(&self, x: f64) -> f64 {
        self.masses[Self::bin_of(x, self.bin_width, self.masses.len())]
    }

    /// Mass at `x` relative to the modal bin, in `(0, 1]`.
    pub fn ratio(&self, x: f64) -> f64 {
        let max = self.masses.iter().copied().fold(0.0, f64::max);
        self.mass(x) / max
    }
}

/// Learned statistics for one category.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CategoryPrior {
    pub count: usize,
    pub half_extents: (f64, f64),
    pub mean_area: f64,
    /// Center to nearest boundary edge.
    pub wall: Histogram,
    /// Center to the room's bounding-rectangle center.
    pub center: Histogram,
    /// Per other category: center to that category's nearest footprint,
    /// and the angle between this object's facing and the direction to it.
    pub neighbors: BTreeMap<String, (Histogram, Histogram)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PriorScorer {
    pub categories: BTreeMap<String, CategoryPrior>,
}

fn distance_bins() -> usize {
    (DISTANCE_RANGE / DISTANCE_BIN).round() as usize + 1
}

fn center_bins() -> usize {
    (CENTER_RANGE / CENTER_BIN).round() as usize + 1
}

fn bearing_bins() -> usize {
    (PI / BEARING_BIN).round() as usize
}

/// Angle in `[0, π]` between `facing` and the direction `from → to`.
fn bearing(facing: Coord<f64>, from: Coord<f64>, to: Coord<f64>) -> f64 {
    let d = to - from;
    let n = norm(d) * norm(facing);
    if n == 0.0 {
        return 0.0;
    }
    ((facing.x * d.x + facing.y * d.y) / n).clamp(-1.0, 1.0).acos()
}

/// Learns one [`CategoryPrior`] per category present in `training_rooms`.
pub fn train_prior_scorer(training_rooms: &[Room]) -> Result<PriorScorer, SynthError> {
    #[derive(Default)]
    struct Acc {
        hx: f64,
        hy: f64,
        area: f64,
        wall: Vec<f64>,
        center: Vec<f64>,
        neighbors: BTreeMap<String, (Vec<f64>, Vec<f64>)>,
    }
    let mut acc: BTreeMap<String, Acc> = BTreeMap::new();
    for room in training_rooms {
        let segments = room.boundary.segments();
        let Ok(rect) = min_area_bounding_rect(&room.boundary) else {
            continue;
        };
        let mid = rect.center();
        for o in &room.objects {
            let c = o.footprint.center();
            let a = acc.entry(o.category.clone()).or_default();
            let (hx, hy) = if o.footprint.hx >= o.footprint.hy {
                (o.footprint.hx, o.footprint.hy)
            } else {
                (o.footprint.hy, o.footprint.hx)
            };
            a.hx += hx;
            a.hy += hy;
            a.area += o.footprint.area();
            a.wall
                .push(segments.iter().map(|(p, q)| segment_distance(c, c, *p, *q)).fold(f64::INFINITY, f64::min));
            a.center.push(norm(c - mid));
            let mut nearest: BTreeMap<&str, (f64, Coord<f64>)> = BTreeMap::new();
            for other in room.objects.iter().filter(|x| x.id != o.id) {
                let d = other.footprint.distance_to_point(c);
                let e = nearest.entry(other.category.as_str()).or_insert((f64::INFINITY, c));
                if d < e.0 {
                    *e = (d, other.footprint.center());
                }
            }
            for (cat, (d, at)) in nearest {
                let e = a.neighbors.entry(cat.to_string()).or_default();
                e.0.push(d);
                e.1.push(bearing(o.pose, c, at));
            }
        }
    }
    if acc.is_empty() {
        return Err(SynthError::EmptyCorpus);
    }
    let categories = acc
        .into_iter()
        .map(|(cat, a)| {
            let n = a.wall.len();
            let prior = CategoryPrior {
                count: n,
                half_extents: (a.hx / n as f64, a.hy / n as f64),
                mean_area: a.area / n as f64,
                wall: Histogram::from_samples(&a.wall, DISTANCE_BIN, distance_bins()),
                center: Histogram::from_samples(&a.center, CENTER_BIN, center_bins()),
                neighbors: a
                    .neighbors
                    .into_iter()
                    .map(|(k, (d, b))| {
                        (
                            k,
                            (
                                Histogram::from_samples(&d, DISTANCE_BIN, distance_bins()),
                                Histogram::from_samples(&b, BEARING_BIN, bearing_bins()),
                            ),
                        )
                    })
                    .collect(),
            };
            (cat, prior)
        })
        .collect();
    Ok(PriorScorer { categories })
}

impl PriorScorer {
    pub fn prior(&self, category: &str) -> Option<&CategoryPrior> {
        self.categories.get(category)
    }
}

impl PlacementScorer for PriorScorer {
    /// Geometric mean of each feature's bin mass relative to its modal
    /// bin. Neighbour features count only for categories present in the
    /// scene. Unknown categories score 1 everywhere.
    fn likelihood(&self, scene: &SyntheticScene, category: &str, position: Coord<f64>, yaw: f64) -> f64 {
        let Some(p) = self.categories.get(category) else {
            return 1.0;
        };
        let floor = &scene.floor;
        let local = floor.transform.inverse().apply(position);
        let wall = (0.5 * floor.sx - local.x.abs()).min(0.5 * floor.sy - local.y.abs()).max(0.0);
        let mut log_sum = p.wall.ratio(wall).ln() + p.center.ratio(norm(position - floor.center())).ln();
        let mut features = 2;
        let facing = Coord { x: yaw.cos(), y: yaw.sin() };
        for (cat, (dist, bear)) in &p.neighbors {
            let nearest = scene
                .objects
                .iter()
                .filter(|o| &o.object.category == cat)
                .map(|o| (o.object.footprint.distance_to_point(position), o.object.footprint.center()))
                .min_by(|a, b| a.0.total_cmp(&b.0));
            if let Some((d, at)) = nearest {
                log_sum += dist.ratio(d).ln() + bear.ratio(bearing(facing, position, at)).ln();
                features += 2;
            }
        }
        (log_sum / features as f64).exp()
    }

    fn half_extents(&self, category: &str) -> (f64, f64) {
        self.categories
            .get(category)
            .map(|p| p.half_extents)
            .unwrap_or((DEFAULT_HALF_EXTENT, DEFAULT_HALF_EXTENT))
    }

    /// Largest mean footprint first, then by name.
    fn categories(&self) -> Vec<String> {
        let mut cats: Vec<(&String, f64)> = self.categories.iter().map(|(k, p)| (k, p.mean_area)).collect();
        cats.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(b.0)));
        cats.into_iter().map(|(k, _)| k.clone()).collect()
    }
}
