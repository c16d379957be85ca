use geo::Coord;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{PlacedObject, PlacementCandidate, PlacementScorer, Provenance, SynthError, SyntheticScene};
use crate::geometry::{normalize_angle, RigidTransform2D, ScaledPlacement};
use crate::scene::{CategoryTable, Obb, Room, SceneObject};

/// Height range given to synthesized objects.
const SYNTH_HEIGHT: (f64, f64) = (0.0, 0.8);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AugmentConfig {
    /// Candidate spacing in meters.
    pub grid_step: f64,
    /// Candidate yaw spacing in radians.
    pub yaw_step: f64,
    /// Size of the top-P set handed to re-ranking.
    pub n: usize,
    /// A placement needs a score strictly above this.
    pub stop_threshold: f64,
    /// Maximum number of synthesized objects.
    pub max_objects: usize,
    /// Visiting order; `None` uses the scorer's order.
    pub category_order: Option<Vec<String>>,
    pub seed: u64,
    /// Re-rank the top-n by proximity to same-function input objects;
    /// `false` places the plain best-scoring candidate.
    pub rerank: bool,
    /// Restrict re-ranking targets to these room ids.
    pub rerank_rooms: Option<Vec<String>>,
}

impl Default for AugmentConfig {
    fn default() -> Self {
        Self {
            grid_step: 0.1,
            yaw_step: 15f64.to_radians(),
            n: 10,
            stop_threshold: 0.3,
            max_objects: 20,
            category_order: None,
            seed: 0,
            rerank: true,
            rerank_rooms: None,
        }
    }
}

/// Regular sampling grid in the floor's own frame, shifted by a seeded
/// sub-step offset.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateGrid {
    pub floor: ScaledPlacement,
    pub step: f64,
    pub yaw_step: f64,
    pub offset: (f64, f64),
    pub nx: u64,
    pub ny: u64,
    pub n_yaw: u64,
}

impl CandidateGrid {
    pub fn len(&self) -> u64 {
        self.nx * self.ny * self.n_yaw
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position and yaw of candidate `index`, where
    /// `index = (j·nx + i)·n_yaw + k`.
    pub fn at(&self, index: u64) -> (Coord<f64>, f64) {
        let k = index % self.n_yaw;
        let cell = index / self.n_yaw;
        let (i, j) = (cell % self.nx, cell / self.nx);
        let local = Coord {
            x: -0.5 * self.floor.sx + self.offset.0 + i as f64 * self.step,
            y: -0.5 * self.floor.sy + self.offset.1 + j as f64 * self.step,
        };
        let yaw = normalize_angle(self.floor.transform.theta + k as f64 * self.yaw_step);
        (self.floor.transform.apply(local), yaw)
    }
}

pub fn candidate_grid(floor: &ScaledPlacement, step: f64, yaw_step: f64, seed: u64) -> CandidateGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offset = (rng.random_range(0.0..step), rng.random_range(0.0..step));
    let count = |len: f64, o: f64| if len >= o { ((len - o) / step).floor() as u64 + 1 } else { 0 };
    let turns = std::f64::consts::TAU / yaw_step;
    let n_yaw = if (turns - turns.round()).abs() < 1e-9 { turns.round() } else { turns.ceil() }.max(1.0) as u64;
    CandidateGrid {
        floor: *floor,
        step,
        yaw_step,
        offset,
        nx: count(floor.sx, offset.0),
        ny: count(floor.sy, offset.1),
        n_yaw,
    }
}

fn footprint(scorer: &dyn PlacementScorer, category: &str, position: Coord<f64>, yaw: f64) -> Obb {
    let (hx, hy) = scorer.half_extents(category);
    Obb::new(position.x, position.y, hx, hy, yaw)
}

/// Probability in `[0, 1]` that placing `category` at `position`/`yaw`
/// gives a plausible scene; zero when the footprint leaves the floor or
/// hits a placed object.
pub fn score_placement(
    scorer: &dyn PlacementScorer,
    scene: &SyntheticScene,
    category: &str,
    position: Coord<f64>,
    yaw: f64,
) -> f64 {
    if !scene.fits(&footprint(scorer, category, position, yaw)) {
        return 0.0;
    }
    scorer.likelihood(scene, category, position, yaw).clamp(0.0, 1.0)
}

/// Every grid candidate with a positive score, in grid order.
pub fn score_candidates(
    scorer: &dyn PlacementScorer,
    scene: &SyntheticScene,
    category: &str,
    grid: &CandidateGrid,
) -> Vec<PlacementCandidate> {
    let per_row = grid.nx * grid.n_yaw;
    (0..grid.ny)
        .into_par_iter()
        .flat_map_iter(|j| {
            (j * per_row..(j + 1) * per_row).filter_map(|index| {
                let (position, yaw) = grid.at(index);
                let score = score_placement(scorer, scene, category, position, yaw);
                (score > 0.0).then(|| PlacementCandidate {
                    position,
                    yaw,
                    score,
                    grid_index: index,
                    footprint: footprint(scorer, category, position, yaw),
                })
            })
        })
        .collect()
}

/// Transformed footprints of input objects that share a function with a
/// category (or, for categories without functions, the same category).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RerankTargets {
    pub footprints: Vec<Obb>,
}

impl RerankTargets {
    pub fn new(
        rooms: &[Room],
        transforms: &[RigidTransform2D],
        category: &str,
        table: &CategoryTable,
        only_rooms: Option<&[String]>,
    ) -> RerankTargets {
        let wanted = table.functions(category);
        let footprints = rooms
            .iter()
            .zip(transforms)
            .filter(|(r, _)| only_rooms.is_none_or(|ids| ids.contains(&r.id)))
            .flat_map(|(r, g)| {
                r.objects
                    .iter()
                    .filter(|o| {
                        if wanted.is_empty() {
                            o.category == category
                        } else {
                            o.functions.iter().any(|f| wanted.contains(f))
                        }
                    })
                    .map(move |o| o.footprint.transformed(g))
            })
            .collect();
        RerankTargets { footprints }
    }

    /// Distance from `b` to the nearest target; `None` without targets.
    pub fn distance(&self, b: &Obb) -> Option<f64> {
        self.footprints.iter().map(|t| t.distance(b)).min_by(f64::total_cmp)
    }
}

/// Index of the item chosen from `(score, distance, grid_index)` triples:
/// restrict to the `n` best scores (ties by lower grid index), then take
/// the smallest distance, then the higher score, then the lower index.
pub fn rerank_select(items: &[(f64, f64, u64)], n: usize) -> Option<usize> {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| items[b].0.total_cmp(&items[a].0).then(items[a].2.cmp(&items[b].2)));
    order.truncate(n.max(1));
    order.into_iter().min_by(|&a, &b| {
        items[a]
            .1
            .total_cmp(&items[b].1)
            .then(items[b].0.total_cmp(&items[a].0))
            .then(items[a].2.cmp(&items[b].2))
    })
}

/// Chooses among the top-`n` candidates by P the one closest to a
/// same-function input object; without targets, the best-scoring one.
pub fn conditional_rerank(candidates: &[PlacementCandidate], targets: &RerankTargets, n: usize) -> Option<PlacementCandidate> {
    let items: Vec<(f64, f64, u64)> = if targets.footprints.is_empty() {
        candidates.iter().map(|c| (c.score, 0.0, c.grid_index)).collect()
    } else {
        // Only the top-n need a distance; the rest get +∞ and never win.
        let mut order: Vec<usize> = (0..candidates.len()).collect();
        order.sort_by(|&a, &b| {
            candidates[b]
                .score
                .total_cmp(&candidates[a].score)
                .then(candidates[a].grid_index.cmp(&candidates[b].grid_index))
        });
        let mut d = vec![f64::INFINITY; candidates.len()];
        for &i in order.iter().take(n.max(1)) {
            d[i] = targets.distance(&candidates[i].footprint).unwrap_or(f64::INFINITY);
        }
        candidates.iter().zip(d).map(|(c, d)| (c.score, d, c.grid_index)).collect()
    };
    rerank_select(&items, n).map(|i| candidates[i])
}

/// Adds synthesized objects one at a time. Categories are visited in
/// order, round after round; each visit scores the whole grid, keeps the
/// candidates scoring above the threshold and places the re-ranked
/// choice. A category whose best score does not exceed the threshold is
/// retired. Stops when all categories are retired or `max_objects`
/// objects have been synthesized.
pub fn augment_scene(
    init: &SyntheticScene,
    rooms: &[Room],
    transforms: &[RigidTransform2D],
    scorer: &dyn PlacementScorer,
    table: &CategoryTable,
    cfg: &AugmentConfig,
) -> Result<SyntheticScene, SynthError> {
    if rooms.len() != transforms.len() {
        return Err(SynthError::CountMismatch {
            rooms: rooms.len(),
            transforms: transforms.len(),
        });
    }
    let mut scene = init.clone();
    let grid = candidate_grid(&scene.floor, cfg.grid_step, cfg.yaw_step, cfg.seed);
    let order = cfg.category_order.clone().unwrap_or_else(|| scorer.categories());
    let mut retired = vec![false; order.len()];
    let mut added = 0;
    while added < cfg.max_objects && retired.iter().any(|r| !r) {
        for (ci, category) in order.iter().enumerate() {
            if retired[ci] || added >= cfg.max_objects {
                continue;
            }
            let candidates: Vec<PlacementCandidate> = score_candidates(scorer, &scene, category, &grid)
                .into_iter()
                .filter(|c| c.score > cfg.stop_threshold)
                .collect();
            if candidates.is_empty() {
                retired[ci] = true;
                continue;
            }
            let targets = if cfg.rerank {
                RerankTargets::new(rooms, transforms, category, table, cfg.rerank_rooms.as_deref())
            } else {
                RerankTargets::default()
            };
            let n = if cfg.rerank { cfg.n } else { 1 };
            let chosen = conditional_rerank(&candidates, &targets, n).expect("nonempty candidates");
            let object = SceneObject::new(
                format!("synth-{}", scene.synthesized()),
                category.as_str(),
                chosen.footprint,
                Coord {
                    x: chosen.yaw.cos(),
                    y: chosen.yaw.sin(),
                },
                SYNTH_HEIGHT,
                table,
            )?;
            log::debug!("placed {category} at {:?} (P = {:.4})", chosen.position, chosen.score);
            scene.objects.push(PlacedObject {
                object,
                provenance: Provenance::Synthesized,
            });
            added += 1;
        }
    }
    Ok(scene)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::UniformScorer;

    fn floor(w: f64, h: f64) -> ScaledPlacement {
        ScaledPlacement::new(RigidTransform2D::new(w / 2.0, h / 2.0, 0.0), w, h)
    }

    #[test]
    fn rerank_rule_example() {
        let items = [(0.9, 2.0, 0), (0.85, 0.3, 1), (0.8, 1.0, 2), (0.1, 0.05, 3)];
        assert_eq!(rerank_select(&items, 3), Some(1));
        let tied = [(0.9, 1.0, 0), (0.85, 1.0, 1), (0.8, 1.0, 2)];
        assert_eq!(rerank_select(&tied, 3), Some(0));
        assert_eq!(rerank_select(&items, 1), Some(0));
    }

    #[test]
    fn rerank_ignores_list_order() {
        let items = [(0.5, 1.0, 7), (0.5, 1.0, 3), (0.9, 2.0, 1)];
        let rev: Vec<_> = items.iter().rev().copied().collect();
        let a = items[rerank_select(&items, 2).unwrap()];
        let b = rev[rerank_select(&rev, 2).unwrap()];
        assert_eq!(a, b);
    }

    #[test]
    fn grid_indices_round_trip() {
        let g = candidate_grid(&floor(2.0, 1.0), 0.1, 15f64.to_radians(), 3);
        assert_eq!(g.n_yaw, 24);
        assert!(g.nx >= 19 && g.nx <= 21);
        let (p, yaw) = g.at(((2 * g.nx) + 5) * g.n_yaw + 4);
        assert!((p.x - (g.offset.0 + 0.5)).abs() < 1e-12 && (p.y - (g.offset.1 + 0.2)).abs() < 1e-12);
        assert!((yaw - 60f64.to_radians()).abs() < 1e-12);
    }

    #[test]
    fn collisions_score_zero() {
        let mut scene = SyntheticScene::new(floor(4.0, 4.0), "x");
        let s = UniformScorer::default();
        let c = Coord { x: 2.0, y: 2.0 };
        assert_eq!(score_placement(&s, &scene, "box", c, 0.0), 1.0);
        assert_eq!(score_placement(&s, &scene, "box", c, 0.3), 1.0);
        scene.objects.push(PlacedObject {
            object: SceneObject::facing_yaw("o", "box", Obb::new(2.1, 2.0, 0.2, 0.2, 0.0), 1.0, &CategoryTable::default()).unwrap(),
            provenance: Provenance::Synthesized,
        });
        assert_eq!(score_placement(&s, &scene, "box", c, 0.0), 0.0);
        assert_eq!(score_placement(&s, &scene, "box", Coord { x: 0.1, y: 2.0 }, 0.0), 0.0);
    }

    #[test]
    fn threshold_one_places_nothing() {
        let scene = SyntheticScene::new(floor(3.0, 3.0), "x");
        let s = UniformScorer {
            categories: vec!["box".into()],
        };
        let cfg = AugmentConfig {
            stop_threshold: 1.0,
            ..Default::default()
        };
        let out = augment_scene(&scene, &[], &[], &s, &CategoryTable::default(), &cfg).unwrap();
        assert!(out.objects.is_empty());
    }

    #[test]
    fn uniform_single_object_at_first_grid_point() {
        let scene = SyntheticScene::new(floor(3.0, 3.0), "x");
        let s = UniformScorer {
            categories: vec!["box".into()],
        };
        let cfg = AugmentConfig {
            max_objects: 1,
            ..Default::default()
        };
        let out = augment_scene(&scene, &[], &[], &s, &CategoryTable::default(), &cfg).unwrap();
        assert_eq!(out.objects.len(), 1);
        let grid = candidate_grid(&scene.floor, cfg.grid_step, cfg.yaw_step, cfg.seed);
        let first = (0..grid.len()).find(|&i| {
            let (p, y) = grid.at(i);
            score_placement(&s, &scene, "box", p, y) > 0.0
        });
        let (p, _) = grid.at(first.unwrap());
        let got = out.objects[0].object.footprint.center();
        assert!((got.x - p.x).abs() < 1e-12 && (got.y - p.y).abs() < 1e-12);
    }
}
