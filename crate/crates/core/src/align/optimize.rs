use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::evaluate::{mutual_region, PreparedRoom};
use super::lattice::{default_bound, Frame, Gene, Lattice};
use super::spea2::{environmental_selection, fitness, tournament, Scored};
use super::{AlignError, AlignmentConfig, ObjectiveSpec};
use crate::geometry::{apply_rigid, Region, RigidTransform2D};
use crate::scene::{FunctionClass, Room};

/// Areas are compared on this grid (m²) during selection so that
/// round-off in the overlay cannot reorder equal candidates.
const AREA_QUANTUM: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParetoSolution {
    /// One per room; the first is the identity.
    pub transforms: Vec<RigidTransform2D>,
    /// Lattice coordinates of rooms `1..m`.
    pub genome: Vec<Gene>,
    pub objective_values: BTreeMap<FunctionClass, f64>,
    pub mutual_regions: BTreeMap<FunctionClass, Region>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MutualResult {
    pub solutions: Vec<ParetoSolution>,
    pub chosen_index: Option<usize>,
}

impl MutualResult {
    pub fn chosen(&self) -> Option<&ParetoSolution> {
        self.chosen_index.and_then(|i| self.solutions.get(i))
    }

    /// Largest mutual area of `class` over all solutions.
    pub fn best_area(&self, class: FunctionClass) -> f64 {
        self.solutions
            .iter()
            .filter_map(|s| s.objective_values.get(&class))
            .fold(0.0, |a, &b| a.max(b))
    }
}

/// Frame each room is placed by: the boundary's centroid, with object
/// footprints breaking the orientation tie of symmetric boundaries. Only
/// input coordinates enter, so the frame is exact up to round-off.
pub fn room_frame(room: &Room) -> Result<Frame, AlignError> {
    let cutouts: Vec<Region> = room.objects.iter().map(|o| o.footprint.region()).collect();
    Frame::with_holes_of(&room.boundary, &cutouts)
}

/// Lattice the search runs on (in world coordinates), shared with the
/// exhaustive oracle.
pub fn alignment_lattice(rooms: &[Room], cfg: &AlignmentConfig) -> Result<Lattice, AlignError> {
    let frames = rooms.iter().map(room_frame).collect::<Result<Vec<_>, _>>()?;
    let bound = cfg
        .translation_bounds
        .unwrap_or_else(|| default_bound(&rooms.iter().map(|r| &r.boundary).collect::<Vec<_>>()));
    Ok(Lattice::new(frames, cfg.translation_step, cfg.rotation_step, bound))
}

#[derive(Clone, Debug)]
struct Eval {
    areas: Vec<f64>,
    scored: Scored,
}

struct Problem<'a> {
    prepared: &'a [PreparedRoom],
    lattice: &'a Lattice,
    classes: Vec<FunctionClass>,
    maximized: Vec<(usize, f64)>,
    constraints: Vec<(usize, f64)>,
    weighted_sum: bool,
    to_world: RigidTransform2D,
}

impl Problem<'_> {
    fn evaluate(&self, genome: &[Gene]) -> Eval {
        let transforms = self.lattice.transforms(genome);
        let areas: Vec<f64> = self
            .classes
            .iter()
            .map(|&c| mutual_region(self.prepared, &transforms, c).area())
            .collect();
        let q = |a: f64| (a / AREA_QUANTUM).round() * AREA_QUANTUM;
        let objectives = if self.weighted_sum {
            vec![q(self.maximized.iter().map(|&(k, w)| w * areas[k]).sum())]
        } else {
            self.maximized.iter().map(|&(k, w)| q(w * areas[k])).collect()
        };
        let violation = q(self.constraints.iter().map(|&(k, min)| (min - areas[k]).max(0.0)).sum());
        Eval {
            areas,
            scored: Scored { objectives, violation },
        }
    }
}

/// Searches per-room rigid motions maximizing mutual function areas.
///
/// Room 0 stays put; rooms `1..m` move on the lattice returned by
/// [`alignment_lattice`]. With one maximized class (or a weighted sum) the
/// single best solution is returned; otherwise the nondominated archive.
/// If no feasible alignment was found, the error carries the smallest
/// total constraint shortfall seen.
pub fn optimize_alignment(rooms: &[Room], spec: &ObjectiveSpec, cfg: &AlignmentConfig) -> Result<MutualResult, AlignError> {
    if rooms.len() < 2 {
        return Err(AlignError::TooFewRooms(rooms.len()));
    }
    spec.validate()?;
    cfg.validate()?;
    // Work in room 0's frame: the overlay then sees the same coordinates
    // however the inputs are placed, which keeps the search trajectory
    // independent of a common rigid motion of all rooms.
    let world = alignment_lattice(rooms, cfg)?;
    let to_world = world.frames[0].to_world();
    let to_local = to_world.inverse();
    let local_rooms: Vec<Room> = rooms.iter().map(|r| r.transformed(&to_local)).collect();
    let prepared: Vec<PreparedRoom> = local_rooms.iter().map(PreparedRoom::new).collect();
    let mut frames: Vec<Frame> = world.frames.iter().map(|f| f.transformed(&to_local)).collect();
    frames[0] = Frame::identity();
    let lattice = Lattice { frames, ..world };
    let classes = spec.evaluated_classes();
    let index = |c: FunctionClass| classes.iter().position(|&x| x == c).expect("evaluated class");
    let problem = Problem {
        prepared: &prepared,
        lattice: &lattice,
        maximized: spec.maximized().into_iter().map(|(c, w)| (index(c), w)).collect(),
        constraints: spec.constraints().into_iter().map(|(c, m)| (index(c), m)).collect(),
        weighted_sum: spec.weighted_sum,
        classes: classes.clone(),
        to_world,
    };

    let genes = rooms.len() - 1;
    let n = cfg.population;
    let mut memo: HashMap<Vec<Gene>, Eval> = HashMap::new();
    let mut population: Vec<Vec<Gene>> = (0..n).map(|i| initial(&lattice, genes, i, n, cfg.seed)).collect();
    let mut archive: Vec<Vec<Gene>> = Vec::new();

    for generation in 0..=cfg.generations {
        evaluate_all(&problem, &population, &mut memo);
        let mut union: Vec<Vec<Gene>> = Vec::with_capacity(population.len() + archive.len());
        let mut seen = std::collections::HashSet::new();
        for g in population.iter().chain(archive.iter()) {
            if seen.insert(g.clone()) {
                union.push(g.clone());
            }
        }
        let scored: Vec<&Scored> = union.iter().map(|g| &memo[g].scored).collect();
        let fit = fitness(&scored);
        let keep = environmental_selection(&scored, &fit, n);
        let archive_fit: Vec<f64> = keep.iter().map(|&i| fit[i]).collect();
        archive = keep.into_iter().map(|i| union[i].clone()).collect();
        log::debug!(
            "generation {generation}: archive {} best {:?}",
            archive.len(),
            archive.first().map(|g| &memo[g].scored.objectives)
        );
        if generation == cfg.generations {
            break;
        }
        population = (0..n.div_ceil(2))
            .flat_map(|pair| {
                let mut rng = stream(cfg.seed, generation as u64 + 1, pair as u64);
                let a = &archive[tournament(&archive_fit, &mut rng)];
                let b = &archive[tournament(&archive_fit, &mut rng)];
                let (mut c1, mut c2) = if rng.random::<f64>() < cfg.crossover_rate {
                    crossover(&lattice, a, b, &mut rng)
                } else {
                    (a.clone(), b.clone())
                };
                mutate(&lattice, &mut c1, cfg, &mut rng);
                mutate(&lattice, &mut c2, cfg, &mut rng);
                [c1, c2]
            })
            .take(n)
            .collect();
    }

    let feasible: Vec<&Vec<Gene>> = archive.iter().filter(|g| memo[*g].scored.feasible()).collect();
    if feasible.is_empty() {
        let best = archive
            .iter()
            .min_by(|a, b| memo[*a].scored.violation.total_cmp(&memo[*b].scored.violation).then(a.cmp(b)))
            .expect("archive is nonempty");
        let e = &memo[best];
        let shortfalls = problem
            .constraints
            .iter()
            .map(|&(k, min)| (classes[k], (min - e.areas[k]).max(0.0)))
            .collect();
        return Err(AlignError::Infeasible {
            best_violation: e.scored.violation,
            shortfalls,
        });
    }

    let mut front: Vec<&Vec<Gene>> = feasible
        .iter()
        .copied()
        .filter(|a| !feasible.iter().any(|b| super::spea2::dominates(&memo[*b].scored, &memo[*a].scored)))
        .collect();
    // Best first objective, then lexicographic genome order.
    front.sort_by(|a, b| {
        let (x, y) = (&memo[*a].scored.objectives, &memo[*b].scored.objectives);
        y.iter().zip(x).map(|(p, q)| p.total_cmp(q)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(b))
    });
    front.dedup_by(|a, b| memo[*a].scored.objectives == memo[*b].scored.objectives);
    if spec.dimensions() == 1 {
        front.truncate(1);
    }
    let solutions = front.into_iter().map(|g| solution(&problem, g)).collect();
    Ok(MutualResult {
        solutions,
        chosen_index: None,
    })
}

fn solution(p: &Problem, genome: &[Gene]) -> ParetoSolution {
    let local = p.lattice.transforms(genome);
    let mut objective_values = BTreeMap::new();
    let mut mutual_regions = BTreeMap::new();
    for &c in &p.classes {
        let r = mutual_region(p.prepared, &local, c);
        objective_values.insert(c, r.area());
        mutual_regions.insert(c, apply_rigid(&r, &p.to_world));
    }
    let from_world = p.to_world.inverse();
    let transforms = local
        .iter()
        .enumerate()
        .map(|(i, h)| {
            if i == 0 {
                RigidTransform2D::identity()
            } else {
                p.to_world.compose(&h.compose(&from_world))
            }
        })
        .collect();
    ParetoSolution {
        transforms,
        genome: genome.to_vec(),
        objective_values,
        mutual_regions,
    }
}

fn evaluate_all(p: &Problem, population: &[Vec<Gene>], memo: &mut HashMap<Vec<Gene>, Eval>) {
    let mut fresh: Vec<&Vec<Gene>> = population.iter().filter(|g| !memo.contains_key(*g)).collect();
    fresh.sort();
    fresh.dedup();
    let evals: Vec<Eval> = fresh.par_iter().map(|g| p.evaluate(g)).collect();
    for (g, e) in fresh.into_iter().zip(evals) {
        memo.insert(g.clone(), e);
    }
}

/// Independent random stream per (generation, slot), so results do not
/// depend on evaluation order or thread count.
fn stream(seed: u64, generation: u64, slot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((generation << 32) | slot);
    rng
}

fn random_gene(l: &Lattice, radius: i32, rng: &mut impl Rng) -> Gene {
    Gene {
        ix: rng.random_range(-radius..=radius),
        iy: rng.random_range(-radius..=radius),
        ir: rng.random_range(0..l.rotation_count),
    }
}

/// Initial individual `i`: the first half sits frames on top of each
/// other and sweeps the rotation grid; the rest is spread uniformly, half
/// of it near the centre.
fn initial(l: &Lattice, genes: usize, i: usize, n: usize, seed: u64) -> Vec<Gene> {
    let mut rng = stream(seed, 0, i as u64);
    if i < n / 2 {
        return (0..genes)
            .map(|k| Gene {
                ix: 0,
                iy: 0,
                ir: if k == 0 {
                    i as u32 % l.rotation_count
                } else {
                    rng.random_range(0..l.rotation_count)
                },
            })
            .collect();
    }
    let radius = if i % 2 == 0 { l.max_index } else { (l.max_index / 4).max(1).min(l.max_index) };
    (0..genes).map(|_| random_gene(l, radius, &mut rng)).collect()
}

/// Blend crossover (BLX-0.5) on translation indices, uniform choice of
/// rotation index.
fn crossover(l: &Lattice, a: &[Gene], b: &[Gene], rng: &mut impl Rng) -> (Vec<Gene>, Vec<Gene>) {
    let blend = |x: i32, y: i32, rng: &mut dyn rand::RngCore| -> i32 {
        let u: f64 = rng.random_range(-0.5..=1.5);
        let v = x as f64 + u * (y - x) as f64;
        (v.round() as i32).clamp(-l.max_index, l.max_index)
    };
    let mut c1 = Vec::with_capacity(a.len());
    let mut c2 = Vec::with_capacity(a.len());
    for (ga, gb) in a.iter().zip(b) {
        let swap = rng.random::<bool>();
        c1.push(Gene {
            ix: blend(ga.ix, gb.ix, rng),
            iy: blend(ga.iy, gb.iy, rng),
            ir: if swap { gb.ir } else { ga.ir },
        });
        c2.push(Gene {
            ix: blend(gb.ix, ga.ix, rng),
            iy: blend(gb.iy, ga.iy, rng),
            ir: if swap { ga.ir } else { gb.ir },
        });
    }
    (c1, c2)
}

/// With probability `mutation_probability`, resamples each gene component
/// with probability `mutation_rate` (at least one): half the time
/// uniformly, otherwise by a small local step.
fn mutate(l: &Lattice, genome: &mut [Gene], cfg: &AlignmentConfig, rng: &mut impl Rng) {
    if rng.random::<f64>() >= cfg.mutation_probability {
        return;
    }
    let slots = genome.len() * 3;
    let mut picked: Vec<usize> = (0..slots).filter(|_| rng.random::<f64>() < cfg.mutation_rate).collect();
    if picked.is_empty() {
        picked.push(rng.random_range(0..slots));
    }
    let k = l.max_index;
    let r = l.rotation_count as i64;
    for s in picked {
        let g = &mut genome[s / 3];
        let local = rng.random::<bool>();
        let step = rng.random_range(1..=3) * if rng.random::<bool>() { 1 } else { -1 };
        match s % 3 {
            0 => g.ix = if local { (g.ix + step).clamp(-k, k) } else { rng.random_range(-k..=k) },
            1 => g.iy = if local { (g.iy + step).clamp(-k, k) } else { rng.random_range(-k..=k) },
            _ => {
                g.ir = if local {
                    (g.ir as i64 + step.signum() as i64).rem_euclid(r) as u32
                } else {
                    rng.random_range(0..l.rotation_count)
                }
            }
        }
    }
}
