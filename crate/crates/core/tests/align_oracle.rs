mod common;

use std::time::Instant;

use mss::align::{
    alignment_lattice, brute_force_on, optimize_alignment, AlignmentConfig, ObjectiveSpec, PreparedRoom, ORACLE_BUDGET,
};
use mss::geometry::{apply_rigid, Region, RigidTransform2D};
use mss::scene::FunctionClass;

#[test]
fn search_reaches_oracle_on_small_pairs() {
    for seed in 0..3 {
        let mut rng = common::rng(100 + seed);
        let a = common::random_room(&mut rng, "a", 5.0, 6);
        let b = common::random_room(&mut rng, "b", 5.0, 6);
        let g = RigidTransform2D::new(1.3, -0.7, 0.4);
        let rooms = vec![a, b.transformed(&g)];
        let cfg = AlignmentConfig {
            seed,
            ..Default::default()
        };
        let t = Instant::now();
        let res = optimize_alignment(&rooms, &ObjectiveSpec::maximize(FunctionClass::Walkable), &cfg).unwrap();
        let ga_time = t.elapsed();
        let lattice = alignment_lattice(&rooms, &cfg).unwrap();
        let walk: Vec<Region> = rooms.iter().map(|r| PreparedRoom::new(r).region(FunctionClass::Walkable).clone()).collect();
        let t = Instant::now();
        let oracle = brute_force_on(&walk, &lattice, ORACLE_BUDGET).unwrap();
        let ga = res.best_area(FunctionClass::Walkable);
        eprintln!("seed {seed}: ga {ga:.4} ({ga_time:?}) oracle {:.4} ({:?}, {} evals)", oracle.area, t.elapsed(), oracle.evaluations);
        assert!(ga <= oracle.area * (1.0 + 1e-6));
        assert!(ga >= 0.95 * oracle.area);
    }
}

#[test]
fn oracle_agrees_with_shuffled_enumeration() {
    // Three rectilinear hexagons on a coarse grid: the pruned search must
    // match a plain enumeration visiting the lattice in a scrambled order.
    let mut rng = common::rng(7);
    let regions: Vec<Region> = (0..3).map(|_| common::rectilinear_boundary(&mut rng, 3.0)).collect();
    let frames = regions.iter().map(|r| mss::align::Frame::of(r).unwrap()).collect();
    let lattice = mss::align::Lattice::new(frames, 0.25, 90f64.to_radians(), 0.5);
    let fast = brute_force_on(&regions, &lattice, ORACLE_BUDGET).unwrap();

    let k = lattice.max_index;
    let mut points = Vec::new();
    for ir in 0..lattice.rotation_count {
        for ix in -k..=k {
            for iy in -k..=k {
                points.push(mss::align::Gene { ix, iy, ir });
            }
        }
    }
    use rand::seq::SliceRandom;
    points.shuffle(&mut rng);
    let mut best: f64 = 0.0;
    for g1 in &points {
        let r1 = apply_rigid(&regions[1], &lattice.transform(1, *g1)).intersection(&regions[0]);
        if r1.is_empty() {
            continue;
        }
        for g2 in points.iter().rev() {
            let r = apply_rigid(&regions[2], &lattice.transform(2, *g2)).intersection(&r1);
            best = best.max(r.area());
        }
    }
    assert!((fast.area - best).abs() <= 1e-6 * best.max(1.0), "{} vs {}", fast.area, best);
}

#[test]
fn common_motion_leaves_objectives_unchanged() {
    for seed in 0..5u64 {
        let mut rng = common::rng(500 + seed);
        let rooms = vec![common::random_room(&mut rng, "a", 5.0, 8), common::random_room(&mut rng, "b", 5.0, 8)];
        let g = RigidTransform2D::new(17.0 * seed as f64 - 3.0, 2.5, 0.3 + 1.1 * seed as f64);
        let moved: Vec<_> = rooms.iter().map(|r| r.transformed(&g)).collect();
        let spec = ObjectiveSpec::maximize(FunctionClass::Walkable).with_maximize(FunctionClass::Sittable, 1.0);
        let cfg = AlignmentConfig {
            seed,
            generations: 30,
            ..Default::default()
        };
        let x = optimize_alignment(&rooms, &spec, &cfg).unwrap();
        let y = optimize_alignment(&moved, &spec, &cfg).unwrap();
        assert_eq!(x.solutions.len(), y.solutions.len());
        for (s, t) in x.solutions.iter().zip(&y.solutions) {
            for (c, v) in &s.objective_values {
                let w = t.objective_values[c];
                assert!((v - w).abs() <= 1e-6 * v.max(1e-3), "{c}: {v} vs {w}");
            }
        }
    }
}
