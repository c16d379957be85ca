//! Acceptance suite: one check per criterion, each printing a PASS or
//! FAIL line with its measurements. Runs without the libtest harness so
//! the lines are always shown; exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use mss::align::{
    alignment_lattice, brute_force_on, evaluate_mutual, optimize_alignment, AlignError, AlignmentConfig,
    ObjectiveSpec, PreparedRoom, ORACLE_BUDGET,
};
use mss::geometry::{
    distance, largest_inscribed_shape_with, simplify_region, ActivityTemplate, InscribeOptions, Region,
};
use mss::io::{scene_to_string, to_json, SceneRecord};
use mss::scene::{
    extract_walkable, obstacle_union, CategoryTable, FunctionClass, Obb, Room, SceneObject, WALKABLE_HEIGHT,
};
use mss::synth::{
    augment_scene, candidate_grid, initialize_scene, score_placement, train_prior_scorer, AugmentConfig, InitConfig,
    PlacementScorer, Provenance,
};
use rand::seq::SliceRandom;
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn walkable_area(room: &Room) -> f64 {
    extract_walkable(room).region.area()
}

/// Area conservation of walkable space against the clipped obstacle union.
fn ac1() -> Outcome {
    let mut rng = common::rng(1);
    let rooms: Vec<Room> = (0..200).map(|i| common::random_room(&mut rng, &format!("r{i}"), 6.0, 10)).collect();
    let t = Instant::now();
    let mut worst = 0.0f64;
    for room in &rooms {
        let walk = extract_walkable(room).region.area();
        let blocked = obstacle_union(room, WALKABLE_HEIGHT).intersection(&room.boundary).area();
        let total = room.boundary.area();
        worst = worst.max((walk + blocked - total).abs() / total);
    }
    let elapsed = t.elapsed();
    let objects: usize = rooms.iter().map(|r| r.objects.len()).sum();
    outcome(
        worst <= 1e-6 && elapsed < Duration::from_secs(5),
        format!("200 rooms, {objects} objects: worst relative error {worst:.2e} (≤ 1e-6), {elapsed:.2?} (< 5 s)"),
    )
}

/// Two copies of one room, the second moved arbitrarily, realign.
fn ac2() -> Outcome {
    let mut worst_ratio = f64::INFINITY;
    let mut slowest = Duration::ZERO;
    for k in 0..20u64 {
        let mut rng = common::rng(200 + k);
        let room = common::random_room(&mut rng, "a", 5.0, 10);
        let g = common::random_rigid(&mut rng);
        let rooms = vec![room.clone(), Room { id: "b".into(), ..room.transformed(&g) }];
        let cfg = AlignmentConfig { seed: k, ..AlignmentConfig::default() };
        let t = Instant::now();
        let res = optimize_alignment(&rooms, &ObjectiveSpec::maximize(FunctionClass::Walkable), &cfg);
        slowest = slowest.max(t.elapsed());
        let Ok(res) = res else {
            return outcome(false, format!("pair {k}: {:?}", res.err()));
        };
        worst_ratio = worst_ratio.min(res.best_area(FunctionClass::Walkable) / walkable_area(&room));
    }
    outcome(
        worst_ratio >= 0.98 && slowest < Duration::from_secs(60),
        format!("20 pairs: worst best/single walkable {worst_ratio:.4} (≥ 0.98), slowest {slowest:.2?} (< 60 s)"),
    )
}

/// Evolutionary search against full enumeration of the same lattice.
fn ac3() -> Outcome {
    let mut worst_ratio = f64::INFINITY;
    let mut slowest = Duration::ZERO;
    let mut lines = Vec::new();
    for k in 0..10u64 {
        let mut rng = common::rng(300 + k);
        let a = common::random_room(&mut rng, "a", 5.0, 8);
        let b = common::random_room(&mut rng, "b", 5.0, 8);
        let rooms = vec![a, b];
        let cfg = AlignmentConfig { seed: k, ..AlignmentConfig::default() };
        let t = Instant::now();
        let res = match optimize_alignment(&rooms, &ObjectiveSpec::maximize(FunctionClass::Walkable), &cfg) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("instance {k}: {e}")),
        };
        let ga_time = t.elapsed();
        let lattice = alignment_lattice(&rooms, &cfg).expect("lattice");
        let walk: Vec<Region> = rooms.iter().map(|r| PreparedRoom::new(r).region(FunctionClass::Walkable).clone()).collect();
        let t = Instant::now();
        let oracle = match brute_force_on(&walk, &lattice, ORACLE_BUDGET) {
            Ok(o) => o,
            Err(e) => return outcome(false, format!("instance {k}: oracle {e}")),
        };
        let oracle_time = t.elapsed();
        slowest = slowest.max(ga_time.max(oracle_time));
        let ga = res.best_area(FunctionClass::Walkable);
        let ratio = if oracle.area > 0.0 { ga / oracle.area } else { 1.0 };
        worst_ratio = worst_ratio.min(ratio);
        lines.push(format!("{ratio:.3}"));
    }
    outcome(
        worst_ratio >= 0.95 && slowest < Duration::from_secs(120),
        format!(
            "10 instances: search/oracle ratios [{}], worst {worst_ratio:.4} (≥ 0.95), slowest stage {slowest:.2?} (< 120 s)",
            lines.join(", ")
        ),
    )
}

fn bed_room(rng: &mut impl Rng, id: &str) -> Room {
    let table = CategoryTable::default();
    let (w, h) = (rng.random_range(4.0..5.0), rng.random_range(3.5..4.5));
    let bed = Obb::new(rng.random_range(1.2..w - 1.2), rng.random_range(1.0..h - 1.0), 1.0, 0.8, 0.0);
    let mut objects = vec![SceneObject::facing_yaw("bed", "bed", bed, 0.6, &table).unwrap()];
    if let Some(o) = common::random_object(rng, "extra".into(), &Region::rect(0.0, 0.0, w, h), &table) {
        if !o.footprint.overlaps(&bed, 0.0) {
            objects.push(o);
        }
    }
    Room::new(id, Region::rect(0.0, 0.0, w, h), objects, "bedroom").unwrap()
}

fn chair_room(rng: &mut impl Rng, id: &str) -> Room {
    let table = CategoryTable::default();
    let (w, h) = (rng.random_range(3.0..5.0), rng.random_range(3.0..5.0));
    let chair = Obb::new(rng.random_range(0.5..w - 0.5), rng.random_range(0.5..h - 0.5), 0.25, 0.25, rng.random_range(0.0..6.0));
    let objects = vec![SceneObject::facing_yaw("chair", "chair", chair, 0.9, &table).unwrap()];
    Room::new(id, Region::rect(0.0, 0.0, w, h), objects, "office").unwrap()
}

/// A sittable minimum of 1 m² is met by every returned solution, or the
/// run reports infeasibility.
fn ac4() -> Outcome {
    let spec = ObjectiveSpec::maximize(FunctionClass::Walkable).with_constraint(FunctionClass::Sittable, 1.0);
    let mut returned = 0;
    let mut reported_infeasible = 0;
    let mut violations = Vec::new();
    let mut min_seen = f64::INFINITY;
    for k in 0..10u64 {
        let mut rng = common::rng(400 + k);
        let rooms = vec![bed_room(&mut rng, "a"), bed_room(&mut rng, "b")];
        match optimize_alignment(&rooms, &spec, &AlignmentConfig { seed: k, ..AlignmentConfig::default() }) {
            Ok(res) => {
                returned += 1;
                for (i, s) in res.solutions.iter().enumerate() {
                    // Re-evaluated through the combinatorial route.
                    let (_, area) = evaluate_mutual(&rooms, &s.transforms, FunctionClass::Sittable).expect("evaluate");
                    min_seen = min_seen.min(area);
                    if area < 1.0 - 1e-6 {
                        violations.push(format!("feasible {k} solution {i}: {area:.4}"));
                    }
                }
            }
            Err(AlignError::Infeasible { .. }) => reported_infeasible += 1,
            Err(e) => violations.push(format!("feasible {k}: {e}")),
        }
    }
    let mut infeasible_ok = 0;
    for k in 0..5u64 {
        let mut rng = common::rng(450 + k);
        let rooms = vec![chair_room(&mut rng, "a"), chair_room(&mut rng, "b")];
        match optimize_alignment(&rooms, &spec, &AlignmentConfig { seed: k, ..AlignmentConfig::default() }) {
            Err(AlignError::Infeasible { .. }) => infeasible_ok += 1,
            Ok(res) => violations.push(format!("infeasible {k}: returned {} solutions", res.solutions.len())),
            Err(e) => violations.push(format!("infeasible {k}: {e}")),
        }
    }
    // The same request through the command line reports exit code 4.
    let dir = tempfile::tempdir().unwrap();
    let mut rng = common::rng(450);
    let mut args: Vec<String> = vec!["mss".into(), "align".into()];
    for id in ["a", "b"] {
        let p = dir.path().join(format!("{id}.json"));
        std::fs::write(&p, scene_to_string(&chair_room(&mut rng, id))).unwrap();
        args.push(p.display().to_string());
    }
    let out = dir.path().join("r.json");
    args.extend(["--constraint".into(), "sittable>=1.0".into(), "-o".into(), out.display().to_string()]);
    let code = mss::cli::run_args(args);
    let cli_ok = code == mss::cli::EXIT_INFEASIBLE && !out.exists();
    let detail = format!(
        "feasible set: {returned} returned (smallest mutual sittable {min_seen:.3} m²), {reported_infeasible} reported infeasible; \
         infeasible set: {infeasible_ok}/5 reported infeasible; CLI exit code {code}{}",
        if violations.is_empty() { String::new() } else { format!("; violations: {}", violations.join("; ")) }
    );
    outcome(violations.is_empty() && infeasible_ok == 5 && cli_ok, detail)
}

/// Rectangle plus appendages narrower than 2ε.
fn ac5() -> Outcome {
    let mut rng = common::rng(5);
    let mut worst = 0.0f64;
    let mut worst_idem = 0.0f64;
    let mut worst_outside = 0.0f64;
    for _ in 0..50 {
        let (w, h) = (rng.random_range(2.0..5.0), rng.random_range(2.0..4.0));
        let eps = rng.random_range(0.1..0.3);
        let base = Region::rect(0.0, 0.0, w, h);
        let mut r = base.clone();
        // One appendage per side at most, so no two merge into a
        // protrusion wider than 2ε.
        let mut sides = [0, 1, 2, 3];
        sides.shuffle(&mut rng);
        for &side in &sides[..rng.random_range(1..=4)] {
            let width = rng.random_range(0.2 * eps..1.8 * eps);
            let len = rng.random_range(0.3..1.5);
            let appendage = match side {
                0 => {
                    let x = rng.random_range(0.3..w - 0.3 - width);
                    Region::rect(x, h, x + width, h + len)
                }
                1 => {
                    let x = rng.random_range(0.3..w - 0.3 - width);
                    Region::rect(x, -len, x + width, 0.0)
                }
                2 => {
                    let y = rng.random_range(0.3..h - 0.3 - width);
                    Region::rect(w, y, w + len, y + width)
                }
                _ => {
                    let y = rng.random_range(0.3..h - 0.3 - width);
                    Region::rect(-len, y, 0.0, y + width)
                }
            };
            r = r.union(&appendage);
        }
        let s = simplify_region(&r, eps);
        worst = worst.max((s.area() - base.area()).abs() / base.area());
        worst_outside = worst_outside.max(s.difference(&base).area() / base.area());
        let again = simplify_region(&s, eps);
        worst_idem = worst_idem.max((again.area() - s.area()).abs() / s.area());
    }
    outcome(
        worst <= 0.01 && worst_outside <= 0.01 && worst_idem <= 0.01,
        format!(
            "50 regions: worst area deviation from base {:.3}% , worst area outside base {:.3}%, worst re-application change {:.3}% (each ≤ 1%)",
            100.0 * worst,
            100.0 * worst_outside,
            100.0 * worst_idem
        ),
    )
}

fn ac6() -> Outcome {
    let opts = InscribeOptions::default();
    let rect = Region::rect(0.0, 0.0, 2.0, 3.0);
    let sq = largest_inscribed_shape_with(&ActivityTemplate::square(), &rect, &opts).expect("square");
    let sq_ratio = sq.shape.area() / rect.area();
    let sq_outside = sq.shape.difference(&rect).area();
    let unit = Region::rect(0.0, 0.0, 1.0, 1.0);
    let circle = largest_inscribed_shape_with(&ActivityTemplate::circle(64), &unit, &opts).expect("circle");
    let quarter_pi = std::f64::consts::FRAC_PI_4;
    let circle_err = (circle.shape.area() - quarter_pi).abs() / quarter_pi;
    let circle_outside = circle.shape.difference(&unit).area();
    outcome(
        sq_ratio >= 0.98 && circle_err <= 0.02 && sq_outside < 1e-6 && circle_outside < 1e-6,
        format!(
            "square in 2×3: {:.2}% of area (≥ 98%); 64-gon in unit square: {:.4} vs π/4, error {:.2}% (≤ 2%); both inside",
            100.0 * sq_ratio,
            circle.shape.area(),
            100.0 * circle_err
        ),
    )
}

/// Overlap, containment and transfer rules over seeded synthesis runs.
fn ac7() -> Outcome {
    let mut rng = common::rng(7);
    let corpus: Vec<Room> = (0..30).map(|i| common::random_room(&mut rng, &format!("c{i}"), 6.0, 10)).collect();
    let scorer = train_prior_scorer(&corpus).expect("prior");
    let table = CategoryTable::default();
    let mut problems = Vec::new();
    let (mut objects, mut transfers, mut synthesized, mut mutual) = (0, 0, 0, 0);
    for k in 0..50u64 {
        let mut rng = common::rng(700 + k);
        let n = if k % 5 == 4 { 3 } else { 2 };
        let rooms: Vec<Room> = (0..n).map(|i| common::random_room(&mut rng, &format!("r{i}"), 5.0, 8)).collect();
        let cfg = AlignmentConfig {
            population: 40,
            generations: 20,
            seed: k,
            ..AlignmentConfig::default()
        };
        let spec = ObjectiveSpec::maximize(FunctionClass::Walkable).with_maximize(FunctionClass::Sittable, 1.0);
        let res = match optimize_alignment(&rooms, &spec, &cfg) {
            Ok(r) => r,
            Err(e) => {
                problems.push(format!("run {k}: {e}"));
                continue;
            }
        };
        let tr = &res.solutions[(k as usize) % res.solutions.len()].transforms;
        let init = initialize_scene(&rooms, tr, &InitConfig { seed: k, ..InitConfig::default() });
        let scene = match init.and_then(|init| {
            augment_scene(&init, &rooms, tr, &scorer, &table, &AugmentConfig { seed: k, ..AugmentConfig::default() })
        }) {
            Ok(s) => s,
            Err(e) => {
                problems.push(format!("run {k}: {e}"));
                continue;
            }
        };
        objects += scene.objects.len();
        synthesized += scene.synthesized();
        mutual += scene.count(&Provenance::MutualFunction);
        transfers += scene.objects.iter().filter(|o| matches!(o.provenance, Provenance::NonCollidingTransfer { .. })).count();
        problems.extend(common::scene_violations(&scene, &rooms, tr).into_iter().map(|v| format!("run {k}: {v}")));
    }
    outcome(
        problems.is_empty(),
        format!(
            "50 runs, {objects} objects ({mutual} mutual-function, {transfers} transferred, {synthesized} synthesized): {} violations{}",
            problems.len(),
            problems.first().map(|p| format!(", first: {p}")).unwrap_or_default()
        ),
    )
}

/// The placed chair against an independent re-ranking of the grid.
fn ac8() -> Outcome {
    let mut rng = common::rng(8);
    let corpus = common::chair_table_corpus(&mut rng, 30);
    let scorer = train_prior_scorer(&corpus).expect("prior");
    let table = CategoryTable::default();
    let n = 10;
    let mut good = 0;
    let mut byte_equal = 0;
    let mut problems = Vec::new();
    for k in 0..50u64 {
        let mut rng = common::rng(800 + k);
        let rooms: Vec<Room> = common::chair_table_corpus(&mut rng, 2)
            .into_iter()
            .enumerate()
            .map(|(i, r)| Room { id: format!("room{i}"), ..r })
            .collect();
        let cfg = AlignmentConfig {
            population: 30,
            generations: 10,
            seed: k,
            ..AlignmentConfig::default()
        };
        let res = optimize_alignment(&rooms, &ObjectiveSpec::maximize(FunctionClass::Walkable), &cfg).expect("align");
        let tr = &res.solutions[0].transforms;
        let init = initialize_scene(&rooms, tr, &InitConfig { seed: k, ..InitConfig::default() }).expect("init");
        let aug = AugmentConfig {
            seed: k,
            n,
            max_objects: 1,
            category_order: Some(vec!["chair".into()]),
            ..AugmentConfig::default()
        };
        let placed = augment_scene(&init, &rooms, tr, &scorer, &table, &aug).expect("augment");
        let Some(chair) = placed.objects.iter().find(|o| o.provenance == Provenance::Synthesized) else {
            problems.push(format!("run {k}: no chair placed"));
            continue;
        };

        // Independent route: sequential grid scan, polygon distances.
        let grid = candidate_grid(&init.floor, aug.grid_step, aug.yaw_step, aug.seed);
        let mut scored: Vec<(f64, u64)> = (0..grid.len())
            .filter_map(|i| {
                let (p, yaw) = grid.at(i);
                let s = score_placement(&scorer, &init, "chair", p, yaw);
                (s > aug.stop_threshold).then_some((s, i))
            })
            .collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        scored.truncate(n);
        let sittable: Vec<Region> = rooms
            .iter()
            .zip(tr)
            .flat_map(|(r, g)| {
                r.objects
                    .iter()
                    .filter(|o| o.has_function(FunctionClass::Sittable))
                    .map(move |o| o.footprint.transformed(g).region())
            })
            .collect();
        let (hx, hy) = scorer.half_extents("chair");
        let delta = |i: u64| {
            let (p, yaw) = grid.at(i);
            let fp = Obb::new(p.x, p.y, hx, hy, yaw).region();
            sittable.iter().map(|t| distance(&fp, t).expect("distance")).fold(f64::INFINITY, f64::min)
        };
        let deltas: Vec<(f64, f64, u64)> = scored.iter().map(|&(s, i)| (delta(i), s, i)).collect();
        let best_delta = deltas.iter().map(|d| d.0).fold(f64::INFINITY, f64::min);
        let c = chair.object.footprint.center();
        let member = deltas.iter().find(|&&(_, _, i)| {
            let (p, yaw) = grid.at(i);
            (p.x - c.x).abs() < 1e-9 && (p.y - c.y).abs() < 1e-9 && (yaw - chair.object.footprint.yaw).abs() < 1e-9
        });
        match member {
            None => problems.push(format!("run {k}: placed chair is not among the top-{n} candidates")),
            Some(&(d, _, _)) if d > best_delta + 1e-6 => {
                problems.push(format!("run {k}: chosen δ {d:.4} but the top-{n} minimum is {best_delta:.4}"))
            }
            Some(_) => good += 1,
        }

        let one = augment_scene(&init, &rooms, tr, &scorer, &table, &AugmentConfig { n: 1, ..aug.clone() }).expect("n=1");
        let plain = augment_scene(&init, &rooms, tr, &scorer, &table, &AugmentConfig { rerank: false, ..aug.clone() }).expect("argmax");
        if to_json(&SceneRecord::from_scene(&one)) == to_json(&SceneRecord::from_scene(&plain)) {
            byte_equal += 1;
        } else {
            problems.push(format!("run {k}: n = 1 differs from plain argmax"));
        }
    }
    outcome(
        good == 50 && byte_equal == 50,
        format!(
            "50 runs: chair in top-{n} and δ-minimal in {good}/50; n = 1 byte-identical to argmax in {byte_equal}/50{}",
            problems.first().map(|p| format!("; first problem: {p}")).unwrap_or_default()
        ),
    )
}

fn run_cli(args: &[&str]) -> u8 {
    let mut v = vec!["mss"];
    v.extend_from_slice(args);
    mss::cli::run_args(v)
}

/// Every verb twice on identical inputs; outputs compared byte for byte.
fn ac9() -> Outcome {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for f in ["office-a", "office-b", "living-c"] {
        std::fs::copy(data.join("scenes").join(format!("{f}.json")), d.join(format!("{f}.json"))).unwrap();
    }
    std::fs::copy(data.join("templates/yoga-mat.json"), d.join("yoga-mat.json")).unwrap();
    let p = |name: &str| d.join(name).display().to_string();
    let (a, b, c) = (p("office-a.json"), p("office-b.json"), p("living-c.json"));
    let mut failures = Vec::new();
    let mut compared = 0;
    // Each verb: arguments with `{}` standing for the run tag, and the
    // files it writes.
    let verbs: Vec<(&str, Vec<String>, Vec<&str>)> = vec![
        ("extract", vec![a.clone(), "-o".into(), p("extract{}.json"), "--svg".into(), p("extract{}.svg")], vec!["extract{}.json", "extract{}.svg"]),
        ("align", vec![a.clone(), b.clone(), "--objective".into(), "walkable".into(), "--objective".into(), "sittable".into(), "-o".into(), p("align{}.json"), "--svg".into(), p("align{}.svg")], vec!["align{}.json", "align{}.svg"]),
        ("align", vec![a.clone(), b.clone(), "-o".into(), p("walk{}.json")], vec!["walk{}.json"]),
        ("simplify", vec![p("walk1.json"), "--eps".into(), "0.3".into(), "-o".into(), p("simplify{}.json"), "--svg".into(), p("simplify{}.svg")], vec!["simplify{}.json", "simplify{}.svg"]),
        ("inscribe", vec![p("simplify1.json"), "--template".into(), p("yoga-mat.json"), "-o".into(), p("inscribe{}.json")], vec!["inscribe{}.json"]),
        ("synth", vec![p("inscribe1.json"), "--seed".into(), "42".into(), "--solution".into(), "0".into(), "-o".into(), p("synth{}.json"), "--svg".into(), p("synth{}.svg")], vec!["synth{}.json", "synth{}.svg"]),
        ("oracle", vec![a.clone(), b.clone(), "-o".into(), p("oracle{}.json")], vec!["oracle{}.json"]),
        ("render", vec![p("align1.json"), "-o".into(), p("render-align{}.svg")], vec!["render-align{}.svg"]),
        ("render", vec![p("synth1.json"), "-o".into(), p("render-synth{}.svg")], vec!["render-synth{}.svg"]),
        ("render", vec![c.clone(), "-o".into(), p("render-room{}.svg")], vec!["render-room{}.svg"]),
        ("train-prior", vec![a.clone(), b.clone(), c.clone(), "-o".into(), p("prior{}.json")], vec!["prior{}.json"]),
        ("run", vec![a.clone(), b.clone(), c.clone(), "--eps".into(), "0.2".into(), "--template".into(), "circle".into(), "--prior".into(), p("prior1.json"), "--auto-first".into(), "-o".into(), p("run{}.json"), "--svg".into(), p("run{}.svg")], vec!["run{}.json", "run{}.svg"]),
        ("regenerate", vec![p("synth1.json"), "-o".into(), p("regen{}.json")], vec!["regen{}.json"]),
    ];
    for (verb, args, outputs) in &verbs {
        for tag in ["1", "2"] {
            let args: Vec<String> = args.iter().map(|s| s.replace("{}", tag)).collect();
            let mut argv: Vec<&str> = vec![verb];
            argv.extend(args.iter().map(String::as_str));
            let code = run_cli(&argv);
            if code != 0 {
                failures.push(format!("{verb} exited {code}"));
            }
        }
        for o in outputs {
            let x = std::fs::read(d.join(o.replace("{}", "1")));
            let y = std::fs::read(d.join(o.replace("{}", "2")));
            match (x, y) {
                (Ok(x), Ok(y)) if x == y => compared += 1,
                (Ok(_), Ok(_)) => failures.push(format!("{verb}: {} differs between runs", o.replace("{}", "N"))),
                _ => failures.push(format!("{verb}: {} missing", o.replace("{}", "N"))),
            }
        }
    }
    // Regeneration reproduces the original file too.
    if std::fs::read(d.join("regen1.json")).ok() != std::fs::read(d.join("synth1.json")).ok() {
        failures.push("regenerate: differs from the original result".into());
    }
    let verbs_run: std::collections::BTreeSet<&str> = verbs.iter().map(|v| v.0).collect();
    outcome(
        failures.is_empty(),
        format!(
            "{} verbs, {compared} output pairs byte-identical{}",
            verbs_run.len(),
            if failures.is_empty() { String::new() } else { format!("; failures: {}", failures.join("; ")) }
        ),
    )
}

/// One common rigid motion applied to every input room.
fn ac10() -> Outcome {
    let mut worst = 0.0f64;
    let mut compared = 0;
    let mut problems = Vec::new();
    for k in 0..8u64 {
        let mut rng = common::rng(1000 + k);
        let n = if k % 4 == 3 { 3 } else { 2 };
        let rooms: Vec<Room> = (0..n).map(|i| common::random_room(&mut rng, &format!("r{i}"), 5.0, 8)).collect();
        let g = common::random_rigid(&mut rng);
        let moved: Vec<Room> = rooms.iter().map(|r| common::moved(r, &g)).collect();
        let spec = if k % 2 == 0 {
            ObjectiveSpec::maximize(FunctionClass::Walkable)
        } else {
            ObjectiveSpec::maximize(FunctionClass::Walkable).with_maximize(FunctionClass::Sittable, 1.0)
        };
        let cfg = AlignmentConfig {
            population: 60,
            generations: 40,
            seed: k,
            ..AlignmentConfig::default()
        };
        let (x, y) = match (optimize_alignment(&rooms, &spec, &cfg), optimize_alignment(&moved, &spec, &cfg)) {
            (Ok(x), Ok(y)) => (x, y),
            (x, y) => {
                problems.push(format!("instance {k}: {:?} / {:?}", x.err(), y.err()));
                continue;
            }
        };
        if x.solutions.len() != y.solutions.len() {
            problems.push(format!("instance {k}: {} vs {} solutions", x.solutions.len(), y.solutions.len()));
            continue;
        }
        for (s, t) in x.solutions.iter().zip(&y.solutions) {
            for (class, v) in &s.objective_values {
                let w = t.objective_values.get(class).copied().unwrap_or(f64::NAN);
                let rel = (v - w).abs() / v.abs().max(1e-12);
                let rel = if v.abs() < 1e-9 && w.abs() < 1e-9 { 0.0 } else { rel };
                worst = worst.max(if rel.is_nan() { f64::INFINITY } else { rel });
                compared += 1;
            }
        }
    }
    outcome(
        problems.is_empty() && worst < 1e-6,
        format!(
            "8 instances, {compared} objective values: worst relative change {worst:.2e} (< 1e-6){}",
            if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
        ),
    )
}

fn main() {
    let checks: [(&str, fn() -> Outcome); 10] = [
        ("AC1 area conservation", ac1),
        ("AC2 identity recovery", ac2),
        ("AC3 oracle equivalence", ac3),
        ("AC4 constraint satisfaction", ac4),
        ("AC5 simplification", ac5),
        ("AC6 inscribed shape", ac6),
        ("AC7 synthesis invariants", ac7),
        ("AC8 conditional re-ranking", ac8),
        ("AC9 determinism", ac9),
        ("AC10 gauge invariance", ac10),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in checks {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        println!("{name}: {verdict} [{:.1?}] {}", t.elapsed(), result.detail);
        if !result.pass {
            failed += 1;
        }
    }
    println!("acceptance: {}", if failed == 0 { "all criteria PASS".to_string() } else { format!("{failed} criteria FAIL") });
    if failed > 0 {
        std::process::exit(1);
    }
}
