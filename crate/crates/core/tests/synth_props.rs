mod common;

use geo::Coord;
use mss::align::{optimize_alignment, AlignmentConfig, ObjectiveSpec};
use mss::geometry::{RigidTransform2D, ScaledPlacement};
use mss::scene::{CategoryTable, FunctionClass, Obb, SceneObject};
use mss::synth::*;

#[test]
fn near_table_beats_far_from_table() {
    let mut wins = 0;
    let trials = 20;
    for t in 0..trials {
        let mut rng = common::rng(900 + t);
        let scorer = train_prior_scorer(&common::chair_table_corpus(&mut rng, 30)).unwrap();
        let floor = ScaledPlacement::new(RigidTransform2D::new(3.0, 3.0, 0.0), 6.0, 6.0);
        let mut scene = SyntheticScene::new(floor, "dining");
        let table = Obb::new(3.0, 3.0, 0.6, 0.4, 0.0);
        scene.objects.push(PlacedObject {
            object: SceneObject::facing_yaw("t", "table", table, 0.75, &CategoryTable::default()).unwrap(),
            provenance: Provenance::Synthesized,
        });
        // Chair facing the table from 0.4 m versus the same facing 3 m off.
        let near = score_placement(&scorer, &scene, "chair", Coord { x: 3.0 + 0.6 + 0.4, y: 3.0 }, std::f64::consts::PI);
        let far = score_placement(&scorer, &scene, "chair", Coord { x: 0.6, y: 3.0 }, 0.0);
        if near > far {
            wins += 1;
        }
    }
    assert!(wins * 10 >= trials * 9, "{wins}/{trials}");
}

#[test]
fn unknown_category_is_uniform() {
    let mut rng = common::rng(1);
    let scorer = train_prior_scorer(&common::chair_table_corpus(&mut rng, 5)).unwrap();
    let floor = ScaledPlacement::new(RigidTransform2D::new(3.0, 3.0, 0.0), 6.0, 6.0);
    let scene = SyntheticScene::new(floor, "x");
    let a = score_placement(&scorer, &scene, "piano", Coord { x: 1.0, y: 1.0 }, 0.0);
    let b = score_placement(&scorer, &scene, "piano", Coord { x: 4.0, y: 2.0 }, 1.0);
    assert_eq!(a, b);
}

#[test]
fn synthesized_scenes_keep_invariants() {
    let mut rng = common::rng(3);
    let corpus: Vec<_> = (0..20).map(|i| common::random_room(&mut rng, &format!("c{i}"), 5.0, 8)).collect();
    let scorer = train_prior_scorer(&corpus).unwrap();
    let rooms = vec![common::random_room(&mut rng, "a", 5.0, 6), common::random_room(&mut rng, "b", 5.0, 6)];
    let cfg = AlignmentConfig {
        population: 30,
        generations: 10,
        ..AlignmentConfig::default()
    };
    let res = optimize_alignment(&rooms, &ObjectiveSpec::maximize(FunctionClass::Walkable), &cfg).unwrap();
    let tr = &res.solutions[0].transforms;
    let init = initialize_scene(&rooms, tr, &InitConfig::default()).unwrap();
    let out = augment_scene(&init, &rooms, tr, &scorer, &CategoryTable::default(), &AugmentConfig::default()).unwrap();
    assert!(out.synthesized() <= AugmentConfig::default().max_objects);
    assert_eq!(common::scene_violations(&out, &rooms, tr), Vec::<String>::new());
    let again = augment_scene(&init, &rooms, tr, &scorer, &CategoryTable::default(), &AugmentConfig::default()).unwrap();
    assert_eq!(out, again);
}
