//! Build a shared virtual scene for an aligned pair: initialization from
//! the mutual regions and transfers, then prior-guided augmentation.

use std::path::Path;

use mss::align::{optimize_alignment, AlignmentConfig, ObjectiveSpec};
use mss::io::load_scene;
use mss::scene::{CategoryTable, FunctionClass};
use mss::synth::{augment_scene, initialize_scene, train_prior_scorer, AugmentConfig, InitConfig, Provenance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/scenes");
    let table = CategoryTable::default();
    let rooms = vec![load_scene(&dir.join("office-a.json"), &table)?.room, load_scene(&dir.join("office-b.json"), &table)?.room];
    let corpus = [rooms.clone(), vec![load_scene(&dir.join("living-c.json"), &table)?.room]].concat();
    let prior = train_prior_scorer(&corpus)?;

    let spec = ObjectiveSpec::maximize(FunctionClass::Walkable).with_maximize(FunctionClass::Sittable, 1.0);
    let res = optimize_alignment(&rooms, &spec, &AlignmentConfig::default())?;
    let transforms = &res.solutions[0].transforms;

    let init = initialize_scene(&rooms, transforms, &InitConfig::default())?;
    let scene = augment_scene(&init, &rooms, transforms, &prior, &table, &AugmentConfig::default())?;
    println!(
        "{} floor {:.2} × {:.2} m: {} mutual-function, {} transferred, {} synthesized",
        scene.room_function,
        scene.floor.sx,
        scene.floor.sy,
        scene.count(&Provenance::MutualFunction),
        scene.objects.iter().filter(|o| matches!(o.provenance, Provenance::NonCollidingTransfer { .. })).count(),
        scene.synthesized()
    );
    for o in &scene.objects {
        let c = o.object.footprint.center();
        println!("  {:<14} at ({:>6.2}, {:>6.2})  {:?}", o.object.category, c.x, c.y, o.provenance);
    }
    Ok(())
}
