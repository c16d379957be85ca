//! Evolutionary alignment of two bundled rooms, single and
//! multi-objective, with a minimum-area constraint.

use std::path::Path;

use mss::align::{optimize_alignment, AlignError, AlignmentConfig, ObjectiveSpec};
use mss::io::load_scene;
use mss::scene::{CategoryTable, FunctionClass, Room};

fn rooms() -> Result<Vec<Room>, Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/scenes");
    let table = CategoryTable::default();
    Ok(vec![load_scene(&dir.join("office-a.json"), &table)?.room, load_scene(&dir.join("office-b.json"), &table)?.room])
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rooms = rooms()?;
    let cfg = AlignmentConfig::default();

    let walk = optimize_alignment(&rooms, &ObjectiveSpec::maximize(FunctionClass::Walkable), &cfg)?;
    let best = &walk.solutions[0];
    let g = best.transforms[1];
    println!(
        "walkable: {:.4} m² with room 2 at ({:.3}, {:.3}) θ = {:.1}°",
        best.objective_values[&FunctionClass::Walkable],
        g.tx,
        g.ty,
        g.theta.to_degrees()
    );

    let both = ObjectiveSpec::maximize(FunctionClass::Walkable).with_maximize(FunctionClass::Sittable, 1.0);
    let front = optimize_alignment(&rooms, &both, &cfg)?;
    println!("walkable × sittable front, {} solutions:", front.solutions.len());
    for s in &front.solutions {
        println!(
            "  walkable {:>7.3}  sittable {:>6.3}",
            s.objective_values[&FunctionClass::Walkable],
            s.objective_values[&FunctionClass::Sittable]
        );
    }

    let strict = ObjectiveSpec::maximize(FunctionClass::Walkable).with_constraint(FunctionClass::Sittable, 5.0);
    match optimize_alignment(&rooms, &strict, &cfg) {
        Err(AlignError::Infeasible { best_violation, .. }) => {
            println!("sittable ≥ 5 m² is infeasible; closest shortfall {best_violation:.4} m²")
        }
        other => println!("sittable ≥ 5 m²: {:?}", other.map(|r| r.solutions.len())),
    }
    Ok(())
}
