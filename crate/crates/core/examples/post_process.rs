//! Simplify a mutual walkable region and fit a yoga mat into it.

use std::path::Path;

use mss::align::{optimize_alignment, AlignmentConfig, ObjectiveSpec};
use mss::geometry::{largest_inscribed_shape_with, simplify_region, InscribeOptions};
use mss::io::load_scene;
use mss::pipeline::{load_template, NamedInput};
use mss::scene::{CategoryTable, FunctionClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let table = CategoryTable::default();
    let rooms = vec![
        load_scene(&data.join("scenes/office-a.json"), &table)?.room,
        load_scene(&data.join("scenes/office-b.json"), &table)?.room,
    ];
    let res = optimize_alignment(&rooms, &ObjectiveSpec::maximize(FunctionClass::Walkable), &AlignmentConfig::default())?;
    let mutual = &res.solutions[0].mutual_regions[&FunctionClass::Walkable];
    println!("mutual walkable {:.4} m² in {} part(s)", mutual.area(), mutual.components().len());

    for eps in [0.1, 0.2, 0.3] {
        let s = simplify_region(mutual, eps);
        println!("  opened with ε = {eps}: {:.4} m² in {} part(s)", s.area(), s.components().len());
    }

    let template = load_template(&NamedInput::read(&data.join("templates/yoga-mat.json").display().to_string())?)?;
    let simplified = simplify_region(mutual, 0.2);
    let fit = largest_inscribed_shape_with(&template, &simplified, &InscribeOptions::default())?;
    println!(
        "yoga mat scaled {:.3} × {:.3} at ({:.3}, {:.3}), {:.4} m²",
        fit.placement.sx,
        fit.placement.sy,
        fit.placement.transform.tx,
        fit.placement.transform.ty,
        fit.shape.area()
    );
    Ok(())
}
