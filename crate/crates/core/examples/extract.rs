//! Function regions and spatial-relation graphs of a bundled scene.

use std::path::Path;

use mss::io::load_scene;
use mss::scene::{build_scene_graphs, extract_function_regions, CategoryTable, FunctionClass, Relation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/scenes/office-b.json");
    let room = load_scene(&path, &CategoryTable::default())?.room;
    println!("room {} ({}), boundary {:.3} m²", room.id, room.room_function, room.boundary.area());
    for class in FunctionClass::ALL {
        for r in extract_function_regions(&room, class) {
            println!(
                "  {:<10} {:>7.3} m²  from {:?}  pose {:?}",
                class.to_string(),
                r.region.area(),
                r.source_object_ids,
                r.pose.map(|p| (p.x, p.y))
            );
        }
    }
    let graphs = build_scene_graphs(&room);
    for rel in Relation::ALL {
        println!("  {rel:?}: {:?}", graphs.edges(rel));
    }
    Ok(())
}
