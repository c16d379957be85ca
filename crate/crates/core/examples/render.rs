//! Draw a room and an alignment result as SVG into the temp directory.

use std::path::Path;

use mss::align::{optimize_alignment, AlignmentConfig, ObjectiveSpec};
use mss::io::{load_scene, render_svg, Artifact};
use mss::scene::{CategoryTable, FunctionClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/scenes");
    let table = CategoryTable::default();
    let rooms = vec![load_scene(&dir.join("office-a.json"), &table)?.room, load_scene(&dir.join("office-b.json"), &table)?.room];
    let out = std::env::temp_dir();

    let room_svg = out.join("mss-room.svg");
    render_svg(&Artifact::Room(&rooms[1]), &room_svg)?;
    println!("wrote {}", room_svg.display());

    let result = optimize_alignment(&rooms, &ObjectiveSpec::maximize(FunctionClass::Walkable), &AlignmentConfig::default())?;
    let mutual_svg = out.join("mss-mutual.svg");
    render_svg(&Artifact::Mutual { rooms: &rooms, result: &result }, &mutual_svg)?;
    println!("wrote {}", mutual_svg.display());
    Ok(())
}
