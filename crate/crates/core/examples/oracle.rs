//! Exhaustive search on the alignment lattice against the evolutionary
//! search on the same lattice.

use std::path::Path;
use std::time::Instant;

use mss::align::{
    alignment_lattice, brute_force_on, optimize_alignment, AlignmentConfig, ObjectiveSpec, PreparedRoom,
    ORACLE_BUDGET,
};
use mss::geometry::Region;
use mss::io::load_scene;
use mss::scene::{CategoryTable, FunctionClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/scenes");
    let table = CategoryTable::default();
    let rooms = vec![load_scene(&dir.join("office-a.json"), &table)?.room, load_scene(&dir.join("living-c.json"), &table)?.room];
    let cfg = AlignmentConfig::default();

    let t = Instant::now();
    let ga = optimize_alignment(&rooms, &ObjectiveSpec::maximize(FunctionClass::Walkable), &cfg)?;
    println!("evolutionary {:.4} m² in {:.2?}", ga.best_area(FunctionClass::Walkable), t.elapsed());

    let lattice = alignment_lattice(&rooms, &cfg)?;
    let walkable: Vec<Region> = rooms.iter().map(|r| PreparedRoom::new(r).region(FunctionClass::Walkable).clone()).collect();
    let t = Instant::now();
    let best = brute_force_on(&walkable, &lattice, ORACLE_BUDGET)?;
    println!("exhaustive   {:.4} m² in {:.2?} ({} intersections)", best.area, t.elapsed(), best.evaluations);
    Ok(())
}
