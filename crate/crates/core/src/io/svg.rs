//! Floorplan drawings. One panel per room, per alignment solution, or for
//! the synthetic scene; panels sit side by side at a common scale.

use std::fmt::Write as _;
use std::path::Path;

use geo::Coord;

use super::{to_degrees, write_atomic, IoError};
use crate::align::MutualResult;
use crate::geometry::{apply_rigid, Bounds, Region};
use crate::scene::{extract_function_regions, extract_walkable, FunctionClass, Room, SceneObject};
use crate::synth::{Provenance, SyntheticScene};

/// Pixels per meter.
pub const PX_PER_M: f64 = 50.0;

const MARGIN: f64 = 20.0;
const TITLE: f64 = 18.0;
const ARROW: f64 = 0.3;
const ROOM_STROKES: [&str; 6] = ["#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#af601a", "#17202a"];

pub enum Artifact<'a> {
    Room(&'a Room),
    /// Input rooms in input order and the alignment of them.
    Mutual { rooms: &'a [Room], result: &'a MutualResult },
    Scene(&'a SyntheticScene),
}

fn fill(class: FunctionClass) -> &'static str {
    match class {
        FunctionClass::Walkable => "#cfe8cf",
        FunctionClass::Sittable => "#f6c6a8",
        FunctionClass::Workable => "#b9d3ee",
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// World meters to panel pixels, with y pointing up in the world.
struct Panel {
    bounds: Bounds,
    x0: f64,
    out: String,
}

impl Panel {
    fn new(bounds: Bounds, x0: f64) -> Self {
        Self {
            bounds,
            x0,
            out: String::new(),
        }
    }

    fn width(&self) -> f64 {
        self.bounds.width() * PX_PER_M
    }

    fn height(&self) -> f64 {
        self.bounds.height() * PX_PER_M
    }

    fn px(&self, p: Coord<f64>) -> (String, String) {
        (
            num(self.x0 + (p.x - self.bounds.min.x) * PX_PER_M),
            num(MARGIN + TITLE + (self.bounds.max.y - p.y) * PX_PER_M),
        )
    }

    fn path(&mut self, class: &str, r: &Region, style: &str) {
        if r.is_empty() {
            return;
        }
        let mut d = String::new();
        for ring in r.rings() {
            for (k, p) in ring.iter().enumerate() {
                let (x, y) = self.px(*p);
                let _ = write!(d, "{}{x} {y} ", if k == 0 { "M" } else { "L" });
            }
            d.push_str("Z ");
        }
        let _ = writeln!(self.out, r#"<path class="{class}" d="{}" fill-rule="evenodd" {style}/>"#, d.trim_end());
    }

    fn arrow(&mut self, from: Coord<f64>, dir: Coord<f64>) {
        let to = Coord {
            x: from.x + ARROW * dir.x,
            y: from.y + ARROW * dir.y,
        };
        let (x1, y1) = self.px(from);
        let (x2, y2) = self.px(to);
        let _ = writeln!(
            self.out,
            r##"<line class="pose" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#333" stroke-width="1.5" marker-end="url(#arrow)"/>"##
        );
    }

    fn text(&mut self, class: &str, at: Coord<f64>, s: &str, size: u32) {
        let (x, y) = self.px(at);
        let _ = writeln!(
            self.out,
            r#"<text class="{class}" x="{x}" y="{y}" font-size="{size}" text-anchor="middle">{}</text>"#,
            escape(s)
        );
    }

    fn title(&mut self, s: &str) {
        let _ = writeln!(
            self.out,
            r#"<text class="title" x="{}" y="{}" font-size="13">{}</text>"#,
            num(self.x0),
            num(MARGIN + 12.0),
            escape(s)
        );
    }

    fn note(&mut self, line: usize, s: &str) {
        let _ = writeln!(
            self.out,
            r#"<text class="annotation" x="{}" y="{}" font-size="10">{}</text>"#,
            num(self.x0),
            num(MARGIN + TITLE + self.height() + 14.0 * (line as f64 + 1.0)),
            escape(s)
        );
    }

    fn object(&mut self, o: &SceneObject, stroke: &str) {
        self.path("object", &o.footprint.region(), &format!(r##"fill="#ffffff" fill-opacity="0.6" stroke="{stroke}" stroke-width="1""##));
        self.arrow(o.footprint.center(), o.pose);
        self.text("label", o.footprint.center(), &o.category, 9);
    }

    fn group(&mut self, layer: &str, body: impl FnOnce(&mut Self)) {
        let _ = writeln!(self.out, r#"<g class="layer-{layer}">"#);
        body(self);
        self.out.push_str("</g>\n");
    }
}

fn union_bounds(regions: impl IntoIterator<Item = Region>) -> Bounds {
    let mut b: Option<Bounds> = None;
    for r in regions {
        if let Some(rb) = r.bounds() {
            b = Some(match b {
                None => rb,
                Some(a) => Bounds {
                    min: Coord {
                        x: a.min.x.min(rb.min.x),
                        y: a.min.y.min(rb.min.y),
                    },
                    max: Coord {
                        x: a.max.x.max(rb.max.x),
                        y: a.max.y.max(rb.max.y),
                    },
                },
            });
        }
    }
    b.unwrap_or(Bounds {
        min: Coord { x: 0.0, y: 0.0 },
        max: Coord { x: 1.0, y: 1.0 },
    })
}

fn room_panel(room: &Room, x0: f64) -> Panel {
    let mut p = Panel::new(union_bounds([room.boundary.clone()]), x0);
    p.title(&format!("{} ({})", room.id, room.room_function));
    p.group("boundary", |p| p.path("boundary", &room.boundary, r##"fill="none" stroke="#000" stroke-width="2""##));
    if !room.objects.is_empty() {
        let walk = extract_walkable(room);
        p.group("walkable", |p| {
            p.path("walkable", &walk.region, &format!(r#"fill="{}" stroke="none""#, fill(FunctionClass::Walkable)))
        });
    }
    let functions: Vec<_> = [FunctionClass::Sittable, FunctionClass::Workable]
        .into_iter()
        .flat_map(|c| extract_function_regions(room, c))
        .collect();
    if !functions.is_empty() {
        p.group("functions", |p| {
            for f in &functions {
                p.path(f.class.as_str(), &f.region, &format!(r#"fill="{}" fill-opacity="0.8" stroke="none""#, fill(f.class)));
                if let (Some(pose), Some(c)) = (f.pose, f.region.centroid()) {
                    p.arrow(c, pose);
                }
            }
        });
    }
    if !room.objects.is_empty() {
        p.group("objects", |p| {
            for o in &room.objects {
                p.object(o, "#555");
            }
        });
    }
    p
}

fn mutual_panels(rooms: &[Room], result: &MutualResult) -> Vec<Panel> {
    let mut panels = Vec::new();
    let mut x0 = MARGIN;
    for (i, s) in result.solutions.iter().enumerate() {
        let moved: Vec<Region> = rooms.iter().zip(&s.transforms).map(|(r, g)| apply_rigid(&r.boundary, g)).collect();
        let mut p = Panel::new(union_bounds(moved.iter().cloned()), x0);
        let chosen = if result.chosen_index == Some(i) { " (chosen)" } else { "" };
        p.title(&format!("solution {i}{chosen}"));
        p.group("boundary", |p| {
            for (k, b) in moved.iter().enumerate() {
                let stroke = ROOM_STROKES[k % ROOM_STROKES.len()];
                p.path("boundary", b, &format!(r#"fill="none" stroke="{stroke}" stroke-width="1.5""#));
            }
        });
        p.group("mutual", |p| {
            for (class, region) in &s.mutual_regions {
                p.path(
                    &format!("mutual {class}"),
                    region,
                    &format!(r##"fill="{}" fill-opacity="0.85" stroke="#333" stroke-width="0.5""##, fill(*class)),
                );
            }
        });
        let mut line = 0;
        for (class, v) in &s.objective_values {
            p.note(line, &format!("{class}: {v:.4} m²"));
            line += 1;
        }
        for (k, g) in s.transforms.iter().enumerate() {
            let id = rooms.get(k).map(|r| r.id.as_str()).unwrap_or("?");
            p.note(line, &format!("{id}: tx={:.3} ty={:.3} θ={}°", g.tx, g.ty, to_degrees(g.theta)));
            line += 1;
        }
        x0 += p.width() + 2.0 * MARGIN;
        panels.push(p);
    }
    panels
}

fn scene_panel(scene: &SyntheticScene) -> Panel {
    let floor = scene.floor.rect_region();
    let mut p = Panel::new(union_bounds([floor.clone()]), MARGIN);
    p.title(&format!("synthetic {} ({} objects)", scene.room_function, scene.objects.len()));
    p.group("boundary", |p| p.path("boundary", &floor, r##"fill="none" stroke="#000" stroke-width="2""##));
    p.group("objects", |p| {
        for o in &scene.objects {
            let stroke = match o.provenance {
                Provenance::MutualFunction => "#b03a2e",
                Provenance::NonCollidingTransfer { .. } => "#1f4e79",
                Provenance::Synthesized => "#1e8449",
            };
            p.object(&o.object, stroke);
        }
    });
    p
}

fn notes_height(artifact: &Artifact) -> f64 {
    match artifact {
        Artifact::Mutual { rooms, result } => {
            let lines = result.solutions.iter().map(|s| s.objective_values.len() + rooms.len()).max().unwrap_or(0);
            14.0 * lines as f64 + 6.0
        }
        _ => 0.0,
    }
}

/// The drawing as text; identical input gives identical bytes.
pub fn svg_string(artifact: &Artifact) -> String {
    let panels = match artifact {
        Artifact::Room(r) => vec![room_panel(r, MARGIN)],
        Artifact::Mutual { rooms, result } => mutual_panels(rooms, result),
        Artifact::Scene(s) => vec![scene_panel(s)],
    };
    let width = panels.iter().map(|p| p.x0 + p.width()).fold(0.0, f64::max) + MARGIN;
    let height = panels.iter().map(Panel::height).fold(0.0, f64::max) + 2.0 * MARGIN + TITLE + notes_height(artifact);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    );
    out.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"5\" markerHeight=\"5\" orient=\"auto\"><path d=\"M0 0 L10 5 L0 10 Z\" fill=\"#333\"/></marker></defs>\n",
    );
    for (i, p) in panels.iter().enumerate() {
        let _ = writeln!(out, r#"<g class="panel" id="panel-{i}">"#);
        out.push_str(&p.out);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_svg(artifact: &Artifact, path: &Path) -> Result<(), IoError> {
    write_atomic(path, svg_string(artifact).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::align::ParetoSolution;
    use crate::geometry::RigidTransform2D;
    use crate::scene::{CategoryTable, Obb};
    use std::collections::BTreeMap;

    fn empty_room() -> Room {
        Room::new("r", Region::rect(0.0, 0.0, 3.0, 2.0), vec![], "office").unwrap()
    }

    #[test]
    fn empty_room_has_one_boundary_path() {
        let s = svg_string(&Artifact::Room(&empty_room()));
        assert_eq!(s.matches("<path class=").count(), 1);
        assert_eq!(s.matches(r#"class="boundary""#).count(), 1);
        assert!(s.contains(r#"width="190.00""#), "3 m at 50 px/m plus margins: {s}");
    }

    #[test]
    fn furnished_room_has_all_layers() {
        let t = CategoryTable::default();
        let chair = SceneObject::facing_yaw("c", "chair", Obb::new(1.0, 1.0, 0.25, 0.25, 0.0), 0.9, &t).unwrap();
        let room = Room::new("r", Region::rect(0.0, 0.0, 3.0, 2.0), vec![chair], "office").unwrap();
        let s = svg_string(&Artifact::Room(&room));
        for layer in ["boundary", "walkable", "functions", "objects"] {
            assert!(s.contains(&format!("layer-{layer}")), "{layer}");
        }
        assert!(s.contains(">chair</text>"));
        assert!(s.contains(r#"class="pose""#));
    }

    #[test]
    fn two_solutions_make_two_panels() {
        let room = empty_room();
        let sol = |dx: f64| {
            let g = RigidTransform2D::translation(dx, 0.0);
            let mutual = room.boundary.intersection(&apply_rigid(&room.boundary, &g));
            ParetoSolution {
                transforms: vec![RigidTransform2D::identity(), g],
                genome: vec![],
                objective_values: BTreeMap::from([(FunctionClass::Walkable, mutual.area())]),
                mutual_regions: BTreeMap::from([(FunctionClass::Walkable, mutual)]),
            }
        };
        let result = MutualResult {
            solutions: vec![sol(0.0), sol(1.0)],
            chosen_index: None,
        };
        let rooms = [room.clone(), room];
        let s = svg_string(&Artifact::Mutual {
            rooms: &rooms,
            result: &result,
        });
        assert_eq!(s.matches(r#"class="panel""#).count(), 2);
        assert_eq!(s.matches(r#"class="mutual walkable""#).count(), 2);
        assert!(s.contains("tx=1.000"));
        assert_eq!(s, svg_string(&Artifact::Mutual { rooms: &rooms, result: &result }));
    }
}
