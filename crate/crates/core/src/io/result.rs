use std::collections::BTreeMap;

use geo::{Coord, LineString, MultiPolygon, Polygon};
use serde::{Deserialize, Serialize};

use super::{to_degrees, ObbRecord};
use crate::align::{Gene, MutualResult, ParetoSolution};
use crate::geometry::{Region, RigidTransform2D, ScaledPlacement};
use crate::pipeline::PipelineConfig;
use crate::scene::{CategoryTable, FunctionClass, FunctionRegion, SceneGraphSet, SceneObject};
use crate::synth::{PlacedObject, PriorScorer, Provenance, SyntheticScene};

pub const RESULT_FORMAT: &str = "mss-result";
pub const RESULT_VERSION: u32 = 1;

/// Everything one pipeline run produced, plus what is needed to run it
/// again: the inputs' digests and the full configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub format: String,
    pub schema_version: u32,
    pub inputs: Vec<InputRecord>,
    pub config: PipelineConfig,
    pub solutions: Vec<SolutionRecord>,
    pub chosen_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub post: Option<PostRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scene: Option<SceneRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputRecord {
    /// `scene`, `template` or `prior`.
    pub role: String,
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformRecord {
    pub tx: f64,
    pub ty: f64,
    pub theta_deg: f64,
}

impl TransformRecord {
    pub fn from_transform(g: &RigidTransform2D) -> Self {
        Self {
            tx: g.tx,
            ty: g.ty,
            theta_deg: to_degrees(g.theta),
        }
    }

    pub fn to_transform(self) -> RigidTransform2D {
        RigidTransform2D::new(self.tx, self.ty, self.theta_deg.to_radians())
    }
}

/// One polygon: closed exterior ring and closed hole rings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonRecord {
    pub exterior: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub holes: Vec<Vec<[f64; 2]>>,
}

fn ring_record(ls: &LineString<f64>) -> Vec<[f64; 2]> {
    ls.0.iter().map(|c| [c.x, c.y]).collect()
}

fn ring_from(pts: &[[f64; 2]]) -> LineString<f64> {
    LineString(pts.iter().map(|p| Coord { x: p[0], y: p[1] }).collect())
}

pub fn region_record(r: &Region) -> Vec<PolygonRecord> {
    r.polygons()
        .iter()
        .map(|p| PolygonRecord {
            exterior: ring_record(p.exterior()),
            holes: p.interiors().iter().map(ring_record).collect(),
        })
        .collect()
}

pub fn region_from_record(polys: &[PolygonRecord]) -> Region {
    Region::from_multipolygon(MultiPolygon(
        polys
            .iter()
            .map(|p| Polygon::new(ring_from(&p.exterior), p.holes.iter().map(|h| ring_from(h)).collect()))
            .collect(),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionRecord {
    /// One per input room, in input order; the first is the identity.
    pub transforms: Vec<TransformRecord>,
    /// Lattice indices `[ix, iy, ir]` for every room after the first.
    pub genome: Vec<[i64; 3]>,
    /// Mutual area per evaluated class, m².
    pub objective_values: BTreeMap<FunctionClass, f64>,
    pub mutual_regions: BTreeMap<FunctionClass, Vec<PolygonRecord>>,
}

impl SolutionRecord {
    pub fn from_solution(s: &ParetoSolution) -> Self {
        Self {
            transforms: s.transforms.iter().map(TransformRecord::from_transform).collect(),
            genome: s.genome.iter().map(|g| [g.ix as i64, g.iy as i64, g.ir as i64]).collect(),
            objective_values: s.objective_values.clone(),
            mutual_regions: s.mutual_regions.iter().map(|(k, r)| (*k, region_record(r))).collect(),
        }
    }

    pub fn to_solution(&self) -> ParetoSolution {
        ParetoSolution {
            transforms: self.transforms.iter().map(|t| t.to_transform()).collect(),
            genome: self
                .genome
                .iter()
                .map(|g| Gene {
                    ix: g[0] as i32,
                    iy: g[1] as i32,
                    ir: g[2] as u32,
                })
                .collect(),
            objective_values: self.objective_values.clone(),
            mutual_regions: self.mutual_regions.iter().map(|(k, r)| (*k, region_from_record(r))).collect(),
        }
    }
}

/// Safe-activity post-processing of one solution's mutual region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PostRecord {
    pub solution: usize,
    pub class: FunctionClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplified: Option<SimplifiedRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inscribed: Option<InscribedRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplifiedRecord {
    pub eps: f64,
    pub area: f64,
    pub region: Vec<PolygonRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InscribedRecord {
    pub template: String,
    pub placement: PlacementRecord,
    /// Overlap with the region minus overlap with its complement, m².
    pub objective: f64,
    pub area: f64,
    pub shape: Vec<PolygonRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementRecord {
    pub transform: TransformRecord,
    pub sx: f64,
    pub sy: f64,
}

impl PlacementRecord {
    pub fn from_placement(p: &ScaledPlacement) -> Self {
        Self {
            transform: TransformRecord::from_transform(&p.transform),
            sx: p.sx,
            sy: p.sy,
        }
    }

    pub fn to_placement(self) -> ScaledPlacement {
        ScaledPlacement::new(self.transform.to_transform(), self.sx, self.sy)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloorRecord {
    pub placement: PlacementRecord,
    pub corners: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneRecord {
    pub floor: FloorRecord,
    pub room_function: String,
    pub objects: Vec<ObjectRecordOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectRecordOut {
    pub id: String,
    pub category: String,
    pub obb: ObbRecord,
    pub pose: [f64; 2],
    pub height_range: [f64; 2],
    pub provenance: Provenance,
}

impl SceneRecord {
    pub fn from_scene(s: &SyntheticScene) -> Self {
        let mut corners: Vec<[f64; 2]> = s.floor.corners().iter().map(|c| [c.x, c.y]).collect();
        corners.push(corners[0]);
        Self {
            floor: FloorRecord {
                placement: PlacementRecord::from_placement(&s.floor),
                corners,
            },
            room_function: s.room_function.clone(),
            objects: s
                .objects
                .iter()
                .map(|p| ObjectRecordOut {
                    id: p.object.id.clone(),
                    category: p.object.category.clone(),
                    obb: ObbRecord::from_obb(&p.object.footprint),
                    pose: [p.object.pose.x, p.object.pose.y],
                    height_range: [p.object.height_range.0, p.object.height_range.1],
                    provenance: p.provenance.clone(),
                })
                .collect(),
        }
    }

    /// Rebuilds the scene; function classes come from `table`.
    pub fn to_scene(&self, table: &CategoryTable) -> SyntheticScene {
        let mut scene = SyntheticScene::new(self.floor.placement.to_placement(), self.room_function.clone());
        scene.objects = self
            .objects
            .iter()
            .map(|o| PlacedObject {
                object: SceneObject {
                    id: o.id.clone(),
                    category: o.category.clone(),
                    footprint: o.obb.to_obb(),
                    pose: Coord { x: o.pose[0], y: o.pose[1] },
                    height_range: (o.height_range[0], o.height_range[1]),
                    functions: table.functions(&o.category),
                },
                provenance: o.provenance.clone(),
            })
            .collect();
        scene
    }
}

impl ResultFile {
    pub fn mutual_result(&self) -> MutualResult {
        MutualResult {
            solutions: self.solutions.iter().map(SolutionRecord::to_solution).collect(),
            chosen_index: self.chosen_index,
        }
    }
}

pub const EXTRACT_FORMAT: &str = "mss-extract";
pub const PRIOR_FORMAT: &str = "mss-prior";

/// Function regions and scene graphs of one room.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtractFile {
    pub format: String,
    pub schema_version: u32,
    pub input: InputRecord,
    pub room_id: String,
    /// Total area per class, m².
    pub areas: BTreeMap<FunctionClass, f64>,
    pub regions: Vec<FunctionRegionRecord>,
    pub scene_graphs: SceneGraphSet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionRegionRecord {
    pub class: FunctionClass,
    pub area: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pose: Option<[f64; 2]>,
    pub source_object_ids: Vec<String>,
    pub region: Vec<PolygonRecord>,
}

impl FunctionRegionRecord {
    pub fn from_region(f: &FunctionRegion) -> Self {
        Self {
            class: f.class,
            area: f.region.area(),
            pose: f.pose.map(|p| [p.x, p.y]),
            source_object_ids: f.source_object_ids.clone(),
            region: region_record(&f.region),
        }
    }
}

/// A trained placement prior and the corpus it came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PriorFile {
    pub format: String,
    pub schema_version: u32,
    pub inputs: Vec<InputRecord>,
    pub prior: PriorScorer,
}

/// A custom activity shape: one closed ring, in meters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateFile {
    pub schema_version: u32,
    pub boundary: Vec<[f64; 2]>,
}
