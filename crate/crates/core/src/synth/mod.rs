//! Mutual scene synthesis: a virtual floor covering every aligned room,
//! furnished first with the mutual function regions and with objects that
//! can be transferred without conflict, then augmented one object at a
//! time by a plausibility scorer with proximity re-ranking.

mod augment;
mod init;
mod prior;

use geo::Coord;
use serde::{Deserialize, Serialize};

pub use augment::{
    augment_scene, candidate_grid, conditional_rerank, rerank_select, score_candidates, score_placement,
    AugmentConfig, CandidateGrid, RerankTargets,
};
pub use init::{
    assign_room_function, collect_non_colliding, collect_non_colliding_with, init_floor, initialize_scene,
    place_mutual_objects, InitConfig, MIN_MUTUAL_AREA,
};
pub use prior::{
    train_prior_scorer, CategoryPrior, Histogram, PlacementScorer, PriorScorer, UniformScorer, DEFAULT_HALF_EXTENT,
};

use crate::align::AlignError;
use crate::geometry::{GeometryError, ScaledPlacement};
use crate::scene::{Obb, SceneError, SceneObject};

/// Footprints whose separating-axis penetration stays below this many
/// meters count as touching, not overlapping.
pub const CONTACT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SynthError {
    #[error("no input rooms")]
    NoRooms,
    #[error("{rooms} rooms but {transforms} transforms")]
    CountMismatch { rooms: usize, transforms: usize },
    #[error("training corpus has no objects")]
    EmptyCorpus,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Align(#[from] AlignError),
    #[error(transparent)]
    Scene(#[from] SceneError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    MutualFunction,
    NonCollidingTransfer { room_id: String },
    Synthesized,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlacedObject {
    pub object: SceneObject,
    pub provenance: Provenance,
}

/// A sampled placement: footprint center, facing and plausibility.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlacementCandidate {
    pub position: Coord<f64>,
    pub yaw: f64,
    pub score: f64,
    /// Position in the sampling grid; the final tie-breaker.
    pub grid_index: u64,
    pub footprint: Obb,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SyntheticScene {
    /// Placement of the unit square `[-½, ½]²`.
    pub floor: ScaledPlacement,
    pub room_function: String,
    pub objects: Vec<PlacedObject>,
}

impl SyntheticScene {
    pub fn new(floor: ScaledPlacement, room_function: impl Into<String>) -> Self {
        Self {
            floor,
            room_function: room_function.into(),
            objects: Vec::new(),
        }
    }

    /// Whether every corner of `b` lies on the floor.
    pub fn floor_contains(&self, b: &Obb) -> bool {
        let (hx, hy) = (0.5 * self.floor.sx + 1e-9, 0.5 * self.floor.sy + 1e-9);
        b.corners().iter().all(|c| {
            let l = self.floor.transform.inverse().apply(*c);
            l.x.abs() <= hx && l.y.abs() <= hy
        })
    }

    pub fn collides(&self, b: &Obb) -> bool {
        self.objects.iter().any(|o| o.object.footprint.overlaps(b, CONTACT_TOLERANCE))
    }

    /// Inside the floor and clear of every placed object.
    pub fn fits(&self, b: &Obb) -> bool {
        self.floor_contains(b) && !self.collides(b)
    }

    pub fn floor_center(&self) -> Coord<f64> {
        self.floor.center()
    }

    pub fn count(&self, provenance: &Provenance) -> usize {
        self.objects.iter().filter(|o| &o.provenance == provenance).count()
    }

    pub fn synthesized(&self) -> usize {
        self.count(&Provenance::Synthesized)
    }
}
