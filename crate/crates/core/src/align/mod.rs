//! Mutual-space optimization: evaluate mutual function areas under
//! per-room rigid motions, search those motions with SPEA2, derive
//! mutual-function poses, and solve small instances exhaustively.

mod config;
mod evaluate;
mod lattice;
mod optimize;
mod oracle;
mod pose;
mod spea2;

use std::collections::BTreeMap;

pub use config::{AlignmentConfig, ObjectiveSpec, Role};
pub use evaluate::{evaluate_mutual, mutual_region, PreparedRoom};
pub use lattice::{default_bound, Frame, Gene, Lattice};
pub use optimize::{alignment_lattice, optimize_alignment, room_frame, MutualResult, ParetoSolution};
pub use oracle::{brute_force_align, brute_force_align_with, brute_force_on, OracleOptions, OracleResult, ORACLE_BUDGET};
pub use pose::{mutual_function_pose, POSE_TOLERANCE};

use crate::geometry::GeometryError;
use crate::scene::FunctionClass;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlignError {
    #[error("need at least two rooms, got {0}")]
    TooFewRooms(usize),
    #[error("{rooms} rooms but {transforms} transforms")]
    CountMismatch { rooms: usize, transforms: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid objective: {0}")]
    InvalidObjective(String),
    #[error("no feasible alignment found; best total constraint shortfall {best_violation:.6} m²")]
    Infeasible {
        best_violation: f64,
        shortfalls: BTreeMap<FunctionClass, f64>,
    },
    #[error("exhaustive search needs {evaluations} evaluations, budget is {budget}")]
    GridTooFine { evaluations: u64, budget: u64 },
    #[error("exhaustive search takes 2 or 3 regions, got {0}")]
    OracleRoomCount(usize),
    #[error("region is empty")]
    EmptyRegion,
    #[error("no contributing function regions")]
    NoContributingRegions,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
