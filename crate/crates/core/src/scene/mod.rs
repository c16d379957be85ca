//! Rooms, objects, functional semantics and scene graphs.

mod graph;
mod model;
mod semantics;
mod table;

pub use graph::{build_scene_graphs, build_scene_graphs_with, GraphThresholds, Relation, SceneGraphSet, ROOM_NODE};
pub use model::{Obb, Room, SceneObject};
pub use semantics::{
    extract_function_regions, extract_walkable, extract_walkable_with, obstacle_union, FunctionRegion,
    WALKABLE_HEIGHT,
};
pub use table::{AssociationTable, CategoryTable, FunctionClass, ASSOCIATION_HEADER, CATEGORY_HEADER, TABLE_VERSION};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SceneError {
    #[error("room `{0}` has an empty boundary")]
    EmptyBoundary(String),
    #[error("room `{0}` boundary is not connected")]
    DisconnectedBoundary(String),
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
    #[error("object `{0}` does not intersect the room boundary")]
    ObjectOutsideRoom(String),
    #[error("object `{id}`: invalid `{field}`: {reason}")]
    InvalidObject { id: String, field: String, reason: String },
    #[error("unknown function class `{0}`")]
    UnknownFunction(String),
    #[error("table line {line}: {reason}")]
    TableSyntax { line: usize, reason: String },
}
