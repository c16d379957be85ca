//! 2D polygon kernel: regions, booleans, offsets, rigid motions, bounding
//! rectangles, distances and the inscribed activity-shape search.
//!
//! Booleans delegate to `geo`'s overlay engine with nonzero fill; the rest
//! is implemented here. Everything is a pure function of immutable values.

mod bounding;
mod distance;
mod inscribe;
mod offset;
mod region;
mod transform;

pub use bounding::{bounding_rect, canonical_angle, convex_hull, min_area_bounding_rect, BoundingMode};
pub use distance::distance;
pub use geo::Coord;
pub use inscribe::{
    inscribed_objective, largest_inscribed_shape, largest_inscribed_shape_with, ActivityTemplate, InscribeOptions,
    Inscribed,
};
pub use offset::{offset, simplify_region, simplify_region_with, Join, MITER_LIMIT};
pub use region::{boolean, union_all, BoolOp, Bounds, Region, SNAP};
pub use transform::{apply_rigid, normalize_angle, unit_square, RigidTransform2D, ScaledPlacement};

pub(crate) use region::{dot, norm, segment_distance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("empty input region")]
    EmptyInput,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("ring has fewer than three distinct vertices or zero area")]
    Degenerate,
    #[error("ring intersects itself")]
    SelfIntersecting,
    #[error("shape must be a single ring without holes")]
    NotSimple,
}
