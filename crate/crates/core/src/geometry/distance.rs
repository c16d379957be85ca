use super::region::{segment_distance, SNAP};
use super::{GeometryError, Region};

/// Shortest distance between two point sets; zero when they overlap or
/// touch. Either side may be a degenerate [`Region::point`].
pub fn distance(a: &Region, b: &Region) -> Result<f64, GeometryError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    if a.vertices().any(|p| b.contains_point(p)) || b.vertices().any(|p| a.contains_point(p)) {
        return Ok(0.0);
    }
    let sa = a.segments();
    let sb = b.segments();
    let mut best = f64::INFINITY;
    for &(p, q) in &sa {
        for &(r, s) in &sb {
            best = best.min(segment_distance(p, q, r, s));
            if best <= SNAP {
                return Ok(0.0);
            }
        }
    }
    Ok(best)
}
