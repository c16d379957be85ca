//! Signed polygon offsetting.
//!
//! The offset is built as a band around the boundary: one strip per edge
//! on the offset side plus a join wedge at every vertex where the strips
//! open a gap. Outward offsets add the band to the region, inward offsets
//! subtract it. Because the band is a plain union, the raw self-crossing
//! loops of the classic vertex-displacement method never appear; whatever
//! survives the overlay is a valid region.

use geo::{Coord, LineString, Polygon};

use super::region::{cross, dot, norm, union_all};
use super::Region;

/// Corner treatment on the offset side.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Join {
    /// Sharp corners, beveled once the miter exceeds [`MITER_LIMIT`].
    #[default]
    Miter,
    /// Circular arcs.
    Round,
}

/// Maximum miter length as a multiple of the offset distance.
pub const MITER_LIMIT: f64 = 4.0;

/// Arc segments per full turn for round joins.
const ARC_SEGMENTS: usize = 64;

/// Offsets `r` by `d` meters: positive grows, negative shrinks.
///
/// An inward offset larger than the inradius yields the empty region.
pub fn offset(r: &Region, d: f64, join: Join) -> Region {
    if r.is_empty() || d == 0.0 || !d.is_finite() {
        return r.clone();
    }
    let mut pieces: Vec<Region> = Vec::new();
    for ring in r.rings() {
        ring_band(&ring, d, join, &mut pieces);
    }
    let band = union_all(pieces.iter());
    if d > 0.0 {
        r.union(&band)
    } else {
        r.difference(&band)
    }
}

/// Inward offset by `eps` then outward by `eps` with miter joins; removes
/// every feature narrower than `2·eps`.
pub fn simplify_region(r: &Region, eps: f64) -> Region {
    simplify_region_with(r, eps, Join::Miter)
}

pub fn simplify_region_with(r: &Region, eps: f64, join: Join) -> Region {
    let eps = eps.abs();
    offset(&offset(r, -eps, join), eps, join)
}

fn ring_band(ring: &[Coord<f64>], d: f64, join: Join, out: &mut Vec<Region>) {
    let n = ring.len();
    if n < 3 {
        return;
    }
    // Outward normal is on the right of each edge for correctly oriented
    // rings (outer CCW, holes CW).
    let side = |a: Coord<f64>, b: Coord<f64>| -> Option<Coord<f64>> {
        let e = b - a;
        let len = norm(e);
        (len > 0.0).then(|| Coord { x: e.y / len, y: -e.x / len } * d)
    };
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if let Some(s) = side(a, b) {
            push_poly(out, &[a, b, b + s, a + s]);
        }
    }
    for i in 0..n {
        let prev = ring[(i + n - 1) % n];
        let v = ring[i];
        let next = ring[(i + 1) % n];
        let turn = cross(v - prev, next - v);
        if turn * d <= 0.0 {
            continue;
        }
        let (Some(s1), Some(s2)) = (side(prev, v), side(v, next)) else {
            continue;
        };
        let p1 = v + s1;
        let p2 = v + s2;
        match join {
            Join::Miter => {
                let n1 = s1 / d;
                let n2 = s2 / d;
                let c = dot(n1, n2);
                let ratio = (2.0 / (1.0 + c)).sqrt();
                if ratio <= MITER_LIMIT {
                    let m = v + (n1 + n2) * (d / (1.0 + c));
                    push_poly(out, &[v, p1, m, p2]);
                } else {
                    push_poly(out, &[v, p1, p2]);
                }
            }
            Join::Round => {
                let a1 = s1.y.atan2(s1.x);
                let mut a2 = s2.y.atan2(s2.x);
                // Sweep the short way from s1 to s2.
                let mut sweep = a2 - a1;
                while sweep > std::f64::consts::PI {
                    sweep -= std::f64::consts::TAU;
                }
                while sweep < -std::f64::consts::PI {
                    sweep += std::f64::consts::TAU;
                }
                a2 = a1 + sweep;
                let steps = ((sweep.abs() / std::f64::consts::TAU) * ARC_SEGMENTS as f64).ceil().max(1.0) as usize;
                let radius = d.abs();
                let mut pts = vec![v, p1];
                for k in 1..steps {
                    let t = a1 + (a2 - a1) * k as f64 / steps as f64;
                    pts.push(v + Coord { x: t.cos(), y: t.sin() } * radius);
                }
                pts.push(p2);
                push_poly(out, &pts);
            }
        }
    }
}

fn push_poly(out: &mut Vec<Region>, pts: &[Coord<f64>]) {
    let r = Region::from_multipolygon(geo::MultiPolygon(vec![Polygon::new(LineString::new(pts.to_vec()), vec![])]));
    if !r.is_empty() {
        out.push(r);
    }
}
