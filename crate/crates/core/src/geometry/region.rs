use geo::{Area, BooleanOps, Centroid, Coord, LineString, MultiPolygon, Polygon};
use geo::algorithm::bool_ops::{FillRule, OpType};

use super::GeometryError;

/// Vertices closer than this are merged.
pub const SNAP: f64 = 1e-9;

/// Rings whose absolute area falls below this are treated as degenerate.
const MIN_RING_AREA: f64 = 1e-12;

/// Overlay results are cleaned of features thinner than this: a vertex
/// whose triangle with its neighbours has a smaller height goes, which
/// removes collinear points, zero-width spikes and hairline rings.
const SLIVER_WIDTH: f64 = 1e-7;

/// A 2D multipolygon with holes, in meters.
///
/// Outer rings are counter-clockwise, holes clockwise. The fill rule is
/// nonzero winding. Every constructor and boolean result passes through
/// normalization, so consecutive duplicate vertices and degenerate rings
/// never survive.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    shape: MultiPolygon<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Intersect,
    Union,
    Difference,
}

/// Axis-aligned bounds `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    pub min: Coord<f64>,
    pub max: Coord<f64>,
}

impl Bounds {
    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn center(&self) -> Coord<f64> {
        Coord {
            x: 0.5 * (self.min.x + self.max.x),
            y: 0.5 * (self.min.y + self.max.y),
        }
    }

    pub fn overlap_area(&self, other: &Bounds) -> f64 {
        let w = self.max.x.min(other.max.x) - self.min.x.max(other.min.x);
        let h = self.max.y.min(other.max.y) - self.min.y.max(other.min.y);
        if w <= 0.0 || h <= 0.0 {
            0.0
        } else {
            w * h
        }
    }

    pub fn translated(&self, d: Coord<f64>) -> Bounds {
        Bounds {
            min: self.min + d,
            max: self.max + d,
        }
    }
}

impl Default for Region {
    fn default() -> Self {
        Self {
            shape: MultiPolygon(vec![]),
        }
    }
}

impl Region {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        let (x0, x1) = (x0.min(x1), x0.max(x1));
        let (y0, y1) = (y0.min(y1), y0.max(y1));
        Self::from_multipolygon(MultiPolygon(vec![Polygon::new(
            LineString::from(vec![(x0, y0), (x1, y0), (x1, y1), (x0, y1)]),
            vec![],
        )]))
    }

    /// A simple polygon from its outer ring. Rejects non-finite
    /// coordinates, fewer than three distinct vertices, zero area and
    /// self-intersections. Orientation of the input does not matter.
    pub fn polygon(exterior: &[(f64, f64)]) -> Result<Self, GeometryError> {
        Self::with_holes(exterior, &[])
    }

    pub fn with_holes(
        exterior: &[(f64, f64)],
        holes: &[Vec<(f64, f64)>],
    ) -> Result<Self, GeometryError> {
        let outer = validated_ring(exterior)?;
        let inner = holes
            .iter()
            .map(|h| validated_ring(h))
            .collect::<Result<Vec<_>, _>>()?;
        let poly = Polygon::new(LineString::new(outer), inner.into_iter().map(LineString::new).collect());
        // Route through a union with nothing so that holes touching or
        // exceeding the outer ring are resolved by the overlay engine.
        let resolved = MultiPolygon(vec![poly]).boolean_op_with_fill_rule(
            &MultiPolygon::<f64>(vec![]),
            OpType::Union,
            FillRule::EvenOdd,
        );
        let region = Self::from_multipolygon(resolved);
        if region.is_empty() {
            return Err(GeometryError::Degenerate);
        }
        Ok(region)
    }

    /// A zero-area region holding a single point. Only meaningful as an
    /// argument to [`super::distance`]; booleans treat it as empty.
    pub fn point(x: f64, y: f64) -> Self {
        let c = Coord { x, y };
        Self {
            shape: MultiPolygon(vec![Polygon::new(LineString::new(vec![c, c]), vec![])]),
        }
    }

    /// Normalizes an arbitrary multipolygon: snaps duplicate vertices,
    /// drops degenerate rings and fixes orientation.
    pub fn from_multipolygon(mp: MultiPolygon<f64>) -> Self {
        let mut polys = Vec::with_capacity(mp.0.len());
        for p in mp.0 {
            let (ext, ints) = p.into_inner();
            let Some(ext) = clean_ring(ext.0, true) else {
                continue;
            };
            let ints: Vec<LineString<f64>> = ints
                .into_iter()
                .filter_map(|r| clean_ring(r.0, false))
                .map(LineString::new)
                .collect();
            polys.push(Polygon::new(LineString::new(ext), ints));
        }
        Self {
            shape: MultiPolygon(polys),
        }
    }

    pub fn as_multipolygon(&self) -> &MultiPolygon<f64> {
        &self.shape
    }

    pub fn polygons(&self) -> &[Polygon<f64>] {
        &self.shape.0
    }

    pub fn is_empty(&self) -> bool {
        self.shape.0.is_empty()
    }

    /// Total enclosed area in square meters.
    pub fn area(&self) -> f64 {
        self.shape.unsigned_area()
    }

    /// Rings as open vertex lists: each polygon's outer ring followed by
    /// its holes.
    pub fn rings(&self) -> Vec<Vec<Coord<f64>>> {
        let mut out = Vec::new();
        for p in &self.shape.0 {
            out.push(open_ring(p.exterior()));
            for h in p.interiors() {
                out.push(open_ring(h));
            }
        }
        out
    }

    /// Boundary edges of every ring, in ring order. A point region yields
    /// one zero-length edge.
    pub fn segments(&self) -> Vec<(Coord<f64>, Coord<f64>)> {
        let mut out = Vec::new();
        for ring in self.rings() {
            let n = ring.len();
            if n == 1 {
                out.push((ring[0], ring[0]));
                continue;
            }
            for i in 0..n {
                out.push((ring[i], ring[(i + 1) % n]));
            }
        }
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = Coord<f64>> + '_ {
        self.shape.0.iter().flat_map(|p| {
            std::iter::once(p.exterior())
                .chain(p.interiors().iter())
                .flat_map(|r| {
                    let n = r.0.len().saturating_sub(1).max(1);
                    r.0.iter().take(n).copied()
                })
        })
    }

    pub fn bounds(&self) -> Option<Bounds> {
        let mut it = self.vertices();
        let first = it.next()?;
        let mut b = Bounds { min: first, max: first };
        for c in it {
            b.min.x = b.min.x.min(c.x);
            b.min.y = b.min.y.min(c.y);
            b.max.x = b.max.x.max(c.x);
            b.max.y = b.max.y.max(c.y);
        }
        Some(b)
    }

    /// Area centroid; falls back to the vertex mean for zero-area regions.
    pub fn centroid(&self) -> Option<Coord<f64>> {
        if self.is_empty() {
            return None;
        }
        if self.area() > 0.0 {
            if let Some(c) = self.shape.centroid() {
                return Some(c.0);
            }
        }
        let (mut sx, mut sy, mut n) = (0.0, 0.0, 0usize);
        for c in self.vertices() {
            sx += c.x;
            sy += c.y;
            n += 1;
        }
        (n > 0).then(|| Coord { x: sx / n as f64, y: sy / n as f64 })
    }

    /// Connected components, one region per polygon.
    pub fn components(&self) -> Vec<Region> {
        self.shape
            .0
            .iter()
            .map(|p| Region {
                shape: MultiPolygon(vec![p.clone()]),
            })
            .collect()
    }

    /// Nonzero-winding point membership; points on the boundary (within
    /// `SNAP`) count as inside.
    pub fn contains_point(&self, p: Coord<f64>) -> bool {
        let mut winding = 0i32;
        for (a, b) in self.segments() {
            if point_segment_distance(p, a, b) <= SNAP {
                return true;
            }
            if a.y <= p.y {
                if b.y > p.y && cross(b - a, p - a) > 0.0 {
                    winding += 1;
                }
            } else if b.y <= p.y && cross(b - a, p - a) < 0.0 {
                winding -= 1;
            }
        }
        winding != 0
    }

    pub fn intersection(&self, other: &Region) -> Region {
        boolean(BoolOp::Intersect, self, other)
    }

    pub fn union(&self, other: &Region) -> Region {
        boolean(BoolOp::Union, self, other)
    }

    pub fn difference(&self, other: &Region) -> Region {
        boolean(BoolOp::Difference, self, other)
    }

    /// Applies `f` to every vertex, keeping ring structure. `f` must be
    /// orientation preserving (rotations, translations, positive scales).
    pub(crate) fn map_coords(&self, f: impl Fn(Coord<f64>) -> Coord<f64>) -> Region {
        let map_ring = |r: &LineString<f64>| LineString::new(r.0.iter().map(|&c| f(c)).collect());
        let polys = self
            .shape
            .0
            .iter()
            .map(|p| {
                Polygon::new(
                    map_ring(p.exterior()),
                    p.interiors().iter().map(map_ring).collect(),
                )
            })
            .collect();
        Region {
            shape: MultiPolygon(polys),
        }
    }

    pub fn translated(&self, d: Coord<f64>) -> Region {
        self.map_coords(|c| c + d)
    }
}

impl serde::Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let polys: Vec<Vec<Vec<[f64; 2]>>> = self
            .shape
            .0
            .iter()
            .map(|p| {
                std::iter::once(p.exterior())
                    .chain(p.interiors().iter())
                    .map(|r| open_ring(r).into_iter().map(|c| [c.x, c.y]).collect())
                    .collect()
            })
            .collect();
        polys.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Region {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let polys: Vec<Vec<Vec<[f64; 2]>>> = serde::Deserialize::deserialize(d)?;
        let to_ring = |r: &Vec<[f64; 2]>| LineString::new(r.iter().map(|&[x, y]| Coord { x, y }).collect());
        let mp = polys
            .iter()
            .filter(|rings| !rings.is_empty())
            .map(|rings| Polygon::new(to_ring(&rings[0]), rings[1..].iter().map(to_ring).collect()))
            .collect();
        Ok(Region::from_multipolygon(MultiPolygon(mp)))
    }
}

/// Boolean set operation with nonzero fill.
pub fn boolean(op: BoolOp, a: &Region, b: &Region) -> Region {
    match op {
        BoolOp::Intersect if a.is_empty() || b.is_empty() => return Region::empty(),
        BoolOp::Union if a.is_empty() => return b.clone(),
        BoolOp::Union if b.is_empty() => return a.clone(),
        BoolOp::Difference if a.is_empty() => return Region::empty(),
        BoolOp::Difference if b.is_empty() => return a.clone(),
        _ => {}
    }
    let ty = match op {
        BoolOp::Intersect => OpType::Intersection,
        BoolOp::Union => OpType::Union,
        BoolOp::Difference => OpType::Difference,
    };
    Region::from_multipolygon(a.shape.boolean_op_with_fill_rule(&b.shape, ty, FillRule::NonZero))
}

/// Union of many regions in a single overlay pass.
pub fn union_all<'a>(regions: impl IntoIterator<Item = &'a Region>) -> Region {
    let polys: Vec<Polygon<f64>> = regions
        .into_iter()
        .flat_map(|r| r.shape.0.iter().cloned())
        .collect();
    match polys.len() {
        0 => Region::empty(),
        1 => Region {
            shape: MultiPolygon(polys),
        },
        _ => Region::from_multipolygon(geo::unary_union(&polys)),
    }
}

pub(crate) fn cross(a: Coord<f64>, b: Coord<f64>) -> f64 {
    a.x * b.y - a.y * b.x
}

pub(crate) fn dot(a: Coord<f64>, b: Coord<f64>) -> f64 {
    a.x * b.x + a.y * b.y
}

pub(crate) fn norm(a: Coord<f64>) -> f64 {
    a.x.hypot(a.y)
}

pub(crate) fn point_segment_distance(p: Coord<f64>, a: Coord<f64>, b: Coord<f64>) -> f64 {
    let ab = b - a;
    let len2 = dot(ab, ab);
    if len2 == 0.0 {
        return norm(p - a);
    }
    let t = (dot(p - a, ab) / len2).clamp(0.0, 1.0);
    norm(p - (a + ab * t))
}

fn signed_area(ring: &[Coord<f64>]) -> f64 {
    let n = ring.len();
    let mut s = 0.0;
    for i in 0..n {
        s += cross(ring[i], ring[(i + 1) % n]);
    }
    0.5 * s
}

fn open_ring(r: &LineString<f64>) -> Vec<Coord<f64>> {
    let mut v = r.0.clone();
    if v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    v
}

fn dedup_ring(mut pts: Vec<Coord<f64>>) -> Vec<Coord<f64>> {
    if pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    let mut out: Vec<Coord<f64>> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last().is_some_and(|&q| norm(p - q) <= SNAP) {
            continue;
        }
        out.push(p);
    }
    while out.len() > 1 && norm(out[0] - out[out.len() - 1]) <= SNAP {
        out.pop();
    }
    out
}

/// Returns a closed ring with the requested orientation, or `None` when
/// the ring is degenerate.
fn clean_ring(pts: Vec<Coord<f64>>, ccw: bool) -> Option<Vec<Coord<f64>>> {
    let mut ring = drop_thin_vertices(dedup_ring(pts));
    if ring.len() < 3 {
        return None;
    }
    let a = signed_area(&ring);
    if a.abs() < MIN_RING_AREA {
        return None;
    }
    if (a > 0.0) != ccw {
        ring.reverse();
    }
    ring.push(ring[0]);
    Some(ring)
}

/// Repeatedly removes vertices whose triangle with the two neighbours is
/// thinner than [`SLIVER_WIDTH`], merging neighbours that end up within
/// [`SNAP`].
fn drop_thin_vertices(mut ring: Vec<Coord<f64>>) -> Vec<Coord<f64>> {
    let thin = |p: Coord<f64>, v: Coord<f64>, n: Coord<f64>| {
        let longest = norm(v - p).max(norm(n - v)).max(norm(n - p));
        cross(v - p, n - v).abs() <= SLIVER_WIDTH * longest
    };
    loop {
        let len = ring.len();
        if len < 3 {
            return ring;
        }
        let mut out: Vec<Coord<f64>> = Vec::with_capacity(len);
        for i in 0..len {
            let p = *out.last().unwrap_or(&ring[(i + len - 1) % len]);
            let (v, n) = (ring[i], ring[(i + 1) % len]);
            if !thin(p, v, n) {
                out.push(v);
            }
        }
        let out = dedup_ring(out);
        if out.len() == len {
            return out;
        }
        ring = out;
    }
}

fn validated_ring(pts: &[(f64, f64)]) -> Result<Vec<Coord<f64>>, GeometryError> {
    if pts.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let ring = dedup_ring(pts.iter().map(|&(x, y)| Coord { x, y }).collect());
    if ring.len() < 3 {
        return Err(GeometryError::Degenerate);
    }
    if !ring_is_simple(&ring) {
        return Err(GeometryError::SelfIntersecting);
    }
    if signed_area(&ring).abs() < MIN_RING_AREA {
        return Err(GeometryError::Degenerate);
    }
    Ok(ring)
}

/// True when no two non-adjacent edges of the (open) ring touch.
pub(crate) fn ring_is_simple(ring: &[Coord<f64>]) -> bool {
    let n = ring.len();
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (c, d) = (ring[j], ring[(j + 1) % n]);
            if adjacent {
                // Adjacent edges may only share their common vertex; a
                // fold-back (collinear overlap) is a self-intersection.
                let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                let u = p - shared;
                let v = q - shared;
                if cross(u, v).abs() <= SNAP * norm(u).max(norm(v)) && dot(u, v) > 0.0 {
                    return false;
                }
                continue;
            }
            if segments_touch(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn segments_touch(a: Coord<f64>, b: Coord<f64>, c: Coord<f64>, d: Coord<f64>) -> bool {
    segment_distance(a, b, c, d) <= SNAP
}

/// Minimum distance between two closed segments.
pub(crate) fn segment_distance(a: Coord<f64>, b: Coord<f64>, c: Coord<f64>, d: Coord<f64>) -> f64 {
    if segments_cross(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

fn segments_cross(a: Coord<f64>, b: Coord<f64>, c: Coord<f64>, d: Coord<f64>) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}
