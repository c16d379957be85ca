//! Largest scaled and rotated copy of a template shape inside a region.
//!
//! Search: a grid over rotations and over the centers with the most
//! clearance, a bisection on uniform scale at each, then coordinate ascent
//! on the two scale factors (with one-sided anchors so the shape can grow
//! toward open space) for the best few seeds.

use std::f64::consts::TAU;

use geo::Coord;

use super::region::{cross, point_segment_distance, SNAP};
use super::transform::{RigidTransform2D, ScaledPlacement};
use super::{GeometryError, Region};

/// The custom activity shape, centered on its centroid.
#[derive(Clone, Debug, PartialEq)]
pub struct ActivityTemplate {
    shape: Region,
}

impl ActivityTemplate {
    pub fn new(shape: Region) -> Result<Self, GeometryError> {
        if shape.polygons().len() != 1 || !shape.polygons()[0].interiors().is_empty() {
            return Err(GeometryError::NotSimple);
        }
        if shape.area() <= 0.0 {
            return Err(GeometryError::Degenerate);
        }
        let c = shape.centroid().ok_or(GeometryError::Degenerate)?;
        Ok(Self {
            shape: shape.translated(Coord { x: -c.x, y: -c.y }),
        })
    }

    /// Unit square.
    pub fn square() -> Self {
        Self {
            shape: Region::rect(-0.5, -0.5, 0.5, 0.5),
        }
    }

    /// Regular polygon with `segments` sides and circumradius ½.
    pub fn circle(segments: usize) -> Self {
        let n = segments.max(3);
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                (0.5 * t.cos(), 0.5 * t.sin())
            })
            .collect();
        Self::new(Region::polygon(&pts).expect("regular polygon is simple")).expect("nonzero area")
    }

    pub fn shape(&self) -> &Region {
        &self.shape
    }

    pub fn place(&self, p: &ScaledPlacement) -> Region {
        p.apply(&self.shape)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InscribeOptions {
    pub rotation_step: f64,
    pub translation_step: f64,
    /// Keep `sx == sy`.
    pub uniform_scale: bool,
    /// Seed centers kept per rotation, ranked by clearance.
    pub max_centers: usize,
    /// Seeds refined by coordinate ascent.
    pub refine_seeds: usize,
}

impl Default for InscribeOptions {
    fn default() -> Self {
        Self {
            rotation_step: 15f64.to_radians(),
            translation_step: 0.1,
            uniform_scale: false,
            max_centers: 24,
            refine_seeds: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Inscribed {
    pub placement: ScaledPlacement,
    pub shape: Region,
    /// `K(J ∩ M) − K(J \ M)` at the returned placement.
    pub objective: f64,
}

/// Overlap with the region minus overlap with its complement.
pub fn inscribed_objective(template: &ActivityTemplate, placement: &ScaledPlacement, region: &Region) -> f64 {
    let j = template.place(placement);
    j.intersection(region).area() - j.difference(region).area()
}

pub fn largest_inscribed_shape(template: &ActivityTemplate, region: &Region) -> Result<ScaledPlacement, GeometryError> {
    largest_inscribed_shape_with(template, region, &InscribeOptions::default()).map(|r| r.placement)
}

pub fn largest_inscribed_shape_with(
    template: &ActivityTemplate,
    region: &Region,
    opts: &InscribeOptions,
) -> Result<Inscribed, GeometryError> {
    if region.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    let container = Container::new(region);
    let centers = container.seed_centers(opts.translation_step, opts.max_centers);
    if centers.is_empty() || region.area() <= 0.0 {
        let c = region.centroid().unwrap_or_default();
        let placement = ScaledPlacement::new(RigidTransform2D::new(c.x, c.y, 0.0), 0.0, 0.0);
        return Ok(Inscribed {
            placement,
            shape: Region::empty(),
            objective: 0.0,
        });
    }

    let t_area = template.shape.area();
    let steps = ((TAU / opts.rotation_step.max(1e-6)).round() as usize).max(1);
    let mut seeds: Vec<(f64, ScaledPlacement)> = Vec::new();
    for k in 0..steps {
        let theta = k as f64 * opts.rotation_step;
        let ext = rotated_extents(template, theta);
        for &c in &centers {
            let hi = container.max_scale_in_bounds(c, &ext);
            if hi <= 0.0 {
                continue;
            }
            let floor = seeds.iter().map(|s| s.0).fold(0.0, f64::max);
            if hi * hi * t_area <= floor {
                continue;
            }
            let base = RigidTransform2D::new(c.x, c.y, theta);
            let s = bisect(0.0, hi, |s| container.fits(&template.place(&ScaledPlacement::new(base, s, s))));
            if s > 0.0 {
                seeds.push((s * s * t_area, ScaledPlacement::new(base, s, s)));
            }
        }
    }
    seeds.sort_by(|a, b| b.0.total_cmp(&a.0));
    seeds.truncate(opts.refine_seeds.max(1));

    let mut best: Option<(f64, ScaledPlacement)> = None;
    for (_, seed) in seeds {
        let refined = refine(template, &container, seed, opts.uniform_scale);
        let area = refined.sx * refined.sy * t_area;
        if best.as_ref().is_none_or(|(a, _)| area > *a) {
            best = Some((area, refined));
        }
    }
    let placement = match best {
        Some((_, p)) => p,
        None => {
            let c = centers[0];
            ScaledPlacement::new(RigidTransform2D::new(c.x, c.y, 0.0), 0.0, 0.0)
        }
    };
    let shape = template.place(&placement);
    let objective = if shape.is_empty() { 0.0 } else { inscribed_objective(template, &placement, region) };
    Ok(Inscribed {
        placement,
        shape,
        objective,
    })
}

/// Template bounds at unit scale after rotation by `theta`.
#[derive(Clone, Copy)]
struct Extents {
    min: Coord<f64>,
    max: Coord<f64>,
    /// Unrotated local bounds, used as growth anchors.
    local_min: Coord<f64>,
    local_max: Coord<f64>,
}

fn rotated_extents(t: &ActivityTemplate, theta: f64) -> Extents {
    let r = RigidTransform2D::rotation(theta);
    let mut e = Extents {
        min: Coord { x: f64::INFINITY, y: f64::INFINITY },
        max: Coord { x: f64::NEG_INFINITY, y: f64::NEG_INFINITY },
        local_min: Coord { x: f64::INFINITY, y: f64::INFINITY },
        local_max: Coord { x: f64::NEG_INFINITY, y: f64::NEG_INFINITY },
    };
    for p in t.shape.vertices() {
        let q = r.rotate_vec(p);
        e.min.x = e.min.x.min(q.x);
        e.min.y = e.min.y.min(q.y);
        e.max.x = e.max.x.max(q.x);
        e.max.y = e.max.y.max(q.y);
        e.local_min.x = e.local_min.x.min(p.x);
        e.local_min.y = e.local_min.y.min(p.y);
        e.local_max.x = e.local_max.x.max(p.x);
        e.local_max.y = e.local_max.y.max(p.y);
    }
    e
}

fn bisect(mut lo: f64, mut hi: f64, fits: impl Fn(f64) -> bool) -> f64 {
    if fits(hi) {
        return hi;
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-7 * hi {
            break;
        }
    }
    lo
}

fn refine(template: &ActivityTemplate, container: &Container, start: ScaledPlacement, uniform: bool) -> ScaledPlacement {
    let theta = start.transform.theta;
    let ux = Coord { x: theta.cos(), y: theta.sin() };
    let uy = Coord { x: -theta.sin(), y: theta.cos() };
    let ext = rotated_extents(template, theta);
    let anchors_x = [0.0, ext.local_min.x, ext.local_max.x];
    let anchors_y = [0.0, ext.local_min.y, ext.local_max.y];

    let mut cur = start;
    let mut h = 0.25;
    let mut budget = 4000usize;
    while h > 1e-5 && budget > 0 {
        let mut improved = false;
        // (grow x, grow y)
        let patterns: &[(bool, bool)] = if uniform { &[(true, true)] } else { &[(true, true), (true, false), (false, true)] };
        'moves: for &(gx, gy) in patterns {
            let sx = if gx { cur.sx * (1.0 + h) } else { cur.sx };
            let sy = if gy { cur.sy * (1.0 + h) } else { cur.sy };
            let xs: &[f64] = if gx { &anchors_x } else { &anchors_x[..1] };
            let ys: &[f64] = if gy { &anchors_y } else { &anchors_y[..1] };
            for &ax in xs {
                for &ay in ys {
                    let c = cur.center() - ux * ((sx - cur.sx) * ax) - uy * ((sy - cur.sy) * ay);
                    let cand = ScaledPlacement::new(RigidTransform2D::new(c.x, c.y, theta), sx, sy);
                    budget = budget.saturating_sub(1);
                    if container.fits(&template.place(&cand)) {
                        cur = cand;
                        improved = true;
                        break 'moves;
                    }
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    cur
}

/// Region plus cached boundary edges for fast point tests.
struct Container<'a> {
    region: &'a Region,
    segs: Vec<(Coord<f64>, Coord<f64>)>,
}

impl<'a> Container<'a> {
    fn new(region: &'a Region) -> Self {
        Self {
            region,
            segs: region.segments(),
        }
    }

    fn clearance(&self, p: Coord<f64>) -> f64 {
        self.segs.iter().map(|&(a, b)| point_segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
    }

    fn inside(&self, p: Coord<f64>) -> bool {
        let mut winding = 0i32;
        for &(a, b) in &self.segs {
            if point_segment_distance(p, a, b) <= 1e-6 {
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

    fn seed_centers(&self, step: f64, keep: usize) -> Vec<Coord<f64>> {
        let Some(b) = self.region.bounds() else {
            return vec![];
        };
        let step = step.max(1e-3);
        let nx = ((b.width() / step).ceil() as usize).max(1);
        let ny = ((b.height() / step).ceil() as usize).max(1);
        let mut scored: Vec<(f64, usize, Coord<f64>)> = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                let p = Coord {
                    x: b.min.x + (i as f64 + 0.5) * b.width() / nx as f64,
                    y: b.min.y + (j as f64 + 0.5) * b.height() / ny as f64,
                };
                if self.inside(p) {
                    scored.push((self.clearance(p), j * nx + i, p));
                }
            }
        }
        if let Some(c) = self.region.centroid() {
            if self.inside(c) {
                scored.push((self.clearance(c), usize::MAX, c));
            }
        }
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        scored.truncate(keep.max(1));
        scored.into_iter().filter(|s| s.0 > SNAP).map(|s| s.2).collect()
    }

    /// Largest uniform scale keeping the rotated template's box inside the
    /// region's box.
    fn max_scale_in_bounds(&self, c: Coord<f64>, e: &Extents) -> f64 {
        let Some(b) = self.region.bounds() else {
            return 0.0;
        };
        let mut s = f64::INFINITY;
        if e.max.x > 0.0 {
            s = s.min((b.max.x - c.x) / e.max.x);
        }
        if e.min.x < 0.0 {
            s = s.min((c.x - b.min.x) / -e.min.x);
        }
        if e.max.y > 0.0 {
            s = s.min((b.max.y - c.y) / e.max.y);
        }
        if e.min.y < 0.0 {
            s = s.min((c.y - b.min.y) / -e.min.y);
        }
        if s.is_finite() {
            s.max(0.0)
        } else {
            0.0
        }
    }

    fn fits(&self, shape: &Region) -> bool {
        if shape.is_empty() {
            return true;
        }
        if !shape.vertices().all(|p| self.inside(p)) {
            return false;
        }
        let outside = shape.difference(self.region).area();
        outside <= 1e-6 * shape.area().max(1e-6)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_fills_rectangle() {
        let region = Region::rect(0.0, 0.0, 2.0, 3.0);
        let p = largest_inscribed_shape(&ActivityTemplate::square(), &region).unwrap();
        let area = p.sx * p.sy;
        assert!(area >= 0.98 * 6.0 && area <= 6.0 + 1e-6, "{area}");
    }

    #[test]
    fn uniform_square_in_l_shape() {
        let region = Region::polygon(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0), (0.0, 2.0)]).unwrap();
        let opts = InscribeOptions {
            uniform_scale: true,
            ..Default::default()
        };
        let r = largest_inscribed_shape_with(&ActivityTemplate::square(), &region, &opts).unwrap();
        assert!((r.placement.sx - r.placement.sy).abs() < 1e-12);
        assert!((r.shape.area() - 1.0).abs() < 0.02, "{}", r.shape.area());
        assert!(r.shape.difference(&region).area() < 1e-6);
    }

    #[test]
    fn circle_in_unit_square() {
        let region = Region::rect(0.0, 0.0, 1.0, 1.0);
        let opts = InscribeOptions {
            uniform_scale: true,
            ..Default::default()
        };
        let r = largest_inscribed_shape_with(&ActivityTemplate::circle(64), &region, &opts).unwrap();
        let target = std::f64::consts::FRAC_PI_4;
        assert!((r.shape.area() - target).abs() / target < 0.02, "{}", r.shape.area());
    }

    #[test]
    fn degenerate_region_gives_zero_scale() {
        let r = largest_inscribed_shape(&ActivityTemplate::square(), &Region::point(1.0, 1.0)).unwrap();
        assert_eq!((r.sx, r.sy), (0.0, 0.0));
    }

    #[test]
    fn empty_region_is_error() {
        assert!(largest_inscribed_shape(&ActivityTemplate::square(), &Region::empty()).is_err());
    }

    #[test]
    fn template_recentered() {
        let t = ActivityTemplate::new(Region::rect(2.0, 2.0, 4.0, 3.0)).unwrap();
        let c = t.shape().centroid().unwrap();
        assert!(c.x.abs() < 1e-12 && c.y.abs() < 1e-12);
        assert!(ActivityTemplate::new(Region::rect(0.0, 0.0, 1.0, 1.0).union(&Region::rect(3.0, 0.0, 4.0, 1.0))).is_err());
    }
}
