//! Planar Wulff shapes: construction from a sampled support function, the
//! radial function, the dual Wulff shape, and Euclidean comparisons.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::planar::{convex_hull_indices, intersect_half_planes, HalfPlane};
use crate::sphere::{invert_polar_plot, PlanePoint};

/// Minimum margin between the origin and every edge line of a Wulff shape.
pub const ORIGIN_MARGIN: f64 = 1e-9;

/// Agreement bound between the two dual constructions at grid 720.
pub const DUAL_XCHECK_TOL: f64 = 5e-3;

/// Default angular grid for support-function sampling.
pub const DEFAULT_GRID: usize = 720;

/// Cross-check tolerance for a given grid; shrinks quadratically.
pub fn dual_xcheck_tol(grid: usize) -> f64 {
    let ratio = DEFAULT_GRID as f64 / grid.max(1) as f64;
    DUAL_XCHECK_TOL * ratio * ratio
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportPreset {
    Disc,
    PolygonGauge,
    Reuleaux,
    #[default]
    Custom,
}

/// A positive function on the unit circle sampled at θ_j = 2πj/n.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportFunction {
    values: Vec<f64>,
    preset: SupportPreset,
}

impl SupportFunction {
    pub const MIN_SAMPLES: usize = 8;

    pub fn new(values: Vec<f64>, preset: SupportPreset) -> Result<Self> {
        if values.len() < Self::MIN_SAMPLES {
            return Err(GeometryError::TooFewSamples {
                got: values.len(),
                min: Self::MIN_SAMPLES,
            });
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(GeometryError::NonPositiveSupport { index, value });
        }
        Ok(SupportFunction { values, preset })
    }

    /// Samples `f` on the uniform grid of `n` directions.
    pub fn from_fn(n: usize, preset: SupportPreset, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..n).map(|j| f(grid_angle(j, n))).collect();
        SupportFunction::new(values, preset)
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        SupportFunction::from_fn(n, SupportPreset::Disc, |_| c)
    }

    pub fn n_samples(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn preset(&self) -> SupportPreset {
        self.preset
    }

    pub fn angle(&self, j: usize) -> f64 {
        grid_angle(j, self.values.len())
    }
}

fn grid_angle(j: usize, n: usize) -> f64 {
    TAU * j as f64 / n as f64
}

/// A strictly convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<PlanePoint>,
}

impl ConvexPolygon {
    /// Validates and normalizes a CCW vertex cycle: near-duplicate and
    /// collinear vertices are removed, anything non-convex is rejected.
    pub fn new(vertices: Vec<PlanePoint>) -> Result<Self> {
        if vertices.iter().any(|p| !(p.u.is_finite() && p.v.is_finite())) {
            return Err(GeometryError::InvalidParameter("non-finite vertex".into()));
        }
        let scale = vertices.iter().map(|p| p.norm()).fold(1.0f64, f64::max);
        let mut vs = vertices;
        loop {
            let before = vs.len();
            dedup_cyclic(&mut vs, 1e-9 * scale);
            drop_collinear(&mut vs)?;
            if vs.len() == before || vs.len() < 3 {
                break;
            }
        }
        if vs.len() < 3 {
            return Err(GeometryError::TooFewVertices { got: vs.len() });
        }
        let n = vs.len();
        let mut total_turn = 0.0;
        for i in 0..n {
            let e0 = vs[i] - vs[(i + n - 1) % n];
            let e1 = vs[(i + 1) % n] - vs[i];
            if e0.cross(e1) <= 0.0 {
                return Err(GeometryError::NotConvex { index: i });
            }
            total_turn += e0.cross(e1).atan2(e0.dot(e1));
        }
        if (total_turn - TAU).abs() > 1e-6 {
            return Err(GeometryError::NotConvex { index: 0 });
        }
        Ok(ConvexPolygon { vertices: vs })
    }

    /// Strict convex hull of arbitrary points.
    pub fn hull_of(points: &[PlanePoint]) -> Result<Self> {
        let idx = convex_hull_indices(points);
        ConvexPolygon::new(idx.into_iter().map(|i| points[i]).collect())
    }

    pub fn vertices(&self) -> &[PlanePoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (PlanePoint, PlanePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Minimum signed distance from the origin to the edge lines; positive
    /// when the origin is strictly inside.
    pub fn origin_margin(&self) -> f64 {
        self.edges()
            .map(|(a, b)| (b - a).cross(-a) / (b - a).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_wulff_shape(&self) -> bool {
        self.origin_margin() > ORIGIN_MARGIN
    }

    pub fn ensure_wulff(&self) -> Result<()> {
        let margin = self.origin_margin();
        if margin > ORIGIN_MARGIN {
            Ok(())
        } else {
            Err(GeometryError::OriginNotInterior { margin })
        }
    }

    /// Tight support function `max_v v . (cos θ, sin θ)`.
    pub fn support(&self, theta: f64) -> f64 {
        let d = PlanePoint::polar(1.0, theta);
        self.vertices
            .iter()
            .map(|v| v.dot(d))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, x: PlanePoint) -> bool {
        self.edges().all(|(a, b)| (b - a).cross(x - a) >= 0.0)
    }

    /// Euclidean distance from `x` to the polygon (0 inside).
    pub fn distance_to(&self, x: PlanePoint) -> f64 {
        if self.contains(x) {
            return 0.0;
        }
        self.edges()
            .map(|(a, b)| segment_distance(x, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn area(&self) -> f64 {
        0.5 * self.edges().map(|(a, b)| a.cross(b)).sum::<f64>()
    }

    pub fn negated(&self) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| -v).collect(),
        }
    }

    pub fn rotated(&self, angle: f64) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|v| v.rotated(angle)).collect(),
        }
    }

    pub fn translated(&self, d: PlanePoint) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| v + d).collect(),
        }
    }

    /// Exterior turning angle at each vertex, in (0, π).
    pub fn turning_angles(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let e0 = self.vertices[i] - self.vertices[(i + n - 1) % n];
                let e1 = self.vertices[(i + 1) % n] - self.vertices[i];
                e0.cross(e1).atan2(e0.dot(e1))
            })
            .collect()
    }
}

fn dedup_cyclic(vs: &mut Vec<PlanePoint>, tol: f64) {
    let mut out: Vec<PlanePoint> = Vec::with_capacity(vs.len());
    for &v in vs.iter() {
        if out.last().is_none_or(|l| l.dist(v) > tol) {
            out.push(v);
        }
    }
    while out.len() > 1 && out[0].dist(out[out.len() - 1]) <= tol {
        out.pop();
    }
    *vs = out;
}

fn drop_collinear(vs: &mut Vec<PlanePoint>) -> Result<()> {
    let n = vs.len();
    if n < 3 {
        return Ok(());
    }
    let mut keep = vec![true; n];
    for i in 0..n {
        let e0 = vs[i] - vs[(i + n - 1) % n];
        let e1 = vs[(i + 1) % n] - vs[i];
        let sin = e0.cross(e1) / (e0.norm() * e1.norm());
        if sin.abs() <= 1e-12 {
            if e0.dot(e1) < 0.0 {
                return Err(GeometryError::NotConvex { index: i });
            }
            keep[i] = false;
        }
    }
    let mut i = 0;
    vs.retain(|_| {
        i += 1;
        keep[i - 1]
    });
    Ok(())
}

fn segment_distance(x: PlanePoint, a: PlanePoint, b: PlanePoint) -> f64 {
    let e = b - a;
    let len2 = e.dot(e);
    let t = if len2 > 0.0 {
        ((x - a).dot(e) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    x.dist(a + e * t)
}

/// Intersection of the sampled half-planes `x . θ_j <= γ_j`.
pub fn build_wulff(g: &SupportFunction) -> Result<ConvexPolygon> {
    let planes: Vec<HalfPlane> = g
        .values()
        .iter()
        .enumerate()
        .map(|(j, &h)| HalfPlane::new(PlanePoint::polar(1.0, g.angle(j)), h))
        .collect();
    let cut = intersect_half_planes(&planes)?;
    let poly = ConvexPolygon::new(cut.vertices).map_err(|_| GeometryError::DegenerateIntersection)?;
    poly.ensure_wulff()
        .map_err(|_| GeometryError::DegenerateIntersection)?;
    Ok(poly)
}

/// Distance from the origin to the boundary along the ray at angle `theta`.
pub fn radial_width(w: &ConvexPolygon, theta: f64) -> Result<f64> {
    w.ensure_wulff()?;
    Ok(radial_unchecked(w, theta))
}

fn radial_unchecked(w: &ConvexPolygon, theta: f64) -> f64 {
    let d = PlanePoint::polar(1.0, theta);
    w.edges()
        .filter_map(|(a, b)| {
            let e = b - a;
            // Outward normal of a CCW edge, unnormalized; h = n . a.
            let n = PlanePoint::new(e.v, -e.u);
            let dn = d.dot(n);
            (dn > 0.0).then(|| n.dot(a) / dn)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Samples γ̄(θ_j) = 1 / w(θ_j + π).
pub fn dual_support(w: &ConvexPolygon, grid: usize) -> Result<SupportFunction> {
    w.ensure_wulff()?;
    let values = (0..grid)
        .map(|j| 1.0 / radial_unchecked(w, grid_angle(j, grid) + PI))
        .collect();
    SupportFunction::new(values, SupportPreset::Custom)
}

/// Both constructions of the dual Wulff shape and their disagreement.
#[derive(Debug, Clone)]
pub struct DualPair {
    /// Wulff shape of the dual support function.
    pub via_support: ConvexPolygon,
    /// Convex hull of the inverted graph of the support function.
    pub via_hull: ConvexPolygon,
    pub gap: f64,
}

/// Computes the dual both ways without judging the gap.
pub fn dual_constructions(w: &ConvexPolygon, grid: usize) -> Result<DualPair> {
    let via_support = build_wulff(&dual_support(w, grid)?)?;
    let inverted = (0..grid)
        .map(|j| {
            let theta = grid_angle(j, grid);
            invert_polar_plot(PlanePoint::polar(w.support(theta), theta))
        })
        .collect::<Result<Vec<_>>>()?;
    let via_hull = ConvexPolygon::hull_of(&inverted)?;
    let gap = hausdorff_planar(&via_support, &via_hull);
    Ok(DualPair {
        via_support,
        via_hull,
        gap,
    })
}

/// The dual Wulff shape, cross-checked against the hull characterization.
///
/// Sampling error grows with the size of the dual (a long edge between
/// two grid directions bulges by about length × spacing²), so the bound is
/// relative to the dual's circumradius once that exceeds 1.
pub fn dual_wulff(w: &ConvexPolygon, grid: usize) -> Result<ConvexPolygon> {
    let pair = dual_constructions(w, grid)?;
    let radius = pair
        .via_hull
        .vertices()
        .iter()
        .map(|v| v.norm())
        .fold(1.0f64, f64::max);
    let tol = dual_xcheck_tol(grid) * radius;
    if pair.gap > tol {
        return Err(GeometryError::DualMismatch { gap: pair.gap, tol });
    }
    Ok(pair.via_support)
}

/// Symmetric Hausdorff distance between convex polygons.
///
/// The distance to a convex set is a convex function, so its maximum over a
/// convex polygon is attained at a vertex.
pub fn hausdorff_planar(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    let one_way = |p: &ConvexPolygon, q: &ConvexPolygon| {
        p.vertices()
            .iter()
            .map(|&v| q.distance_to(v))
            .fold(0.0f64, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Result of a rotation search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Congruence {
    pub congruent: bool,
    /// Rotation (about the origin, in [0, 2π)) applied to `b` to best match `a`.
    pub angle: f64,
    /// Hausdorff distance at that rotation.
    pub distance: f64,
}

/// Whether some rotation about the origin maps `b` onto `a` within `tol`.
pub fn congruent_up_to_rotation(a: &ConvexPolygon, b: &ConvexPolygon, tol: f64) -> Congruence {
    let at = |theta: f64| hausdorff_planar(a, &b.rotated(theta));
    let scale = a
        .vertices()
        .iter()
        .chain(b.vertices())
        .map(|v| v.norm())
        .fold(1.0f64, f64::max);

    let pivot = a
        .vertices()
        .iter()
        .copied()
        .max_by(|p, q| p.norm().total_cmp(&q.norm()))
        .expect("polygons have vertices");
    let slack = tol.max(0.02 * pivot.norm());
    let mut candidates: Vec<f64> = b
        .vertices()
        .iter()
        .filter(|v| (v.norm() - pivot.norm()).abs() <= slack)
        .map(|v| normalize_angle(pivot.angle() - v.angle()))
        .collect();
    if candidates.is_empty() {
        candidates = b
            .vertices()
            .iter()
            .map(|v| normalize_angle(pivot.angle() - v.angle()))
            .collect();
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup_by(|x, y| (*x - *y).abs() < 1e-12);

    // Rank candidates cheaply on large inputs, exactly on small ones.
    let mut scored: Vec<(f64, f64)> =
        if a.len() * b.len() <= 4096 || !a.is_wulff_shape() || !b.is_wulff_shape() {
            candidates.iter().map(|&t| (at(t), t)).collect()
        } else {
            let profile = RadialProfile::new(a, b);
            candidates.iter().map(|&t| (profile.mismatch(t), t)).collect()
        };
    scored.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    let step = PI / a.len().max(b.len()) as f64;

    let mut refined: Vec<(f64, f64)> = scored
        .iter()
        .take(4)
        .map(|&(_, t)| {
            let d = at(t);
            if d <= 1e-12 * scale {
                return (d, t);
            }
            let (tr, dr) = golden_minimize(&at, t - step, t + step, 1e-12);
            if dr < d {
                (dr, normalize_angle(tr))
            } else {
                (d, t)
            }
        })
        .collect();
    refined.sort_by(|x, y| x.0.total_cmp(&y.0));
    let best = refined[0].0;
    let tie = best + 1e-9 * scale;
    let (distance, angle) = refined
        .iter()
        .filter(|(d, _)| *d <= tie)
        .copied()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("at least one candidate");
    Congruence {
        congruent: distance <= tol,
        angle,
        distance,
    }
}

fn normalize_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if TAU - r < 1e-12 {
        0.0
    } else {
        r
    }
}

fn golden_minimize(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Radial functions on fixed grids, for fast rotation scoring.
struct RadialProfile {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl RadialProfile {
    const COARSE: usize = 512;
    const FINE: usize = 4096;

    fn new(a: &ConvexPolygon, b: &ConvexPolygon) -> Self {
        RadialProfile {
            a: (0..Self::COARSE)
                .map(|k| radial_unchecked(a, grid_angle(k, Self::COARSE)))
                .collect(),
            b: (0..Self::FINE)
                .map(|k| radial_unchecked(b, grid_angle(k, Self::FINE)))
                .collect(),
        }
    }

    fn b_at(&self, phi: f64) -> f64 {
        let x = phi.rem_euclid(TAU) / TAU * Self::FINE as f64;
        let i = x.floor() as usize % Self::FINE;
        let t = x - x.floor();
        self.b[i] * (1.0 - t) + self.b[(i + 1) % Self::FINE] * t
    }

    /// Largest radial discrepancy between `a` and `b` rotated by `theta`.
    fn mismatch(&self, theta: f64) -> f64 {
        self.a
            .iter()
            .enumerate()
            .map(|(k, &ra)| (ra - self.b_at(grid_angle(k, Self::COARSE) - theta)).abs())
            .fold(0.0, f64::max)
    }
}

/// Whether `w` and `−w` agree within `tol`.
pub fn is_centrally_symmetric(w: &ConvexPolygon, tol: f64) -> bool {
    hausdorff_planar(w, &w.negated()) <= tol
}
