//! Slow reference computations straight from the definitions, used to
//! validate the fast paths in [`crate::body`].
//!
//! Sampling here uses chord interpolation and plain dot products rather than
//! the arc helpers the fast paths are built on.

use std::f64::consts::PI;

use crate::body::{supporting_poles, vertex_enumeration, SphericalPolygon};
use crate::error::{GeometryError, Result};
use crate::sphere::{SPoint, Vec3, ANG_TOL};

use crate::body::SUPPORT_TOL;

fn mix(a: Vec3, b: Vec3, t: f64) -> SPoint {
    (a * (1.0 - t) + b * t)
        .normalized()
        .expect("points of a hemispherical body never cancel")
}

fn center(b: &SphericalPolygon) -> Vec3 {
    b.vertices().iter().fold(Vec3::default(), |acc, v| acc + v.vec())
}

/// Boundary points (every vertex, `per_edge − 1` more per edge) and
/// `rings` shrunken copies of them toward the vertex centroid.
fn sample(b: &SphericalPolygon, per_edge: usize, rings: usize) -> Vec<SPoint> {
    let per_edge = per_edge.max(1);
    let vs = b.vertices();
    let n = vs.len();
    let mut boundary = Vec::with_capacity(n * per_edge);
    for i in 0..n {
        let (a, c) = (vs[i].vec(), vs[(i + 1) % n].vec());
        for k in 0..per_edge {
            boundary.push(mix(a, c, k as f64 / per_edge as f64));
        }
    }
    let mid = center(b);
    let mut out = boundary.clone();
    for r in 1..=rings {
        let t = r as f64 / (rings + 1) as f64;
        out.extend(boundary.iter().map(|p| mix(p.vec(), mid, t)));
    }
    out.push(mid.normalized().expect("hemispherical"));
    out
}

/// The polar set as the intersection of H(P) over about `grid²` sampled
/// points P of `b`.
pub fn brute_polar(b: &SphericalPolygon, grid: usize) -> Result<SphericalPolygon> {
    let grid = grid.max(2);
    let per_edge = (grid * grid).div_ceil(2 * b.len()).max(1);
    let poles = sample(b, per_edge, grid / 4);
    Ok(vertex_enumeration(&poles)?.body)
}

/// Width of `b` determined by H(p): the thinnest lune H(p) ∩ H(Q) over `m`
/// supporting hemispheres H(Q) that contain `b` together with H(p).
pub fn brute_width(b: &SphericalPolygon, p: SPoint, m: usize) -> Result<f64> {
    let dots = |q: SPoint| b.vertices().iter().map(move |v| v.dot(q));
    let min_dot = dots(p).fold(f64::INFINITY, f64::min);
    if !(-ANG_TOL..=SUPPORT_TOL).contains(&min_dot) {
        return Err(GeometryError::NotSupporting { min_dot });
    }
    let mut best = f64::INFINITY;
    for q in supporting_poles(b, m)? {
        if dots(q).any(|d| d < -ANG_TOL) {
            continue;
        }
        let c = p.dot(q).clamp(-1.0, 1.0);
        // H(p) ∩ H(p) and H(p) ∩ H(−p) are not lunes.
        if c.abs() >= 1.0 - 1e-15 {
            continue;
        }
        best = best.min(PI - c.acos());
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(GeometryError::NotSupporting { min_dot })
    }
}

/// Largest pairwise distance over a dense sample of `b`, about `grid` points
/// on the boundary plus interior rings.
pub fn brute_diameter(b: &SphericalPolygon, grid: usize) -> f64 {
    let per_edge = grid.div_ceil(b.len()).max(1);
    let pts = sample(b, per_edge, 2);
    let mut best: f64 = 0.0;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            best = best.max(p.dot(*q).clamp(-1.0, 1.0).acos());
        }
    }
    best
}
