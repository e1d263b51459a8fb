use std::f64::consts::FRAC_PI_2;

use super::{polar, signed_dist, SphericalPolygon};
use crate::error::{GeometryError, Result};
use crate::sphere::{arc_length, arc_point, SPoint, ANG_TOL};

/// How close to the boundary of H(P) the body must come for H(P) to count
/// as supporting.
pub const SUPPORT_TOL: f64 = 1e-6;

/// Width samples over supporting hemispheres.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthReport {
    pub samples: Vec<(SPoint, f64)>,
    pub min_width: f64,
    pub max_width: f64,
    pub target: f64,
    pub tol: f64,
    pub verdict: bool,
}

impl WidthReport {
    /// Largest `|width − target|` over the samples.
    pub fn deviation(&self) -> f64 {
        (self.max_width - self.target)
            .abs()
            .max((self.min_width - self.target).abs())
    }
}

/// Points along the boundary of `poly`: every vertex, plus extra points on
/// each edge allotted by arc length so the total is `max(m, vertex count)`.
pub fn boundary_samples(poly: &SphericalPolygon, m: usize) -> Vec<SPoint> {
    let n = poly.len();
    let lengths: Vec<f64> = poly.edges().map(|(a, b)| arc_length(a, b)).collect();
    let total: f64 = lengths.iter().sum();
    let extra = m.saturating_sub(n);

    // Largest-remainder apportionment of the extra points.
    let quotas: Vec<f64> = lengths.iter().map(|l| extra as f64 * l / total).collect();
    let mut counts: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let ri = quotas[i] - quotas[i].floor();
        let rj = quotas[j] - quotas[j].floor();
        rj.total_cmp(&ri).then(i.cmp(&j))
    });
    let assigned: usize = counts.iter().sum();
    for &i in order.iter().take(extra - assigned) {
        counts[i] += 1;
    }

    let mut out = Vec::with_capacity(n + extra);
    for (i, (a, b)) in poly.edges().enumerate() {
        out.push(a);
        let c = counts[i];
        for j in 1..=c {
            let t = j as f64 / (c + 1) as f64;
            out.push(arc_point(a, b, t).expect("edges are minor arcs"));
        }
    }
    out
}

/// Poles of `m` (or more) supporting hemispheres, spread along the boundary
/// of the polar body. H(P) contains `b` exactly when P lies in the polar
/// body, and supports it when P is on that body's boundary.
pub fn supporting_poles(b: &SphericalPolygon, m: usize) -> Result<Vec<SPoint>> {
    Ok(boundary_samples(&polar(b)?, m))
}

/// Supporting poles where the width of a polygon changes behavior: the edge
/// poles of `b` (polar vertices) and the midpoints of each vertex's normal
/// cone (polar edge midpoints).
pub fn critical_poles(b: &SphericalPolygon) -> Result<Vec<SPoint>> {
    let p = polar(b)?;
    let mut out = Vec::with_capacity(2 * p.len());
    for (x, y) in p.edges() {
        out.push(x);
        out.push(arc_point(x, y, 0.5).expect("edges are minor arcs"));
    }
    Ok(out)
}

fn check_support(b: &SphericalPolygon, p: SPoint) -> Result<()> {
    let min_dot = b
        .vertices()
        .iter()
        .map(|v| v.dot(p))
        .fold(f64::INFINITY, f64::min);
    if !(-ANG_TOL..=SUPPORT_TOL).contains(&min_dot) {
        return Err(GeometryError::NotSupporting { min_dot });
    }
    Ok(())
}

/// Width of `b` determined by the supporting hemisphere H(p).
///
/// With r the distance from p to the boundary of `b`: π/2 − r when p lies
/// outside the body, π/2 on the boundary, π/2 + r inside.
pub fn width_at(b: &SphericalPolygon, p: SPoint) -> Result<f64> {
    check_support(b, p)?;
    Ok(width_unchecked(b, p))
}

fn width_unchecked(b: &SphericalPolygon, p: SPoint) -> f64 {
    let d = signed_dist(b, p);
    if d > ANG_TOL {
        FRAC_PI_2 - d
    } else if d < -ANG_TOL {
        FRAC_PI_2 + d.abs()
    } else {
        FRAC_PI_2
    }
}

/// Widths at `m` sampled supporting poles plus all critical poles.
pub fn width_report(b: &SphericalPolygon, m: usize, target: f64, tol: f64) -> Result<WidthReport> {
    if m < 64 {
        return Err(GeometryError::InvalidParameter(format!(
            "width report needs at least 64 poles, got {m}"
        )));
    }
    let p = polar(b)?;
    let mut poles = boundary_samples(&p, m);
    for (x, y) in p.edges() {
        poles.push(arc_point(x, y, 0.5).expect("edges are minor arcs"));
    }
    let samples: Vec<(SPoint, f64)> = poles.into_iter().map(|q| (q, width_unchecked(b, q))).collect();
    let min_width = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    let max_width = samples.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let verdict = samples.iter().all(|s| (s.1 - target).abs() <= tol);
    Ok(WidthReport {
        samples,
        min_width,
        max_width,
        target,
        tol,
        verdict,
    })
}

/// Largest distance between two points of `b`.
///
/// Pairs of vertices, plus each vertex against the farthest point of every
/// edge (which is interior to the edge only when the edge passes the point
/// of its great circle opposite the vertex).
pub fn diameter(b: &SphericalPolygon) -> f64 {
    let vs = b.vertices();
    let mut best = 0.0f64;
    for (i, &p) in vs.iter().enumerate() {
        for &q in &vs[i + 1..] {
            best = best.max(arc_length(p, q));
        }
        for (k, (a, c)) in b.edges().enumerate() {
            let n = b.edge_poles()[k].vec();
            let s = p.dot(b.edge_poles()[k]);
            let far = -(p.vec() - n * s);
            let inside =
                far.norm() > 1e-15 && a.vec().cross(far).dot(n) >= 0.0 && far.cross(c.vec()).dot(n) >= 0.0;
            if inside {
                let far = far.normalized().expect("nonzero");
                best = best.max(arc_length(p, far));
            }
        }
    }
    best
}
