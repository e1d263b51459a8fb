//! Spherical convex bodies on S², represented as spherical polygons.
//!
//! Every body here is hemispherical: it sits strictly inside the open
//! hemisphere around a witness pole. Gnomonic projection through that pole
//! turns great-circle arcs into segments, so hulls and hemisphere
//! intersections reduce to the planar algorithms in [`crate::planar`].

mod duality;
mod width;

pub use duality::{
    is_self_dual, polytope_selfdual_criterion, PolytopeReport, SelfDuality, SELF_DUAL_TOL_EXACT,
    SELF_DUAL_TOL_SAMPLED, VERDICT_SLACK,
};
pub use width::{
    boundary_samples, critical_poles, diameter, supporting_poles, width_at, width_report, WidthReport,
    SUPPORT_TOL,
};

use std::f64::consts::TAU;

use crate::error::{GeometryError, Result};
use crate::planar::{convex_hull_indices, intersect_half_planes, HalfPlane};
use crate::sphere::{
    any_perpendicular, arc_point, central_project, lift_to_sphere, PlanePoint, Rotation3, SPoint, Vec3,
    ANG_TOL,
};
use crate::wulff::ConvexPolygon;

/// Interior subdivisions per edge when sampling boundaries for Hausdorff
/// distances.
pub const ARC_GRID: usize = 16;

/// Orthonormal frame `(e1, e2, pole)` for gnomonic projection through `pole`.
#[derive(Debug, Clone, Copy)]
pub struct GnomonicFrame {
    e1: Vec3,
    e2: Vec3,
    pole: SPoint,
}

impl GnomonicFrame {
    pub fn new(pole: SPoint) -> Self {
        let e1 = any_perpendicular(pole).vec();
        let e2 = pole.vec().cross(e1);
        GnomonicFrame { e1, e2, pole }
    }

    pub fn pole(&self) -> SPoint {
        self.pole
    }

    /// Only meaningful for points with `p . pole > 0`.
    pub fn project(&self, p: SPoint) -> PlanePoint {
        let h = p.dot(self.pole);
        PlanePoint::new(p.vec().dot(self.e1) / h, p.vec().dot(self.e2) / h)
    }

    pub fn lift(&self, x: PlanePoint) -> SPoint {
        (self.e1 * x.u + self.e2 * x.v + self.pole.vec())
            .normalized()
            .expect("pole component is 1")
    }

    /// Coefficients of `q . x` in projected coordinates, up to the positive
    /// factor `x . pole`: `q . x ∝ a u + b v + c`.
    fn linear_form(&self, q: SPoint) -> (f64, f64, f64) {
        (q.vec().dot(self.e1), q.vec().dot(self.e2), q.dot(self.pole))
    }
}

/// A hemispherical spherical convex polygon with CCW vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPolygon {
    vertices: Vec<SPoint>,
    edge_poles: Vec<SPoint>,
    witness: SPoint,
}

impl SphericalPolygon {
    /// Uses the normalized vertex centroid as the witness pole.
    pub fn new(vertices: Vec<SPoint>) -> Result<Self> {
        let witness = centroid(&vertices)?;
        SphericalPolygon::with_witness(vertices, witness)
    }

    pub fn with_witness(vertices: Vec<SPoint>, witness: SPoint) -> Result<Self> {
        let margin = vertices
            .iter()
            .map(|v| v.dot(witness))
            .fold(f64::INFINITY, f64::min);
        if !(margin > ANG_TOL) {
            return Err(GeometryError::NotHemispherical { margin });
        }
        let mut vs = vertices;
        loop {
            let before = vs.len();
            dedup_cyclic(&mut vs);
            drop_collinear(&mut vs)?;
            if vs.len() == before || vs.len() < 3 {
                break;
            }
        }
        if vs.len() < 3 {
            return Err(GeometryError::TooFewVertices { got: vs.len() });
        }
        let n = vs.len();
        for i in 0..n {
            let det = vs[(i + n - 1) % n]
                .vec()
                .cross(vs[i].vec())
                .dot(vs[(i + 1) % n].vec());
            if det <= 0.0 {
                return Err(GeometryError::NotConvex { index: i });
            }
        }
        // Left turns everywhere; also require a simple (winding-one) cycle.
        let frame = GnomonicFrame::new(witness);
        let flat: Vec<PlanePoint> = vs.iter().map(|&v| frame.project(v)).collect();
        let total_turn: f64 = (0..n)
            .map(|i| {
                let e0 = flat[i] - flat[(i + n - 1) % n];
                let e1 = flat[(i + 1) % n] - flat[i];
                e0.cross(e1).atan2(e0.dot(e1))
            })
            .sum();
        if (total_turn - TAU).abs() > 1e-6 {
            return Err(GeometryError::NotConvex { index: 0 });
        }
        let edge_poles = (0..n)
            .map(|i| {
                vs[i]
                    .vec()
                    .cross(vs[(i + 1) % n].vec())
                    .normalized()
                    .expect("distinct, non-antipodal vertices")
            })
            .collect();
        Ok(SphericalPolygon {
            vertices: vs,
            edge_poles,
            witness,
        })
    }

    pub fn vertices(&self) -> &[SPoint] {
        &self.vertices
    }

    /// Inward pole of each edge `(v_i, v_{i+1})`; the body is the
    /// intersection of the hemispheres they define.
    pub fn edge_poles(&self) -> &[SPoint] {
        &self.edge_poles
    }

    pub fn witness(&self) -> SPoint {
        self.witness
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (SPoint, SPoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn contains(&self, p: SPoint) -> bool {
        self.edge_poles.iter().all(|n| n.dot(p) >= -ANG_TOL)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| crate::sphere::arc_length(a, b)).sum()
    }

    pub fn rotated(&self, r: &Rotation3) -> Result<SphericalPolygon> {
        SphericalPolygon::with_witness(
            self.vertices.iter().map(|&v| r.apply(v)).collect(),
            r.apply(self.witness),
        )
    }

    /// Vertices plus `ARC_GRID − 1` interior points on every edge.
    pub fn boundary_grid(&self) -> Vec<SPoint> {
        let mut out = Vec::with_capacity(self.len() * ARC_GRID);
        for (a, b) in self.edges() {
            out.push(a);
            for k in 1..ARC_GRID {
                out.push(arc_point(a, b, k as f64 / ARC_GRID as f64).expect("edges are minor arcs"));
            }
        }
        out
    }
}

fn centroid(points: &[SPoint]) -> Result<SPoint> {
    let sum = points.iter().fold(Vec3::default(), |acc, p| acc + p.vec());
    sum.normalized()
        .ok_or(GeometryError::NotHemispherical { margin: 0.0 })
}

fn dedup_cyclic(vs: &mut Vec<SPoint>) {
    let close = |a: SPoint, b: SPoint| (a.vec() - b.vec()).norm() <= 1e-12;
    let mut out: Vec<SPoint> = Vec::with_capacity(vs.len());
    for &v in vs.iter() {
        if out.last().is_none_or(|&l| !close(l, v)) {
            out.push(v);
        }
    }
    while out.len() > 1 && close(out[0], out[out.len() - 1]) {
        out.pop();
    }
    *vs = out;
}

fn drop_collinear(vs: &mut Vec<SPoint>) -> Result<()> {
    let n = vs.len();
    if n < 3 {
        return Ok(());
    }
    let mut keep = vec![true; n];
    for i in 0..n {
        let (a, b, c) = (vs[(i + n - 1) % n].vec(), vs[i].vec(), vs[(i + 1) % n].vec());
        let ab = a.cross(b);
        let bc = b.cross(c);
        let sin = ab.cross(bc).dot(b) / (ab.norm() * bc.norm());
        if sin.abs() <= 1e-12 {
            if ab.dot(bc) < 0.0 {
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

/// The spherical body induced by a Wulff shape: every vertex lifted from
/// the plane z = 1 onto S².
pub fn lift_body(w: &ConvexPolygon) -> Result<SphericalPolygon> {
    w.ensure_wulff()?;
    SphericalPolygon::with_witness(
        w.vertices().iter().map(|&x| lift_to_sphere(x)).collect(),
        SPoint::NORTH,
    )
}

/// Central projection of a body in the open upper hemisphere back to the plane.
pub fn project_body(b: &SphericalPolygon) -> Result<ConvexPolygon> {
    if let Some(v) = b.vertices().iter().find(|v| v.z() <= ANG_TOL) {
        return Err(GeometryError::EquatorOrBelow { z: v.z() });
    }
    let flat = b
        .vertices()
        .iter()
        .map(|&v| central_project(v))
        .collect::<Result<Vec<_>>>()?;
    ConvexPolygon::new(flat)
}

/// Spherical convex hull of a hemispherical point set.
pub fn s_conv(points: &[SPoint]) -> Result<SphericalPolygon> {
    s_conv_around(points, centroid(points)?)
}

/// Spherical convex hull, projecting through `witness`.
fn s_conv_around(points: &[SPoint], witness: SPoint) -> Result<SphericalPolygon> {
    let margin = points
        .iter()
        .map(|p| p.dot(witness))
        .fold(f64::INFINITY, f64::min);
    if !(margin > ANG_TOL) {
        return Err(GeometryError::NotHemispherical { margin });
    }
    let frame = GnomonicFrame::new(witness);
    let flat: Vec<PlanePoint> = points.iter().map(|&p| frame.project(p)).collect();
    let hull = convex_hull_indices(&flat);
    SphericalPolygon::with_witness(hull.into_iter().map(|i| points[i]).collect(), witness)
}

/// The spherical polar set: the intersection of H(P) over all P in `b`.
///
/// For a polygon this is the polygon whose vertices are the edge poles.
/// Every edge pole has positive dot with each interior point of `b`, so the
/// witness of `b` serves for its polar as well.
pub fn polar(b: &SphericalPolygon) -> Result<SphericalPolygon> {
    s_conv_around(b.edge_poles(), b.witness())
}

/// Distance from `p` to the boundary of `b`, negative inside.
pub fn signed_dist(b: &SphericalPolygon, p: SPoint) -> f64 {
    let d = boundary_distance(b, p);
    if b.edge_poles.iter().all(|n| n.dot(p) >= 0.0) {
        -d
    } else {
        d
    }
}

/// Distance from `p` to the body (0 inside).
pub fn distance_to_body(b: &SphericalPolygon, p: SPoint) -> f64 {
    signed_dist(b, p).max(0.0)
}

enum Nearest {
    Edge(f64),
    Vertex(SPoint),
}

fn boundary_distance(b: &SphericalPolygon, p: SPoint) -> f64 {
    // Features are ranked by the cosine of their distance; the winner's
    // distance is then evaluated with a formula that stays accurate near 0.
    let pv = p.vec();
    let mut best_cos = f64::NEG_INFINITY;
    let mut best = Nearest::Vertex(b.vertices[0]);
    for (i, (a, c)) in b.edges().enumerate() {
        let n = b.edge_poles[i];
        let s = p.dot(n);
        let q = pv - n.vec() * s;
        let within =
            q.norm() > 1e-15 && a.vec().cross(q).dot(n.vec()) >= 0.0 && q.cross(c.vec()).dot(n.vec()) >= 0.0;
        if within {
            let cos = (1.0 - s * s).max(0.0).sqrt();
            if cos > best_cos {
                best_cos = cos;
                best = Nearest::Edge(s);
            }
        } else {
            let cos = p.dot(a);
            if cos > best_cos {
                best_cos = cos;
                best = Nearest::Vertex(a);
            }
        }
    }
    match best {
        Nearest::Edge(s) => s.abs().min(1.0).asin(),
        Nearest::Vertex(v) => crate::sphere::arc_length(p, v),
    }
}

/// Symmetric spherical Hausdorff distance, measured from the refined
/// boundary grid of each body to the other body.
pub fn hausdorff_spherical(a: &SphericalPolygon, b: &SphericalPolygon) -> f64 {
    let one_way = |x: &SphericalPolygon, y: &SphericalPolygon| {
        x.boundary_grid()
            .into_iter()
            .map(|p| distance_to_body(y, p))
            .fold(0.0f64, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Result of intersecting finitely many hemispheres.
#[derive(Debug, Clone)]
pub struct VertexEnumeration {
    pub body: SphericalPolygon,
    /// Indices of poles whose hemisphere contributes no edge.
    pub redundant: Vec<usize>,
}

/// The spherical polygon ⋂ H(P_i).
pub fn vertex_enumeration(poles: &[SPoint]) -> Result<VertexEnumeration> {
    let witness = centroid(poles).map_err(|_| GeometryError::EmptyOrLowerDimensional)?;
    if poles.iter().any(|p| !(p.dot(witness) > ANG_TOL)) {
        return Err(GeometryError::EmptyOrLowerDimensional);
    }
    let frame = GnomonicFrame::new(witness);
    let planes: Vec<HalfPlane> = poles
        .iter()
        .map(|&p| {
            let (a, b, c) = frame.linear_form(p);
            HalfPlane::new(PlanePoint::new(-a, -b), c)
        })
        .collect();
    let cut = intersect_half_planes(&planes).map_err(|_| GeometryError::EmptyOrLowerDimensional)?;
    let k = cut.lines.len();
    let corners: Vec<SPoint> = (0..k)
        .map(|i| {
            let v = poles[cut.lines[i]]
                .vec()
                .cross(poles[cut.lines[(i + 1) % k]].vec());
            let v = if v.dot(witness.vec()) < 0.0 { -v } else { v };
            v.normalized().ok_or(GeometryError::EmptyOrLowerDimensional)
        })
        .collect::<Result<_>>()?;

    // A surviving line whose two corners coincide only touches the body.
    let mut active = vec![false; poles.len()];
    for i in 0..k {
        let prev = corners[(i + k - 1) % k];
        if (prev.vec() - corners[i].vec()).norm() > 1e-12 {
            active[cut.lines[i]] = true;
        }
    }
    let redundant = (0..poles.len()).filter(|&i| !active[i]).collect();
    let body = SphericalPolygon::with_witness(corners, witness)
        .map_err(|_| GeometryError::EmptyOrLowerDimensional)?;
    Ok(VertexEnumeration { body, redundant })
}
