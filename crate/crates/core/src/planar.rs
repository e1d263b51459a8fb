//! Planar primitives shared by the Wulff and spherical modules: half-plane
//! intersection and convex hull.

use std::collections::VecDeque;
use std::f64::consts::PI;

use crate::error::{GeometryError, Result};
use crate::sphere::PlanePoint;

/// The closed half-plane `normal . x <= offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub normal: PlanePoint,
    pub offset: f64,
}

impl HalfPlane {
    pub fn new(normal: PlanePoint, offset: f64) -> Self {
        HalfPlane { normal, offset }
    }

    /// Signed slack; negative means the point violates the constraint.
    pub fn slack(&self, x: PlanePoint) -> f64 {
        (self.offset - self.normal.dot(x)) / self.normal.norm()
    }
}

/// Bounded intersection of half-planes.
///
/// `lines` lists the active constraints in counter-clockwise order of their
/// boundary directions; `vertices[k]` is where `lines[k]` meets
/// `lines[(k + 1) % n]`.
#[derive(Debug, Clone)]
pub struct HalfPlaneCut {
    pub lines: Vec<usize>,
    pub vertices: Vec<PlanePoint>,
}

#[derive(Debug, Clone, Copy)]
struct Line {
    point: PlanePoint,
    dir: PlanePoint,
    angle: f64,
    index: usize,
}

impl Line {
    fn from_half_plane(h: &HalfPlane, index: usize) -> Option<Line> {
        let n2 = h.normal.dot(h.normal);
        if !(n2 > 0.0) || !h.offset.is_finite() {
            return None;
        }
        let len = n2.sqrt();
        let dir = PlanePoint::new(-h.normal.v / len, h.normal.u / len);
        Some(Line {
            point: h.normal * (h.offset / n2),
            dir,
            angle: dir.angle(),
            index,
        })
    }

    fn side(&self, x: PlanePoint) -> f64 {
        self.dir.cross(x - self.point)
    }

    fn meet(&self, o: &Line) -> Option<PlanePoint> {
        let denom = self.dir.cross(o.dir);
        if denom.abs() < 1e-15 {
            return None;
        }
        let t = (o.point - self.point).cross(o.dir) / denom;
        Some(self.point + self.dir * t)
    }
}

/// Intersects half-planes with the sort-by-angle deque method.
///
/// Fails with [`GeometryError::DegenerateIntersection`] when the result is
/// empty, unbounded, or has no interior.
pub fn intersect_half_planes(planes: &[HalfPlane]) -> Result<HalfPlaneCut> {
    let mut lines: Vec<Line> = planes
        .iter()
        .enumerate()
        .filter_map(|(i, h)| Line::from_half_plane(h, i))
        .collect();
    if lines.len() < 3 {
        return Err(GeometryError::DegenerateIntersection);
    }
    lines.sort_by(|a, b| a.angle.total_cmp(&b.angle));

    // Directions must positively span the plane or the region is unbounded.
    let max_gap = lines
        .windows(2)
        .map(|w| w[1].angle - w[0].angle)
        .chain(std::iter::once(
            lines[0].angle + 2.0 * PI - lines[lines.len() - 1].angle,
        ))
        .fold(0.0f64, f64::max);
    if max_gap >= PI - 1e-12 {
        return Err(GeometryError::DegenerateIntersection);
    }

    // Of parallel lines keep the innermost.
    let mut unique: Vec<Line> = Vec::with_capacity(lines.len());
    for l in lines {
        match unique.last_mut() {
            Some(last) if (l.angle - last.angle).abs() < 1e-14 => {
                if last.side(l.point) > 0.0 {
                    *last = l;
                }
            }
            _ => unique.push(l),
        }
    }

    // Tolerances are local: one far-away redundant line must not loosen the
    // test for all others.
    let inside = |l: &Line, x: Option<PlanePoint>| {
        x.is_some_and(|x| l.side(x) > 1e-12 * x.norm().max(l.point.norm()).max(1.0))
    };

    let mut dq: VecDeque<Line> = VecDeque::with_capacity(unique.len());
    for l in unique {
        while dq.len() >= 2 && !inside(&l, dq[dq.len() - 2].meet(&dq[dq.len() - 1])) {
            dq.pop_back();
        }
        while dq.len() >= 2 && !inside(&l, dq[0].meet(&dq[1])) {
            dq.pop_front();
        }
        dq.push_back(l);
    }
    while dq.len() >= 3 && !inside(&dq[0], dq[dq.len() - 2].meet(&dq[dq.len() - 1])) {
        dq.pop_back();
    }
    while dq.len() >= 3 && !inside(&dq[dq.len() - 1], dq[0].meet(&dq[1])) {
        dq.pop_front();
    }
    if dq.len() < 3 {
        return Err(GeometryError::DegenerateIntersection);
    }

    let n = dq.len();
    let mut vertices = Vec::with_capacity(n);
    for k in 0..n {
        let v = dq[k]
            .meet(&dq[(k + 1) % n])
            .ok_or(GeometryError::DegenerateIntersection)?;
        vertices.push(v);
    }
    // Reject regions that collapsed: every vertex must satisfy every active line.
    let scale = vertices.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
    for l in dq.iter() {
        if vertices.iter().any(|&v| l.side(v) < -1e-9 * scale) {
            return Err(GeometryError::DegenerateIntersection);
        }
    }
    let area2: f64 = (0..n).map(|k| vertices[k].cross(vertices[(k + 1) % n])).sum();
    if !(area2 > 1e-18 * scale * scale) {
        return Err(GeometryError::DegenerateIntersection);
    }
    Ok(HalfPlaneCut {
        lines: dq.iter().map(|l| l.index).collect(),
        vertices,
    })
}

/// Indices of the strict convex hull of `points`, counter-clockwise,
/// starting from the lowest-leftmost point. Exactly collinear and duplicate
/// points are dropped.
pub fn convex_hull_indices(points: &[PlanePoint]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a]
            .u
            .total_cmp(&points[b].u)
            .then(points[a].v.total_cmp(&points[b].v))
    });
    if order.len() < 3 {
        return order;
    }
    // Exact sign tests: a tolerance here lets nearly-vertical edges, whose
    // points sort in noise order, swallow their own corners.
    let turn = |o: usize, a: usize, b: usize| (points[a] - points[o]).cross(points[b] - points[o]);
    let eps = 0.0;

    let mut hull: Vec<usize> = Vec::with_capacity(2 * order.len());
    for &i in order.iter() {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], i) <= eps {
            hull.pop();
        }
        hull.push(i);
    }
    let lower = hull.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while hull.len() >= lower && turn(hull[hull.len() - 2], hull[hull.len() - 1], i) <= eps {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}
