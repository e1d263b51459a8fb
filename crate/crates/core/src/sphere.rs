//! Points, arcs, hemispheres and lunes on the unit sphere S², plus the
//! central projection between the open upper hemisphere and the plane z = 1.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

/// Tolerance for sign predicates on exact or constructed data.
pub const ANG_TOL: f64 = 1e-9;

/// `|p.q|` above this is treated as equal-or-antipodal.
pub const ANTIPODAL_TOL: f64 = 1e-12;

/// Minimum height above the equator for the central projection.
pub const EQUATOR_TOL: f64 = 1e-12;

/// A free vector in R³.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// `None` for vectors too short to carry a direction.
    pub fn normalized(self) -> Option<SPoint> {
        let n = self.norm();
        if n.is_finite() && n > 1e-300 {
            Some(SPoint(self * (1.0 / n)))
        } else {
            None
        }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A point of S², stored as a unit vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct SPoint(Vec3);

impl SPoint {
    /// The north pole N = (0, 0, 1).
    pub const NORTH: SPoint = SPoint(Vec3::new(0.0, 0.0, 1.0));
    pub const E1: SPoint = SPoint(Vec3::new(1.0, 0.0, 0.0));
    pub const E2: SPoint = SPoint(Vec3::new(0.0, 1.0, 0.0));
    pub const E3: SPoint = SPoint(Vec3::new(0.0, 0.0, 1.0));

    /// Normalizes `(x, y, z)` onto the sphere.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Vec3::new(x, y, z)
            .normalized()
            .ok_or_else(|| GeometryError::InvalidParameter(format!("({x}, {y}, {z}) has no direction")))
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn z(self) -> f64 {
        self.0.z
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn dot(self, o: SPoint) -> f64 {
        self.0.dot(o.0)
    }

    pub fn antipode(self) -> SPoint {
        SPoint(-self.0)
    }

    /// Point at angular distance `angle` from `self` towards `toward`.
    ///
    /// Falls back to an arbitrary perpendicular direction when `toward` is
    /// parallel to `self`.
    pub fn offset_towards(self, toward: SPoint, angle: f64) -> SPoint {
        let tangent = (toward.0 - self.0 * self.dot(toward))
            .normalized()
            .unwrap_or_else(|| any_perpendicular(self));
        SPoint(self.0 * angle.cos() + tangent.0 * angle.sin())
    }
}

impl TryFrom<[f64; 3]> for SPoint {
    type Error = GeometryError;
    fn try_from(c: [f64; 3]) -> Result<Self> {
        SPoint::new(c[0], c[1], c[2])
    }
}

impl From<SPoint> for [f64; 3] {
    fn from(p: SPoint) -> Self {
        [p.0.x, p.0.y, p.0.z]
    }
}

/// Some unit vector orthogonal to `p`.
pub fn any_perpendicular(p: SPoint) -> SPoint {
    let helper = if p.x().abs() < 0.6 {
        Vec3::new(1.0, 0.0, 0.0)
    } else {
        Vec3::new(0.0, 1.0, 0.0)
    };
    p.vec()
        .cross(helper)
        .normalized()
        .expect("helper axis is not parallel")
}

/// The closed hemisphere H(P) = {Q : P.Q >= 0}, identified by its pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hemisphere {
    pub pole: SPoint,
}

impl Hemisphere {
    pub fn new(pole: SPoint) -> Self {
        Hemisphere { pole }
    }

    pub fn contains(&self, q: SPoint) -> bool {
        self.pole.dot(q) >= -ANG_TOL
    }
}

/// The lune H(P) ∩ H(Q) for distinct, non-antipodal poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lune {
    p: SPoint,
    q: SPoint,
}

impl Lune {
    pub fn new(p: SPoint, q: SPoint) -> Result<Self> {
        let dot = p.dot(q);
        if dot.abs() >= 1.0 - ANTIPODAL_TOL {
            return Err(GeometryError::DegenerateLune { dot });
        }
        Ok(Lune { p, q })
    }

    pub fn poles(&self) -> (SPoint, SPoint) {
        (self.p, self.q)
    }

    pub fn contains(&self, x: SPoint) -> bool {
        Hemisphere::new(self.p).contains(x) && Hemisphere::new(self.q).contains(x)
    }
}

/// A point of the plane, identified with (u, v, 1) when lifted to R³.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct PlanePoint {
    pub u: f64,
    pub v: f64,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { u: 0.0, v: 0.0 };

    pub const fn new(u: f64, v: f64) -> Self {
        PlanePoint { u, v }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        PlanePoint::new(r * theta.cos(), r * theta.sin())
    }

    pub fn norm(self) -> f64 {
        self.u.hypot(self.v)
    }

    pub fn angle(self) -> f64 {
        self.v.atan2(self.u)
    }

    pub fn dot(self, o: PlanePoint) -> f64 {
        self.u * o.u + self.v * o.v
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: PlanePoint) -> f64 {
        self.u * o.v - self.v * o.u
    }

    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        PlanePoint::new(c * self.u - s * self.v, s * self.u + c * self.v)
    }

    pub fn dist(self, o: PlanePoint) -> f64 {
        (self - o).norm()
    }
}

impl From<[f64; 2]> for PlanePoint {
    fn from(c: [f64; 2]) -> Self {
        PlanePoint::new(c[0], c[1])
    }
}

impl From<PlanePoint> for [f64; 2] {
    fn from(p: PlanePoint) -> Self {
        [p.u, p.v]
    }
}

impl Add for PlanePoint {
    type Output = PlanePoint;
    fn add(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.u + o.u, self.v + o.v)
    }
}

impl Sub for PlanePoint {
    type Output = PlanePoint;
    fn sub(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.u - o.u, self.v - o.v)
    }
}

impl Mul<f64> for PlanePoint {
    type Output = PlanePoint;
    fn mul(self, s: f64) -> PlanePoint {
        PlanePoint::new(self.u * s, self.v * s)
    }
}

impl Neg for PlanePoint {
    type Output = PlanePoint;
    fn neg(self) -> PlanePoint {
        PlanePoint::new(-self.u, -self.v)
    }
}

/// Point at parameter `t` on the minor arc from `p` to `q`.
pub fn arc_point(p: SPoint, q: SPoint, t: f64) -> Result<SPoint> {
    if p.dot(q) <= -1.0 + ANTIPODAL_TOL {
        return Err(GeometryError::AntipodalPair);
    }
    Ok((p.vec() * (1.0 - t) + q.vec() * t)
        .normalized()
        .expect("non-antipodal combination is nonzero"))
}

/// Great-circle distance in [0, π].
pub fn arc_length(p: SPoint, q: SPoint) -> f64 {
    // Same value as acos(clamp(p.q)), without the loss of precision near 0 and π.
    let s = p.vec().cross(q.vec()).norm();
    let c = p.dot(q).clamp(-1.0, 1.0);
    s.atan2(c)
}

/// Thickness π − |PQ| of the lune H(P) ∩ H(Q).
pub fn lune_thickness(l: &Lune) -> f64 {
    PI - arc_length(l.p, l.q)
}

/// Central projection of the open upper hemisphere onto the plane z = 1.
pub fn central_project(p: SPoint) -> Result<PlanePoint> {
    if p.z() <= EQUATOR_TOL {
        return Err(GeometryError::EquatorOrBelow { z: p.z() });
    }
    Ok(PlanePoint::new(p.x() / p.z(), p.y() / p.z()))
}

/// Inverse of [`central_project`]: `(u, v, 1) / |(u, v, 1)|`.
pub fn lift_to_sphere(x: PlanePoint) -> SPoint {
    Vec3::new(x.u, x.v, 1.0)
        .normalized()
        .expect("z = 1 is never zero")
}

/// Polar-plot inversion (θ, r) ↦ (−θ, 1/r), where −θ is the opposite
/// direction. In Cartesian form: `x ↦ −x / |x|²`.
pub fn invert_polar_plot(x: PlanePoint) -> Result<PlanePoint> {
    let r2 = x.dot(x);
    if r2.sqrt() <= 1e-12 {
        return Err(GeometryError::OriginNotInvertible);
    }
    Ok(x * (-1.0 / r2))
}

/// A proper rotation of R³ as a row-major 3×3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3 {
    m: [[f64; 3]; 3],
}

impl Rotation3 {
    pub const IDENTITY: Rotation3 = Rotation3 {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Right-handed rotation by `angle` about `axis` (Rodrigues).
    pub fn about_axis(axis: SPoint, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        let (x, y, z) = (axis.x(), axis.y(), axis.z());
        Rotation3 {
            m: [
                [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
                [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
                [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
            ],
        }
    }

    /// The minimal rotation taking `from` to `to`.
    pub fn aligning(from: SPoint, to: SPoint) -> Self {
        let axis = from.vec().cross(to.vec());
        let angle = arc_length(from, to);
        match axis.normalized() {
            Some(a) if angle > 1e-15 => Rotation3::about_axis(a, angle),
            _ if from.dot(to) > 0.0 => Rotation3::IDENTITY,
            _ => Rotation3::about_axis(any_perpendicular(from), PI),
        }
    }

    pub fn apply_vec(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn apply(&self, p: SPoint) -> SPoint {
        self.apply_vec(p.vec())
            .normalized()
            .expect("rotations preserve length")
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Rotation3) -> Rotation3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| next.m[i][k] * self.m[k][j]).sum();
            }
        }
        Rotation3 { m }
    }

    pub fn inverse(&self) -> Rotation3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.m[j][i];
            }
        }
        Rotation3 { m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    const EPS: f64 = 1e-12;

    fn close(a: SPoint, b: SPoint) -> bool {
        (a.vec() - b.vec()).norm() <= EPS
    }

    #[test]
    fn arc_point_endpoints_and_midpoint() {
        assert!(close(arc_point(SPoint::E1, SPoint::E2, 0.0).unwrap(), SPoint::E1));
        assert!(close(arc_point(SPoint::E1, SPoint::E2, 1.0).unwrap(), SPoint::E2));
        let mid = arc_point(SPoint::E1, SPoint::E2, 0.5).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!(close(mid, SPoint::new(h, h, 0.0).unwrap()));
    }

    #[test]
    fn arc_point_rejects_antipodes() {
        assert_eq!(
            arc_point(SPoint::E1, SPoint::E1.antipode(), 0.5),
            Err(GeometryError::AntipodalPair)
        );
    }

    #[test]
    fn arc_length_examples() {
        assert_eq!(arc_length(SPoint::E1, SPoint::E1), 0.0);
        assert!((arc_length(SPoint::E1, SPoint::E2) - FRAC_PI_2).abs() < EPS);
        assert!((arc_length(SPoint::E1, SPoint::E1.antipode()) - PI).abs() < EPS);
    }

    #[test]
    fn lune_thickness_examples() {
        let l = Lune::new(SPoint::E1, SPoint::E2).unwrap();
        assert!((lune_thickness(&l) - FRAC_PI_2).abs() < EPS);

        let l = Lune::new(SPoint::NORTH, SPoint::NORTH.offset_towards(SPoint::E1, 0.1)).unwrap();
        assert!((lune_thickness(&l) - (PI - 0.1)).abs() < EPS);

        // Two hemispheres tangent to a cap of radius rho from opposite sides:
        // their poles sit at pi/2 - rho from the cap center, on opposite sides.
        let rho = 0.3;
        let p = SPoint::NORTH.offset_towards(SPoint::E1, FRAC_PI_2 - rho);
        let q = SPoint::NORTH.offset_towards(SPoint::E1.antipode(), FRAC_PI_2 - rho);
        // Each hemisphere contains the cap and touches it.
        for pole in [p, q] {
            let near = SPoint::NORTH.offset_towards(pole.antipode(), rho);
            assert!(pole.dot(near).abs() < 1e-12);
        }
        let l = Lune::new(p, q).unwrap();
        assert!((lune_thickness(&l) - 2.0 * rho).abs() < EPS);
    }

    #[test]
    fn lune_rejects_degenerate_poles() {
        assert!(Lune::new(SPoint::E1, SPoint::E1).is_err());
        assert!(Lune::new(SPoint::E1, SPoint::E1.antipode()).is_err());
    }

    #[test]
    fn central_projection_examples() {
        assert_eq!(central_project(SPoint::NORTH).unwrap(), PlanePoint::ORIGIN);
        let p = central_project(SPoint::new(1.0, 0.0, 1.0).unwrap()).unwrap();
        assert!((p.u - 1.0).abs() < EPS && p.v.abs() < EPS);
        let p = central_project(SPoint::new(0.0, 0.5, 3f64.sqrt() / 2.0).unwrap()).unwrap();
        assert!(p.u.abs() < EPS && (p.v - 1.0 / 3f64.sqrt()).abs() < EPS);
        assert!(matches!(
            central_project(SPoint::E1),
            Err(GeometryError::EquatorOrBelow { .. })
        ));
    }

    #[test]
    fn lift_examples() {
        assert!(close(lift_to_sphere(PlanePoint::ORIGIN), SPoint::NORTH));
        assert!(close(
            lift_to_sphere(PlanePoint::new(1.0, 0.0)),
            SPoint::new(1.0, 0.0, 1.0).unwrap()
        ));
        let s = 26f64.sqrt();
        let l = lift_to_sphere(PlanePoint::new(3.0, 4.0));
        assert!((l.x() - 3.0 / s).abs() < EPS && (l.y() - 4.0 / s).abs() < EPS);
        assert!((l.z() - 1.0 / s).abs() < EPS);
    }

    #[test]
    fn inversion_examples() {
        let p = invert_polar_plot(PlanePoint::new(2.0, 0.0)).unwrap();
        assert!((p.u + 0.5).abs() < EPS && p.v.abs() < EPS);
        let p = invert_polar_plot(PlanePoint::new(0.0, 1.0)).unwrap();
        assert!(p.u.abs() < EPS && (p.v + 1.0).abs() < EPS);
        let x = PlanePoint::new(0.3, -0.7);
        let back = invert_polar_plot(invert_polar_plot(x).unwrap()).unwrap();
        assert!(back.dist(x) < EPS);
        assert_eq!(
            invert_polar_plot(PlanePoint::ORIGIN),
            Err(GeometryError::OriginNotInvertible)
        );
    }

    #[test]
    fn aligning_rotation_hits_target() {
        let from = SPoint::new(1.0, 1.0, 1.0).unwrap();
        let r = Rotation3::aligning(from, SPoint::NORTH);
        assert!(close(r.apply(from), SPoint::NORTH));
        let back = r.then(&r.inverse());
        assert!(close(back.apply(SPoint::E1), SPoint::E1));
    }

    fn unit() -> impl Strategy<Value = SPoint> {
        (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
            .prop_filter_map("zero", |(x, y, z)| Vec3::new(x, y, z).normalized())
    }

    proptest! {
        #[test]
        fn arc_points_are_unit(p in unit(), q in unit(), t in 0.0f64..=1.0) {
            prop_assume!(p.dot(q) > -1.0 + 1e-6);
            let a = arc_point(p, q, t).unwrap();
            prop_assert!((a.vec().norm() - 1.0).abs() < EPS);
        }

        #[test]
        fn arc_length_is_a_metric(p in unit(), q in unit(), r in unit()) {
            prop_assert!((arc_length(p, q) - arc_length(q, p)).abs() < EPS);
            prop_assert!(arc_length(p, r) <= arc_length(p, q) + arc_length(q, r) + EPS);
        }

        #[test]
        fn thickness_complements_arc_length(p in unit(), q in unit()) {
            prop_assume!(p.dot(q).abs() < 1.0 - 1e-9);
            let l = Lune::new(p, q).unwrap();
            prop_assert!((lune_thickness(&l) + arc_length(p, q) - PI).abs() <= 1e-15);
        }

        #[test]
        fn projection_round_trips(p in unit(), u in -50.0f64..50.0, v in -50.0f64..50.0) {
            prop_assume!(p.z() > 1e-3);
            let back = lift_to_sphere(central_project(p).unwrap());
            prop_assert!(close(back, p));
            let x = PlanePoint::new(u, v);
            let y = central_project(lift_to_sphere(x)).unwrap();
            prop_assert!(y.dist(x) <= EPS * (1.0 + x.norm()));
        }

        #[test]
        fn inversion_is_an_involution(u in -10.0f64..10.0, v in -10.0f64..10.0) {
            let x = PlanePoint::new(u, v);
            prop_assume!(x.norm() > 1e-3);
            let back = invert_polar_plot(invert_polar_plot(x).unwrap()).unwrap();
            prop_assert!(back.dist(x) <= EPS * (1.0 + x.norm()));
        }
    }
}
