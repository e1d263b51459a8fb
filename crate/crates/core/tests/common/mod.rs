//! Seeded random shapes shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wulff_core::body::{s_conv, SphericalPolygon};
use wulff_core::sphere::{PlanePoint, Rotation3, SPoint};
use wulff_core::wulff::{ConvexPolygon, SupportFunction, SupportPreset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unit(rng: &mut impl Rng) -> SPoint {
    loop {
        let v: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if n2 > 1e-4 && n2 <= 1.0 {
            return SPoint::new(v[0], v[1], v[2]).unwrap();
        }
    }
}

pub fn random_rotation(rng: &mut impl Rng) -> Rotation3 {
    Rotation3::about_axis(random_unit(rng), rng.gen_range(0.0..PI))
}

/// Point at angular distance in `[0, radius]` from `center`.
pub fn point_near(rng: &mut impl Rng, center: SPoint, radius: f64) -> SPoint {
    let dir = loop {
        let d = random_unit(rng);
        if d.dot(center).abs() < 0.99 {
            break d;
        }
    };
    center.offset_towards(dir, rng.gen_range(0.0..radius))
}

/// Spherical hull of 3–12 random points within `radius` of `center`.
pub fn random_hull_at(rng: &mut impl Rng, center: SPoint, radius: f64) -> SphericalPolygon {
    loop {
        let k = rng.gen_range(3..=12);
        let pts: Vec<SPoint> = (0..k).map(|_| point_near(rng, center, radius)).collect();
        if let Ok(b) = s_conv(&pts) {
            let min_edge = b
                .edges()
                .map(|(a, c)| wulff_core::sphere::arc_length(a, c))
                .fold(f64::INFINITY, f64::min);
            if min_edge > 1e-3 {
                return b;
            }
        }
    }
}

/// Random hull centered anywhere on the sphere, spanning up to `max_radius`.
pub fn random_hull(rng: &mut impl Rng, max_radius: f64) -> SphericalPolygon {
    let center = random_unit(rng);
    let radius = rng.gen_range(0.2..max_radius);
    random_hull_at(rng, center, radius)
}

/// Regular spherical n-gon (n odd) centered at N that equals its own polar set.
pub fn self_polar_gon(n: usize) -> SphericalPolygon {
    assert!(n % 2 == 1 && n >= 3);
    let j = (n - 1) / 2;
    let rho = (-1.0 / (TAU * j as f64 / n as f64).cos()).sqrt().atan();
    SphericalPolygon::new(
        (0..n)
            .map(|k| {
                let phi = TAU * k as f64 / n as f64;
                SPoint::new(rho.sin() * phi.cos(), rho.sin() * phi.sin(), rho.cos()).unwrap()
            })
            .collect(),
    )
    .unwrap()
}

/// A randomly placed self-polar body: the octant triangle or a regular
/// pentagon or heptagon.
pub fn random_self_polar(rng: &mut impl Rng) -> SphericalPolygon {
    let n = [3, 5, 7][rng.gen_range(0..3)];
    self_polar_gon(n).rotated(&random_rotation(rng)).unwrap()
}

/// Smooth positive support-like function: 1 plus a few small harmonics.
pub fn random_support(rng: &mut impl Rng, grid: usize) -> SupportFunction {
    let terms: Vec<(f64, f64, f64)> = (1..=4)
        .map(|k| (k as f64, rng.gen_range(-0.12..0.12), rng.gen_range(0.0..TAU)))
        .collect();
    let scale = rng.gen_range(0.6..1.6);
    SupportFunction::from_fn(grid, SupportPreset::Custom, |t| {
        scale * (1.0 + terms.iter().map(|(k, a, p)| a * (k * t + p).cos()).sum::<f64>())
    })
    .unwrap()
}

/// Random centrally symmetric convex polygon around the origin.
pub fn random_symmetric_polygon(rng: &mut impl Rng) -> ConvexPolygon {
    loop {
        let k = rng.gen_range(2..=8);
        let mut pts = Vec::with_capacity(2 * k);
        for _ in 0..k {
            let p = PlanePoint::polar(rng.gen_range(0.4..2.0), rng.gen_range(0.0..TAU));
            pts.push(p);
            pts.push(-p);
        }
        if let Ok(w) = ConvexPolygon::hull_of(&pts) {
            if w.origin_margin() > 0.05 {
                return w;
            }
        }
    }
}
