//! Named example shapes: the disc, tilted caps, octant triangles, Reuleaux
//! triangles and regular 2m-gons.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::body::{lift_body, project_body, s_conv, SphericalPolygon};
use crate::error::{GeometryError, Result};
use crate::sphere::{central_project, lift_to_sphere, PlanePoint, Rotation3, SPoint, Vec3};
use crate::wulff::{build_wulff, ConvexPolygon, SupportFunction, SupportPreset, ORIGIN_MARGIN};

/// Rotated caps must keep this much clearance from the equator.
pub const CAP_MARGIN: f64 = 0.01;

/// A catalog entry with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CatalogSpec {
    Disc {
        grid: usize,
    },
    RotatedCap {
        angle: f64,
        axis: PlanePoint,
        grid: usize,
    },
    #[serde(alias = "octant")]
    OctantTriangle {
        extra_spin: f64,
    },
    Reuleaux {
        width: f64,
        center_offset: PlanePoint,
        grid: usize,
    },
    #[serde(rename = "regular_2m_gon")]
    Regular2mGon {
        m: usize,
        /// Circumradius; `None` takes the root of the star equation.
        a: Option<f64>,
        phase: f64,
    },
    SquareA4,
}

/// What a catalog constructor returns.
#[derive(Debug, Clone, PartialEq)]
pub enum CatalogBody {
    Planar(ConvexPolygon),
    Spherical(SphericalPolygon),
}

impl CatalogBody {
    pub fn spherical(&self) -> Result<SphericalPolygon> {
        match self {
            CatalogBody::Planar(w) => lift_body(w),
            CatalogBody::Spherical(b) => Ok(b.clone()),
        }
    }

    pub fn planar(&self) -> Result<ConvexPolygon> {
        match self {
            CatalogBody::Planar(w) => Ok(w.clone()),
            CatalogBody::Spherical(b) => project_body(b),
        }
    }
}

/// Catalog names with their parameters and accepted ranges.
pub const FAMILIES: &[(&str, &str)] = &[
    ("disc", "grid>=8 (default 720)"),
    (
        "rotated_cap",
        "angle in (-pi/4+0.01, pi/4-0.01) (default 0.3); axis=u,v nonzero (default 0,1); grid>=8 (default 720)",
    ),
    ("octant_triangle", "extra_spin any real (default 0); alias: octant"),
    (
        "reuleaux",
        "width>0 (default 1.6); center_offset=u,v keeping the origin inside (default 0,0); grid>=8 (default 720)",
    ),
    (
        "regular_2m_gon",
        "m>=2 (default 2); a>1 or star=true for the star-equation root (default star); phase any real (default 0)",
    ),
    ("square_a4", "no parameters"),
];

impl CatalogSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CatalogSpec::Disc { .. } => "disc",
            CatalogSpec::RotatedCap { .. } => "rotated_cap",
            CatalogSpec::OctantTriangle { .. } => "octant_triangle",
            CatalogSpec::Reuleaux { .. } => "reuleaux",
            CatalogSpec::Regular2mGon { .. } => "regular_2m_gon",
            CatalogSpec::SquareA4 => "square_a4",
        }
    }

    /// Builds a spec from a name and `key=value` pairs; unset keys take the
    /// defaults listed in [`FAMILIES`].
    pub fn from_params(name: &str, params: &[(String, String)]) -> Result<CatalogSpec> {
        let get = |key: &str| params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let num = |key: &str, default: f64| -> Result<f64> {
            get(key).map_or(Ok(default), |v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| GeometryError::InvalidParameter(format!("{key}={v} is not a number")))
            })
        };
        let int = |key: &str, default: usize| -> Result<usize> {
            get(key).map_or(Ok(default), |v| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| GeometryError::InvalidParameter(format!("{key}={v} is not an integer")))
            })
        };
        let pair = |key: &str, default: PlanePoint| -> Result<PlanePoint> {
            get(key).map_or(Ok(default), |v| {
                let parts: Vec<&str> = v.split(',').collect();
                let bad = || GeometryError::InvalidParameter(format!("{key}={v} is not u,v"));
                if parts.len() != 2 {
                    return Err(bad());
                }
                let u = parts[0].trim().parse::<f64>().map_err(|_| bad())?;
                let w = parts[1].trim().parse::<f64>().map_err(|_| bad())?;
                Ok(PlanePoint::new(u, w))
            })
        };
        let allowed: &[&str] = match name {
            "disc" => &["grid"],
            "rotated_cap" => &["angle", "axis", "grid"],
            "octant_triangle" | "octant" => &["extra_spin"],
            "reuleaux" => &["width", "center_offset", "grid"],
            "regular_2m_gon" => &["m", "a", "star", "phase"],
            "square_a4" => &[],
            _ => {
                return Err(GeometryError::InvalidParameter(format!(
                    "unknown catalog name {name:?}"
                )))
            }
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(GeometryError::InvalidParameter(format!(
                "{name} takes no parameter {k:?}"
            )));
        }
        let grid = int("grid", crate::wulff::DEFAULT_GRID)?;
        let spec = match name {
            "disc" => CatalogSpec::Disc { grid },
            "rotated_cap" => CatalogSpec::RotatedCap {
                angle: num("angle", 0.3)?,
                axis: pair("axis", PlanePoint::new(0.0, 1.0))?,
                grid,
            },
            "octant_triangle" | "octant" => CatalogSpec::OctantTriangle {
                extra_spin: num("extra_spin", 0.0)?,
            },
            "reuleaux" => CatalogSpec::Reuleaux {
                width: num("width", 1.6)?,
                center_offset: pair("center_offset", PlanePoint::ORIGIN)?,
                grid,
            },
            "regular_2m_gon" => {
                let star = match get("star") {
                    None => get("a").is_none(),
                    Some("true") => true,
                    Some("false") => false,
                    Some(v) => {
                        return Err(GeometryError::InvalidParameter(format!(
                            "star={v} is not true/false"
                        )))
                    }
                };
                if star && get("a").is_some() {
                    return Err(GeometryError::InvalidParameter(
                        "give either a or star=true".into(),
                    ));
                }
                let a = if star { None } else { Some(num("a", f64::NAN)?) };
                CatalogSpec::Regular2mGon {
                    m: int("m", 2)?,
                    a,
                    phase: num("phase", 0.0)?,
                }
            }
            _ => CatalogSpec::SquareA4,
        };
        Ok(spec)
    }

    pub fn build(&self) -> Result<CatalogBody> {
        Ok(match *self {
            CatalogSpec::Disc { grid } => CatalogBody::Planar(make_disc(grid)?),
            CatalogSpec::RotatedCap { angle, axis, grid } => {
                CatalogBody::Planar(make_rotated_cap(angle, axis, grid)?)
            }
            CatalogSpec::OctantTriangle { extra_spin } => {
                CatalogBody::Spherical(make_octant_triangle(&default_octant_rotation(), extra_spin)?)
            }
            CatalogSpec::Reuleaux {
                width,
                center_offset,
                grid,
            } => CatalogBody::Planar(make_reuleaux(width, center_offset, grid)?),
            CatalogSpec::Regular2mGon { m, a, phase } => {
                let a = match a {
                    Some(a) => a,
                    None => solve_star_equation(m)?,
                };
                CatalogBody::Planar(make_regular_2m_gon(m, a, phase)?)
            }
            CatalogSpec::SquareA4 => CatalogBody::Planar(make_square_a4()),
        })
    }
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < SupportFunction::MIN_SAMPLES {
        return Err(GeometryError::TooFewSamples {
            got: grid,
            min: SupportFunction::MIN_SAMPLES,
        });
    }
    Ok(())
}

/// The unit disc sampled on `grid` directions.
pub fn make_disc(grid: usize) -> Result<ConvexPolygon> {
    check_grid(grid)?;
    build_wulff(&SupportFunction::constant(grid, 1.0)?)
}

/// The disc lifted to S², turned by `angle` about the horizontal axis
/// `axis`, and projected back.
pub fn make_rotated_cap(angle: f64, axis: PlanePoint, grid: usize) -> Result<ConvexPolygon> {
    if !(angle.abs() < FRAC_PI_4 - CAP_MARGIN) {
        return Err(GeometryError::BodyLeavesHemisphere);
    }
    let axis = Vec3::new(axis.u, axis.v, 0.0)
        .normalized()
        .ok_or_else(|| GeometryError::InvalidParameter("rotation axis must be nonzero".into()))?;
    let disc = make_disc(grid)?;
    let r = Rotation3::about_axis(axis, angle);
    let flat = disc
        .vertices()
        .iter()
        .map(|&x| central_project(r.apply(lift_to_sphere(x))))
        .collect::<Result<Vec<_>>>()?;
    let w = ConvexPolygon::new(flat)?;
    w.ensure_wulff()?;
    Ok(w)
}

/// Rotation taking (1,1,1)/√3 to N, spun so the projected triangle has a
/// vertex at angle π/2.
pub fn default_octant_rotation() -> Rotation3 {
    let center = SPoint::new(1.0, 1.0, 1.0).expect("nonzero");
    let align = Rotation3::aligning(center, SPoint::NORTH);
    let e3 = align.apply(SPoint::E3);
    let spin = FRAC_PI_2 - e3.y().atan2(e3.x());
    align.then(&Rotation3::about_axis(SPoint::NORTH, spin))
}

/// The octant triangle s_conv{e₁, e₂, e₃} under `rotation`, then spun about N.
pub fn make_octant_triangle(rotation: &Rotation3, extra_spin: f64) -> Result<SphericalPolygon> {
    let r = rotation.then(&Rotation3::about_axis(SPoint::NORTH, extra_spin));
    let vs: Vec<SPoint> = [SPoint::E1, SPoint::E2, SPoint::E3]
        .iter()
        .map(|&e| r.apply(e))
        .collect();
    if vs.iter().any(|v| v.z() <= crate::sphere::EQUATOR_TOL) {
        return Err(GeometryError::BodyLeavesHemisphere);
    }
    s_conv(&vs)
}

/// Support function of the Reuleaux triangle of width `width` centered at
/// the origin, with a vertex in direction π/2.
pub fn reuleaux_support(width: f64, theta: f64) -> f64 {
    let r = width / 3f64.sqrt();
    // Six cones of angle π/3: even ones are vertex normal cones, odd ones
    // face the arc centered at the opposite vertex.
    let k = ((theta - FRAC_PI_2) / (PI / 3.0)).round();
    let d = theta - FRAC_PI_2 - k * PI / 3.0;
    if (k as i64).rem_euclid(2) == 0 {
        r * d.cos()
    } else {
        width - r * d.cos()
    }
}

/// Reuleaux triangle of constant width `width`, translated by `center_offset`.
pub fn make_reuleaux(width: f64, center_offset: PlanePoint, grid: usize) -> Result<ConvexPolygon> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(GeometryError::InvalidParameter(format!(
            "width must be positive, got {width}"
        )));
    }
    check_grid(grid)?;
    let values: Vec<f64> = (0..grid)
        .map(|j| {
            let theta = TAU * j as f64 / grid as f64;
            reuleaux_support(width, theta) + center_offset.dot(PlanePoint::polar(1.0, theta))
        })
        .collect();
    let margin = values.iter().copied().fold(f64::INFINITY, f64::min);
    if !(margin > ORIGIN_MARGIN) {
        return Err(GeometryError::OriginNotInterior { margin });
    }
    build_wulff(&SupportFunction::new(values, SupportPreset::Reuleaux)?)
}

/// Positive root `a` of sin(π/2 − π/(2m)) = 1/a², found by bisection.
pub fn solve_star_equation(m: usize) -> Result<f64> {
    if m < 2 {
        return Err(GeometryError::InvalidParameter(format!(
            "star equation needs m >= 2, got {m}"
        )));
    }
    let lhs = (FRAC_PI_2 - PI / (2 * m) as f64).sin();
    // f is increasing in a; f(1) < 0 and f(2) > 0 for every m >= 2.
    let f = |a: f64| lhs - 1.0 / (a * a);
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = 0.5 * (lo + hi);
    let closed = (1.0 / (PI / (2 * m) as f64).cos()).sqrt();
    assert!(
        (a - closed).abs() <= 1e-14,
        "bisection {a} vs closed form {closed}"
    );
    Ok(a)
}

/// Regular 2m-gon centered at the origin with circumradius `a`, vertex 0 at
/// angle `phase`.
pub fn make_regular_2m_gon(m: usize, a: f64, phase: f64) -> Result<ConvexPolygon> {
    if m < 2 {
        return Err(GeometryError::InvalidParameter(format!(
            "2m-gon needs m >= 2, got {m}"
        )));
    }
    if !(a > 1.0 && a.is_finite()) {
        return Err(GeometryError::InvalidParameter(format!(
            "circumradius must exceed 1, got {a}"
        )));
    }
    let n = 2 * m;
    ConvexPolygon::new(
        (0..n)
            .map(|k| PlanePoint::polar(a, phase + TAU * k as f64 / n as f64))
            .collect(),
    )
}

/// The square with a⁴ = 2, vertex 0 on the positive u-axis.
pub fn make_square_a4() -> ConvexPolygon {
    let a = solve_star_equation(2).expect("m = 2 is valid");
    make_regular_2m_gon(2, a, 0.0).expect("a > 1")
}
