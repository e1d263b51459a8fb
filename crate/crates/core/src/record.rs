//! JSON records for shapes and self-duality reports.
//!
//! Floats are written in shortest round-trip form, so a record read back
//! reproduces every coordinate bit for bit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::body::{diameter, is_self_dual, lift_body, project_body, SphericalPolygon, VERDICT_SLACK};
use crate::catalog::{CatalogBody, CatalogSpec};
use crate::error::GeometryError;
use crate::sphere::{PlanePoint, SPoint};
use crate::wulff::{
    build_wulff, congruent_up_to_rotation, dual_wulff, ConvexPolygon, SupportFunction, SupportPreset,
    DEFAULT_GRID, DUAL_XCHECK_TOL,
};

/// Unit vectors in a record may be off by this much in norm.
pub const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {source}")]
    Field {
        field: String,
        #[source]
        source: GeometryError,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn field(name: impl Into<String>) -> impl FnOnce(GeometryError) -> RecordError {
    let name = name.into();
    move |source| RecordError::Field { field: name, source }
}

/// On-disk form of a shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawRecord")]
pub enum ShapeRecord {
    /// A planar convex polygon, vertices counter-clockwise.
    Polygon2 {
        vertices: Vec<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<CatalogSpec>,
    },
    /// A spherical polygon, unit vertices counter-clockwise.
    Spolygon {
        vertices: Vec<[f64; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<CatalogSpec>,
    },
    /// A support function sampled on a uniform grid of directions.
    Support {
        n_samples: usize,
        values: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<CatalogSpec>,
    },
}

/// Flat reading of a record. Parsing into a plain struct first keeps line
/// and column numbers on syntax and type errors.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    kind: String,
    vertices: Option<Vec<Vec<f64>>>,
    n_samples: Option<usize>,
    values: Option<Vec<f64>>,
    provenance: Option<CatalogSpec>,
}

fn fixed<const N: usize>(vertices: Vec<Vec<f64>>) -> Result<Vec<[f64; N]>, String> {
    vertices
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let len = v.len();
            <[f64; N]>::try_from(v).map_err(|_| format!("vertices[{i}]: expected {N} coordinates, got {len}"))
        })
        .collect()
}

impl TryFrom<RawRecord> for ShapeRecord {
    type Error = String;

    fn try_from(r: RawRecord) -> Result<Self, String> {
        let kind = r.kind.as_str();
        let reject = |name: &str, present: bool| {
            if present {
                Err(format!("{kind} record has no field {name}"))
            } else {
                Ok(())
            }
        };
        let need = |name: &str| format!("{kind} record needs field {name}");
        match kind {
            "polygon2" | "spolygon" => {
                reject("n_samples", r.n_samples.is_some())?;
                reject("values", r.values.is_some())?;
                let vertices = r.vertices.ok_or_else(|| need("vertices"))?;
                Ok(if kind == "polygon2" {
                    ShapeRecord::Polygon2 {
                        vertices: fixed(vertices)?,
                        provenance: r.provenance,
                    }
                } else {
                    ShapeRecord::Spolygon {
                        vertices: fixed(vertices)?,
                        provenance: r.provenance,
                    }
                })
            }
            "support" => {
                reject("vertices", r.vertices.is_some())?;
                Ok(ShapeRecord::Support {
                    n_samples: r.n_samples.ok_or_else(|| need("n_samples"))?,
                    values: r.values.ok_or_else(|| need("values"))?,
                    provenance: r.provenance,
                })
            }
            other => Err(format!(
                "kind {other:?} is not one of polygon2, spolygon, support"
            )),
        }
    }
}

/// A validated shape.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Wulff(ConvexPolygon),
    Body(SphericalPolygon),
    Support(SupportFunction),
}

impl ShapeRecord {
    pub fn from_json(s: &str) -> Result<ShapeRecord, RecordError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records serialize");
        s.push('\n');
        s
    }

    pub fn polygon2(w: &ConvexPolygon) -> ShapeRecord {
        ShapeRecord::Polygon2 {
            vertices: w.vertices().iter().map(|&v| v.into()).collect(),
            provenance: None,
        }
    }

    pub fn spolygon(b: &SphericalPolygon) -> ShapeRecord {
        ShapeRecord::Spolygon {
            vertices: b.vertices().iter().map(|&v| v.into()).collect(),
            provenance: None,
        }
    }

    pub fn support(g: &SupportFunction) -> ShapeRecord {
        ShapeRecord::Support {
            n_samples: g.n_samples(),
            values: g.values().to_vec(),
            provenance: None,
        }
    }

    pub fn from_catalog(spec: &CatalogSpec) -> Result<ShapeRecord, RecordError> {
        let rec = match spec.build()? {
            CatalogBody::Planar(w) => ShapeRecord::polygon2(&w),
            CatalogBody::Spherical(b) => ShapeRecord::spolygon(&b),
        };
        Ok(rec.with_provenance(Some(spec.clone())))
    }

    pub fn with_provenance(mut self, spec: Option<CatalogSpec>) -> ShapeRecord {
        match &mut self {
            ShapeRecord::Polygon2 { provenance, .. }
            | ShapeRecord::Spolygon { provenance, .. }
            | ShapeRecord::Support { provenance, .. } => *provenance = spec,
        }
        self
    }

    pub fn provenance(&self) -> Option<&CatalogSpec> {
        match self {
            ShapeRecord::Polygon2 { provenance, .. }
            | ShapeRecord::Spolygon { provenance, .. }
            | ShapeRecord::Support { provenance, .. } => provenance.as_ref(),
        }
    }

    /// Checks the record against the invariants of its in-memory type.
    pub fn to_shape(&self) -> Result<Shape, RecordError> {
        match self {
            ShapeRecord::Polygon2 { vertices, .. } => {
                for (i, v) in vertices.iter().enumerate() {
                    if !(v[0].is_finite() && v[1].is_finite()) {
                        return Err(field(format!("vertices[{i}]"))(GeometryError::InvalidParameter(
                            "non-finite coordinate".into(),
                        )));
                    }
                }
                let pts: Vec<PlanePoint> = vertices.iter().map(|&v| v.into()).collect();
                ConvexPolygon::new(pts).map(Shape::Wulff).map_err(vertex_field)
            }
            ShapeRecord::Spolygon { vertices, .. } => {
                let mut pts = Vec::with_capacity(vertices.len());
                for (i, v) in vertices.iter().enumerate() {
                    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                    if !((norm - 1.0).abs() <= UNIT_TOL) {
                        return Err(field(format!("vertices[{i}]"))(GeometryError::InvalidParameter(
                            format!("not a unit vector (norm {norm})"),
                        )));
                    }
                    pts.push(SPoint::new(v[0], v[1], v[2]).map_err(field(format!("vertices[{i}]")))?);
                }
                SphericalPolygon::new(pts).map(Shape::Body).map_err(vertex_field)
            }
            ShapeRecord::Support {
                n_samples, values, ..
            } => {
                if *n_samples != values.len() {
                    return Err(field("n_samples")(GeometryError::InvalidParameter(format!(
                        "{n_samples} does not match {} values",
                        values.len()
                    ))));
                }
                SupportFunction::new(values.clone(), SupportPreset::Custom)
                    .map(Shape::Support)
                    .map_err(|e| match e {
                        GeometryError::NonPositiveSupport { index, .. } => {
                            field(format!("values[{index}]"))(e)
                        }
                        e => field("values")(e),
                    })
            }
        }
    }
}

fn vertex_field(e: GeometryError) -> RecordError {
    match e {
        GeometryError::NotConvex { index } => field(format!("vertices[{index}]"))(e),
        e => field("vertices")(e),
    }
}

impl Shape {
    /// The planar Wulff shape, if the shape has one.
    pub fn wulff(&self) -> Result<ConvexPolygon, GeometryError> {
        match self {
            Shape::Wulff(w) => {
                w.ensure_wulff()?;
                Ok(w.clone())
            }
            Shape::Body(b) => project_body(b),
            Shape::Support(g) => build_wulff(g),
        }
    }

    pub fn body(&self) -> Result<SphericalPolygon, GeometryError> {
        match self {
            Shape::Body(b) => Ok(b.clone()),
            _ => lift_body(&self.wulff()?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Bound on the polar gap and on |width − π/2|.
    pub self_dual: f64,
    pub verdict_slack: f64,
    /// Rotation-search bound behind `congruent_dual`.
    pub congruence: f64,
}

/// Outcome of checking one shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub self_dual: bool,
    pub constant_width: bool,
    /// Spherical Hausdorff distance between the body and its polar set.
    pub gap: f64,
    pub min_width: f64,
    pub max_width: f64,
    pub diameter: f64,
    pub width_samples: usize,
    /// Whether the planar dual is a rotated copy; absent when the body does
    /// not project to a Wulff shape.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub congruent_dual: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_rotation: Option<f64>,
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<CatalogSpec>,
}

impl ReportRecord {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records serialize");
        s.push('\n');
        s
    }
}

/// Self-duality, width and diameter of `shape`, plus whether its planar
/// dual is congruent to it.
pub fn check(
    shape: &Shape,
    tol: f64,
    provenance: Option<CatalogSpec>,
) -> Result<ReportRecord, GeometryError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(GeometryError::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let body = shape.body()?;
    let sd = is_self_dual(&body, tol)?;
    let congruence_tol = tol.max(DUAL_XCHECK_TOL);
    let congruence = shape
        .wulff()
        .ok()
        .and_then(|w| dual_wulff(&w, DEFAULT_GRID).ok().map(|d| (w, d)))
        .map(|(w, d)| congruent_up_to_rotation(&w, &d, congruence_tol));
    Ok(ReportRecord {
        self_dual: sd.verdict,
        constant_width: sd.constant_width(),
        gap: sd.gap,
        min_width: sd.width.min_width,
        max_width: sd.width.max_width,
        diameter: diameter(&body),
        width_samples: sd.width.samples.len(),
        congruent_dual: congruence.map(|c| c.congruent),
        dual_rotation: congruence.filter(|c| c.congruent).map(|c| c.angle),
        tolerances: Tolerances {
            self_dual: tol,
            verdict_slack: VERDICT_SLACK,
            congruence: congruence_tol,
        },
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_square_a4;

    #[test]
    fn polygon_round_trip_is_bit_exact() {
        let w = crate::catalog::make_reuleaux(1.6, PlanePoint::new(0.1, 0.05), 720).unwrap();
        let json = ShapeRecord::polygon2(&w).to_json();
        let back = ShapeRecord::from_json(&json).unwrap().to_shape().unwrap();
        assert_eq!(back, Shape::Wulff(w));
    }

    #[test]
    fn kinds_and_provenance() {
        let rec = ShapeRecord::from_catalog(&CatalogSpec::SquareA4).unwrap();
        let json = rec.to_json();
        assert!(json.contains(r#""kind": "polygon2""#));
        assert!(json.contains(r#""kind": "square_a4""#));
        let rec = ShapeRecord::from_catalog(&CatalogSpec::OctantTriangle { extra_spin: 0.0 }).unwrap();
        assert!(rec.to_json().contains(r#""kind": "spolygon""#));
        let g = SupportFunction::constant(16, 1.0).unwrap();
        let rec = ShapeRecord::support(&g);
        assert_eq!(ShapeRecord::from_json(&rec.to_json()).unwrap(), rec);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = ShapeRecord::from_json(r#"{"kind":"support","n_samples":8,"values":[1,1,1,0,1,1,1,1]}"#)
            .unwrap()
            .to_shape()
            .unwrap_err();
        assert!(err.to_string().starts_with("values[3]:"), "{err}");

        let err = ShapeRecord::from_json(r#"{"kind":"support","n_samples":9,"values":[1,1,1,1,1,1,1,1]}"#)
            .unwrap()
            .to_shape()
            .unwrap_err();
        assert!(err.to_string().starts_with("n_samples:"), "{err}");

        let err = ShapeRecord::from_json(r#"{"kind":"spolygon","vertices":[[1,0,0],[0,2,0],[0,0,1]]}"#)
            .unwrap()
            .to_shape()
            .unwrap_err();
        assert!(err.to_string().starts_with("vertices[1]:"), "{err}");

        let err = ShapeRecord::from_json(r#"{"kind":"polygon2","vertices":[[0,0],[0,1],[1,0]]}"#)
            .unwrap()
            .to_shape()
            .unwrap_err();
        assert!(err.to_string().starts_with("vertices"), "{err}");

        let err = ShapeRecord::from_json(r#"{"kind":"polygon2","vertices":[[0,0],[1]]}"#).unwrap_err();
        assert!(err.to_string().contains("vertices[1]"), "{err}");
        let err = ShapeRecord::from_json("{\n  \"kind\": \"polygon2\",\n  \"vertices\": [[0, 0], [1, x]]\n}")
            .unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = ShapeRecord::from_json(r#"{"kind":"triangle"}"#).unwrap_err();
        assert!(err.to_string().contains("triangle"), "{err}");
        let err = ShapeRecord::from_json(r#"{"kind":"support","vertices":[]}"#).unwrap_err();
        assert!(err.to_string().contains("no field vertices"), "{err}");
    }

    #[test]
    fn check_reports() {
        let oct = ShapeRecord::from_catalog(&CatalogSpec::OctantTriangle { extra_spin: 0.0 }).unwrap();
        let r = check(&oct.to_shape().unwrap(), 5e-3, oct.provenance().cloned()).unwrap();
        assert!(r.self_dual && r.constant_width);
        assert!((r.diameter - std::f64::consts::FRAC_PI_2).abs() < 1e-12);

        let r = check(&Shape::Wulff(make_square_a4()), 5e-3, None).unwrap();
        assert!(!r.self_dual && !r.constant_width);
        assert_eq!(r.congruent_dual, Some(true));
        assert!(r.min_width > 0.0 && r.max_width < std::f64::consts::PI);
        let back: ReportRecord = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(check(&Shape::Wulff(make_square_a4()), 0.0, None).is_err());
    }
}
