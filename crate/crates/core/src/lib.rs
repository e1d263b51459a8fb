//! Wulff shapes in the plane, their duals, and the spherical convex bodies
//! they induce on S².
//!
//! A Wulff shape is self-dual exactly when its induced spherical body has
//! constant width π/2. This crate builds both sides of that equivalence and
//! checks them against each other.

// `!(x > t)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod body;
pub mod catalog;
pub mod error;
pub mod oracle;
pub mod planar;
pub mod record;
pub mod sphere;
pub mod wulff;

pub use body::SphericalPolygon;
pub use catalog::{CatalogBody, CatalogSpec};
pub use error::{GeometryError, Result};
pub use record::{RecordError, ReportRecord, Shape, ShapeRecord};
pub use sphere::{PlanePoint, Rotation3, SPoint};
pub use wulff::{ConvexPolygon, SupportFunction};
