use std::f64::consts::FRAC_PI_2;

use super::{hausdorff_spherical, polar, vertex_enumeration, width_report, SphericalPolygon, WidthReport};
use crate::error::{GeometryError, Result};
use crate::sphere::{arc_length, SPoint};

/// Self-duality tolerance for bodies built from exact coordinates.
pub const SELF_DUAL_TOL_EXACT: f64 = 1e-6;

/// Self-duality tolerance for bodies lifted from grid-sampled support functions.
pub const SELF_DUAL_TOL_SAMPLED: f64 = 5e-3;

/// A polar-gap verdict and a width verdict may disagree only while the
/// losing quantity is within this factor of the tolerance.
pub const VERDICT_SLACK: f64 = 3.0;

/// Number of sampled supporting poles behind the constant-width verdict.
const WIDTH_POLES: usize = 256;

/// Outcome of the self-duality test.
#[derive(Debug, Clone)]
pub struct SelfDuality {
    /// `gap <= tol`.
    pub verdict: bool,
    /// Spherical Hausdorff distance between the body and its polar set.
    pub gap: f64,
    pub tol: f64,
    /// Constant-width-π/2 evidence computed alongside.
    pub width: WidthReport,
}

impl SelfDuality {
    pub fn constant_width(&self) -> bool {
        self.width.verdict
    }
}

/// Decides `b = polar(b)` and cross-checks the answer against constant
/// width π/2.
///
/// Fails with [`GeometryError::VerdictMismatch`] when one test passes while
/// the other misses by more than [`VERDICT_SLACK`] times the tolerance.
pub fn is_self_dual(b: &SphericalPolygon, tol: f64) -> Result<SelfDuality> {
    let p = polar(b)?;
    let gap = hausdorff_spherical(b, &p);
    let width = width_report(b, WIDTH_POLES, FRAC_PI_2, tol)?;
    let verdict = gap <= tol;
    let deviation = width.deviation();
    let clash = (verdict && deviation > VERDICT_SLACK * tol) || (width.verdict && gap > VERDICT_SLACK * tol);
    if clash {
        return Err(GeometryError::VerdictMismatch {
            gap_verdict: verdict,
            width_verdict: width.verdict,
            gap,
            deviation,
        });
    }
    Ok(SelfDuality {
        verdict,
        gap,
        tol,
        width,
    })
}

/// Outcome of the vertex test for a body given as ⋂ H(P_i).
#[derive(Debug, Clone)]
pub struct PolytopeReport {
    /// Every P_i is a vertex of the body.
    pub criterion: bool,
    pub body: SphericalPolygon,
    /// Distance from each P_i to the nearest vertex of the body.
    pub pole_offsets: Vec<f64>,
    pub self_duality: SelfDuality,
}

/// Vertex criterion for bodies of polytope type: ⋂ H(P_i) is self-polar
/// exactly when every P_i is one of its vertices.
pub fn polytope_selfdual_criterion(poles: &[SPoint]) -> Result<PolytopeReport> {
    let ve = vertex_enumeration(poles)?;
    if let Some(&index) = ve.redundant.first() {
        return Err(GeometryError::RedundantPole { index });
    }
    let pole_offsets: Vec<f64> = poles
        .iter()
        .map(|&p| {
            ve.body
                .vertices()
                .iter()
                .map(|&v| arc_length(p, v))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let criterion = pole_offsets.iter().all(|&d| d <= 1e-9);
    let self_duality = is_self_dual(&ve.body, SELF_DUAL_TOL_EXACT)?;
    let worst = pole_offsets.iter().copied().fold(0.0, f64::max);
    if (criterion && !self_duality.verdict)
        || (!criterion && self_duality.verdict && worst > VERDICT_SLACK * SELF_DUAL_TOL_EXACT)
    {
        return Err(GeometryError::VerdictMismatch {
            gap_verdict: self_duality.verdict,
            width_verdict: criterion,
            gap: self_duality.gap,
            deviation: worst,
        });
    }
    Ok(PolytopeReport {
        criterion,
        body: ve.body,
        pole_offsets,
        self_duality,
    })
}
