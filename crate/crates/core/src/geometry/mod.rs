//! Differential geometry on raster shapes: curvature fields, discrete
//! elastica energies, contour endpoints and the relatability test.

mod curvature;
mod endpoints;

pub use curvature::curvature_field;
pub use endpoints::find_endpoints;

use crate::raster::{PixelSet, ScalarField};

/// Weights of the elastica energy `sum(kappa^2 + beta)` over a boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticaParams {
    /// Length-vs-curvature weight; larger values favor straight completions.
    pub beta: f64,
}

impl Default for ElasticaParams {
    fn default() -> Self {
        ElasticaParams { beta: 0.6 }
    }
}

/// A 2-vector in image coordinates: `x` along columns, `y` along rows
/// (y grows downward).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }

    pub fn scaled(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }

    /// Counterclockwise perpendicular (in y-down image coordinates).
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;

    fn sub(self, other: Vec2) -> Vec2 {
        Vec2::new(self.x - other.x, self.y - other.y)
    }
}

/// A boundary point where a visible contour meets the inpainting region,
/// with the unit tangent pointing into the occluded side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourEndpoint {
    pub position: Vec2,
    pub tangent: Vec2,
}

impl ContourEndpoint {
    pub fn new(position: Vec2, tangent: Vec2) -> Self {
        ContourEndpoint {
            position,
            tangent: tangent.normalized(),
        }
    }
}

/// Slack on the 90-degree outer-angle limit, as a bound on
/// `<tau_a, tau_b>`. Tangents fitted over a handful of rasterized boundary
/// pixels are only determined to about one pixel across the window
/// (atan(1/6), just under 10 degrees), and right-angle junctions, which sit
/// exactly on the 90-degree limit in the continuum, must not be lost to
/// that quantization.
pub(crate) const RELATABLE_ANGLE_SLACK: f64 = 0.17364817766693041; // sin(10 deg)
const COLLINEAR_TOL: f64 = 1e-9;
const PARALLEL_TOL: f64 = 1e-12;

/// Whether a smooth, inflection-free contour can join two endpoints: their
/// forward semi-lines must intersect and the outer turning angle (from the
/// first tangent to the reversed second) must be at most 90 degrees, with
/// an angular slack matching the raster tangent resolution. Symmetric in
/// its arguments.
pub fn relatable(a: &ContourEndpoint, b: &ContourEndpoint) -> bool {
    // Outer angle <= 90 deg + slack, i.e. <tau_a, -tau_b> >= -sin(slack).
    if a.tangent.dot(b.tangent) > RELATABLE_ANGLE_SLACK {
        return false;
    }
    semi_lines_intersect(a, b)
}

fn semi_lines_intersect(a: &ContourEndpoint, b: &ContourEndpoint) -> bool {
    let d = b.position - a.position;
    let cross = a.tangent.cross(b.tangent);
    if cross.abs() <= PARALLEL_TOL {
        // Parallel tangents: the semi-lines can only meet when collinear.
        let scale = d.norm().max(1.0);
        if d.cross(a.tangent).abs() > COLLINEAR_TOL * scale {
            return false;
        }
        if a.tangent.dot(b.tangent) > 0.0 {
            // Same direction on one line: one ray contains the other's origin.
            return true;
        }
        // Facing rays overlap iff b lies ahead of a.
        return d.dot(a.tangent) >= -COLLINEAR_TOL;
    }
    let lambda_a = d.cross(b.tangent) / cross;
    let lambda_b = d.cross(a.tangent) / cross;
    lambda_a >= -COLLINEAR_TOL && lambda_b >= -COLLINEAR_TOL
}

/// Discrete elastica energy `sum_{x in boundary} (kappa(x)^2 + beta)`.
/// Additive over disjoint pixel sets and linear in beta with slope
/// `boundary.len()`.
pub fn elastica_energy(boundary: &PixelSet, curvature: &ScalarField, params: &ElasticaParams) -> f64 {
    boundary
        .iter()
        .map(|p| {
            assert!(
                p.row < curvature.height() && p.col < curvature.width(),
                "boundary pixel outside the curvature grid"
            );
            let k = curvature.get(p.row, p.col);
            k * k + params.beta
        })
        .sum()
}
