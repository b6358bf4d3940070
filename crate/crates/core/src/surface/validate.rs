use super::{ConeKind, ConeSurface, Topology};
use crate::geom::TAU;
use crate::tolerance::{EPS_INC, EPS_LEN};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSummary {
    pub class_id: usize,
    pub angle: f64,
    pub angle_over_pi: f64,
    pub kind: ConeKind,
    pub boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub name: Option<String>,
    pub topology: Topology,
    pub gauss_bonnet_residual: f64,
    pub gauss_bonnet_tolerance: f64,
    pub gluing_length_residuals: Vec<f64>,
    pub gluing_motion_residuals: Vec<f64>,
    pub area_polygons: f64,
    pub area_triangles: f64,
    pub area_relative_residual: f64,
    pub cone_points: Vec<ConeSummary>,
    pub failures: Vec<String>,
    pub ok: bool,
}

/// Recompute every global invariant of a built surface. Failures are carried
/// in the report rather than returned as errors.
pub fn validate_surface(s: &ConeSurface) -> ValidationReport {
    let interior: f64 = s
        .classes
        .iter()
        .map(|c| if c.boundary { PI - c.angle } else { TAU - c.angle })
        .sum();
    let chi = s.topology.euler_characteristic as f64;
    let gb = (interior - TAU * chi).abs();
    let nvert: usize = s.polygons.iter().map(|p| p.vertices.len()).sum();
    let gb_tol = 1e-9 * nvert as f64;

    let mut failures = Vec::new();
    if gb > gb_tol {
        failures.push(format!("Gauss-Bonnet residual {gb:e} exceeds {gb_tol:e}"));
    }

    let length_res: Vec<f64> = s.gluings.iter().map(|g| g.length_residual).collect();
    let motion_res: Vec<f64> = s
        .gluings
        .iter()
        .map(|g| {
            let (a0, a1) = s.polygons[g.side_a.polygon].edge(g.side_a.edge);
            let (b0, b1) = s.polygons[g.side_b.polygon].edge(g.side_b.edge);
            g.motion.apply(b0).dist(a1).max(g.motion.apply(b1).dist(a0))
        })
        .collect();
    for (i, (&l, &m)) in length_res.iter().zip(&motion_res).enumerate() {
        if l > EPS_LEN {
            failures.push(format!("gluing {i}: length residual {l:e}"));
        }
        if m > EPS_INC.max(2.0 * EPS_LEN) {
            failures.push(format!("gluing {i}: motion residual {m:e}"));
        }
    }

    let ap = s.polygon_area();
    let at = s.area();
    let area_rel = ((ap - at) / ap).abs();
    if area_rel > 1e-9 {
        failures.push(format!("triangulation changes area by {area_rel:e}"));
    }
    for c in &s.classes {
        if c.angle <= 0.0 {
            failures.push(format!("class {} has non-positive angle", c.class_id));
        }
    }

    ValidationReport {
        name: s.name.clone(),
        topology: s.topology,
        gauss_bonnet_residual: gb,
        gauss_bonnet_tolerance: gb_tol,
        gluing_length_residuals: length_res,
        gluing_motion_residuals: motion_res,
        area_polygons: ap,
        area_triangles: at,
        area_relative_residual: area_rel,
        cone_points: s
            .classes
            .iter()
            .map(|c| ConeSummary {
                class_id: c.class_id,
                angle: c.angle,
                angle_over_pi: c.angle / PI,
                kind: c.kind,
                boundary: c.boundary,
            })
            .collect(),
        ok: failures.is_empty(),
        failures,
    }
}

impl ConeSurface {
    pub fn validate(&self) -> ValidationReport {
        validate_surface(self)
    }
}
