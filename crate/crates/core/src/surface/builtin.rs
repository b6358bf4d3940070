//! Built-in test surfaces.
//!
//! `example_sigma` is a cylinder made of a hexagon `A C E B Z D` and its
//! mirror image `A D' Z' B' E' C'`, with `AC ~ AC'`, `AD ~ AD'`, `EB ~ E'B'`
//! and `BZ ~ B'Z'`. The corner at `A` is a right angle in each hexagon and
//! the corner at `B` is reflex (3π/2), so `θ(A) = π` and `θ(B) = 3π`.
//! With `A = (0,0)` and `B = (0,2)` the loops through `B₁ = (-1,1)` and
//! `B₂ = (1,1)` are closed geodesics of equal length `2√2`.
//!
//! `mixed_torus` additionally glues the two boundary curves of that
//! cylinder, `CE ~ ZD` in the upper hexagon and `C'E' ~ Z'D'` in the lower.

use super::{ConeSurface, EdgeRef, Polygon};
use crate::error::{Error, Result};
use crate::geom::PlanarPoint;

pub const BUILTIN_NAMES: [&str; 4] = ["square_torus", "octagon_genus2", "mixed_torus", "example_sigma"];

fn poly(id: &str, pts: &[(f64, f64)]) -> Polygon {
    Polygon {
        id: id.to_string(),
        vertices: pts.iter().map(|&(x, y)| PlanarPoint::new(x, y)).collect(),
    }
}

fn e(polygon: usize, edge: usize) -> EdgeRef {
    EdgeRef { polygon, edge }
}

pub fn builtin(name: &str) -> Result<ConeSurface> {
    match name {
        "square_torus" => square_torus(),
        "octagon_genus2" => octagon(),
        "example_sigma" => sigma(false),
        "mixed_torus" => sigma(true),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

fn square_torus() -> Result<ConeSurface> {
    let p = poly("P", &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
    // a: exit through the right edge, b: exit through the top edge
    ConeSurface::new(
        Some("square_torus".into()),
        vec![p],
        vec![(e(0, 3), e(0, 1)), (e(0, 0), e(0, 2))],
    )
}

fn octagon() -> Result<ConeSurface> {
    // regular octagon with unit sides, first edge horizontal at the bottom
    let r = 0.5 / (std::f64::consts::PI / 8.0).sin();
    let pts: Vec<(f64, f64)> = (0..8)
        .map(|k| {
            let a = -std::f64::consts::FRAC_PI_2 - std::f64::consts::PI / 8.0
                + k as f64 * std::f64::consts::FRAC_PI_4;
            (r * a.cos(), r * a.sin())
        })
        .collect();
    let p = poly("O", &pts);
    // exiting through edge k+4 enters through the opposite edge k
    ConeSurface::new(
        Some("octagon_genus2".into()),
        vec![p],
        (0..4).map(|k| (e(0, k), e(0, k + 4))).collect(),
    )
}

fn sigma(closed: bool) -> Result<ConeSurface> {
    // A C E B Z D
    let upper = poly(
        "upper",
        &[(0.0, 0.0), (2.0, 2.0), (1.0, 3.0), (0.0, 2.0), (-1.0, 3.0), (-2.0, 2.0)],
    );
    // A D' Z' B' E' C'
    let lower = poly(
        "lower",
        &[(0.0, 0.0), (-2.0, -2.0), (-1.0, -3.0), (0.0, -2.0), (1.0, -3.0), (2.0, -2.0)],
    );
    // upper edges: 0 AC, 1 CE, 2 EB, 3 BZ, 4 ZD, 5 DA
    // lower edges: 0 AD', 1 D'Z', 2 Z'B', 3 B'E', 4 E'C', 5 C'A
    let mut gluings = Vec::new();
    if closed {
        gluings.push((e(0, 1), e(0, 4)));
        gluings.push((e(1, 4), e(1, 1)));
    }
    gluings.extend([
        (e(0, 0), e(1, 5)),
        (e(0, 5), e(1, 0)),
        (e(0, 2), e(1, 3)),
        (e(0, 3), e(1, 2)),
    ]);
    let name = if closed { "mixed_torus" } else { "example_sigma" };
    ConeSurface::new(Some(name.into()), vec![upper, lower], gluings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::ConeKind;
    use std::f64::consts::PI;

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(builtin("klein"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn square_torus_has_one_regular_class() {
        let s = builtin("square_torus").unwrap();
        assert_eq!(s.classes.len(), 1);
        assert_eq!(s.classes[0].kind, ConeKind::Regular);
        assert!((s.classes[0].angle - 2.0 * PI).abs() < 1e-12);
        assert_eq!(s.singular_points().count(), 0);
    }

    #[test]
    fn octagon_vertex_is_six_pi() {
        let s = builtin("octagon_genus2").unwrap();
        assert_eq!(s.classes.len(), 1);
        // oracle: eight interior angles of 3π/4
        assert!((s.classes[0].angle - 8.0 * 0.75 * PI).abs() < 1e-12);
        assert_eq!(s.classes[0].kind, ConeKind::Large);
        assert_eq!(s.topology.euler_characteristic, -2);
        assert_eq!(s.topology.genus, 2);
    }

    #[test]
    fn sigma_angles_pi_and_three_pi() {
        let s = builtin("example_sigma").unwrap();
        let mut cones: Vec<f64> = s.singular_points().map(|c| c.angle).collect();
        cones.sort_by(f64::total_cmp);
        assert_eq!(cones.len(), 2);
        assert!((cones[0] - PI).abs() < 1e-12);
        assert!((cones[1] - 3.0 * PI).abs() < 1e-12);
        assert_eq!(s.topology.euler_characteristic, 0);
        assert_eq!(s.topology.boundary_components, 2);
        assert_eq!(s.topology.genus, 0);
    }

    #[test]
    fn mixed_torus_is_closed_genus_one() {
        let s = builtin("mixed_torus").unwrap();
        let mut cones: Vec<f64> = s.singular_points().map(|c| c.angle).collect();
        cones.sort_by(f64::total_cmp);
        assert_eq!(cones.len(), 2);
        assert!((cones[0] - PI).abs() < 1e-12);
        assert!((cones[1] - 3.0 * PI).abs() < 1e-12);
        assert_eq!(s.topology.euler_characteristic, 0);
        assert_eq!(s.topology.boundary_components, 0);
        assert_eq!(s.topology.genus, 1);
    }
}
