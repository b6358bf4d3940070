//! Ear clipping for simple counter-clockwise polygons.

use crate::geom::{corner_angle, orient, point_in_triangle, PlanarPoint};

/// Returns triangles as index triples into `pts`, each counter-clockwise.
/// Among the available ears the one with the largest minimum angle is cut
/// first, which keeps slivers out of the output on convex inputs.
pub fn ear_clip(pts: &[PlanarPoint]) -> Vec<[usize; 3]> {
    let mut ring: Vec<usize> = (0..pts.len()).collect();
    let mut out = Vec::with_capacity(pts.len().saturating_sub(2));
    let scale = pts
        .iter()
        .flat_map(|a| pts.iter().map(move |b| a.dist(*b)))
        .fold(0.0, f64::max)
        .max(1e-300);
    while ring.len() > 3 {
        let n = ring.len();
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            let a = ring[(i + n - 1) % n];
            let b = ring[i];
            let c = ring[(i + 1) % n];
            let (pa, pb, pc) = (pts[a], pts[b], pts[c]);
            if orient(pa, pb, pc) <= 1e-12 * scale * scale {
                continue;
            }
            let tri = [pa, pb, pc];
            let blocked = ring.iter().any(|&j| {
                j != a
                    && j != b
                    && j != c
                    && pts[j] != pa
                    && pts[j] != pb
                    && pts[j] != pc
                    && point_in_triangle(pts[j], &tri, 1e-12)
            });
            if blocked {
                continue;
            }
            let q = corner_angle(pc, pa, pb)
                .min(corner_angle(pa, pb, pc))
                .min(corner_angle(pb, pc, pa));
            if best.is_none_or(|(_, bq)| q > bq + 1e-12) {
                best = Some((i, q));
            }
        }
        let Some((i, _)) = best else {
            // degenerate input; cut the first non-reflex corner anyway
            let i = (0..n)
                .find(|&i| orient(pts[ring[(i + n - 1) % n]], pts[ring[i]], pts[ring[(i + 1) % n]]) > 0.0)
                .unwrap_or(0);
            out.push([ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]]);
            ring.remove(i);
            continue;
        };
        out.push([ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]]);
        ring.remove(i);
    }
    if ring.len() == 3 {
        out.push([ring[0], ring[1], ring[2]]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::polygon_signed_area;

    fn area(pts: &[PlanarPoint], tris: &[[usize; 3]]) -> f64 {
        tris.iter()
            .map(|t| polygon_signed_area(&[pts[t[0]], pts[t[1]], pts[t[2]]]))
            .sum()
    }

    #[test]
    fn square_gives_two_triangles() {
        let pts: Vec<_> = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
            .iter()
            .map(|&(x, y)| PlanarPoint::new(x, y))
            .collect();
        let tris = ear_clip(&pts);
        assert_eq!(tris.len(), 2);
        assert!((area(&pts, &tris) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reflex_hexagon_preserves_area() {
        let pts: Vec<_> = [(0.0, 0.0), (2.0, 2.0), (1.0, 3.0), (0.0, 2.0), (-1.0, 3.0), (-2.0, 2.0)]
            .iter()
            .map(|&(x, y)| PlanarPoint::new(x, y))
            .collect();
        let tris = ear_clip(&pts);
        assert_eq!(tris.len(), 4);
        assert!((area(&pts, &tris) - polygon_signed_area(&pts)).abs() < 1e-12);
        for t in &tris {
            assert!(orient(pts[t[0]], pts[t[1]], pts[t[2]]) > 0.0);
        }
    }
}
