use super::*;
use crate::geom::point_triangle_distance;
use crate::surface::builtin;
use crate::tracer::{trace_ray, Direction};

fn torus_base(s: &ConeSurface) -> SurfacePoint {
    s.locate(0, PlanarPoint::new(0.3, 0.6)).unwrap()
}

fn lattice_count(s: &ConeSurface, base: PlanarPoint, r: f64) -> usize {
    let n = r.ceil() as i64 + 2;
    let mut count = 0;
    for i in -n..=n {
        for j in -n..=n {
            let off = PlanarPoint::new(i as f64, j as f64);
            for t in &s.triangles {
                let pts = [t.pts[0] + off, t.pts[1] + off, t.pts[2] + off];
                if point_triangle_distance(base, &pts) < r {
                    count += 1;
                }
            }
        }
    }
    count
}

#[test]
fn torus_matches_lattice() {
    let s = builtin("square_torus").unwrap();
    let base = torus_base(&s);
    for r in [0.25, 1.0, 2.5, 4.0] {
        let tree = unfold_disk(&s, base, r).unwrap();
        assert_eq!(tree.len(), lattice_count(&s, PlanarPoint::new(0.3, 0.6), r), "radius {r}");
    }
}

#[test]
fn torus_cells_do_not_overlap() {
    let s = builtin("square_torus").unwrap();
    let tree = unfold_disk(&s, torus_base(&s), 3.0).unwrap();
    let mut seen = std::collections::HashSet::new();
    for c in &tree.cells {
        let t = tree.developed_triangle(&s, c.id);
        let cx = (t[0] + t[1] + t[2]) * (1.0 / 3.0);
        assert!(seen.insert(((cx.x * 1e6).round() as i64, (cx.y * 1e6).round() as i64)));
    }
}

#[test]
fn small_radius_is_root_only() {
    let s = builtin("square_torus").unwrap();
    let tree = unfold_disk(&s, torus_base(&s), 0.05).unwrap();
    assert_eq!(tree.len(), 1);
    assert!(tree.cells[0].word.is_empty());
}

#[test]
fn growth_is_monotone() {
    let s = builtin("example_sigma").unwrap();
    let base = s.locate(0, PlanarPoint::new(0.0, 1.0)).unwrap();
    let mut last = 0;
    for r in [0.5, 1.0, 2.0, 3.0, 4.0] {
        let n = unfold_disk(&s, base, r).unwrap().len();
        assert!(n >= last);
        last = n;
    }
}

#[test]
fn sigma_repeats_sources_and_closes_fans() {
    let s = builtin("example_sigma").unwrap();
    let base = s.locate(0, PlanarPoint::new(0.0, 1.0)).unwrap();
    let tree = unfold_disk(&s, base, 4.0).unwrap();
    assert!(tree.len() > s.triangles.len());
    // lifts whose cells sit well inside the disk must have full fans
    for l in &tree.lifts {
        let far = l.corners.iter().any(|&(c, _)| tree.cells[c].distance > 1.0);
        if !far && !s.classes[l.class].boundary {
            assert!(l.complete, "lift of class {} has {} corners", l.class, l.corners.len());
        }
    }
}

#[test]
fn octagon_fan_has_six_pi() {
    let s = builtin("octagon_genus2").unwrap();
    let base = s.locate(0, PlanarPoint::new(0.5, 1.0)).unwrap();
    let tree = unfold_disk(&s, base, 2.0).map_err(|e| e.to_string()).unwrap();
    let l = tree.lifts.iter().find(|l| l.complete).expect("a complete lift");
    let total: f64 = l
        .corners
        .iter()
        .map(|&(c, k)| s.triangles[tree.cells[c].source].corner_angle(k))
        .sum();
    assert!((total - 6.0 * std::f64::consts::PI).abs() < 1e-9);
}

#[test]
fn cap_is_reported() {
    let s = builtin("octagon_genus2").unwrap();
    let base = s.locate(0, PlanarPoint::new(0.5, 1.0)).unwrap();
    let opts = UnfoldOptions { max_cells: 50, margin: None };
    assert!(matches!(unfold_with(&s, base, 10.0, opts), Err(Error::ResourceCap(_))));
}

#[test]
fn walk_word_on_torus() {
    let s = builtin("square_torus").unwrap();
    let tree = unfold_disk(&s, torus_base(&s), 4.0).unwrap();
    let w = HomotopyWord::parse("a b", &s.labels, false).unwrap();
    let (c, pos) = tree.locate_lift(&s, &torus_base(&s), &w.letters).unwrap();
    let q = tree.cells[c].motion.apply(pos);
    assert!(q.dist(PlanarPoint::new(1.3, 1.6)) < 1e-9);
}

#[test]
fn develop_straight_trace() {
    let s = builtin("square_torus").unwrap();
    let base = torus_base(&s);
    let tree = unfold_disk(&s, base, 5.0).unwrap();
    let path = trace_ray(&s, base, Direction::new(0.4), 3.0).unwrap();
    let d = develop_path(&s, &tree, &path).unwrap();
    let a = d.points[0];
    let b = *d.points.last().unwrap();
    assert!((a.dist(b) - 3.0).abs() < 1e-9);
    for p in &d.points {
        assert!((b - a).cross(*p - a).abs() < 1e-9);
    }
    let short = unfold_disk(&s, base, 1.0).unwrap();
    assert!(matches!(develop_path(&s, &short, &path), Err(Error::Escape(_))));
}

#[test]
fn svg_is_deterministic() {
    let s = builtin("example_sigma").unwrap();
    let base = s.locate(0, PlanarPoint::new(0.0, 1.0)).unwrap();
    let t1 = unfold_disk(&s, base, 2.0).unwrap();
    let t2 = unfold_disk(&s, base, 2.0).unwrap();
    assert_eq!(render_svg(&s, &t1, &[], &[]), render_svg(&s, &t2, &[], &[]));
}
