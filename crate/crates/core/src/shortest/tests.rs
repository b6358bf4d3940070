use super::*;
use crate::geom::PlanarPoint;
use crate::surface::{builtin, SurfacePoint};
use crate::word::HomotopyWord;
use crate::Error;

fn at(s: &crate::ConeSurface, poly: usize, x: f64, y: f64) -> SurfacePoint {
    s.locate(poly, PlanarPoint::new(x, y)).unwrap()
}

#[test]
fn torus_lattice_segment() {
    let s = builtin("square_torus").unwrap();
    let p = at(&s, 0, 0.5, 0.5);
    let w = HomotopyWord::parse("a a b", &s.labels, false).unwrap();
    let paths = shortest_segment(&s, p, (p, w), 6.0).unwrap();
    assert_eq!(paths.len(), 1);
    assert!((paths[0].length - 5f64.sqrt()).abs() < 1e-9);
}

#[test]
fn same_triangle_is_chart_segment() {
    let s = builtin("square_torus").unwrap();
    let p = at(&s, 0, 0.2, 0.1);
    let q = at(&s, 0, 0.3, 0.4);
    let paths = shortest_segment(&s, p, (q, HomotopyWord::default()), 2.0).unwrap();
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0].segments().count(), 1);
    assert!((paths[0].length - 0.1f64.sqrt()).abs() < 1e-12);
}

#[test]
fn sigma_class_doubles_each_period() {
    let s = builtin("example_sigma").unwrap();
    let b = at(&s, 0, 0.0, 2.0);
    let w = HomotopyWord::parse("a' d", &s.labels, false).unwrap();
    for k in 1..=4usize {
        let pair = class_representatives(&s, b, (b, w.power(k)), 3.0 * k as f64, &ShortestOptions::default()).unwrap();
        assert_eq!(pair.class_members.len(), 1 << k);
        assert!((pair.length - 2.0 * 2f64.sqrt() * k as f64).abs() < 1e-9);
        assert!(pair.envelope_ok);
        for m in &pair.class_members {
            assert!((m.length - pair.length).abs() <= 1e-7 * pair.length);
        }
    }
}

#[test]
fn unreachable_target_errors() {
    let s = builtin("square_torus").unwrap();
    let p = at(&s, 0, 0.5, 0.5);
    let w = HomotopyWord::parse("a a a a", &s.labels, false).unwrap();
    let r = shortest_segment(&s, p, (p, w), 2.0);
    assert!(matches!(r, Err(Error::Unreachable(_))));
}

#[test]
fn torus_scan_has_no_bifurcation() {
    let s = builtin("square_torus").unwrap();
    let p = at(&s, 0, 0.3, 0.6);
    let fam = ["a", "b", "a b"].map(|w| HomotopyWord::parse(w, &s.labels, true).unwrap());
    let rep = bifurcation_scan(&s, p, &fam, 3, 8.0, &ShortestOptions::default());
    assert_eq!(rep.bifurcating, 0);
    assert!(rep.rows.iter().all(|r| r.error.is_none()));
}

#[test]
fn mixed_torus_singleton_and_bifurcation() {
    let s = builtin("mixed_torus").unwrap();
    let p = at(&s, 0, 0.3, 1.1);
    let a = HomotopyWord::parse("a", &s.labels, false).unwrap();
    let pair = class_representatives(&s, p, (p, a), 40.0, &ShortestOptions::default()).unwrap();
    assert_eq!(pair.class_members.len(), 1);
    let fam = ["a", "c' e"].map(|w| HomotopyWord::parse(w, &s.labels, true).unwrap());
    let rep = bifurcation_scan(&s, p, &fam, 3, 40.0, &ShortestOptions::default());
    assert!(rep.bifurcating >= 1);
    assert!(rep.rows.iter().filter(|r| r.word == "a").all(|r| r.members == 1));
}
