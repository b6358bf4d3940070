use super::*;
use crate::surface::builtin;

#[test]
fn torus_segment_and_loop() {
    let s = builtin("square_torus").unwrap();
    let p = s.locate(0, PlanarPoint::new(0.5, 0.5)).unwrap();
    let w = HomotopyWord::parse("a a b", &s.labels, false).unwrap();
    let d = net_distance(&s, p, (p, &w), default_spacing(&s)).unwrap();
    assert!((d - 5f64.sqrt()).abs() < 1e-4 * d, "{d}");
    let w = HomotopyWord::parse("a^3 b^4", &s.labels, true).unwrap();
    let d = net_loop_length(&s, &w, default_spacing(&s)).unwrap();
    assert!((d - 5.0).abs() < 1e-4 * d, "{d}");
}

#[test]
fn octagon_generator_loop() {
    let s = builtin("octagon_genus2").unwrap();
    let w = HomotopyWord::parse("a", &s.labels, true).unwrap();
    let d = net_loop_length(&s, &w, default_spacing(&s)).unwrap();
    let exact = 1.0 + 2f64.sqrt();
    assert!((d - exact).abs() < 1e-4 * exact, "{d}");
}
