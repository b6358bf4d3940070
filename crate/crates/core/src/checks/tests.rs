use super::*;
use crate::shortest::{class_representatives, ShortestOptions};
use crate::surface::builtin;

#[test]
fn sigma_bigons_sit_on_large_cones() {
    let s = builtin("example_sigma").unwrap();
    let b = s.locate(0, PlanarPoint::new(0.0, 2.0)).unwrap();
    let w = HomotopyWord::parse("a' d", &s.labels, false).unwrap();
    for k in 1..=3usize {
        let pair = class_representatives(&s, b, (b, w.power(k)), 3.0 * k as f64, &ShortestOptions::default()).unwrap();
        let rep = bigon_check(&s, b, &pair.class_members).unwrap();
        assert!(rep.ok(), "{:?}", rep.counterexamples);
        assert!(rep.bigons >= 1);
        if k >= 2 {
            assert!(rep.corners_checked >= 1, "k = {k}: {rep:?}");
        }
    }
}

#[test]
fn clearance_is_positive_on_mixed_torus() {
    let s = builtin("mixed_torus").unwrap();
    let words: Vec<_> = ["a", "c' e", "a c' e"]
        .iter()
        .map(|w| HomotopyWord::parse(w, &s.labels, true).unwrap())
        .collect();
    let c = empirical_clearance(&s, &words, &ClosedOptions::default()).unwrap();
    assert!(c > 1e-6 && c.is_finite(), "{c}");
}
