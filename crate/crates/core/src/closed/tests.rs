use super::*;
use crate::path::{check_local_geodesic, min_clearance};
use std::f64::consts::PI;
use crate::surface::builtin;

fn word(s: &ConeSurface, w: &str) -> HomotopyWord {
    HomotopyWord::parse(w, &s.labels, true).unwrap()
}

#[test]
fn torus_lattice_lengths() {
    let s = builtin("square_torus").unwrap();
    for (w, len) in [("a", 1.0), ("a a b", 5f64.sqrt()), ("a^3 b^4", 5.0)] {
        let st = shorten_loop(&s, &word(&s, w), &ClosedOptions::default()).unwrap();
        assert!((st.length - len).abs() < 1e-9, "{w}: {}", st.length);
        assert!(check_local_geodesic(&s, &st.path).is_local_geodesic);
        assert!((translation_length(&s, &st.path) - len).abs() < 1e-9 * len);
        for h in st.history.windows(2) {
            assert!(h[1] <= h[0] * (1.0 + 1e-12));
        }
    }
}

#[test]
fn octagon_generator() {
    let s = builtin("octagon_genus2").unwrap();
    let st = shorten_loop(&s, &word(&s, "a"), &ClosedOptions::default()).unwrap();
    assert!((st.length - (1.0 + 2f64.sqrt())).abs() < 1e-9, "{}", st.length);
}

#[test]
fn sigma_class_ties_through_b() {
    let s = builtin("example_sigma").unwrap();
    let cg = closed_with(&s, &word(&s, "a' d"), &ClosedOptions::default()).unwrap();
    assert!((cg.length - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    assert_eq!(cg.paths.len(), 2);
    let through_b = cg
        .paths
        .iter()
        .flat_map(|p| p.passages())
        .any(|c| (c.left + c.right - 3.0 * PI).abs() < 1e-9);
    assert!(through_b);
    for p in &cg.paths {
        assert!(check_local_geodesic(&s, p).is_local_geodesic);
        assert!((translation_length(&s, p) - cg.length).abs() < 1e-9);
    }
}

#[test]
fn sigma_powers_count_necklaces() {
    let s = builtin("example_sigma").unwrap();
    let w = word(&s, "a' d");
    for (k, n) in [(2, 3), (3, 4), (4, 6), (5, 8)] {
        let cg = closed_with(&s, &w.power(k), &ClosedOptions::default()).unwrap();
        assert_eq!(cg.paths.len(), n, "k = {k}");
        assert!((cg.length - 2.0 * 2f64.sqrt() * k as f64).abs() < 1e-8);
    }
}

#[test]
fn conjugate_words_agree() {
    let s = builtin("mixed_torus").unwrap();
    let w = word(&s, "a c' e");
    let base = closed_with(&s, &w, &ClosedOptions::default()).unwrap();
    for k in 1..w.len() {
        let r = closed_with(&s, &w.rotated(k), &ClosedOptions::default()).unwrap();
        assert!((r.length - base.length).abs() <= 1e-9 * base.length);
    }
}

#[test]
fn mixed_torus_avoids_small_cones() {
    let s = builtin("mixed_torus").unwrap();
    for w in ["a", "c' e", "a c' e"] {
        let cg = closed_with(&s, &word(&s, w), &ClosedOptions::default()).unwrap();
        for p in &cg.paths {
            assert!(min_clearance(&s, p, true).value() > 1e-6, "{w}");
            assert!(check_local_geodesic(&s, p).is_local_geodesic, "{w}");
        }
    }
}

#[test]
fn barrier_rules() {
    let s = builtin("square_torus").unwrap();
    let a = closed_geodesic(&s, &word(&s, "a")).unwrap().remove(0);
    let b = closed_geodesic(&s, &word(&s, "b")).unwrap().remove(0);
    assert!(crossing_count(&s, &a, &b) >= 1);
    let r = constrained_shorten(&s, &word(&s, "a"), &b);
    assert!(matches!(r, Err(Error::Infeasible(_))));
    let p = constrained_shorten(&s, &word(&s, "a"), &a).unwrap();
    assert!((p.length - 1.0).abs() < 1e-9);
}

fn family(s: &ConeSurface, g: &str, h: &str, ns: std::ops::RangeInclusive<usize>) -> Vec<(usize, HomotopyWord)> {
    let (g, h) = (word(s, g), word(s, h));
    ns.map(|n| (n, g.power(n).concat(&h).as_cyclic())).collect()
}

#[test]
fn torus_density_rate() {
    let s = builtin("square_torus").unwrap();
    let p = s.locate(0, crate::PlanarPoint::new(0.5, 0.5)).unwrap();
    let opts = ClosedOptions::default();
    let target = DensityTarget::new(&s, p, &word(&s, "a"), &opts).unwrap();
    let recs = density_sequence(&s, &target, &family(&s, "a", "b", 2..=20), 2.0, &opts);
    for r in &recs {
        let d = r.sup_distance.unwrap_or_else(|| panic!("{}", r.status));
        assert!(d <= 3.0 / r.n as f64 + 1e-9, "n = {}: {d}", r.n);
    }
}

#[test]
fn constant_family_is_on_target() {
    let s = builtin("mixed_torus").unwrap();
    let p = s.locate(0, crate::PlanarPoint::new(0.3, 1.1)).unwrap();
    let opts = ClosedOptions::default();
    let target = DensityTarget::new(&s, p, &word(&s, "a"), &opts).unwrap();
    let fam: Vec<_> = (1..=3).map(|n| (n, word(&s, "a"))).collect();
    for r in density_sequence(&s, &target, &fam, 2.0, &opts) {
        assert!(r.sup_distance.unwrap() < 1e-9, "{:?}", r.sup_distance);
    }
}

#[test]
fn sigma_density_shrinks() {
    let s = builtin("example_sigma").unwrap();
    let b = s.locate(0, crate::PlanarPoint::new(0.0, 2.0)).unwrap();
    let opts = ClosedOptions::default();
    let target = DensityTarget::new(&s, b, &word(&s, "a' d"), &opts).unwrap();
    let recs = density_sequence(&s, &target, &family(&s, "a' d", "b' d", 1..=8), 2.0, &opts);
    let d: Vec<f64> = recs.iter().map(|r| r.sup_distance.unwrap_or_else(|| panic!("{}", r.status))).collect();
    for w in d.windows(2) {
        assert!(w[1] <= w[0] + 1e-9, "{d:?}");
    }
}
