use conesurf::closed::{closed_with, shorten_loop, translation_length, ClosedOptions};
use conesurf::path::Termination;
use conesurf::shortest::shortest_segment;
use conesurf::*;
use proptest::prelude::*;

fn torus() -> ConeSurface {
    builtin("square_torus").unwrap()
}

/// Word with `i` copies of a (or a') and `j` of b (or b'), interleaved by `order`.
fn lattice_word(s: &ConeSurface, i: i32, j: i32, order: &[bool]) -> HomotopyWord {
    let a = HomotopyWord::parse(if i >= 0 { "a" } else { "a'" }, &s.labels, false).unwrap().letters[0];
    let b = HomotopyWord::parse(if j >= 0 { "b" } else { "b'" }, &s.labels, false).unwrap().letters[0];
    let (mut na, mut nb) = (i.unsigned_abs(), j.unsigned_abs());
    let mut letters = Vec::new();
    for &first in order.iter().chain(std::iter::repeat(&true)) {
        if na == 0 && nb == 0 {
            break;
        }
        if (first && na > 0) || nb == 0 {
            letters.push(a);
            na -= 1;
        } else {
            letters.push(b);
            nb -= 1;
        }
    }
    HomotopyWord::cyclic(letters)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn torus_trace_wraps_the_straight_line(x in 0.05f64..0.95, y in 0.05f64..0.95, angle in 0.0f64..std::f64::consts::TAU, len in 0.1f64..6.0) {
        let s = torus();
        let p = s.locate(0, PlanarPoint::new(x, y)).unwrap();
        let path = trace_ray(&s, p, Direction::new(angle), len).unwrap();
        prop_assume!(path.termination == Termination::Length);
        prop_assert!((path.length - len).abs() < 1e-9);
        let (_, end, _) = path.segments().last().unwrap();
        let ideal = PlanarPoint::new(x, y) + Direction::new(angle).unit() * len;
        let wrap = |v: f64| v - v.floor();
        let d = |a: f64, b: f64| { let t = wrap(a - b); t.min(1.0 - t) };
        prop_assert!(d(end.x, ideal.x) < 1e-7 && d(end.y, ideal.y) < 1e-7);
        prop_assert!(check_local_geodesic(&s, &path).is_local_geodesic);
    }

    #[test]
    fn torus_loops_have_lattice_length(i in -3i32..=3, j in -3i32..=3, order in prop::collection::vec(any::<bool>(), 6)) {
        prop_assume!(i != 0 || j != 0);
        let s = torus();
        let w = lattice_word(&s, i, j, &order);
        let exact = ((i * i + j * j) as f64).sqrt();
        let st = shorten_loop(&s, &w, &ClosedOptions::default()).unwrap();
        prop_assert!((st.length - exact).abs() < 1e-9, "{} vs {exact}", st.length);
        prop_assert!((translation_length(&s, &st.path) - exact).abs() < 1e-9);
        prop_assert!(st.history.windows(2).all(|h| h[1] <= h[0] * (1.0 + 1e-12)));
        prop_assert!(check_local_geodesic(&s, &st.path).is_local_geodesic);
    }

    #[test]
    fn torus_segments_match_lattice_translates(px in 0.05f64..0.95, py in 0.05f64..0.95, qx in 0.05f64..0.95, qy in 0.05f64..0.95, i in 0i32..=2, j in 0i32..=2) {
        let s = torus();
        let p = s.locate(0, PlanarPoint::new(px, py)).unwrap();
        let q = s.locate(0, PlanarPoint::new(qx, qy)).unwrap();
        let w = lattice_word(&s, i, j, &[true, false, true, false]).as_linear();
        let exact = PlanarPoint::new(qx + i as f64 - px, qy + j as f64 - py).norm();
        let m = shortest_segment(&s, p, (q, w), exact + 2.0).unwrap();
        prop_assert_eq!(m.len(), 1);
        prop_assert!((m[0].length - exact).abs() < 1e-9);
    }

    #[test]
    fn conjugate_loops_agree_on_mixed_torus(k in 0usize..3, pick in 0usize..3) {
        let s = builtin("mixed_torus").unwrap();
        let w = HomotopyWord::parse(["a c' e", "c' e a a", "a e c'"][pick], &s.labels, true);
        prop_assume!(w.is_ok());
        let w = w.unwrap();
        let base = closed_with(&s, &w, &ClosedOptions::default());
        prop_assume!(base.is_ok());
        let base = base.unwrap();
        let r = closed_with(&s, &w.rotated(k % w.len()), &ClosedOptions::default()).unwrap();
        prop_assert!((r.length - base.length).abs() <= 1e-9 * base.length);
        prop_assert!(r.paths.iter().all(|p| min_clearance(&s, p, true).value() > 1e-6));
    }
}

#[test]
fn sigma_powers_have_linear_length() {
    let s = builtin("example_sigma").unwrap();
    let w = HomotopyWord::parse("a' d", &s.labels, true).unwrap();
    for k in 1..=4 {
        let c = closed_with(&s, &w.power(k), &ClosedOptions::default()).unwrap();
        assert!((c.length - 2.0 * 2f64.sqrt() * k as f64).abs() < 1e-9 * k as f64);
        for p in &c.paths {
            assert!(check_local_geodesic(&s, p).is_local_geodesic);
        }
    }
}
