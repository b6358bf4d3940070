use super::{Suite, SuiteResult, VerifyConfig, CORPUS};
use crate::checks::{bigon_check, empirical_clearance, BigonReport};
use crate::closed::{closed_with, density_sequence, translation_length, ClosedOptions, DensityTarget};
use crate::error::Result;
use crate::geom::PlanarPoint;
use crate::oracle::{default_spacing, net_distance, net_loop_length};
use crate::shortest::{class_representatives, shortest_grown, ShortestOptions};
use crate::surface::{builtin, validate_surface, ConeSurface, SurfacePoint};
use crate::word::{HomotopyWord, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn closed_opts(cfg: &VerifyConfig) -> ClosedOptions {
    ClosedOptions { stop: cfg.tolerances.stop, eps_ang: cfg.tolerances.ang, tie: cfg.tolerances.tie, ..Default::default() }
}

fn shortest_opts(cfg: &VerifyConfig) -> ShortestOptions {
    ShortestOptions { max_cells: cfg.max_cells, tie: cfg.tolerances.tie, ..Default::default() }
}

fn word(s: &ConeSurface, w: &str, cyclic: bool) -> Result<HomotopyWord> {
    HomotopyWord::parse(w, &s.labels, cyclic)
}

/// The σ-class word of the two-hexagon example and its tie partner.
pub const SIGMA: &str = "a' d";
pub const TAU: &str = "b' d";

pub fn sigma_base(s: &ConeSurface) -> Result<SurfacePoint> {
    s.locate(0, PlanarPoint::new(0.0, 2.0))
}

/// Closed words compared with the net oracle.
pub fn closed_corpus(name: &str) -> &'static [&'static str] {
    match name {
        "square_torus" => &["a", "a b", "a a b", "a^3 b^4"],
        "octagon_genus2" => &["a", "b"],
        "mixed_torus" => &["a", "c' e", "a c' e"],
        "example_sigma" => &["a' d", "b' d", "a' d b' d"],
        _ => &[],
    }
}

pub(super) fn validation(cfg: &VerifyConfig) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::Validation);
    for name in &cfg.corpus {
        let name = name.as_str();
        let built = builtin(name).and_then(|s| if cfg.fault_injection { perturbed(&s) } else { Ok(s) });
        let s = match built {
            Ok(s) => s,
            Err(e) => {
                r.fail(format!("{name}: {e}"));
                continue;
            }
        };
        let v = validate_surface(&s);
        let limit = 1e-9 * s.topology.vertices as f64;
        r.check(v.ok, || format!("{name}: {:?}", v.failures));
        r.check(v.gauss_bonnet_residual < limit, || {
            format!("{name}: Gauss-Bonnet residual {:e}", v.gauss_bonnet_residual)
        });
        r.measure(&format!("{name}.gauss_bonnet_residual"), v.gauss_bonnet_residual);
        let angles: Vec<f64> = s.classes.iter().map(|c| c.angle / PI).collect();
        r.measure(&format!("{name}.angles_over_pi"), &angles);
        if name == "example_sigma" {
            let near = |a: f64, b: f64| (a - b).abs() <= 1e-9 / PI;
            let ok = angles.iter().all(|&a| near(a, 1.0) || near(a, 3.0))
                && angles.iter().any(|&a| near(a, 1.0))
                && angles.iter().any(|&a| near(a, 3.0));
            r.check(ok, || format!("example_sigma angles {angles:?}"));
        }
    }
    r
}

/// The surface rebuilt with one polygon vertex nudged off its place.
fn perturbed(s: &ConeSurface) -> Result<ConeSurface> {
    let mut doc = s.to_doc();
    let v = &mut doc.polygons[0].vertices[1];
    v[0] += 1e-3;
    doc.build()
}

fn random_point(s: &ConeSurface, poly: usize, rng: &mut ChaCha8Rng) -> SurfacePoint {
    let v = &s.polygons[poly].vertices;
    let (lo, hi) = v.iter().fold(
        (PlanarPoint::new(f64::MAX, f64::MAX), PlanarPoint::new(f64::MIN, f64::MIN)),
        |(lo, hi), p| (PlanarPoint::new(lo.x.min(p.x), lo.y.min(p.y)), PlanarPoint::new(hi.x.max(p.x), hi.y.max(p.y))),
    );
    loop {
        let x = PlanarPoint::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if let Ok(p @ SurfacePoint::Chart { .. }) = s.locate(poly, x) {
            return p;
        }
    }
}

/// A reduced word leaving `poly` through glued sides; returns the final polygon.
fn random_word(s: &ConeSurface, mut poly: usize, len: usize, rng: &mut ChaCha8Rng) -> (HomotopyWord, usize) {
    let mut w = HomotopyWord::default();
    for _ in 0..len {
        let options: Vec<Letter> = (0..s.gluings.len())
            .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
            .filter(|l| {
                let g = &s.gluings[l.gluing];
                let from = if l.inverse { g.side_a } else { g.side_b };
                from.polygon == poly && w.letters.last() != Some(&l.inv())
            })
            .collect();
        if options.is_empty() {
            break;
        }
        let l = options[rng.gen_range(0..options.len())];
        let g = &s.gluings[l.gluing];
        poly = if l.inverse { g.side_b.polygon } else { g.side_a.polygon };
        w.letters.push(l);
    }
    (w, poly)
}

/// Shortest segment with the search radius grown until the lift is reached
/// and every shorter path fits inside.
pub(super) fn oracle(cfg: &VerifyConfig) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::Oracle);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut queries, mut worst) = (0usize, 0f64);
    for name in &cfg.corpus {
        let name = name.as_str();
        let s = match builtin(name) {
            Ok(s) => s,
            Err(e) => {
                r.fail(format!("{name}: {e}"));
                continue;
            }
        };
        let spacing = default_spacing(&s);
        // the octagon's cover grows exponentially, so its words stay short
        let max_len = if name == "octagon_genus2" { 1 } else { 2 };
        for _ in 0..cfg.segment_queries {
            let poly = rng.gen_range(0..s.polygons.len());
            let p = random_point(&s, poly, &mut rng);
            let (w, end) = random_word(&s, poly, rng.gen_range(0..=max_len), &mut rng);
            let q = random_point(&s, end, &mut rng);
            let label = format!("{name} segment [{}]", w.format(&s.labels));
            let reference = net_distance(&s, p, (q, &w), spacing);
            let got = shortest_grown(&s, p, (q, w), &shortest_opts(cfg));
            match (got, reference) {
                (Ok(m), Ok(d)) => {
                    queries += 1;
                    let rel = (m.length - d).abs() / d.max(1e-12);
                    worst = worst.max(rel);
                    r.check(rel <= 1e-4, || format!("{label}: {} vs net {d}", m.length));
                }
                (a, b) => r.fail(format!("{label}: {:?} / {:?}", a.err(), b.err())),
            }
        }
        for w in closed_corpus(name) {
            let label = format!("{name} loop [{w}]");
            let res = word(&s, w, true).and_then(|w| {
                let c = closed_with(&s, &w, &closed_opts(cfg))?;
                Ok((c.length, net_loop_length(&s, &w, spacing)?))
            });
            match res {
                Ok((c, d)) => {
                    queries += 1;
                    let rel = (c - d).abs() / d;
                    worst = worst.max(rel);
                    r.check(rel <= 1e-4, || format!("{label}: {c} vs net {d}"));
                }
                Err(e) => r.fail(format!("{label}: {e}")),
            }
        }
    }
    r.measure("queries", queries);
    r.measure("worst_relative_error", worst);
    if cfg.corpus.len() == CORPUS.len() {
        r.check(queries >= 50, || format!("only {queries} queries"));
    }
    r
}

pub(super) fn lattice(cfg: &VerifyConfig) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::Lattice);
    for (name, w, exact, tol) in [
        ("square_torus", "a^3 b^4", 5.0, 1e-9),
        ("octagon_genus2", "a", 1.0 + 2f64.sqrt(), 1e-6),
    ] {
        if !cfg.uses(name) {
            continue;
        }
        let res = builtin(name).and_then(|s| {
            let c = closed_with(&s, &word(&s, w, true)?, &closed_opts(cfg))?;
            Ok((c.length, translation_length(&s, &c.paths[0])))
        });
        match res {
            Ok((len, tr)) => {
                r.measure(&format!("{name}.{w}"), len);
                r.check((len - exact).abs() <= tol, || format!("{name} {w}: {len} vs {exact}"));
                r.check((tr - exact).abs() <= tol, || format!("{name} {w}: translation {tr} vs {exact}"));
            }
            Err(e) => r.fail(format!("{name} {w}: {e}")),
        }
    }
    r
}

pub(super) fn clearance(cfg: &VerifyConfig) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::Clearance);
    for name in &cfg.corpus {
        let name = name.as_str();
        let res = builtin(name).and_then(|s| {
            let words = closed_corpus(name)
                .iter()
                .map(|w| word(&s, w, true))
                .collect::<Result<Vec<_>>>()?;
            let base = closed_opts(cfg);
            let tight = ClosedOptions { stop: base.stop / 10.0, ..base };
            Ok((empirical_clearance(&s, &words, &base)?, empirical_clearance(&s, &words, &tight)?))
        });
        match res {
            Ok((c, c_tight)) => {
                r.measure_len(&format!("{name}.empirical_c"), c);
                r.measure_len(&format!("{name}.empirical_c_tight"), c_tight);
                r.check(c > 1e-6, || format!("{name}: clearance {c}"));
                let stable = (c.is_infinite() && c_tight.is_infinite()) || (c_tight - c).abs() <= 0.1 * c;
                r.check(stable, || format!("{name}: clearance {c} moves to {c_tight}"));
            }
            Err(e) => r.fail(format!("{name}: {e}")),
        }
    }
    r
}

fn sigma_members(cfg: &VerifyConfig, k: usize, n: f64) -> Result<(ConeSurface, SurfacePoint, crate::shortest::ExtremalPair)> {
    let s = builtin("example_sigma")?;
    let b = sigma_base(&s)?;
    let w = word(&s, SIGMA, false)?.power(k);
    let pair = class_representatives(&s, b, (b, w), n, &shortest_opts(cfg))?;
    Ok((s, b, pair))
}

pub(super) fn bigons(cfg: &VerifyConfig) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::Bigons);
    let mut total = BigonReport::default();
    for k in (1..=4usize).filter(|_| cfg.uses("example_sigma")) {
        match sigma_members(cfg, k, 3.0 * k as f64).and_then(|(s, b, pair)| bigon_check(&s, b, &pair.class_members)) {
            Ok(rep) => total.merge(rep),
            Err(e) => r.fail(format!("sigma k={k}: {e}")),
        }
    }
    // tie pairs of the mixed torus, based off the cone points
    let res = builtin("mixed_torus").and_then(|s| {
        if !cfg.uses("mixed_torus") {
            return Ok(BigonReport::default());
        }
        let p = s.locate(0, PlanarPoint::new(0.3, 1.1))?;
        let mut rep = BigonReport::default();
        for w in ["c' e", "a c' e"] {
            for k in 1..=2 {
                let w = word(&s, w, false)?.power(k);
                let pair = class_representatives(&s, p, (p, w), 40.0, &shortest_opts(cfg))?;
                if pair.class_members.len() > 1 {
                    rep.merge(bigon_check(&s, p, &pair.class_members)?);
                }
            }
        }
        Ok(rep)
    });
    match res {
        Ok(rep) => total.merge(rep),
        Err(e) => r.fail(format!("mixed_torus: {e}")),
    }
    r.measure("pairs", total.pairs);
    r.measure("bigons", total.bigons);
    r.measure("corners_checked", total.corners_checked);
    r.measure("counterexamples", total.counterexamples.len());
    for c in &total.counterexamples {
        r.fail(c);
    }
    if cfg.uses("example_sigma") {
        r.check(total.corners_checked > 0, || "no bigon corner was checked".into());
    }
    r
}

/// Passages of a member at interior points, as (left, right) angle pairs.
fn turns(p: &crate::path::GeodesicPath) -> Vec<(f64, f64)> {
    p.passages().map(|c| (c.left, c.right)).collect()
}

pub(super) fn ties(cfg: &VerifyConfig) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::Ties);
    if !cfg.uses("example_sigma") {
        r.skip("needs example_sigma");
        return r;
    }
    let mut counts = Vec::new();
    for k in 1..=4usize {
        match sigma_members(cfg, k, 3.0 * k as f64) {
            Ok((_, _, pair)) => {
                let m = &pair.class_members;
                counts.push(m.len());
                r.check(m.len() >= 2, || format!("k={k}: {} members", m.len()));
                let spread = m.iter().map(|p| (p.length - pair.length).abs()).fold(0.0, f64::max);
                r.check(spread <= cfg.tolerances.tie * pair.length, || format!("k={k}: length spread {spread}"));
                // the extreme members part at a lift of the 3π point, one on each side
                let opposite = if k == 1 {
                    pair.left.events != pair.right.events
                } else {
                    turns(&pair.left)
                        .iter()
                        .zip(turns(&pair.right))
                        .any(|(a, b)| (a.0 - a.1) * (b.0 - b.1) < 0.0)
                };
                r.check(opposite, || format!("k={k}: extreme members do not turn oppositely"));
            }
            Err(e) => r.fail(format!("k={k}: {e}")),
        }
    }
    r.measure("members_per_power", counts);
    r
}

pub(super) fn envelope(cfg: &VerifyConfig) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::Envelope);
    if !cfg.uses("example_sigma") {
        r.skip("needs example_sigma");
        return r;
    }
    let period = 2.0 * 2f64.sqrt();
    match sigma_members(cfg, 3, 4.0 * period) {
        Ok((_, _, pair)) => {
            r.measure("members", pair.class_members.len());
            r.measure("containment_residual", pair.containment_residual);
            r.measure("crossings", pair.crossings);
            r.check(pair.class_members.len() == 8, || format!("{} members", pair.class_members.len()));
            r.check(pair.containment_residual <= 1e-9 && pair.envelope_ok, || {
                format!("containment residual {}", pair.containment_residual)
            });
            let all = |p: &crate::path::GeodesicPath, left: bool| {
                let t = turns(p);
                !t.is_empty() && t.iter().all(|&(l, rt)| if left { l < rt } else { l > rt })
            };
            r.check(all(&pair.left, true), || format!("left member turns {:?}", turns(&pair.left)));
            r.check(all(&pair.right, false), || format!("right member turns {:?}", turns(&pair.right)));
        }
        Err(e) => r.fail(e),
    }
    r
}

pub(super) fn density(cfg: &VerifyConfig) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::Density);
    let opts = closed_opts(cfg);
    let res = builtin("square_torus").and_then(|s| {
        if !cfg.uses("square_torus") {
            return Ok(Vec::new());
        }
        let p = s.locate(0, PlanarPoint::new(0.5, 0.5))?;
        let target = DensityTarget::new(&s, p, &word(&s, "a", true)?, &opts)?;
        let fam = power_family(&s, "a", "b", 2..=20)?;
        Ok(density_sequence(&s, &target, &fam, 2.0, &opts))
    });
    match res {
        Ok(recs) => {
            let d: Vec<Option<f64>> = recs.iter().map(|x| x.sup_distance).collect();
            for x in &recs {
                let ok = x.sup_distance.is_some_and(|v| v <= 3.0 / x.n as f64 + 1e-9);
                r.check(ok, || format!("torus n={}: {:?} ({})", x.n, x.sup_distance, x.status));
            }
            r.measure("torus.sup_distance", d);
        }
        Err(e) => r.fail(format!("torus: {e}")),
    }
    let res = builtin("example_sigma").and_then(|s| {
        if !cfg.uses("example_sigma") {
            return Ok(Vec::new());
        }
        let b = sigma_base(&s)?;
        let target = DensityTarget::new(&s, b, &word(&s, SIGMA, true)?, &opts)?;
        let fam = power_family(&s, SIGMA, TAU, 1..=8)?;
        Ok(density_sequence(&s, &target, &fam, 2.0, &opts))
    });
    match res {
        Ok(recs) => {
            let d: Vec<Option<f64>> = recs.iter().map(|x| x.sup_distance).collect();
            r.check(d.iter().all(Option::is_some), || format!("sigma: failed members {d:?}"));
            let v: Vec<f64> = d.iter().flatten().copied().collect();
            r.check(v.windows(2).all(|w| w[1] <= w[0] + cfg.tolerances.tie), || format!("sigma: {v:?}"));
            r.measure("sigma.sup_distance", d);
        }
        Err(e) => r.fail(format!("sigma: {e}")),
    }
    r
}

/// The family `g^n h` for `n` in `ns`, as cyclic words.
pub fn power_family(
    s: &ConeSurface,
    g: &str,
    h: &str,
    ns: std::ops::RangeInclusive<usize>,
) -> Result<Vec<(usize, HomotopyWord)>> {
    let (g, h) = (word(s, g, true)?, word(s, h, true)?);
    Ok(ns.map(|n| (n, g.power(n).concat(&h))).collect())
}
