use crate::args;
use crate::report::{emit, to_value, write_file, CliError, CliResult, ExperimentConfig};
use crate::{Cli, Command};
use conesurf::closed::{closed_with, translation_length, density_sequence, develop_near, window_tree, ClosedOptions, DensityTarget};
use conesurf::shortest::{class_representatives, shortest_grown, shortest_with, ShortestOptions};
use conesurf::unfolding::{develop_path, render_svg, unfold_with, SvgMark, SvgPath, UnfoldOptions, UnfoldingTree};
use conesurf::verify::{run_verify, sigma_base, Suite, VerifyConfig, SIGMA, TAU};
use conesurf::{builtin, parse_surface, validate_surface, ConeSurface, Direction, GeodesicPath, PathEvent, PlanarPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::f64::consts::PI;

const COLORS: [&str; 6] = ["#c0392b", "#2471a3", "#1e8449", "#b9770e", "#7d3c98", "#117a65"];

fn load(cli: &Cli, positional: Option<&std::path::PathBuf>) -> CliResult<ConeSurface> {
    let g = &cli.global;
    match (positional.or(g.file.as_ref()), &g.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            Ok(parse_surface(&text)?)
        }
        (None, Some(name)) => Ok(builtin(name)?),
        (None, None) => Err(CliError::Input("pass --builtin NAME or --file PATH".into())),
    }
}

fn surface_ref(cli: &Cli, s: Option<&ConeSurface>) -> Value {
    match (&cli.global.file, &cli.global.builtin, s) {
        (Some(p), _, Some(s)) => json!({ "file": p, "surface": serde_json::from_str::<Value>(&s.to_json()).unwrap_or(Value::Null) }),
        (_, Some(b), _) => json!({ "builtin": b }),
        _ => Value::Null,
    }
}

fn config(cli: &Cli, s: Option<&ConeSurface>, params: Value) -> ExperimentConfig {
    let g = &cli.global;
    let command = format!("{:?}", cli.command).split([' ', '{']).next().unwrap_or_default().to_lowercase();
    ExperimentConfig {
        command,
        surface: surface_ref(cli, s),
        params,
        tolerances: g.tolerances(),
        seed: g.seed,
        max_cells: g.max_cells,
        json_out: g.json_out.clone(),
        svg_out: g.svg_out.clone(),
    }
}

fn closed_opts(cli: &Cli) -> ClosedOptions {
    let t = cli.global.tolerances();
    ClosedOptions { stop: t.stop, eps_ang: t.ang, tie: t.tie, ..Default::default() }
}

fn shortest_opts(cli: &Cli) -> ShortestOptions {
    ShortestOptions { max_cells: cli.global.max_cells, tie: cli.global.eps_tie, ..Default::default() }
}

fn unfold_opts(cli: &Cli) -> UnfoldOptions {
    UnfoldOptions { max_cells: cli.global.max_cells, ..Default::default() }
}

fn svg_paths(s: &ConeSurface, tree: &UnfoldingTree, paths: &[GeodesicPath]) -> Vec<SvgPath> {
    paths
        .iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let d = develop_path(s, tree, p).ok()?;
            Some(SvgPath { points: d.points, color: COLORS[i % COLORS.len()].into(), label: None })
        })
        .collect()
}

fn base_mark(tree: &UnfoldingTree) -> SvgMark {
    SvgMark { at: tree.cells[tree.root].motion.apply(tree.base_pos), color: "#000".into(), label: Some("p".into()) }
}

fn write_svg(cli: &Cli, svg: impl FnOnce() -> CliResult<String>) -> CliResult<()> {
    match &cli.global.svg_out {
        Some(p) => write_file(p, &svg()?),
        None => Ok(()),
    }
}

fn paths_json(s: &ConeSurface, paths: &[GeodesicPath]) -> Vec<Value> {
    paths.iter().map(|p| p.to_json(&s.labels)).collect()
}

/// Runs the command; `Ok(false)` means a check ran and failed.
pub fn run(cli: &Cli) -> CliResult<bool> {
    match &cli.command {
        Command::Validate { path } => validate(cli, path.as_ref()),
        Command::Verify { suites, corpus, queries, fault_injection } => verify(cli, suites, corpus, *queries, *fault_injection),
        Command::Trace { at, angle, sweep, length } => trace(cli, at, *angle, *sweep, *length),
        Command::Unfold { at, radius } => unfold(cli, at, *radius),
        Command::Shortest { from, to, word, power, radius, enumerate } => {
            shortest(cli, from, to.as_deref(), word, *power, *radius, *enumerate)
        }
        Command::Closed { word, all_ties } => closed(cli, word, *all_ties),
        Command::Density { axis, family, n_min, n_max, window, at, csv_out } => {
            density(cli, axis, family, (*n_min, *n_max), *window, at.as_deref(), csv_out.as_ref())
        }
        Command::DemoSigma { k } => demo_sigma(cli, *k),
    }
}

/// A surface that loads but breaks an invariant is bad input, so it exits 2.
fn validate(cli: &Cli, path: Option<&std::path::PathBuf>) -> CliResult<bool> {
    let s = load(cli, path)?;
    let rep = validate_surface(&s);
    let mut cfg = config(cli, Some(&s), json!({}));
    if let Some(p) = path {
        cfg.surface = json!({ "file": p, "surface": serde_json::from_str::<Value>(&s.to_json()).unwrap_or(Value::Null) });
    }
    emit(&cfg, rep.ok, to_value(&rep))?;
    if rep.ok {
        Ok(true)
    } else {
        Err(CliError::Invalid(rep.failures.join("; ")))
    }
}

fn verify(cli: &Cli, suites: &[String], corpus: &[String], queries: usize, fault_injection: bool) -> CliResult<bool> {
    let mut vc = VerifyConfig {
        seed: cli.global.seed,
        fault_injection,
        segment_queries: queries,
        tolerances: cli.global.tolerances(),
        max_cells: cli.global.max_cells,
        ..Default::default()
    };
    if !suites.is_empty() {
        vc.suites = suites
            .iter()
            .map(|n| Suite::parse(n).ok_or_else(|| CliError::Input(format!("unknown suite `{n}`"))))
            .collect::<CliResult<_>>()?;
    }
    if !corpus.is_empty() {
        for c in corpus {
            builtin(c)?;
        }
        vc.corpus = corpus.to_vec();
    }
    let rep = run_verify(&vc);
    let cfg = config(cli, None, json!({ "verify": vc }));
    emit(&cfg, rep.passed, to_value(&rep))?;
    for s in &rep.suites {
        eprintln!("{:<11} {}", s.suite.name(), if s.passed { "pass" } else { "FAIL" });
    }
    Ok(rep.passed)
}

fn trace(cli: &Cli, at: &str, angle: Option<f64>, sweep: Option<usize>, length: f64) -> CliResult<bool> {
    let s = load(cli, None)?;
    let p = args::point(&s, at)?;
    if !(length > 0.0 && length.is_finite()) {
        return Err(CliError::Input("--length must be positive".into()));
    }
    let angles: Vec<f64> = match (angle, sweep) {
        (Some(a), _) => vec![a],
        (None, Some(n)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.global.seed);
            (0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect()
        }
        (None, None) => return Err(CliError::Input("pass --angle or --sweep".into())),
    };
    let mut rays = Vec::new();
    let mut paths = Vec::new();
    for &a in &angles {
        let path = conesurf::trace_ray(&s, p, Direction::new(a), length)?;
        rays.push(json!({ "angle": a, "path": path.to_json(&s.labels) }));
        paths.push(path);
    }
    let cfg = config(cli, Some(&s), json!({ "at": at, "angles": angles, "length": length }));
    write_svg(cli, || {
        let tree = unfold_with(&s, p, length, unfold_opts(cli))?;
        Ok(render_svg(&s, &tree, &svg_paths(&s, &tree, &paths), &[base_mark(&tree)]))
    })?;
    emit(&cfg, true, json!({ "rays": rays }))?;
    Ok(true)
}

fn unfold(cli: &Cli, at: &str, radius: f64) -> CliResult<bool> {
    let s = load(cli, None)?;
    let p = args::point(&s, at)?;
    let tree = unfold_with(&s, p, radius, unfold_opts(cli))?;
    let cfg = config(cli, Some(&s), json!({ "at": at, "radius": radius }));
    write_svg(cli, || Ok(render_svg(&s, &tree, &[], &[base_mark(&tree)])))?;
    emit(&cfg, true, json!({ "cells": tree.len(), "tree": tree.to_doc(&s) }))?;
    Ok(true)
}

fn passages_json(p: &GeodesicPath) -> Vec<Value> {
    p.passages().map(|c| json!({ "cone": c.id, "left": c.left, "right": c.right })).collect()
}

fn xy(p: PlanarPoint) -> [f64; 2] {
    [p.x, p.y]
}

fn shortest(
    cli: &Cli,
    from: &str,
    to: Option<&str>,
    word: &str,
    power: usize,
    radius: Option<f64>,
    enumerate: bool,
) -> CliResult<bool> {
    let s = load(cli, None)?;
    let p = args::point(&s, from)?;
    let q = args::point(&s, to.unwrap_or(from))?;
    let w = args::word(&s, word, false)?.power(power);
    let opts = shortest_opts(cli);
    let m = match radius {
        Some(r) => shortest_with(&s, p, (q, w.clone()), r, &opts)?,
        None => shortest_grown(&s, p, (q, w.clone()), &opts)?,
    };
    let mut result = json!({
        "length": m.length,
        "count": m.paths.len(),
        "truncated": m.truncated,
        "lengths": m.paths.iter().map(|x| x.length).collect::<Vec<_>>(),
        "passages": m.paths.iter().map(passages_json).collect::<Vec<_>>(),
        "paths": paths_json(&s, &m.paths),
    });
    let mut svg_set = m.paths.clone();
    let mut envelope = Vec::new();
    if let (true, Some(n)) = (enumerate, radius) {
        let pair = class_representatives(&s, p, (q, w.clone()), n, &opts)?;
        result["class"] = json!({
            "radius": n,
            "members": pair.class_members.len(),
            "length": pair.length,
            "left": pair.left.to_json(&s.labels),
            "right": pair.right.to_json(&s.labels),
            "endpoints_at_radius": pair.endpoints_at_radius.iter().map(|&x| xy(x)).collect::<Vec<_>>(),
            "y_left": xy(pair.y_left),
            "y_right": xy(pair.y_right),
            "envelope": pair.envelope.iter().map(|&x| xy(x)).collect::<Vec<_>>(),
            "envelope_ok": pair.envelope_ok,
            "containment_residual": pair.containment_residual,
            "crossings": pair.crossings,
            "truncated": pair.truncated,
        });
        svg_set = pair.class_members.clone();
        envelope = pair.envelope.clone();
    }
    let cfg = config(
        cli,
        Some(&s),
        json!({
            "from": from,
            "to": to.unwrap_or(from),
            "word": w.format(&s.labels),
            "power": power,
            "radius": radius,
            "enumerate": enumerate,
        }),
    );
    write_svg(cli, || {
        let mut lines = svg_paths(&s, &m.tree, &svg_set);
        if !envelope.is_empty() {
            lines.push(SvgPath { points: envelope, color: "#888".into(), label: Some("envelope".into()) });
        }
        Ok(render_svg(&s, &m.tree, &lines, &[base_mark(&m.tree)]))
    })?;
    emit(&cfg, true, result)?;
    Ok(true)
}

fn closed(cli: &Cli, word: &str, all_ties: bool) -> CliResult<bool> {
    let s = load(cli, None)?;
    let w = args::word(&s, word, true)?;
    let cg = closed_with(&s, &w, &closed_opts(cli))?;
    let shown = if all_ties { &cg.paths[..] } else { &cg.paths[..1] };
    let cfg = config(cli, Some(&s), json!({ "word": w.format(&s.labels), "all_ties": all_ties }));
    write_svg(cli, || {
        let base = shown[0].start;
        let tree = unfold_with(&s, base, cg.length * 1.05 + s.diameter(), unfold_opts(cli))?;
        Ok(render_svg(&s, &tree, &svg_paths(&s, &tree, shown), &[base_mark(&tree)]))
    })?;
    emit(
        &cfg,
        true,
        json!({
            "word": w.format(&s.labels),
            "length": cg.length,
            "ties": cg.paths.len(),
            "iterations": cg.iterations,
            "truncated": cg.truncated,
            "paths": paths_json(&s, shown),
        }),
    )?;
    Ok(true)
}

fn density(
    cli: &Cli,
    axis: &str,
    family: &str,
    (n_min, n_max): (usize, usize),
    window: f64,
    at: Option<&str>,
    csv_out: Option<&std::path::PathBuf>,
) -> CliResult<bool> {
    let s = load(cli, None)?;
    if n_min > n_max {
        return Err(CliError::Input("--n-min exceeds --n-max".into()));
    }
    if !family.contains("^n") {
        return Err(CliError::Input("--family needs a `^n` term".into()));
    }
    let opts = closed_opts(cli);
    let g = args::word(&s, axis, true)?;
    let p = match at {
        Some(a) => args::point(&s, a)?,
        None => {
            let (a, b) = s.polygons[0].edge(0);
            s.locate(0, a.lerp(b, 0.5))?
        }
    };
    let target = DensityTarget::new(&s, p, &g, &opts)?;
    let fam = (n_min..=n_max)
        .map(|n| Ok((n, args::word(&s, &args::expand(family, n)?, true)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let recs = density_sequence(&s, &target, &fam, window, &opts);

    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Input(format!("csv: {e}"));
    w.write_record(["n", "word", "length", "sup_distance", "status"]).map_err(io)?;
    let num = |x: Option<f64>| x.map_or(String::new(), |v| v.to_string());
    for r in &recs {
        w.write_record([r.n.to_string(), r.word.clone(), num(r.length), num(r.sup_distance), r.status.clone()])
            .map_err(io)?;
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| CliError::Input(e.to_string()))?).unwrap_or_default();
    match csv_out {
        Some(path) => write_file(path, &text)?,
        None if cli.global.json_out.is_none() => print!("{text}"),
        None => {}
    }
    write_svg(cli, || {
        let tree = window_tree(&s, &target, window)?;
        let (_, origin, u) = develop_near(&s, &target, &target.path, window)?;
        let mut lines = vec![SvgPath {
            points: vec![origin - u * window, origin + u * window],
            color: "#000".into(),
            label: Some(g.format(&s.labels)),
        }];
        for (i, r) in recs.iter().enumerate() {
            if let Some(c) = &r.path {
                if let Ok((pts, _, _)) = develop_near(&s, &target, c, window) {
                    lines.push(SvgPath { points: pts, color: COLORS[i % COLORS.len()].into(), label: Some(format!("n={}", r.n)) });
                }
            }
        }
        Ok(render_svg(&s, &tree, &lines, &[SvgMark { at: origin, color: "#000".into(), label: None }]))
    })?;
    if cli.global.json_out.is_some() {
        let cfg = config(
            cli,
            Some(&s),
            json!({ "axis": g.format(&s.labels), "family": family, "n_min": n_min, "n_max": n_max, "window": window, "at": at }),
        );
        let rows: Vec<Value> = recs
            .iter()
            .map(|r| {
                let mut v = to_value(r);
                v["path"] = r.path.as_ref().map_or(Value::Null, |p| p.to_json(&s.labels));
                v
            })
            .collect();
        emit(&cfg, true, json!({ "target": target.path.to_json(&s.labels), "records": rows }))?;
    }
    Ok(true)
}

/// Letters crossed between consecutive passages through cone `id`.
fn pieces(p: &GeodesicPath, id: usize) -> Vec<Vec<conesurf::Letter>> {
    let mut out = vec![Vec::new()];
    for e in &p.events {
        match e {
            PathEvent::Cross(l) => out.last_mut().expect("nonempty").push(*l),
            PathEvent::Cone(c) if c.id == id => out.push(Vec::new()),
            _ => {}
        }
    }
    out
}

/// Enumerates the minimizers from B along σ^k. Each one is a concatenation
/// of the loops σ and τ, glued at B, and all 2^k sequences must show up.
fn demo_sigma(cli: &Cli, k: usize) -> CliResult<bool> {
    if k == 0 || k > 12 {
        return Err(CliError::Input("--k must be between 1 and 12".into()));
    }
    let s = builtin("example_sigma")?;
    let b = sigma_base(&s)?;
    let tie = cli.global.eps_tie;
    let opts = shortest_opts(cli);
    let big = s
        .classes
        .iter()
        .position(|c| c.is_cone() && c.angle > 2.0 * PI)
        .ok_or_else(|| CliError::Input("no large cone on the example".into()))?;
    let sigma = args::word(&s, SIGMA, false)?;
    let tau = args::word(&s, TAU, false)?;

    // the two loops at B
    let base = shortest_grown(&s, b, (b, sigma.clone()), &opts)?;
    let pick = |w: &conesurf::HomotopyWord| {
        base.paths
            .iter()
            .find(|p| pieces(p, big)[0].first() == w.letters.first())
            .cloned()
            .ok_or_else(|| CliError::Input(format!("no loop at B crosses {}", w.format(&s.labels))))
    };
    let (sp, tp) = (pick(&sigma)?, pick(&tau)?);
    let period = sp.length;
    let closed_len = closed_with(&s, &sigma.as_cyclic(), &closed_opts(cli))?.length;
    let mut ok = base.paths.len() == 2
        && (sp.length - tp.length).abs() <= tie * period
        && (period - closed_len).abs() <= tie * period;
    let (skey, tkey) = (pieces(&sp, big).concat(), pieces(&tp, big).concat());

    let m = shortest_grown(&s, b, (b, sigma.power(k)), &opts)?;
    let want = k as f64 * period;
    let mut seen = std::collections::BTreeSet::new();
    let mut rows = Vec::new();
    for p in &m.paths {
        let parts = pieces(p, big);
        let names: Vec<&str> = parts
            .iter()
            .map(|x| if *x == skey { "sigma" } else if *x == tkey { "tau" } else { "other" })
            .collect();
        let local = conesurf::check_local_geodesic(&s, p).is_local_geodesic;
        let straight = (translation_length(&s, p) - p.length).abs() <= tie * want;
        let good = local
            && straight
            && (p.length - want).abs() <= tie * want
            && parts.len() == k
            && !names.contains(&"other");
        ok &= good;
        seen.insert(names.clone());
        rows.push(json!({
            "sequence": names,
            "length": p.length,
            "local_geodesic": local,
            "straight": straight,
            "b_passages": parts.len() - 1,
            "angles_at_b": p.passages().filter(|c| c.id == big).map(|c| [c.left, c.right]).collect::<Vec<_>>(),
            "ok": good,
        }));
    }
    ok &= seen.len() == 1 << k && !m.truncated;

    let cfg = config(cli, Some(&s), json!({ "k": k, "base": "upper:0,2" }));
    write_svg(cli, || Ok(render_svg(&s, &m.tree, &svg_paths(&s, &m.tree, &m.paths), &[base_mark(&m.tree)])))?;
    emit(
        &cfg,
        ok,
        json!({
            "period": period,
            "closed_length": closed_len,
            "length_gap": (sp.length - tp.length).abs(),
            "sigma": sp.to_json(&s.labels),
            "tau": tp.to_json(&s.labels),
            "concatenations": rows,
            "distinct": seen.len(),
        }),
    )?;
    Ok(ok)
}
