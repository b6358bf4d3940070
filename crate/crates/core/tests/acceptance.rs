//! One line per acceptance criterion; exits non-zero if any fails.

use conesurf::verify::{run_suite, run_verify, Suite, SuiteResult, VerifyConfig};
use std::time::{Duration, Instant};

struct Line {
    id: usize,
    title: &'static str,
    budget: Duration,
    suites: &'static [Suite],
}

const LINES: [Line; 8] = [
    Line { id: 1, title: "corpus validation", budget: Duration::from_secs(1), suites: &[Suite::Validation] },
    Line { id: 2, title: "net oracle agreement", budget: Duration::from_secs(300), suites: &[Suite::Oracle] },
    Line { id: 3, title: "exact lattice lengths", budget: Duration::from_secs(10), suites: &[Suite::Lattice] },
    Line { id: 4, title: "clearance from small cones", budget: Duration::from_secs(60), suites: &[Suite::Clearance] },
    Line { id: 5, title: "bigons close at large cones", budget: Duration::from_secs(120), suites: &[Suite::Bigons] },
    Line { id: 6, title: "tied representatives", budget: Duration::from_secs(60), suites: &[Suite::Ties] },
    Line { id: 7, title: "extremal envelope", budget: Duration::from_secs(60), suites: &[Suite::Envelope] },
    Line { id: 8, title: "closed geodesic density", budget: Duration::from_secs(120), suites: &[Suite::Density] },
];

fn summary(r: &SuiteResult) -> String {
    if r.passed {
        serde_json::to_string(&r.measures).unwrap_or_default()
    } else {
        r.failures.join("; ")
    }
}

fn main() {
    let cfg = VerifyConfig::default();
    let mut all = true;
    for line in &LINES {
        let t = Instant::now();
        let results: Vec<SuiteResult> = line.suites.iter().map(|&s| run_suite(s, &cfg)).collect();
        let took = t.elapsed();
        let ok = results.iter().all(|r| r.passed) && took <= line.budget;
        all &= ok;
        let detail: Vec<String> = results.iter().map(summary).collect();
        println!(
            "criterion {} {}: {} ({:.2?} of {:?}) {}",
            line.id,
            line.title,
            if ok { "PASS" } else { "FAIL" },
            took,
            line.budget,
            detail.join(" | ")
        );
    }

    let quick = VerifyConfig { segment_queries: 2, ..VerifyConfig::default() };
    let t = Instant::now();
    let a = serde_json::to_string(&run_verify(&quick)).unwrap();
    let b = serde_json::to_string(&run_verify(&quick)).unwrap();
    let same = a == b;
    all &= same;
    println!(
        "criterion 9 deterministic reports: {} ({:.2?}, {} bytes)",
        if same { "PASS" } else { "FAIL" },
        t.elapsed(),
        a.len()
    );

    if !all {
        std::process::exit(1);
    }
}
