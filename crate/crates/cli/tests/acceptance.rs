//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use picmon::automata::{compile, Alphabet};
use picmon::picture::{
    embed_bn, shipped_toys, verify_semexists, witness_l, witness_l0, witness_l7, LengthFunction,
    Repairs,
};
use picmon::semigroup::{is_aperiodic, syntactic_monoid};
use picmon::verify::{run_suite, SuiteReport, VerifyConfig};

struct Verdict {
    passed: bool,
    detail: String,
}

fn suite(name: &str, cfg: &VerifyConfig) -> (SuiteReport, Verdict) {
    match run_suite(name, cfg) {
        Ok(r) => {
            let failed = r.failures().join(", ");
            let v = Verdict {
                passed: r.passed,
                detail: if r.passed {
                    format!("{} checks", r.checks.len())
                } else {
                    format!("failed: {failed}")
                },
            };
            (r, v)
        }
        Err(e) => (
            SuiteReport {
                suite: name.into(),
                passed: false,
                checks: Vec::new(),
            },
            Verdict {
                passed: false,
                detail: format!("error: {e}"),
            },
        ),
    }
}

fn within(v: Verdict, start: Instant, limit: Duration) -> Verdict {
    let t = start.elapsed();
    let ok = t < limit;
    Verdict {
        passed: v.passed && ok,
        detail: format!(
            "{}; {:.2}s of {}s",
            v.detail,
            t.as_secs_f64(),
            limit.as_secs()
        ),
    }
}

fn matmult(cfg: &VerifyConfig) -> Verdict {
    let start = Instant::now();
    let (r, mut v) = suite("matmult", cfg);
    // n = 1, 2 exhaustive, n = 3 with at least 1000 tuples per length 0..=3
    let random = r
        .checks
        .iter()
        .filter(|c| c.name.starts_with("random n=3"))
        .filter(|c| c.detail["tuples"].as_u64().unwrap_or(0) >= 1000)
        .count();
    let exhaustive = r
        .checks
        .iter()
        .filter(|c| c.name.starts_with("exhaustive"))
        .count();
    v.passed &= random == 4 && exhaustive == 2;
    within(v, start, Duration::from_secs(60))
}

fn synmon(cfg: &VerifyConfig) -> Verdict {
    let start = Instant::now();
    let (_, mut v) = suite("synmon", cfg);
    // the expected values, independently of the suite's own table
    let a = Alphabet::with_labels(["a"]).unwrap();
    let ab = Alphabet::with_labels(["a", "b"]).unwrap();
    let even = syntactic_monoid(
        &compile("(aa)*", &a).unwrap().minimal_dfa(100).unwrap(),
        100,
    )
    .unwrap();
    let star = syntactic_monoid(
        &compile("a*b*", &ab).unwrap().minimal_dfa(100).unwrap(),
        100,
    )
    .unwrap();
    v.passed &= even.size() == 2 && !is_aperiodic(&even) && star.size() == 5 && is_aperiodic(&star);
    within(v, start, Duration::from_secs(10))
}

fn recdivide(cfg: &VerifyConfig) -> Verdict {
    let start = Instant::now();
    let (r, mut v) = suite("recdivide", cfg);
    let count = r
        .checks
        .first()
        .and_then(|c| c.detail["automata"].as_u64())
        .unwrap_or(0);
    v.passed &= count >= 50;
    v.detail = format!("{}; {count} automata", v.detail);
    within(v, start, Duration::from_secs(120))
}

fn cells() -> [(usize, usize); 4] {
    [(1, 1), (2, 1), (1, 2), (2, 2)]
}

fn upperbound0(cfg: &VerifyConfig) -> Verdict {
    let mut passed = true;
    let mut parts = Vec::new();
    for (n, m) in cells() {
        let start = Instant::now();
        let f = LengthFunction::constant(n, 1..=m);
        let ok = match embed_bn(&f, m, cfg.state_cap, cfg.monoid_cap) {
            Ok(r) => r.multiplicative && r.injective && r.image_size == 1 << (n * n),
            Err(_) => false,
        };
        let t = start.elapsed();
        passed &= ok && t < Duration::from_secs(300);
        parts.push(format!(
            "({n},{m}) {} {:.2}s",
            if ok { "ok" } else { "no" },
            t.as_secs_f64()
        ));
    }
    Verdict {
        passed,
        detail: parts.join(", "),
    }
}

fn witness(cfg: &VerifyConfig) -> Verdict {
    let mut passed = true;
    let mut parts = Vec::new();
    for (n, m) in cells() {
        let start = Instant::now();
        let f = LengthFunction::constant(n, 1..=m);
        let cap = cfg.state_cap;
        let builds = [
            witness_l0(&f, m, Repairs::all(), cap),
            witness_l7(&f, m, Repairs::all(), cap),
            witness_l(&f, m, Repairs::all(), cap),
        ];
        let ok = builds
            .iter()
            .all(|w| matches!(w, Ok(w) if w.agrees(cap).unwrap_or(false)));
        let t = start.elapsed();
        passed &= ok && t < Duration::from_secs(600);
        parts.push(format!(
            "({n},{m}) {} {:.2}s",
            if ok { "ok" } else { "no" },
            t.as_secs_f64()
        ));
    }
    Verdict {
        passed,
        detail: parts.join(", "),
    }
}

fn semexists(cfg: &VerifyConfig) -> Verdict {
    let start = Instant::now();
    let mut passed = true;
    let mut names = Vec::new();
    let toys = shipped_toys().unwrap();
    // the single-mark language at heights 1 and 2 must be among them
    passed &= ["one-mark-h1", "one-mark-h2"]
        .iter()
        .all(|n| toys.iter().any(|t| t.name == *n));
    for t in &toys {
        match verify_semexists(t.mu, &t.lang, 6, cfg.state_cap, cfg.monoid_cap, 1 << 24) {
            Ok(r) if r.passed() && r.projection_matches_letters => {}
            _ => {
                passed = false;
                names.push(t.name);
            }
        }
    }
    let v = Verdict {
        passed,
        detail: if names.is_empty() {
            format!("{} languages", toys.len())
        } else {
            format!("failed: {}", names.join(", "))
        },
    };
    within(v, start, Duration::from_secs(120))
}

fn timed_suite(name: &str, cfg: &VerifyConfig, limit: u64) -> Verdict {
    let start = Instant::now();
    let (_, v) = suite(name, cfg);
    within(v, start, Duration::from_secs(limit))
}

/// Report text without the header line.
fn body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("{\"header\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    let mut codes = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_picmon"))
            .args(["verify", "all", "--out"])
            .arg(&out)
            .output()
            .unwrap();
        codes.push(status.status.code());
        texts.push(std::fs::read_to_string(&out).unwrap_or_default());
    }
    let headers: Vec<usize> = texts
        .iter()
        .map(|t| t.lines().filter(|l| l.contains("\"timestamp\"")).count())
        .collect();
    let same = body(&texts[0]) == body(&texts[1]) && !texts[0].is_empty();
    Verdict {
        passed: codes.iter().all(|c| *c == Some(0)) && same && headers == [1, 1],
        detail: format!("exit codes {codes:?}, identical bodies {same}"),
    }
}

fn main() {
    let cfg = VerifyConfig::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        (
            "matrix product is zero iff no path",
            Box::new(|| matmult(&cfg)),
        ),
        ("syntactic monoid engine", Box::new(|| synmon(&cfg))),
        (
            "recognizer quotient is the syntactic monoid",
            Box::new(|| recdivide(&cfg)),
        ),
        (
            "B_n embeds in the product language monoid",
            Box::new(|| upperbound0(&cfg)),
        ),
        (
            "compositional witnesses match oracles",
            Box::new(|| witness(&cfg)),
        ),
        (
            "block-product recognizer for erasure",
            Box::new(|| semexists(&cfg)),
        ),
        (
            "groups of S ** T project injectively",
            Box::new(|| timed_suite("doublestar", &cfg, 60)),
        ),
        (
            "B_1 aperiodic, B_2 has a group of order 2",
            Box::new(|| timed_suite("cbn", &cfg, 1)),
        ),
        (
            "MSO order, quantifier and relativization checks",
            Box::new(|| timed_suite("mso", &cfg, 300)),
        ),
        ("verify all is deterministic", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        if !v.passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({})",
            i + 1,
            if v.passed { "PASS" } else { "FAIL" },
            name,
            v.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
