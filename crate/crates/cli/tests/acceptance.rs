//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with `harness = false` so the lines always print. The context is
//! heavy (10^8 sieve) so that ρ(k₂) is checked.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use sigmatau_core::verify::{self, ClaimReport, Status};
use sigmatau_core::VerifyContext;

struct Outcome {
    criterion: u32,
    title: &'static str,
    ok: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

impl Outcome {
    fn line(&self) -> String {
        let in_time = self.elapsed <= self.budget;
        format!(
            "[{}] criterion {}: {} ({:.2} s of {} s){}{}",
            if self.ok && in_time { "PASS" } else { "FAIL" },
            self.criterion,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            if in_time { "" } else { " over budget" },
            if self.detail.is_empty() {
                String::new()
            } else {
                format!(" -- {}", self.detail)
            },
        )
    }

    fn passed(&self) -> bool {
        self.ok && self.elapsed <= self.budget
    }
}

/// All claims whose id matches one of `ids` (a trailing `*` matches a prefix)
/// exist and pass.
fn check(claims: &[ClaimReport], ids: &[&str]) -> (bool, String) {
    let mut failed = Vec::new();
    for id in ids {
        let matching: Vec<&ClaimReport> = match id.strip_suffix('*') {
            Some(prefix) => claims.iter().filter(|c| c.id.starts_with(prefix)).collect(),
            None => claims.iter().filter(|c| c.id == *id).collect(),
        };
        if matching.is_empty() {
            failed.push(format!("{id} missing"));
        }
        for c in matching {
            if c.status != Status::Pass {
                failed.push(c.line());
            }
        }
    }
    (failed.is_empty(), failed.join("; "))
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// Rows of the first superchampion table: `(N, σ/N, τ, upper ε, lower ε)`.
const TABLE: [(&str, &str, &str, &str, &str); 10] = [
    ("1", "1", "1", "inf", "0.585"),
    ("2", "1.5", "2", "0.585", "0.415"),
    ("6", "2", "4", "0.415", "0.380"),
    ("12", "2.333", "6", "0.380", "0.263"),
    ("60", "2.8", "12", "0.263", "0.240"),
    ("120", "3", "16", "0.240", "0.197"),
    ("360", "3.25", "24", "0.197", "0.193"),
    ("2520", "3.714", "48", "0.193", "0.147"),
    ("5040", "3.838", "60", "0.147", "0.126"),
    ("55440", "4.187", "120", "0.126", "0.107"),
];

fn criterion1() -> Outcome {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_sigmatau"))
        .args([
            "superchampion",
            "list",
            "--eps-min",
            "0.1",
            "--format",
            "csv",
        ])
        .output()
        .expect("binary runs");
    let elapsed = t.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| *h == name)
            .expect("column present")
    };
    let (n, s, tau, hi, lo) = (
        col("N"),
        col("sigma_over_n"),
        col("tau"),
        col("eps_hi"),
        col("eps_lo"),
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let mut mismatches = Vec::new();
    for (i, want) in TABLE.iter().enumerate() {
        let got = rows.get(i).map(|r| (r[n], r[s], r[tau], r[hi], r[lo]));
        if got != Some(*want) {
            mismatches.push(format!("row {i}: {got:?}"));
        }
    }
    Outcome {
        criterion: 1,
        title: "superchampion table, 10 rows",
        ok: out.status.success() && rows.len() >= 10 && mismatches.is_empty(),
        detail: mismatches.join("; "),
        elapsed,
        budget: secs(1),
    }
}

fn main() -> ExitCode {
    let mut outcomes = vec![criterion1()];

    let ctx = VerifyContext::new(
        sigmatau_core::primes::DEFAULT_SIEVE_LIMIT,
        sigmatau_core::arith::DEFAULT_SMALL_SCAN_LIMIT,
        true,
    )
    .expect("context");

    let t = Instant::now();
    let t2 = verify::verify_theorem2(&ctx).expect("theorem 2 pipeline");
    let t2_time = t.elapsed();
    let (ok, detail) = check(
        &t2,
        &[
            "t2.m1-index",
            "t2.m1-factorization",
            "t2.m1-f1",
            "t2.m1-constant",
        ],
    );
    outcomes.push(Outcome {
        criterion: 2,
        title: "M₁ discovery",
        ok,
        detail,
        elapsed: t2_time,
        budget: secs(30),
    });
    let (ok, detail) = check(&t2, &["t2.m2-factorization", "t2.m2-f2", "t2.m2-constant"]);
    outcomes.push(Outcome {
        criterion: 3,
        title: "M₂ discovery",
        ok,
        detail,
        elapsed: t2_time,
        budget: secs(300),
    });

    let t = Instant::now();
    let t3 = verify::verify_theorem3(&ctx).expect("theorem 3 pipeline");
    let t3_time = t.elapsed();
    let (ok, detail) = check(
        &t3,
        &["t3.exception-count", "t3.exception-set", "t3.exception.*"],
    );
    outcomes.push(Outcome {
        criterion: 4,
        title: "12 exceptions, set and f₁ values",
        ok,
        detail,
        elapsed: t3_time,
        budget: secs(120),
    });
    let (ok, detail) = check(&t3, &["t3.nu.*", "t3.census-agrees"]);
    outcomes.push(Outcome {
        criterion: 5,
        title: "ν(x) census, 8 values",
        ok: ok && t3.iter().filter(|c| c.id.starts_with("t3.nu.")).count() == 8,
        detail,
        elapsed: t3_time,
        budget: secs(900),
    });

    let t = Instant::now();
    let t1 = verify::verify_theorem1(&ctx).expect("theorem 1 pipeline");
    let (ok, detail) = check(
        &t1,
        &[
            "t1.factor3-exceptions",
            "t1.ratio-argmax",
            "t1.ratio-max",
            "t1.g-table.*",
            "t1.c-table.*",
            "t1.c-value",
        ],
    );
    outcomes.push(Outcome {
        criterion: 6,
        title: "small scans and tables",
        ok,
        detail,
        elapsed: t.elapsed(),
        budget: secs(60),
    });

    let (ok, detail) = check(
        &t2,
        &[
            "t2.rho-k1",
            "t2.p-k2",
            "t2.rho-k2",
            "t2.min-g1-gap",
            "t2.min-g1-gap-pair",
        ],
    );
    outcomes.push(Outcome {
        criterion: 7,
        title: "ρ(k₁), ρ(k₂), minimal g₁ gap",
        ok,
        detail,
        elapsed: t2_time,
        budget: secs(300),
    });

    let t = Instant::now();
    let props = verify::verify_properties(&ctx).expect("property pipeline");
    let (ok, detail) = check(
        &props,
        &[
            "prop.maximality",
            "prop.tau-implication",
            "prop.benefit-nonnegative",
            "prop.benefit-additive",
            "prop.psi-monotone",
            "prop.telescoping",
            "t2.concave-f1",
            "t2.concave-f2",
            "prop.hull-dominance",
        ],
    );
    outcomes.push(Outcome {
        criterion: 8,
        title: "property suites",
        ok,
        detail,
        elapsed: t.elapsed(),
        budget: secs(600),
    });

    let (ok, detail) = check(&t3, &["t3.m3-limit"]);
    outcomes.push(Outcome {
        criterion: 9,
        title: "M₃ accumulation value",
        ok,
        detail,
        elapsed: t3_time,
        budget: secs(900),
    });

    for o in &outcomes {
        println!("{}", o.line());
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    println!("acceptance: {passed}/{} criteria passed", outcomes.len());
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
