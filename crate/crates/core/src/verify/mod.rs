//! Reproduction pipelines.
//!
//! Each pipeline returns a list of [`ClaimReport`]s, one per checked
//! statement, carrying the computed value, the expected value with its
//! provenance, the tolerance applied, and the outcome.

use std::sync::OnceLock;
use std::time::Instant;

use serde::Serialize;

use crate::arith::DEFAULT_SMALL_SCAN_LIMIT;
use crate::error::Result;
use crate::primes::{PrimeTable, DEFAULT_SIEVE_LIMIT, HEAVY_SIEVE_LIMIT};
use crate::realx::RealX;
use crate::superchampion::{generate_sequence, psi, Superchampions};

pub mod hull;
pub mod inequalities;
pub mod properties;
pub mod scan;
pub mod theorem1;
pub mod theorem2;
pub mod theorem3;

pub use hull::{export_hull, HullExport};
pub use inequalities::verify_small_inequalities;
pub use properties::verify_properties;
pub use theorem1::verify_theorem1;
pub use theorem2::verify_theorem2;
pub use theorem3::verify_theorem3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// printed in the published tables or statements
    Published,
    /// follows from the definitions by direct substitution
    Trivial,
    /// produced by an independent computation (exhaustive scan, oracle)
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    #[serde(serialize_with = "crate::superchampion::ser_realx")]
    Real(RealX),
    Count(u64),
    Bool(bool),
    Text(String),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Real(x) => x.to_string(),
            Value::Count(c) => c.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

/// How `computed` is compared with `expected`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tolerance {
    Abs(f64),
    /// the published value is the rounding to `d` decimals
    Rounded(usize),
    /// the published value is the truncation to `d` decimals
    Truncated(usize),
    Exact,
}

impl Tolerance {
    fn describe(&self) -> String {
        match self {
            Tolerance::Abs(t) => format!("abs {t:e}"),
            Tolerance::Rounded(d) => format!("rounded to {d} decimals"),
            Tolerance::Truncated(d) => format!("truncated to {d} decimals"),
            Tolerance::Exact => "exact".into(),
        }
    }

    pub fn accepts(&self, computed: RealX, expected: RealX) -> bool {
        match *self {
            Tolerance::Abs(t) => (computed - expected).abs() <= RealX::from(t),
            Tolerance::Rounded(d) => {
                (computed - expected).abs() < RealX::from(0.5) * crate::realx::pow10(-(d as i32))
            }
            Tolerance::Truncated(d) => {
                let s = crate::realx::pow10(d as i32);
                (computed * s).floor() == (expected * s).round()
            }
            Tolerance::Exact => computed == expected,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub computed: Value,
    pub expected: Value,
    pub provenance: Provenance,
    pub tolerance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: f64,
}

impl ClaimReport {
    fn base(
        id: &str,
        description: &str,
        computed: Value,
        expected: Value,
        provenance: Provenance,
    ) -> Self {
        ClaimReport {
            id: id.to_string(),
            description: description.to_string(),
            status: Status::Fail,
            computed,
            expected,
            provenance,
            tolerance: "exact".into(),
            note: None,
            elapsed_ms: 0.0,
        }
    }

    pub fn real(
        id: &str,
        description: &str,
        computed: RealX,
        expected: RealX,
        tol: Tolerance,
        provenance: Provenance,
    ) -> Self {
        let mut c = Self::base(
            id,
            description,
            Value::Real(computed),
            Value::Real(expected),
            provenance,
        );
        c.tolerance = tol.describe();
        c.status = if tol.accepts(computed, expected) {
            Status::Pass
        } else {
            Status::Fail
        };
        c
    }

    /// Real claim with the expected value given as a decimal literal.
    pub fn published(
        id: &str,
        description: &str,
        computed: RealX,
        expected: &str,
        tol: Tolerance,
    ) -> Self {
        let e = RealX::parse_decimal(expected).expect("literal");
        Self::real(id, description, computed, e, tol, Provenance::Published)
    }

    pub fn count(
        id: &str,
        description: &str,
        computed: u64,
        expected: u64,
        provenance: Provenance,
    ) -> Self {
        let mut c = Self::base(
            id,
            description,
            Value::Count(computed),
            Value::Count(expected),
            provenance,
        );
        c.status = if computed == expected {
            Status::Pass
        } else {
            Status::Fail
        };
        c
    }

    pub fn text(
        id: &str,
        description: &str,
        computed: String,
        expected: String,
        provenance: Provenance,
    ) -> Self {
        let ok = computed == expected;
        let mut c = Self::base(
            id,
            description,
            Value::Text(computed),
            Value::Text(expected),
            provenance,
        );
        c.status = if ok { Status::Pass } else { Status::Fail };
        c
    }

    /// A property that must hold (`computed` is whether it does).
    pub fn holds(id: &str, description: &str, ok: bool, provenance: Provenance) -> Self {
        let mut c = Self::base(
            id,
            description,
            Value::Bool(ok),
            Value::Bool(true),
            provenance,
        );
        c.status = if ok { Status::Pass } else { Status::Fail };
        c
    }

    pub fn skipped(id: &str, description: &str, reason: &str) -> Self {
        let mut c = Self::base(
            id,
            description,
            Value::Text("-".into()),
            Value::Text("-".into()),
            Provenance::Published,
        );
        c.status = Status::Skipped;
        c.note = Some(reason.to_string());
        c
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One-line human rendering.
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let mut s = format!(
            "[{tag}] {:<34} computed={} expected={} ({}, {:?})",
            self.id,
            self.computed.render(),
            self.expected.render(),
            self.tolerance,
            self.provenance
        );
        if let Some(n) = &self.note {
            s.push_str(&format!(" -- {n}"));
        }
        s
    }
}

/// Collects claims, timing each one.
#[derive(Default)]
pub(crate) struct Claims {
    out: Vec<ClaimReport>,
}

impl Claims {
    pub fn push_timed(&mut self, f: impl FnOnce() -> ClaimReport) {
        let t = Instant::now();
        let mut c = f();
        c.elapsed_ms = t.elapsed().as_secs_f64() * 1e3;
        self.out.push(c);
    }

    pub fn push(&mut self, c: ClaimReport) {
        self.out.push(c);
    }

    pub fn finish(self) -> Vec<ClaimReport> {
        self.out
    }
}

/// Shared inputs of the pipelines, built lazily.
pub struct VerifyContext {
    table: PrimeTable,
    heavy: bool,
    heavy_table: OnceLock<Result<PrimeTable>>,
    small_scan_limit: u64,
    sequence: OnceLock<Result<Superchampions>>,
}

impl VerifyContext {
    pub fn new(sieve_limit: u64, small_scan_limit: u64, heavy: bool) -> Result<Self> {
        let limit = if heavy {
            sieve_limit.max(HEAVY_SIEVE_LIMIT)
        } else {
            sieve_limit
        };
        let table = PrimeTable::new(limit)?;
        Ok(VerifyContext {
            table,
            heavy,
            heavy_table: OnceLock::new(),
            small_scan_limit,
            sequence: OnceLock::new(),
        })
    }

    pub fn with_defaults() -> Result<Self> {
        Self::new(DEFAULT_SIEVE_LIMIT, DEFAULT_SMALL_SCAN_LIMIT, false)
    }

    pub fn table(&self) -> &PrimeTable {
        &self.table
    }

    pub fn small_scan_limit(&self) -> u64 {
        self.small_scan_limit
    }

    pub fn heavy(&self) -> bool {
        self.heavy
    }

    /// The table reaching `10^8 + 7`, when heavy mode is on.
    pub fn heavy_table(&self) -> Option<&PrimeTable> {
        if !self.heavy {
            return None;
        }
        if self.table.limit() >= HEAVY_SIEVE_LIMIT {
            return Some(&self.table);
        }
        self.heavy_table
            .get_or_init(|| PrimeTable::new(HEAVY_SIEVE_LIMIT))
            .as_ref()
            .ok()
    }

    /// Superchampions down to `ψ(p_{k₁}, 1) = ψ(2248723, 1)`.
    pub fn sequence(&self) -> Result<&Superchampions> {
        self.sequence
            .get_or_init(|| generate_sequence(&self.table, eps_floor()))
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// `ε⁽²⁾ = log(1 + 1/2248723) / log 2`, the deepest parameter needed.
pub fn eps_floor() -> RealX {
    psi(2_248_723, 1)
}

/// Runs every pipeline in a fixed order.
pub fn verify_all(ctx: &VerifyContext) -> Result<Vec<ClaimReport>> {
    let mut all = verify_theorem1(ctx)?;
    all.extend(verify_theorem2(ctx)?);
    all.extend(verify_theorem3(ctx)?);
    all.extend(verify_small_inequalities(ctx)?);
    all.extend(verify_properties(ctx)?);
    Ok(all)
}

/// `true` iff no claim failed (skipped claims are ignored).
pub fn all_passed(claims: &[ClaimReport]) -> bool {
    claims.iter().all(|c| c.status != Status::Fail)
}

#[derive(Serialize)]
pub struct ReportDocument<'a> {
    pub claims: &'a [ClaimReport],
}

pub fn to_json(claims: &[ClaimReport]) -> String {
    let mut s = serde_json::to_string_pretty(&ReportDocument { claims }).expect("serializable");
    s.push('\n');
    s
}

pub fn to_text(claims: &[ClaimReport]) -> String {
    let mut s = String::new();
    for c in claims {
        s.push_str(&c.line());
        s.push('\n');
    }
    let failed = claims.iter().filter(|c| c.status == Status::Fail).count();
    let skipped = claims
        .iter()
        .filter(|c| c.status == Status::Skipped)
        .count();
    s.push_str(&format!(
        "{} claims: {} passed, {failed} failed, {skipped} skipped\n",
        claims.len(),
        claims.len() - failed - skipped
    ));
    s
}
