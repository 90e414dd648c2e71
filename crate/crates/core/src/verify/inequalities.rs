//! Exhaustive checks of the bounds read off the superchampions 2 and 120,
//! and a local sample of the classical `n/φ(n)` bound.

use super::scan::{divisor_tables, totients};
use super::{ClaimReport, Claims, Provenance, Tolerance, VerifyContext};
use crate::error::Result;
use crate::realx::{RealX, EXP_GAMMA};

/// Scan bound for the exhaustive checks.
pub const SMALL_INEQUALITY_LIMIT: u64 = 1_000_000;

fn real(s: &str) -> RealX {
    RealX::parse_decimal(s).expect("literal")
}

/// `8σ(n)² <= 9n²τ(n)`, i.e. `σ(n)/n <= (3/(2√2)) √τ(n)`.
fn sqrt_bound_holds(n: u64, sigma: u64, tau: u32) -> bool {
    let (n, s, t) = (u128::from(n), u128::from(sigma), u128::from(tau));
    8 * s * s <= 9 * n * n * t
}

/// `16σ(n)⁵ <= 243 n⁵ τ(n)`, i.e. `σ(n)/n <= 3 (τ(n)/16)^0.2`.
fn fifth_root_bound_holds(n: u64, sigma: u64, tau: u32) -> bool {
    let (n, s, t) = (u128::from(n), u128::from(sigma), u128::from(tau));
    16 * s.pow(5) <= 243 * n.pow(5) * t
}

pub fn verify_small_inequalities(ctx: &VerifyContext) -> Result<Vec<ClaimReport>> {
    let limit = ctx.small_scan_limit().min(SMALL_INEQUALITY_LIMIT);
    let mut out = Claims::default();
    let (sigma, tau) = divisor_tables(limit)?;
    let note = if limit < SMALL_INEQUALITY_LIMIT {
        Some(format!(
            "scan limited to n <= {limit} by the small-scan bound"
        ))
    } else {
        None
    };
    let scan_note = |c: ClaimReport| match &note {
        Some(n) => c.with_note(n.clone()),
        None => c,
    };

    out.push(ClaimReport::holds(
        "ineq.sqrt-equality-2",
        "σ(2)/2 = (3/(2√2)) √τ(2)",
        8 * sigma[2] * sigma[2] == 9 * 2 * 2 * u64::from(tau[2]),
        Provenance::Trivial,
    ));
    out.push(ClaimReport::holds(
        "ineq.sqrt-constant",
        "3/(2√2) <= 1.061",
        RealX::from(3.0) / (RealX::from(2.0) * RealX::from(2.0).sqrt()) <= real("1.061"),
        Provenance::Published,
    ));
    out.push_timed(|| {
        let bad = (1..=limit)
            .filter(|&n| !sqrt_bound_holds(n, sigma[n as usize], tau[n as usize]))
            .count();
        scan_note(ClaimReport::count(
            "ineq.sqrt-scan",
            "n <= 10^6 with σ(n)/n > (3/(2√2)) √τ(n)",
            bad as u64,
            0,
            Provenance::Derived,
        ))
    });

    out.push(ClaimReport::holds(
        "ineq.fifth-equality-120",
        "σ(120)/120 = 3 (τ(120)/16)^0.2",
        sigma.get(120) == Some(&360) && tau.get(120) == Some(&16),
        Provenance::Trivial,
    ));
    out.push(ClaimReport::published(
        "ineq.fifth-constant",
        "3/16^0.2 = 1.72305",
        RealX::from(3.0) / RealX::from(16.0).powf(real("0.2")),
        "1.72305",
        Tolerance::Rounded(5),
    ));
    out.push_timed(|| {
        let bad = (1..=limit)
            .filter(|&n| !fifth_root_bound_holds(n, sigma[n as usize], tau[n as usize]))
            .count();
        scan_note(ClaimReport::count(
            "ineq.fifth-scan",
            "n <= 10^6 with σ(n)/n > 3 (τ(n)/16)^0.2",
            bad as u64,
            0,
            Provenance::Derived,
        ))
    });

    out.push_timed(|| {
        let phi = totients(limit).expect("limit checked");
        let eg = *EXP_GAMMA;
        let c = real("2.50637");
        let mut bad = 0u64;
        let mut sigma_above_phi = 0u64;
        for n in 3..=limit {
            let nn = n as usize;
            // σ(n)/n <= n/φ(n)  <=>  σ(n) φ(n) <= n²
            if u128::from(sigma[nn]) * u128::from(phi[nn]) > u128::from(n) * u128::from(n) {
                sigma_above_phi += 1;
            }
            let u = RealX::from(n).ln().ln();
            let lhs = RealX::from(n) / RealX::from(u64::from(phi[nn]));
            if lhs > eg * u + c / u {
                bad += 1;
            }
        }
        scan_note(
            ClaimReport::count(
                "ineq.classical-sample",
                "3 <= n <= 10^6 violating σ(n)/n <= n/φ(n) <= e^γ log log n + 2.50637/log log n",
                bad + sigma_above_phi,
                0,
                Provenance::Derived,
            )
            .with_note("externally proven, locally sampled"),
        )
    });
    Ok(out.finish())
}
