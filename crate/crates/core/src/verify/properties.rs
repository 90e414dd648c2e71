//! Oracle-based property checks: each compares the fast code paths against
//! exhaustive scans or closed forms.

use super::hull::export_hull;
use super::scan::divisor_tables;
use super::{ClaimReport, Claims, Provenance, VerifyContext};
use crate::arith::{f1, ln_ratio_succ, stats};
use crate::benefit::{ben, ben_direct, enumerate, BenefitQuery};
use crate::error::Result;
use crate::realx::RealX;
use crate::superchampion::{psi, theta};

/// Records and integers up to this bound enter the brute-force checks.
pub const PROPERTY_SCAN_LIMIT: u64 = 1_000_000;
const HULL_LIMIT: u64 = 55_440;

pub fn verify_properties(ctx: &VerifyContext) -> Result<Vec<ClaimReport>> {
    let table = ctx.table();
    let seq = ctx.sequence()?;
    let limit = ctx.small_scan_limit().min(PROPERTY_SCAN_LIMIT);
    let mut out = Claims::default();
    let (sigma, tau) = divisor_tables(limit)?;

    // records n <= limit with their exact values
    let records: Vec<(usize, u64)> = (0..seq.len())
        .map_while(|i| {
            let n = seq.factorization(i).to_u128()?;
            (n <= u128::from(limit)).then_some((i, n as u64))
        })
        .collect();

    out.push_timed(|| {
        let logs: Vec<(RealX, RealX)> = (1..=limit)
            .map(|n| {
                let i = n as usize;
                (
                    (RealX::from(sigma[i]) / RealX::from(n)).ln(),
                    RealX::from(u64::from(tau[i])).ln(),
                )
            })
            .collect();
        let mut ok = true;
        for &(i, big_n) in &records {
            let eps = if i == 0 {
                seq.eps_lo(0) + RealX::ONE
            } else {
                (seq.eps_hi(i) + seq.eps_lo(i)).ldexp(-1)
            };
            let s = seq.stats(i);
            let best = s.log_sigma_over_n - eps * s.log_tau;
            for (k, &(ls, lt)) in logs.iter().enumerate() {
                let n = k as u64 + 1;
                let v = ls - eps * lt;
                ok &= if n == big_n { (v - best).abs() < RealX::from(1e-25) } else { v < best };
            }
        }
        ClaimReport::holds(
            "prop.maximality",
            &format!(
                "each of the {} records <= 10^6 is the unique maximizer of σ(n)/(nτ(n)^ε) over n <= 10^6 at its mid-interval ε",
                records.len()
            ),
            ok,
            Provenance::Derived,
        )
    });

    out.push_timed(|| {
        // best σ(n)/n per τ value, then prefix maxima over τ
        let max_tau = tau.iter().copied().max().unwrap_or(1) as usize;
        let mut best: Vec<(u64, u64)> = vec![(0, 1); max_tau + 1];
        for n in 1..=limit {
            let i = n as usize;
            let (s, m) = best[tau[i] as usize];
            if u128::from(sigma[i]) * u128::from(m) > u128::from(s) * u128::from(n) {
                best[tau[i] as usize] = (sigma[i], n);
            }
        }
        for t in 1..=max_tau {
            let (s0, m0) = best[t - 1];
            let (s1, m1) = best[t];
            if u128::from(s0) * u128::from(m1) > u128::from(s1) * u128::from(m0) {
                best[t] = (s0, m0);
            }
        }
        let mut ok = true;
        for &(_, big_n) in &records {
            let i = big_n as usize;
            let (s, m) = best[tau[i] as usize];
            ok &= u128::from(s) * u128::from(big_n) <= u128::from(sigma[i]) * u128::from(m);
        }
        ClaimReport::holds(
            "prop.tau-implication",
            "τ(n) <= τ(N) implies σ(n)/n <= σ(N)/N for records N <= 10^6 and n <= 10^6",
            ok,
            Provenance::Derived,
        )
    });

    out.push_timed(|| {
        // N = 120 is the unique maximizer at ε = 1/5
        let q = BenefitQuery::from_factorization(
            table,
            RealX::from(0.2),
            small(120),
            RealX::from(0.05),
        )
        .expect("valid query");
        let r = &q.reference_stats;
        let mut ok = true;
        for n in 1..=limit {
            let i = n as usize;
            let ls = (RealX::from(sigma[i]) / RealX::from(n)).ln();
            let lt = RealX::from(u64::from(tau[i])).ln();
            let b = (r.log_sigma_over_n - ls) - q.eps * (r.log_tau - lt);
            ok &= b >= RealX::from(-1e-28);
        }
        ClaimReport::holds(
            "prop.benefit-nonnegative",
            "ben(n) >= 0 at ε = 1/5 (reference 120) for n <= 10^6",
            ok,
            Provenance::Derived,
        )
    });

    out.push_timed(|| {
        let mut ok = true;
        let mut checked = 0usize;
        let queries = [
            BenefitQuery::from_factorization(
                table,
                RealX::from(0.2),
                small(120),
                RealX::from(0.05),
            ),
            BenefitQuery::new(
                table,
                seq.eps_hi(46),
                &seq.record(46).expect("record"),
                RealX::from(0.003),
            ),
        ];
        for q in queries {
            let q = q.expect("valid query");
            for h in enumerate(table, &q).expect("enumeration") {
                let sum = ben(&h.n, &q);
                let direct = ben_direct(&stats(&h.n), &q);
                let scale = sum.abs().max(direct.abs());
                ok &= sum >= RealX::ZERO
                    && (sum - direct).abs() <= RealX::from(1e-18) * scale + RealX::from(1e-28);
                checked += 1;
            }
        }
        ClaimReport::holds(
            "prop.benefit-additive",
            &format!(
                "per-prime sum of ben equals the two-term form to 1e-18 relative ({checked} hits)"
            ),
            ok,
            Provenance::Derived,
        )
    });

    out.push_timed(|| {
        let primes: Vec<u64> = table.range(2, 1000).iter().map(|&p| u64::from(p)).collect();
        let mut ok = true;
        for (j, &p) in primes.iter().enumerate() {
            for a in 1..=30u32 {
                let v = psi(p, a);
                ok &= v > RealX::ZERO && v < psi(p, a - 1);
                if let Some(&q) = primes.get(j + 1) {
                    ok &= psi(q, a) < v;
                }
            }
        }
        ClaimReport::holds(
            "prop.psi-monotone",
            "ψ(p, α) strictly decreasing in p and α for p < 1000, α <= 30",
            ok,
            Provenance::Derived,
        )
    });

    out.push_timed(|| {
        let mut worst = RealX::ZERO;
        for eps in ["0.5", "0.123", "0.0127", "0.0000317"] {
            let eps = RealX::parse_decimal(eps).expect("literal");
            for &p in table.range(2, 200) {
                let p = u64::from(p);
                for a in 1..=20 {
                    let lhs = theta(p, a - 1, eps) - theta(p, a, eps);
                    let rhs = ln_ratio_succ(a) * (eps - psi(p, a));
                    worst = worst.max(((lhs - rhs) / rhs).abs());
                }
            }
        }
        ClaimReport::holds(
            "prop.telescoping",
            "θ(p, α−1) − θ(p, α) = log(1 + 1/α)(ε − ψ(p, α)) to 1e-20 relative",
            worst <= RealX::from(1e-20),
            Provenance::Derived,
        )
        .with_note(format!("worst relative error {}", worst.to_sci(3)))
    });

    let mu = crate::arith::f2(seq.stats(seq.index_created_by(45_439, 1).expect("in stream")));
    super::theorem2::log_concavity(mu, &mut out);

    out.push_timed(|| {
        // bracketing records at ε_{47}: ben >= B forces the e^{−B} margin
        let (lo, hi) = (46, 47);
        let q = BenefitQuery::new(table, seq.eps_hi(hi), &seq.record(hi).expect("record"), RealX::from(0.003))
            .expect("valid query");
        let (t_lo, t_hi) = (seq.stats(lo).log_tau, seq.stats(hi).log_tau);
        let cap = f1(seq.stats(lo)).expect("τ >= 2").max(f1(seq.stats(hi)).expect("τ >= 2"));
        let mut ok = true;
        let mut checked = 0;
        for h in enumerate(table, &q).expect("enumeration") {
            if h.stats.log_tau < t_lo || h.stats.log_tau > t_hi {
                continue;
            }
            let Some(v) = h.f1 else { continue };
            ok &= v <= (-h.ben).exp() * cap * (RealX::ONE + RealX::from(1e-25));
            checked += 1;
        }
        ClaimReport::holds(
            "prop.benefit-interpolation",
            &format!("f₁(n) <= e^−ben(n) max(f₁(N^(46)), f₁(N^(47))) for the {checked} hits between them"),
            ok && checked > 0,
            Provenance::Derived,
        )
    });

    out.push_timed(|| match export_hull(table, HULL_LIMIT) {
        Ok(h) => ClaimReport::holds(
            "prop.hull-dominance",
            "no image of n <= 55440 lies above the superchampion chain (tolerance 1e-12)",
            h.dominated() && h.vertices.iter().any(|v| v.n == HULL_LIMIT),
            Provenance::Derived,
        )
        .with_note(format!(
            "max excess {} at n = {}",
            h.max_excess.to_sci(3),
            h.max_excess_at
        )),
        Err(e) => ClaimReport::holds(
            "prop.hull-dominance",
            "hull export",
            false,
            Provenance::Derived,
        )
        .with_note(e.to_string()),
    });
    Ok(out.finish())
}

fn small(n: u64) -> crate::arith::Factorization {
    crate::arith::factorize_small(n).expect("small")
}
