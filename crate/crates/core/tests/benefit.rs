//! Benefit enumeration against a brute-force scan of n <= 10^7.

use std::collections::BTreeSet;

use sigmatau_core::benefit::{enumerate, BenefitQuery};
use sigmatau_core::primes::sieve;
use sigmatau_core::superchampion::generate_sequence;
use sigmatau_core::RealX;

const LIMIT: usize = 10_000_000;

#[test]
fn enumeration_matches_scan_around_720720() {
    let table = sieve(100_000).unwrap();
    let seq = generate_sequence(&table, RealX::from(0.05)).unwrap();
    let i = seq
        .index_of(&sigmatau_core::arith::factorize_small(720_720).unwrap())
        .unwrap();
    let eps = (seq.eps_hi(i) + seq.eps_lo(i)).ldexp(-1);
    let budget = 0.02;
    let q = BenefitQuery::new(&table, eps, &seq.record(i).unwrap(), RealX::from(budget)).unwrap();
    let hits = enumerate(&table, &q).unwrap();
    let enumerated: BTreeSet<u64> = hits
        .iter()
        .filter_map(|h| h.n.to_u128())
        .filter(|&n| n <= LIMIT as u128)
        .map(|n| n as u64)
        .collect();

    // σ and τ by smallest-prime-factor sieve
    let mut spf = vec![0u32; LIMIT + 1];
    for p in 2..=LIMIT {
        if spf[p] == 0 {
            for m in (p..=LIMIT).step_by(p) {
                if spf[m] == 0 {
                    spf[m] = p as u32;
                }
            }
        }
    }
    let eps = eps.to_f64();
    let value = |mut n: usize| {
        let (mut log_s, mut log_t) = (0.0f64, 0.0f64);
        while n > 1 {
            let p = spf[n] as usize;
            let (mut a, mut pk, mut s) = (0u32, 1f64, 1f64);
            while n % p == 0 {
                n /= p;
                a += 1;
                pk /= p as f64;
                s += pk;
            }
            log_s += s.ln();
            log_t += f64::from(a + 1).ln();
        }
        log_s - eps * log_t
    };
    let top = value(720_720);
    let mut scanned = BTreeSet::new();
    let mut borderline = BTreeSet::new();
    for n in 1..=LIMIT {
        let ben = top - value(n);
        if (ben - budget).abs() < 1e-9 {
            borderline.insert(n as u64);
        } else if ben < budget {
            scanned.insert(n as u64);
        }
    }
    let enumerated: BTreeSet<u64> = enumerated.difference(&borderline).copied().collect();
    assert_eq!(enumerated, scanned);
    assert!(scanned.len() > 10, "{} hits", scanned.len());
}
