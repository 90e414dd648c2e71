//! The generated sequence against a direct maximization over n <= 10^6.

use sigmatau_core::primes::sieve;
use sigmatau_core::superchampion::generate_sequence;
use sigmatau_core::RealX;

const LIMIT: usize = 1_000_000;

/// `(σ(n), τ(n))` for `n <= limit` by summing over multiples.
fn divisor_sums(limit: usize) -> (Vec<u64>, Vec<u32>) {
    let mut sigma = vec![0u64; limit + 1];
    let mut tau = vec![0u32; limit + 1];
    for d in 1..=limit {
        for m in (d..=limit).step_by(d) {
            sigma[m] += d as u64;
            tau[m] += 1;
        }
    }
    (sigma, tau)
}

#[test]
fn records_maximize_on_a_grid_of_eps() {
    let table = sieve(10_000).unwrap();
    let seq = generate_sequence(&table, RealX::from(0.05)).unwrap();
    let (sigma, tau) = divisor_sums(LIMIT);
    let value = |n: usize, eps: f64| (sigma[n] as f64 / n as f64).ln() - eps * (tau[n] as f64).ln();

    let mut checked = 0;
    for k in 0..400 {
        let eps = 0.11 + 1.4 * f64::from(k) / 400.0;
        let (lo, hi) = seq.n_eps_indices(RealX::from(eps)).unwrap();
        if lo != hi {
            continue;
        }
        let expected = seq.factorization(lo).to_u128().unwrap() as usize;
        let (best, _) = (1..=LIMIT).fold((0, f64::NEG_INFINITY), |(bn, bv), n| {
            let v = value(n, eps);
            if v > bv + 1e-12 {
                (n, v)
            } else {
                (bn, bv)
            }
        });
        assert_eq!(best, expected, "eps = {eps}");
        checked += 1;
    }
    assert!(checked > 390);
}

#[test]
fn consecutive_records_differ_by_one_prime() {
    let table = sieve(10_000).unwrap();
    let seq = generate_sequence(&table, RealX::from(0.001)).unwrap();
    for i in 1..seq.len() {
        let (num, den) = seq.factorization(i).quotient(&seq.factorization(i - 1));
        assert!(den.is_one(), "record {i} does not divide its successor");
        assert_eq!(num.factors().len(), 1);
        assert_eq!(num.factors()[0].1, 1);
        assert!(seq.stats(i).log_tau > seq.stats(i - 1).log_tau);
        assert!(seq.eps_lo(i) < seq.eps_hi(i));
        assert_eq!(seq.eps_lo(i - 1), seq.eps_hi(i));
    }
}

#[test]
fn incremental_records_agree_with_replay() {
    let table = sieve(10_000).unwrap();
    let seq = generate_sequence(&table, RealX::from(0.005)).unwrap();
    for r in seq.records().step_by(7) {
        assert_eq!(r.n, seq.factorization(r.index));
    }
}
