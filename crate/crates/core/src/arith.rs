//! Factored integers and their log-domain statistics.
//!
//! Integers are never materialized beyond `u128`; every statistic is carried
//! as a double-double logarithm and exponentiated once.

use std::cmp::Ordering;
use std::fmt;
use std::sync::LazyLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::realx::{RealX, E, EXP_GAMMA, LN_3};

/// Default bound for [`SmallFactorizer`].
pub const DEFAULT_SMALL_SCAN_LIMIT: u64 = 10_000_000;

/// `n = ∏ p^α` with strictly increasing primes and exponents `>= 1`.
/// The empty list is `n = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization::default()
    }

    /// Validates ordering and exponents (primality is the caller's concern).
    pub fn new(factors: Vec<(u64, u32)>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidArgument(format!(
                    "primes not strictly increasing: {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some(&(p, a)) = factors.iter().find(|&&(p, a)| p < 2 || a == 0) {
            return Err(Error::InvalidArgument(format!("bad factor {p}^{a}")));
        }
        Ok(Factorization { factors })
    }

    pub(crate) fn from_sorted_unchecked(factors: Vec<(u64, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Factorization { factors }
    }

    /// Builds `∏ p^e` over runs `(primes, e)`; used for the closed forms
    /// such as `2^8 3^5 ... ∏_{17<=p<=113} p`.
    pub fn from_runs(table: &PrimeTable, runs: &[(u64, u64, u32)]) -> Result<Self> {
        let mut f = Vec::new();
        for &(lo, hi, e) in runs {
            if hi > table.limit() {
                return Err(Error::OutOfRange(format!(
                    "prime run up to {hi} beyond sieve limit {}",
                    table.limit()
                )));
            }
            f.extend(table.range(lo, hi).iter().map(|&p| (u64::from(p), e)));
        }
        Factorization::new(f)
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Sets `v_p` to `e` (removing the prime when `e = 0`).
    pub fn with_exponent(&self, p: u64, e: u32) -> Self {
        let mut f = self.factors.clone();
        match f.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) if e == 0 => {
                f.remove(i);
            }
            Ok(i) => f[i].1 = e,
            Err(_) if e == 0 => {}
            Err(i) => f.insert(i, (p, e)),
        }
        Factorization { factors: f }
    }

    /// `self * p`.
    pub fn mul_prime(&self, p: u64) -> Self {
        let e = self.exponent_of(p);
        self.with_exponent(p, e + 1)
    }

    pub fn mul(&self, other: &Factorization) -> Self {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        Factorization { factors: out }
    }

    pub fn divides(&self, other: &Factorization) -> bool {
        self.factors.iter().all(|&(p, a)| other.exponent_of(p) >= a)
    }

    /// `self / other` as a reduced pair `(numerator, denominator)`.
    pub fn quotient(&self, other: &Factorization) -> (Factorization, Factorization) {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for p in merged_primes(self, other) {
            let (a, b) = (self.exponent_of(p), other.exponent_of(p));
            match a.cmp(&b) {
                Ordering::Greater => num.push((p, a - b)),
                Ordering::Less => den.push((p, b - a)),
                Ordering::Equal => {}
            }
        }
        (
            Factorization { factors: num },
            Factorization { factors: den },
        )
    }

    /// `τ(self) / τ(other)`, reduced.
    pub fn tau_ratio(&self, other: &Factorization) -> Ratio<u64> {
        let mut r = Ratio::from_integer(1u64);
        for p in merged_primes(self, other) {
            let (a, b) = (self.exponent_of(p), other.exponent_of(p));
            if a != b {
                r *= Ratio::new(u64::from(a) + 1, u64::from(b) + 1);
            }
        }
        r
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, &(p, a)| {
            u128::from(p)
                .checked_pow(a)
                .and_then(|q| acc.checked_mul(q))
        })
    }

    pub fn tau_u128(&self) -> Option<u128> {
        self.factors
            .iter()
            .try_fold(1u128, |acc, &(_, a)| acc.checked_mul(u128::from(a) + 1))
    }

    pub fn phi_u128(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, &(p, a)| {
            let pp = u128::from(p).checked_pow(a - 1)?;
            acc.checked_mul(pp)?.checked_mul(u128::from(p) - 1)
        })
    }

    pub fn sigma_u128(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, &(p, a)| {
            let p = u128::from(p);
            let s = (p.checked_pow(a + 1)? - 1) / (p - 1);
            acc.checked_mul(s)
        })
    }

    /// Exponents non-increasing in `p` and no prime gaps below the largest
    /// prime factor (the shape every superchampion has).
    pub fn is_staircase(&self, table: &PrimeTable) -> bool {
        let Some(top) = self.largest_prime() else {
            return true;
        };
        let Ok(k) = table.pi(top) else {
            return false;
        };
        k == self.factors.len()
            && self
                .factors
                .iter()
                .zip(table.primes())
                .all(|(&(p, _), &q)| p == u64::from(q))
            && self.factors.windows(2).all(|w| w[0].1 >= w[1].1)
    }

    /// `2^8·3^5·5^3·P(17..113)`; runs of at least `min_run` consecutive
    /// primes sharing an exponent are compressed when a table is supplied.
    pub fn render(&self, table: Option<&PrimeTable>, min_run: usize) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let (p, e) = self.factors[i];
            let mut j = i + 1;
            if let Some(t) = table {
                if let Ok(k) = t.pi(p) {
                    while j < self.factors.len()
                        && self.factors[j].1 == e
                        && t.primes().get(k + j - i - 1).map(|&q| u64::from(q))
                            == Some(self.factors[j].0)
                    {
                        j += 1;
                    }
                }
            }
            if table.is_some() && j - i >= min_run.max(2) {
                let last = self.factors[j - 1].0;
                parts.push(if e == 1 {
                    format!("P({p}..{last})")
                } else {
                    format!("P({p}..{last})^{e}")
                });
                i = j;
            } else {
                parts.push(if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                });
                i += 1;
            }
        }
        parts.join("·")
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None, 0))
    }
}

fn merged_primes(a: &Factorization, b: &Factorization) -> Vec<u64> {
    let mut ps: Vec<u64> = a
        .factors
        .iter()
        .chain(b.factors.iter())
        .map(|&(p, _)| p)
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// Log-domain statistics of a factored integer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArithStats {
    pub log_n: RealX,
    /// `Σ log(α_p + 1)`
    pub log_tau: RealX,
    pub log_sigma_over_n: RealX,
    pub sigma_over_n: RealX,
    pub log_n_over_phi: RealX,
    pub n_over_phi: RealX,
    pub omega: usize,
}

impl ArithStats {
    pub fn one() -> Self {
        ArithStats {
            log_n: RealX::ZERO,
            log_tau: RealX::ZERO,
            log_sigma_over_n: RealX::ZERO,
            sigma_over_n: RealX::ONE,
            log_n_over_phi: RealX::ZERO,
            n_over_phi: RealX::ONE,
            omega: 0,
        }
    }

    /// Statistics of the product of two coprime integers.
    pub fn combine_coprime(&self, other: &ArithStats) -> ArithStats {
        ArithStats::from_logs(
            self.log_n + other.log_n,
            self.log_tau + other.log_tau,
            self.log_sigma_over_n + other.log_sigma_over_n,
            self.log_n_over_phi + other.log_n_over_phi,
            self.omega + other.omega,
        )
    }

    pub(crate) fn from_logs(
        log_n: RealX,
        log_tau: RealX,
        log_sigma_over_n: RealX,
        log_n_over_phi: RealX,
        omega: usize,
    ) -> Self {
        ArithStats {
            log_n,
            log_tau,
            log_sigma_over_n,
            sigma_over_n: log_sigma_over_n.exp(),
            log_n_over_phi,
            n_over_phi: log_n_over_phi.exp(),
            omega,
        }
    }

    pub fn tau_f64(&self) -> f64 {
        self.log_tau.to_f64().exp()
    }
}

static LN_SMALL: LazyLock<Vec<RealX>> = LazyLock::new(|| {
    (0..=256u64)
        .map(|k| {
            if k == 0 {
                RealX::ZERO
            } else {
                RealX::from(k).ln()
            }
        })
        .collect()
});

/// `log k` for small `k`, cached.
pub fn ln_int(k: u64) -> RealX {
    match LN_SMALL.get(k as usize) {
        Some(&v) if k > 0 => v,
        _ => RealX::from(k).ln(),
    }
}

/// `log(1 + 1/α) = log((α+1)/α)`.
pub fn ln_ratio_succ(alpha: u32) -> RealX {
    let a = u64::from(alpha);
    if a < 256 {
        ln_int(a + 1) - ln_int(a)
    } else {
        (RealX::ONE / RealX::from(a)).ln_1p()
    }
}

/// `p^{-e}` in double-double.
pub fn inv_pow(p: u64, e: u32) -> RealX {
    (RealX::ONE / RealX::from(p)).powi(e)
}

/// `log(σ(p^α)/p^α) = log(1 + 1/p + ... + 1/p^α)`.
pub fn log_sigma_ratio(p: u64, alpha: u32) -> RealX {
    if alpha == 0 {
        return RealX::ZERO;
    }
    // 1/p + ... + 1/p^α = (1 - p^{-α}) / (p - 1)
    ((RealX::ONE - inv_pow(p, alpha)) / RealX::from(p - 1)).ln_1p()
}

/// `log(p/(p-1)) = -log(1 - 1/p)`.
pub fn log_p_over_p_minus_1(p: u64) -> RealX {
    -(-(RealX::ONE / RealX::from(p))).ln_1p()
}

/// Per-prime contribution to each log statistic.
fn prime_power_logs(p: u64, a: u32) -> (RealX, RealX, RealX, RealX) {
    (
        RealX::from(u64::from(a)) * ln_int(p),
        ln_int(u64::from(a) + 1),
        log_sigma_ratio(p, a),
        log_p_over_p_minus_1(p),
    )
}

/// All statistics of `f`, computed factor by factor in the log domain.
pub fn stats(f: &Factorization) -> ArithStats {
    let mut log_n = RealX::ZERO;
    let mut log_tau = RealX::ZERO;
    let mut log_sigma = RealX::ZERO;
    let mut log_phi = RealX::ZERO;
    for &(p, a) in &f.factors {
        let (n, t, s, ph) = prime_power_logs(p, a);
        log_n += n;
        log_tau += t;
        log_sigma += s;
        log_phi += ph;
    }
    ArithStats::from_logs(log_n, log_tau, log_sigma, log_phi, f.factors.len())
}

/// `f₁ = σ(n) / (n log log(3τ(n)))`, with `log(3τ) = log 3 + log τ`.
pub fn f1(s: &ArithStats) -> Result<RealX> {
    if s.log_tau <= RealX::ZERO {
        return Err(Error::OutOfDomain("f1 needs τ(n) >= 2".into()));
    }
    Ok(s.sigma_over_n / (*LN_3 + s.log_tau).ln())
}

/// `f₂ = σ(n)/n − e^γ log log(eτ(n)) − e^γ log log log(e^e τ(n))`.
pub fn f2(s: &ArithStats) -> RealX {
    let eg = *EXP_GAMMA;
    s.sigma_over_n - eg * s.log_tau.ln_1p() - eg * (*E + s.log_tau).ln().ln()
}

/// Exact factorization by trial division over primes up to `√n`.
pub fn factorize_small(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    if n > DEFAULT_SMALL_SCAN_LIMIT {
        return Err(Error::OutOfRange(format!(
            "{n} exceeds small-scan bound {DEFAULT_SMALL_SCAN_LIMIT}"
        )));
    }
    static SMALL_PRIMES: LazyLock<Vec<u64>> = LazyLock::new(|| {
        crate::primes::sieve(4000)
            .expect("static sieve")
            .primes()
            .iter()
            .map(|&p| u64::from(p))
            .collect()
    });
    let mut m = n;
    let mut out = Vec::new();
    for &p in SMALL_PRIMES.iter() {
        if p * p > m {
            break;
        }
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(Factorization { factors: out })
}

/// Smallest-prime-factor table for repeated factorization of `n <= limit`.
#[derive(Clone, Debug)]
pub struct SmallFactorizer {
    spf: Vec<u32>,
}

impl SmallFactorizer {
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 || limit > u64::from(u32::MAX) {
            return Err(Error::InvalidArgument(format!("small-scan limit {limit}")));
        }
        let limit = limit as usize;
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Ok(SmallFactorizer { spf })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::InvalidArgument("cannot factor 0".into()));
        }
        if n > self.limit() {
            return Err(Error::OutOfRange(format!(
                "{n} exceeds small-scan bound {}",
                self.limit()
            )));
        }
        let mut m = n as usize;
        let mut out: Vec<(u64, u32)> = Vec::new();
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        Ok(Factorization { factors: out })
    }
}

/// `G(n) = n/φ(n) − e^γ log log φ(n)`.
pub fn big_g(n: u64) -> Result<RealX> {
    let f = factorize_small(n)?;
    let phi = f.phi_u128().expect("small n");
    if phi < 2 {
        return Err(Error::OutOfDomain(format!("G({n}) needs φ(n) >= 2")));
    }
    let s = stats(&f);
    Ok(s.n_over_phi - *EXP_GAMMA * RealX::from(phi).ln().ln())
}

/// `log φ(n) = log n − log(n/φ(n))`.
pub fn log_phi(s: &ArithStats) -> RealX {
    s.log_n - s.log_n_over_phi
}

/// `c_k = log log φ(N_k) [N_k/φ(N_k) − e^γ log log φ(N_k)]`.
pub fn c_k(table: &PrimeTable, k: usize) -> Result<RealX> {
    if k < 4 {
        return Err(Error::OutOfDomain(format!(
            "c_k defined for k >= 4, got {k}"
        )));
    }
    let s = stats(&table.primorial(k)?);
    let u = log_phi(&s).ln();
    Ok(u * (s.n_over_phi - *EXP_GAMMA * u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve;
    use proptest::prelude::*;

    fn brute_sigma_tau_phi(n: u64) -> (u64, u64, u64) {
        let (mut s, mut t) = (0, 0);
        for d in 1..=n {
            if n % d == 0 {
                s += d;
                t += 1;
            }
        }
        let phi = (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64;
        (s, t, phi)
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(
            factorize_small(30030).unwrap().factors(),
            &[(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1)]
        );
        assert!(factorize_small(1).unwrap().is_one());
        let f = factorize_small(5040).unwrap();
        assert_eq!(f.factors(), &[(2, 4), (3, 2), (5, 1), (7, 1)]);
        assert_eq!(f.tau_u128(), Some(60));
        assert!(matches!(factorize_small(0), Err(Error::InvalidArgument(_))));
        let sf = SmallFactorizer::new(100_000).unwrap();
        for n in 1..=100_000 {
            assert_eq!(sf.factorize(n).unwrap(), factorize_small(n).unwrap());
        }
    }

    #[test]
    fn stats_examples() {
        let s = stats(&factorize_small(120).unwrap());
        assert!((s.sigma_over_n - RealX::from(3.0)).abs().to_f64() < 1e-30);
        assert!((s.log_tau - RealX::from(16.0).ln()).abs().to_f64() < 1e-30);
        let s1 = stats(&Factorization::one());
        assert_eq!(s1.sigma_over_n, RealX::ONE);
        assert_eq!(s1.log_tau, RealX::ZERO);
        let s2 = stats(&factorize_small(2).unwrap());
        assert!((s2.sigma_over_n - RealX::from(1.5)).abs().to_f64() < 1e-31);
    }

    #[test]
    fn stats_match_brute_force() {
        for n in (1..=3000u64).chain([65536, 99991, 100_000, 83160]) {
            let f = factorize_small(n).unwrap();
            let s = stats(&f);
            let (sig, tau, phi) = brute_sigma_tau_phi(n);
            let want = RealX::from(sig) / RealX::from(n);
            assert!(
                ((s.sigma_over_n - want) / want).abs().to_f64() <= 1e-18,
                "n={n}"
            );
            assert_eq!(f.tau_u128(), Some(u128::from(tau)));
            assert_eq!(f.phi_u128(), Some(u128::from(phi)));
            assert_eq!(f.sigma_u128(), Some(u128::from(sig)));
            let nphi = RealX::from(n) / RealX::from(phi);
            assert!(((s.n_over_phi - nphi) / nphi).abs().to_f64() <= 1e-28);
        }
    }

    #[test]
    fn f1_f2_small() {
        let s2 = stats(&factorize_small(2).unwrap());
        let want = RealX::from(1.5) / RealX::from(6.0).ln().ln();
        assert!((f1(&s2).unwrap() - want).abs().to_f64() < 1e-30);
        assert!(matches!(f1(&ArithStats::one()), Err(Error::OutOfDomain(_))));
        assert!((f2(&ArithStats::one()) - RealX::ONE).abs().to_f64() < 1e-30);
    }

    #[test]
    fn g_and_c_tables() {
        let g = |n| big_g(n).unwrap().to_fixed(2);
        assert_eq!(g(3), "2.15");
        assert_eq!(g(4), "2.65");
        assert_eq!(g(5), "0.67");
        assert_eq!(g(6), "3.65");
        assert_eq!(g(30), "2.45");
        assert!(matches!(big_g(2), Err(Error::OutOfDomain(_))));
        assert!(matches!(big_g(1), Err(Error::OutOfDomain(_))));
        let t = sieve(100).unwrap();
        assert_eq!(c_k(&t, 4).unwrap().to_fixed(2), "2.66");
        assert_eq!(c_k(&t, 14).unwrap().to_fixed(2), "2.55");
        assert_eq!(c_k(&t, 6).unwrap().to_fixed(7), "2.9550377");
        assert!(matches!(c_k(&t, 3), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn render_and_quotient() {
        let t = sieve(1000).unwrap();
        let m1 = Factorization::from_runs(
            &t,
            &[(2, 2, 8), (3, 3, 5), (5, 5, 3), (7, 13, 2), (17, 113, 1)],
        )
        .unwrap();
        assert_eq!(
            m1.render(Some(&t), 4),
            "2^8·3^5·5^3·7^2·11^2·13^2·P(17..113)"
        );
        assert_eq!(factorize_small(360).unwrap().to_string(), "2^3·3^2·5");
        let n = m1.mul_prime(127).mul_prime(2);
        let (num, den) = n.quotient(&m1);
        assert_eq!(num.to_string(), "2·127");
        assert!(den.is_one());
        assert_eq!(n.tau_ratio(&m1), Ratio::new(20, 9));
        assert!(m1.is_staircase(&t));
        assert!(n.is_staircase(&t));
        assert!(!m1.mul_prime(131).is_staircase(&t));
        assert!(m1.divides(&n));
        assert!(Factorization::new(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::new(vec![(2, 0)]).is_err());
    }

    #[test]
    fn with_exponent_edits() {
        let f = factorize_small(12).unwrap();
        assert_eq!(f.with_exponent(3, 0).to_u128(), Some(4));
        assert_eq!(f.with_exponent(5, 2).to_u128(), Some(300));
        assert_eq!(f.with_exponent(7, 0), f);
        assert_eq!(f.mul_prime(2).to_u128(), Some(24));
    }

    fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
        (1u64..50_000, 1u64..50_000).prop_filter("coprime", |(a, b)| num_integer::gcd(*a, *b) == 1)
    }

    proptest! {
        #[test]
        fn stats_are_multiplicative((a, b) in coprime_pair()) {
            let fa = factorize_small(a).unwrap();
            let fb = factorize_small(b).unwrap();
            let joint = stats(&fa.mul(&fb));
            let comb = stats(&fa).combine_coprime(&stats(&fb));
            prop_assert!((joint.log_n - comb.log_n).abs().to_f64() < 1e-28);
            prop_assert!((joint.log_tau - comb.log_tau).abs().to_f64() < 1e-28);
            prop_assert!(((joint.sigma_over_n - comb.sigma_over_n) / comb.sigma_over_n).abs().to_f64() < 1e-28);
            prop_assert!(((joint.n_over_phi - comb.n_over_phi) / comb.n_over_phi).abs().to_f64() < 1e-28);
            prop_assert_eq!(joint.omega, comb.omega);
        }

        #[test]
        fn stats_invariants(n in 1u64..1_000_000) {
            let f = factorize_small(n).unwrap();
            let s = stats(&f);
            if n == 1 {
                prop_assert_eq!(s.sigma_over_n, RealX::ONE);
            } else {
                prop_assert!(s.sigma_over_n > RealX::ONE);
            }
            prop_assert!(s.sigma_over_n <= s.n_over_phi);
            prop_assert!(s.log_tau >= RealX::from(s.omega as u64) * ln_int(2) - RealX::from(1e-30));
        }
    }
}
