//! Prime tables and the effective prime-counting bounds used for large ω(n).

use crate::arith::Factorization;
use crate::error::{Error, Result};
use crate::realx::{RealX, EXP_GAMMA, LN_2};

/// Default sieve limit; covers `p_166000 = 2248723` and its successor.
pub const DEFAULT_SIEVE_LIMIT: u64 = 2_500_000;
/// Sieve limit needed for `p_{π(10^8)+1} = 10^8 + 7`.
pub const HEAVY_SIEVE_LIMIT: u64 = 100_000_100;

/// Index from which `λ_k >= 0.9427` is imported.
pub const K0: usize = 15_985;
pub const K1: usize = 166_000;
/// `π(10^8) + 1`.
pub const K2: usize = 5_761_456;
/// Lower bound on `λ_k` for `k >= K0`.
pub const LAMBDA_FLOOR: f64 = 0.9427;

const SEGMENT_BITS: usize = 1 << 18;

/// All primes up to `limit`, in increasing order.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u32>,
}

fn simple_sieve(limit: usize) -> Vec<u32> {
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Segmented sieve over odd numbers, one bit per odd integer.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::InvalidArgument(format!("sieve limit {limit} < 2")));
    }
    if limit > u64::from(u32::MAX) {
        return Err(Error::InvalidArgument(format!(
            "sieve limit {limit} exceeds 32-bit prime storage"
        )));
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let base: Vec<u32> = simple_sieve(root as usize)
        .into_iter()
        .filter(|&p| p > 2)
        .collect();

    // bit j of the segment starting at odd `low` stands for low + 2j
    let mut primes = Vec::with_capacity(estimate_pi(limit));
    primes.push(2u32);
    let mut words = vec![0u64; SEGMENT_BITS / 64];
    let mut low = 3u64;
    while low <= limit {
        let span = (((limit - low) / 2 + 1) as usize).min(SEGMENT_BITS);
        words.iter_mut().for_each(|w| *w = 0);
        let high = low + 2 * (span as u64 - 1);
        for &p in &base {
            let p = u64::from(p);
            let sq = p * p;
            if sq > high {
                break;
            }
            let mut start = if sq >= low {
                sq
            } else {
                let r = low % p;
                let m = if r == 0 { low } else { low + (p - r) };
                if m % 2 == 0 {
                    m + p
                } else {
                    m
                }
            };
            while start <= high {
                let j = ((start - low) / 2) as usize;
                words[j >> 6] |= 1 << (j & 63);
                start += 2 * p;
            }
        }
        for j in 0..span {
            if words[j >> 6] & (1 << (j & 63)) == 0 {
                primes.push((low + 2 * j as u64) as u32);
            }
        }
        low = high + 2;
    }
    primes.retain(|&p| u64::from(p) <= limit);
    Ok(PrimeTable { limit, primes })
}

fn estimate_pi(x: u64) -> usize {
    let xf = x as f64;
    if xf < 17.0 {
        8
    } else {
        (1.26 * xf / xf.ln()) as usize
    }
}

impl PrimeTable {
    pub fn new(limit: u64) -> Result<Self> {
        sieve(limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The k-th prime, 1-indexed (`p_1 = 2`).
    pub fn nth(&self, k: usize) -> Result<u64> {
        if k == 0 {
            return Err(Error::InvalidArgument("primes are 1-indexed".into()));
        }
        self.primes
            .get(k - 1)
            .map(|&p| u64::from(p))
            .ok_or_else(|| {
                Error::OutOfRange(format!(
                    "p_{k} beyond sieve limit {} (π = {})",
                    self.limit,
                    self.primes.len()
                ))
            })
    }

    /// π(x) for `x <= limit`.
    pub fn pi(&self, x: u64) -> Result<usize> {
        if x > self.limit {
            return Err(Error::OutOfRange(format!(
                "π({x}) requested but sieve limit is {}",
                self.limit
            )));
        }
        Ok(self.primes.partition_point(|&p| u64::from(p) <= x))
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        if n > self.limit {
            return Err(Error::OutOfRange(format!(
                "{n} beyond sieve limit {}",
                self.limit
            )));
        }
        Ok(n <= u64::from(u32::MAX) && self.primes.binary_search(&(n as u32)).is_ok())
    }

    /// Smallest listed prime strictly greater than `p`.
    pub fn next_prime(&self, p: u64) -> Result<u64> {
        let i = self.primes.partition_point(|&q| u64::from(q) <= p);
        self.primes.get(i).map(|&q| u64::from(q)).ok_or_else(|| {
            Error::OutOfRange(format!(
                "next prime after {p} beyond sieve limit {}",
                self.limit
            ))
        })
    }

    /// Primes in the closed interval `[lo, hi]`.
    pub fn range(&self, lo: u64, hi: u64) -> &[u32] {
        let a = self.primes.partition_point(|&q| u64::from(q) < lo);
        let b = self.primes.partition_point(|&q| u64::from(q) <= hi);
        &self.primes[a..b.max(a)]
    }

    /// `N_k = p_1 p_2 ... p_k`.
    pub fn primorial(&self, k: usize) -> Result<Factorization> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "primorial index must be >= 1".into(),
            ));
        }
        if k > self.primes.len() {
            return Err(Error::OutOfRange(format!(
                "primorial({k}) needs {k} primes, table has {}",
                self.primes.len()
            )));
        }
        Ok(Factorization::from_sorted_unchecked(
            self.primes[..k]
                .iter()
                .map(|&p| (u64::from(p), 1))
                .collect(),
        ))
    }

    /// `λ_k = log k + log log k - p_k / k`.
    pub fn lambda_k(&self, k: usize) -> Result<RealX> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!(
                "λ_k needs k >= 2 (log log k), got {k}"
            )));
        }
        let pk = RealX::from(self.nth(k)?);
        let kx = RealX::from(k as u64);
        let lk = kx.ln();
        Ok(lk + lk.ln() - pk / kx)
    }

    /// Smallest `λ_k` over `k in [from, to]`, with its argmin.
    pub fn min_lambda(&self, from: usize, to: usize) -> Result<(usize, RealX)> {
        let mut best: Option<(usize, RealX)> = None;
        for k in from..=to {
            let v = self.lambda_k(k)?;
            if best.is_none_or(|(_, b)| v < b) {
                best = Some((k, v));
            }
        }
        best.ok_or_else(|| Error::InvalidArgument(format!("empty range {from}..={to}")))
    }

    /// The four effective bound components at `k`.
    pub fn delta_beta_eta_rho(&self, k: usize) -> Result<BoundComponents> {
        if k < K0 {
            return Err(Error::OutOfDomain(format!(
                "bound components are only claimed for k >= {K0}, got {k}"
            )));
        }
        Ok(bound_components(k, self.nth(k)?))
    }
}

/// `δ(k)`, `β(k)`, `η(k)` and `ρ(k) = e^γ (−log log 2 + η + β + δ)`.
#[derive(Clone, Copy, Debug)]
pub struct BoundComponents {
    pub delta: RealX,
    pub beta: RealX,
    pub eta: RealX,
    pub rho: RealX,
}

/// `δ(k)` from the value of `p_k`.
pub fn delta_of(pk: u64) -> RealX {
    if pk <= 100_000_000 {
        RealX::from(2.0) / RealX::from(pk).sqrt()
    } else {
        RealX::from(0.2) / RealX::from(pk).ln()
    }
}

pub fn beta_of(k: usize) -> RealX {
    let lk = RealX::from(k as u64).ln();
    (lk.ln() - RealX::from(LAMBDA_FLOOR)) / lk
}

pub fn eta_of(k: usize) -> RealX {
    // log log 2^k = log(k log 2)
    -LN_2.ln() / (RealX::from(k as u64) * *LN_2).ln()
}

pub fn bound_components(k: usize, pk: u64) -> BoundComponents {
    let delta = delta_of(pk);
    let beta = beta_of(k);
    let eta = eta_of(k);
    let rho = *EXP_GAMMA * (-LN_2.ln() + eta + beta + delta);
    BoundComponents {
        delta,
        beta,
        eta,
        rho,
    }
}
