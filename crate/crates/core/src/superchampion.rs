//! (σ,τ)-superchampion numbers.
//!
//! For ε > 0 the maximizer of `σ(n) / (n τ(n)^ε)` is built prime by prime:
//! the exponent of `p` is the `α` with `ψ(p, α+1) <= ε <= ψ(p, α)`. Sorting
//! all critical values `ψ(p, α)` in decreasing order gives the sequence
//! `N^(0) = 1, N^(1) = 2, N^(2) = 6, ...`, each record being its predecessor
//! times the prime whose critical value was crossed.

use serde::Serialize;

use crate::arith::{ln_int, ln_ratio_succ, log_p_over_p_minus_1, ArithStats, Factorization};
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::realx::{RealX, LN_2};

/// Relative tolerance below which `ε` is treated as equal to a critical value.
pub const EPS_EQUALITY_REL: f64 = 1e-26;
/// Two consecutive critical values closer than this in g₁ are a tie.
pub const TIE_G1_TOLERANCE: f64 = 1e-3;

/// `ψ(p, α) = log(1 + (p−1)/(p^{α+1} − p)) / log(1 + 1/α)`; `ψ(p, 0) = +∞`.
pub fn psi(p: u64, alpha: u32) -> RealX {
    if alpha == 0 {
        return RealX::INFINITY;
    }
    psi_numerator(p, alpha) / ln_ratio_succ(alpha)
}

/// `log(σ(p^α)/p^α) − log(σ(p^{α−1})/p^{α−1}) = log(1 + (p−1)/(p^{α+1} − p))`.
pub(crate) fn psi_numerator(p: u64, alpha: u32) -> RealX {
    let t = match u128::from(p).checked_pow(alpha + 1) {
        Some(q) if q < 1 << 100 => RealX::from(u128::from(p - 1)) / RealX::from(q - u128::from(p)),
        _ => {
            // (p−1) q / (1 − p q) with q = p^{−α−1}
            let q = crate::arith::inv_pow(p, alpha + 1);
            RealX::from(p - 1) * q / (RealX::ONE - RealX::from(p) * q)
        }
    };
    t.ln_1p()
}

/// `θ(p, α) = log(σ(p^α)/p^α) − ε log(α+1)`, with `θ(p, 0) = 0`.
pub fn theta(p: u64, alpha: u32, eps: RealX) -> RealX {
    if alpha == 0 {
        return RealX::ZERO;
    }
    crate::arith::log_sigma_ratio(p, alpha) - eps * ln_int(u64::from(alpha) + 1)
}

/// `g₁(ε) = 1 / (2^ε − 1)`; `g₁(ψ(p, 1)) = p`.
pub fn g1(eps: RealX) -> RealX {
    RealX::ONE / (eps * *LN_2).exp_m1()
}

fn approx_eq(a: RealX, b: RealX) -> bool {
    (a - b).abs() <= b.abs() * RealX::from(EPS_EQUALITY_REL)
}

/// Optimal exponent of `p` at parameter ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlphaChoice {
    pub alpha: u32,
    /// ε equals `ψ(p, alpha)`: both `alpha − 1` and `alpha` are optimal.
    pub tied: bool,
}

/// The `α` with `ψ(p, α+1) < ε <= ψ(p, α)`.
pub fn alpha_for(p: u64, eps: RealX) -> AlphaChoice {
    assert!(eps > RealX::ZERO, "alpha_for needs eps > 0");
    let one = psi(p, 1);
    if one < eps && !approx_eq(eps, one) {
        return AlphaChoice {
            alpha: 0,
            tied: false,
        };
    }
    // first power of two past the answer, then walk down
    let mut hi = 2u32;
    while psi(p, hi) >= eps || approx_eq(eps, psi(p, hi)) {
        hi *= 2;
    }
    let mut a = hi - 1;
    loop {
        let v = psi(p, a);
        if v >= eps || approx_eq(eps, v) {
            return AlphaChoice {
                alpha: a,
                tied: approx_eq(eps, v),
            };
        }
        a -= 1;
    }
}

/// One element `ψ(p, α)` of the set of critical values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CriticalEpsilon {
    pub p: u64,
    pub alpha: u32,
    #[serde(serialize_with = "ser_realx")]
    pub value: RealX,
}

pub(crate) fn ser_realx<S: serde::Serializer>(
    x: &RealX,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Closest approach of two consecutive stream values, measured in g₁.
#[derive(Clone, Copy, Debug)]
pub struct GapReport {
    pub gap: RealX,
    /// the smaller critical value
    pub lower: CriticalEpsilon,
    pub upper: CriticalEpsilon,
}

/// All critical values `>= eps_min`, strictly decreasing.
#[derive(Clone, Debug)]
pub struct CriticalStream {
    pub eps_min: RealX,
    pub entries: Vec<CriticalEpsilon>,
    /// consecutive pairs whose g₁ gap is below [`TIE_G1_TOLERANCE`]
    pub ties: Vec<GapReport>,
    pub min_gap: Option<GapReport>,
}

pub fn critical_stream(table: &PrimeTable, eps_min: RealX) -> Result<CriticalStream> {
    if eps_min <= RealX::ZERO {
        return Err(Error::InvalidArgument("eps_min must be positive".into()));
    }
    // every prime beyond the table must already be below eps_min
    let edge = (RealX::ONE / RealX::from(table.limit())).ln_1p() / *LN_2;
    if edge >= eps_min {
        return Err(Error::OutOfRange(format!(
            "sieve limit {} too small for eps_min {}: need primes up to g1(eps_min) = {}",
            table.limit(),
            eps_min.to_sci(8),
            g1(eps_min).to_sci(8)
        )));
    }
    let mut entries = Vec::new();
    for &p in table.primes() {
        let p = u64::from(p);
        let mut alpha = 1;
        loop {
            let v = psi(p, alpha);
            if v < eps_min {
                break;
            }
            entries.push(CriticalEpsilon { p, alpha, value: v });
            alpha += 1;
        }
        if alpha == 1 {
            break;
        }
    }
    entries.sort_by(|a, b| {
        b.value
            .partial_cmp(&a.value)
            .expect("finite critical values")
    });

    let mut ties = Vec::new();
    let mut min_gap: Option<GapReport> = None;
    let g: Vec<RealX> = entries.iter().map(|e| g1(e.value)).collect();
    for i in 1..entries.len() {
        let gap = GapReport {
            gap: g[i] - g[i - 1],
            lower: entries[i],
            upper: entries[i - 1],
        };
        if gap.gap < RealX::from(TIE_G1_TOLERANCE) {
            ties.push(gap);
        }
        if min_gap.is_none_or(|m| gap.gap < m.gap) {
            min_gap = Some(gap);
        }
    }
    Ok(CriticalStream {
        eps_min,
        entries,
        ties,
        min_gap,
    })
}

/// One superchampion `N^(i)` with its parameter interval `[eps_lo, eps_hi]`.
#[derive(Clone, Debug)]
pub struct SuperchampionRecord {
    pub index: usize,
    pub n: Factorization,
    pub stats: ArithStats,
    /// `ε_i` (`+∞` for `i = 0`)
    pub eps_hi: RealX,
    /// `ε_{i+1}`
    pub eps_lo: RealX,
    /// critical value that produced this record from `N^(i−1)`
    pub added: Option<CriticalEpsilon>,
}

/// The superchampion sequence `N^(0), N^(1), ...` down to a parameter floor.
///
/// Factorizations are replayed from the critical stream on demand; only
/// the statistics of each record are stored.
#[derive(Clone, Debug)]
pub struct Superchampions {
    stream: CriticalStream,
    stats: Vec<ArithStats>,
    /// next critical value below the last one in the stream
    tail_eps: RealX,
}

/// Builds the sequence from a tie-free stream.
pub fn generate_sequence(table: &PrimeTable, eps_min: RealX) -> Result<Superchampions> {
    let stream = critical_stream(table, eps_min)?;
    Superchampions::from_stream(table, stream)
}

/// Sequence down to `ψ(p, 1)` for the first `p` in 7, 17, 37, ... (roughly
/// doubling) such that `done` accepts it.
pub fn generate_until(
    table: &PrimeTable,
    mut done: impl FnMut(&Superchampions) -> bool,
) -> Result<Superchampions> {
    let mut p = 7;
    loop {
        let seq = generate_sequence(table, psi(p, 1))?;
        if done(&seq) {
            return Ok(seq);
        }
        p = table.next_prime(2 * p)?;
    }
}

impl Superchampions {
    pub fn from_stream(table: &PrimeTable, stream: CriticalStream) -> Result<Self> {
        if let Some(t) = stream.ties.first() {
            return Err(Error::Tie {
                p1: t.upper.p,
                a1: t.upper.alpha,
                p2: t.lower.p,
                a2: t.lower.alpha,
                gap: t.gap.to_f64(),
            });
        }
        let mut stats = Vec::with_capacity(stream.entries.len() + 1);
        let (mut log_n, mut log_tau, mut log_sigma, mut log_phi) =
            (RealX::ZERO, RealX::ZERO, RealX::ZERO, RealX::ZERO);
        let mut omega = 0usize;
        stats.push(ArithStats::one());
        for e in &stream.entries {
            log_n += ln_int(e.p);
            log_tau += ln_ratio_succ(e.alpha);
            log_sigma += psi_numerator(e.p, e.alpha);
            if e.alpha == 1 {
                log_phi += log_p_over_p_minus_1(e.p);
                omega += 1;
            }
            stats.push(ArithStats::from_logs(
                log_n, log_tau, log_sigma, log_phi, omega,
            ));
        }
        let mut seq = Superchampions {
            stream,
            stats,
            tail_eps: RealX::ZERO,
        };
        seq.tail_eps = seq.next_critical_below(table)?;
        Ok(seq)
    }

    /// Largest critical value not in the stream: `max ψ(p, v_p + 1)` over
    /// the last record's primes, and `ψ(q, 1)` for the next prime `q`.
    fn next_critical_below(&self, table: &PrimeTable) -> Result<RealX> {
        let last = self.factorization(self.len() - 1);
        let next_prime = match last.largest_prime() {
            Some(p) => table.next_prime(p)?,
            None => 2,
        };
        let mut best = psi(next_prime, 1);
        let mut prev_exp = None;
        // within a run of equal exponents the smallest prime dominates
        for &(p, a) in last.factors() {
            if prev_exp != Some(a) {
                best = best.max(psi(p, a + 1));
                prev_exp = Some(a);
            }
        }
        Ok(best)
    }

    pub fn stream(&self) -> &CriticalStream {
        &self.stream
    }

    /// Number of records (`N^(0)` included).
    pub fn len(&self) -> usize {
        self.stats.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn stats(&self, i: usize) -> &ArithStats {
        &self.stats[i]
    }

    pub fn eps_hi(&self, i: usize) -> RealX {
        if i == 0 {
            RealX::INFINITY
        } else {
            self.stream.entries[i - 1].value
        }
    }

    pub fn eps_lo(&self, i: usize) -> RealX {
        self.stream
            .entries
            .get(i)
            .map(|e| e.value)
            .unwrap_or(self.tail_eps)
    }

    pub fn added(&self, i: usize) -> Option<CriticalEpsilon> {
        i.checked_sub(1).map(|j| self.stream.entries[j])
    }

    /// `N^(i)`, replayed from the first `i` critical values.
    pub fn factorization(&self, i: usize) -> Factorization {
        let mut f: Vec<(u64, u32)> = Vec::new();
        for e in &self.stream.entries[..i] {
            if e.alpha == 1 {
                f.push((e.p, 1));
            } else {
                let j = f
                    .binary_search_by_key(&e.p, |&(q, _)| q)
                    .expect("exponent raised before prime introduced");
                f[j].1 = e.alpha;
            }
        }
        Factorization::from_sorted_unchecked(f)
    }

    /// All records in order, with factorizations built incrementally.
    pub fn records(&self) -> impl Iterator<Item = SuperchampionRecord> + '_ {
        let mut f: Vec<(u64, u32)> = Vec::new();
        (0..self.len()).map(move |i| {
            if let Some(e) = self.added(i) {
                match f.binary_search_by_key(&e.p, |&(q, _)| q) {
                    Ok(j) => f[j].1 = e.alpha,
                    Err(j) => f.insert(j, (e.p, e.alpha)),
                }
            }
            SuperchampionRecord {
                index: i,
                n: Factorization::from_sorted_unchecked(f.clone()),
                stats: self.stats[i],
                eps_hi: self.eps_hi(i),
                eps_lo: self.eps_lo(i),
                added: self.added(i),
            }
        })
    }

    pub fn record(&self, i: usize) -> Result<SuperchampionRecord> {
        if i >= self.len() {
            return Err(Error::OutOfRange(format!(
                "record {i} beyond generated sequence of {} records",
                self.len()
            )));
        }
        Ok(SuperchampionRecord {
            index: i,
            n: self.factorization(i),
            stats: self.stats[i],
            eps_hi: self.eps_hi(i),
            eps_lo: self.eps_lo(i),
            added: self.added(i),
        })
    }

    /// Index of the record whose factorization is `f`, if any.
    pub fn index_of(&self, f: &Factorization) -> Option<usize> {
        let i = f.factors().iter().map(|&(_, a)| a as usize).sum::<usize>();
        (i < self.len() && self.factorization(i) == *f).then_some(i)
    }

    /// Index of the record created by the critical value `ψ(p, α)`.
    pub fn index_created_by(&self, p: u64, alpha: u32) -> Option<usize> {
        self.stream
            .entries
            .iter()
            .position(|e| e.p == p && e.alpha == alpha)
            .map(|j| j + 1)
    }

    /// `(N_ε^−, N_ε^+)` as record indices.
    pub fn n_eps_indices(&self, eps: RealX) -> Result<(usize, usize)> {
        if eps <= RealX::ZERO {
            return Err(Error::InvalidArgument("eps must be positive".into()));
        }
        if eps < self.stream.eps_min {
            return Err(Error::OutOfRange(format!(
                "eps {} below generated range (eps_min {})",
                eps.to_sci(10),
                self.stream.eps_min.to_sci(10)
            )));
        }
        let entries = &self.stream.entries;
        let i = entries.partition_point(|e| e.value > eps && !approx_eq(eps, e.value));
        match entries.get(i) {
            Some(e) if approx_eq(eps, e.value) => Ok((i, i + 1)),
            _ => Ok((i, i)),
        }
    }

    pub fn n_eps(&self, eps: RealX) -> Result<(SuperchampionRecord, SuperchampionRecord)> {
        let (lo, hi) = self.n_eps_indices(eps)?;
        Ok((self.record(lo)?, self.record(hi)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::stats;
    use crate::primes::sieve;

    fn close(a: RealX, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() <= tol
    }

    #[test]
    fn records_iterator_matches_replay() {
        let t = sieve(1000).unwrap();
        let seq = generate_sequence(&t, psi(97, 1)).unwrap();
        for r in seq.records() {
            assert_eq!(r.n, seq.factorization(r.index));
            assert_eq!(r.eps_hi, seq.eps_hi(r.index));
        }
        assert_eq!(seq.records().count(), seq.len());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(2, 1).to_fixed(3), "0.585");
        assert_eq!(psi(2, 2).to_fixed(3), "0.380");
        assert_eq!(psi(5, 1).to_fixed(3), "0.263");
        assert!(close(psi(2_248_723, 1), 6.415617753312e-7, 1e-18));
        assert_eq!(psi(7, 0), RealX::INFINITY);
        // closed forms from the table
        let l = |a: f64, b: f64| RealX::from(a).ln() / RealX::from(b).ln();
        assert!(((psi(2, 3) - l(15.0 / 14.0, 4.0 / 3.0)).abs().to_f64()) < 1e-15);
        let want = (RealX::from(15.0) / RealX::from(14.0)).ln()
            / (RealX::from(4.0) / RealX::from(3.0)).ln();
        assert!((psi(2, 3) - want).abs().to_f64() < 1e-30);
    }

    #[test]
    fn psi_overflow_path_matches_exact_path() {
        // p^{α+1} just below and above the u128 switch
        for (p, a) in [
            (2u64, 98u32),
            (2, 99),
            (2, 100),
            (3, 62),
            (3, 63),
            (1_000_003, 6),
        ] {
            let q = crate::arith::inv_pow(p, a + 1);
            let slow = (RealX::from(p - 1) * q / (RealX::ONE - RealX::from(p) * q)).ln_1p();
            let rel = ((psi_numerator(p, a) - slow) / slow).abs().to_f64();
            assert!(rel < 1e-29, "p={p} a={a} rel={rel}");
        }
    }

    #[test]
    fn psi_strictly_decreasing_grid() {
        let t = sieve(1000).unwrap();
        let ps: Vec<u64> = t.primes().iter().map(|&p| u64::from(p)).collect();
        for a in 1..=30 {
            for w in ps.windows(2) {
                assert!(psi(w[0], a) > psi(w[1], a), "p={} a={a}", w[0]);
            }
            for &p in &ps {
                assert!(psi(p, a) > psi(p, a + 1), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn theta_identity() {
        let eps = RealX::from(0.123);
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            assert_eq!(theta(p, 0, eps), RealX::ZERO);
            for a in 1..=20 {
                let lhs = theta(p, a - 1, eps) - theta(p, a, eps);
                let rhs = ln_ratio_succ(a) * (eps - psi(p, a));
                let rel = ((lhs - rhs) / rhs).abs().to_f64();
                assert!(rel <= 1e-20, "p={p} a={a} rel={rel}");
            }
        }
        let half = RealX::from(0.5);
        let want = RealX::from(1.5).ln() - half * RealX::from(2.0).ln();
        assert!((theta(2, 1, half) - want).abs().to_f64() < 1e-31);
    }

    #[test]
    fn alpha_choice() {
        let half = RealX::from(0.5);
        assert_eq!(alpha_for(2, half).alpha, 1);
        assert!(!alpha_for(2, half).tied);
        let e = psi(3, 2);
        assert_eq!(
            alpha_for(3, e),
            AlphaChoice {
                alpha: 2,
                tied: true
            }
        );
        // just below ε₅ = ψ(2, 3): exponents of 120
        let eps = psi(2, 3) * RealX::from(1.0 - 1e-9);
        let exps: Vec<u32> = [2u64, 3, 5, 7]
            .iter()
            .map(|&p| alpha_for(p, eps).alpha)
            .collect();
        assert_eq!(exps, vec![3, 1, 1, 0]);
        // p > 1/(2^ε − 1) gives α = 0
        for eps in [0.3, 0.05, 0.001] {
            let eps = RealX::from(eps);
            let bound = g1(eps).to_f64().floor() as u64;
            assert_eq!(alpha_for(bound + 1, eps).alpha, 0);
            assert!(alpha_for(2, eps).alpha >= 1);
        }
        assert!(alpha_for(2, RealX::from(1e-6)).alpha > 15);
    }

    #[test]
    fn first_ten_records() {
        let t = sieve(1000).unwrap();
        let seq = generate_sequence(&t, RealX::from(0.1)).unwrap();
        let ns: Vec<u128> = (0..10)
            .map(|i| seq.factorization(i).to_u128().unwrap())
            .collect();
        assert_eq!(ns, vec![1, 2, 6, 12, 60, 120, 360, 2520, 5040, 55440]);
        let sig = [
            "1.000", "1.500", "2.000", "2.333", "2.800", "3.000", "3.250", "3.714", "3.838",
            "4.187",
        ];
        let tau = [1u128, 2, 4, 6, 12, 16, 24, 48, 60, 120];
        for i in 0..10 {
            let r = seq.record(i).unwrap();
            assert_eq!(r.stats.sigma_over_n.to_fixed(3), sig[i]);
            assert_eq!(r.n.tau_u128().unwrap(), tau[i]);
            let direct = stats(&r.n);
            assert!(
                (direct.log_sigma_over_n - r.stats.log_sigma_over_n)
                    .abs()
                    .to_f64()
                    < 1e-30
            );
            assert!((direct.log_n - r.stats.log_n).abs().to_f64() < 1e-29);
        }
        let eps: Vec<String> = (1..=10).map(|i| seq.eps_hi(i).to_fixed(3)).collect();
        assert_eq!(
            eps,
            [
                "0.585", "0.415", "0.380", "0.263", "0.240", "0.197", "0.193", "0.147", "0.126",
                "0.107"
            ]
        );
        assert_eq!(seq.eps_hi(0), RealX::INFINITY);
        assert_eq!(seq.eps_lo(9), seq.eps_hi(10));
    }

    #[test]
    fn tail_eps_is_next_critical_value() {
        let t = sieve(10_000).unwrap();
        let short = generate_sequence(&t, RealX::from(0.05)).unwrap();
        let long = generate_sequence(&t, RealX::from(0.01)).unwrap();
        let last = short.len() - 1;
        assert_eq!(short.eps_lo(last), long.eps_lo(last));
        assert_eq!(short.factorization(last), long.factorization(last));
    }

    #[test]
    fn n_eps_lookup() {
        let t = sieve(1000).unwrap();
        let seq = generate_sequence(&t, RealX::from(0.1)).unwrap();
        let val = |eps: RealX| {
            let (a, b) = seq.n_eps(eps).unwrap();
            (a.n.to_u128().unwrap(), b.n.to_u128().unwrap())
        };
        assert_eq!(val(RealX::from(0.5)), (2, 2));
        assert_eq!(val(RealX::from(0.2)), (120, 120));
        assert_eq!(val(psi(3, 1)), (2, 6));
        assert_eq!(val(RealX::from(5.0)), (1, 1));
        assert!(matches!(
            seq.n_eps(RealX::from(0.05)),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn structural_invariants() {
        let t = sieve(10_000).unwrap();
        let seq = generate_sequence(&t, RealX::from(0.002)).unwrap();
        let mut prev = Factorization::one();
        for i in 1..seq.len() {
            let f = seq.factorization(i);
            let a = seq.added(i).unwrap();
            assert_eq!(f, prev.mul_prime(a.p));
            assert_eq!(f.exponent_of(a.p), a.alpha);
            assert!(prev.divides(&f));
            assert!(f.is_staircase(&t), "record {i}");
            assert!(seq.eps_lo(i) < seq.eps_hi(i));
            prev = f;
        }
        assert_eq!(seq.index_of(&seq.factorization(37)), Some(37));
    }

    #[test]
    fn sieve_too_small_is_reported() {
        let t = sieve(100).unwrap();
        assert!(matches!(
            critical_stream(&t, RealX::from(0.001)),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            critical_stream(&t, RealX::ZERO),
            Err(Error::InvalidArgument(_))
        ));
    }
}
