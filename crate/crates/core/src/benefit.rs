//! Benefit method: integers that are almost optimal at a fixed ε.
//!
//! With `N` a maximizer of `σ(n)/(n τ(n)^ε)`, the benefit
//! `ben(n) = log(σ(N)/N τ(N)^{-ε}) − log(σ(n)/n τ(n)^{-ε})` splits into
//! non-negative per-prime terms `ben_p`. Each term grows as the exponent of
//! `p` moves away from its optimum, so the set of `n` with `ben(n) <= B` is
//! finite for `B < ε log 2` and can be listed by a pruned depth-first search.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::arith::{
    f1, ln_int, log_p_over_p_minus_1, log_sigma_ratio, stats, ArithStats, Factorization,
};
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::realx::{RealX, LN_2};
use crate::superchampion::{psi, SuperchampionRecord, Superchampions, EPS_EQUALITY_REL};

/// Below this threshold the census is infinite (or explosively large);
/// the accumulation value is `(211/212) f₁(M₃) = 2.580303...`.
pub const CENSUS_FLOOR: f64 = 2.5804;

/// `ben_p = log((1 − p^{−α−1}) / (1 − p^{−β−1})) − ε log((α+1)/(β+1))`.
pub fn ben_p(p: u64, beta: u32, alpha: u32, eps: RealX) -> RealX {
    if beta == alpha {
        return RealX::ZERO;
    }
    log_sigma_ratio(p, alpha)
        - log_sigma_ratio(p, beta)
        - eps * (ln_int(u64::from(alpha) + 1) - ln_int(u64::from(beta) + 1))
}

/// A benefit budget around a maximizer `reference` at parameter `eps`.
#[derive(Clone, Debug)]
pub struct BenefitQuery {
    pub eps: RealX,
    pub reference: Factorization,
    pub reference_stats: ArithStats,
    pub budget: RealX,
}

fn le_tol(a: RealX, b: RealX) -> bool {
    a <= b || (a - b).abs() <= b.abs() * RealX::from(EPS_EQUALITY_REL)
}

impl BenefitQuery {
    pub fn new(
        table: &PrimeTable,
        eps: RealX,
        reference: &SuperchampionRecord,
        budget: RealX,
    ) -> Result<Self> {
        Self::from_factorization(table, eps, reference.n.clone(), budget)
    }

    /// Checks `0 <= B < ε log 2` and that `reference` maximizes at `eps`.
    pub fn from_factorization(
        table: &PrimeTable,
        eps: RealX,
        reference: Factorization,
        budget: RealX,
    ) -> Result<Self> {
        if eps <= RealX::ZERO {
            return Err(Error::InvalidArgument("eps must be positive".into()));
        }
        if budget < RealX::ZERO {
            return Err(Error::InvalidArgument("budget must be non-negative".into()));
        }
        if budget >= eps * *LN_2 {
            return Err(Error::InvalidArgument(format!(
                "budget {} must be below eps·log 2 = {}",
                budget.to_sci(8),
                (eps * *LN_2).to_sci(8)
            )));
        }
        for &(p, a) in reference.factors() {
            if !(le_tol(psi(p, a + 1), eps) && le_tol(eps, psi(p, a))) {
                return Err(Error::InvalidArgument(format!(
                    "reference exponent {p}^{a} is not optimal at eps {}",
                    eps.to_sci(10)
                )));
            }
        }
        let next = match reference.largest_prime() {
            Some(p) => table.next_prime(p)?,
            None => 2,
        };
        if !le_tol(psi(next, 1), eps) {
            return Err(Error::InvalidArgument(format!(
                "reference omits prime {next} which is profitable at eps {}",
                eps.to_sci(10)
            )));
        }
        let reference_stats = stats(&reference);
        Ok(BenefitQuery {
            eps,
            reference,
            reference_stats,
            budget,
        })
    }

    pub fn with_budget(&self, budget: RealX) -> Result<Self> {
        if budget < RealX::ZERO || budget >= self.eps * *LN_2 {
            return Err(Error::InvalidArgument(format!(
                "budget {} outside [0, eps·log 2)",
                budget.to_sci(8)
            )));
        }
        Ok(BenefitQuery {
            budget,
            ..self.clone()
        })
    }
}

/// `ben(n) = Σ_p ben_p(n)` over the primes where `n` and the reference differ.
pub fn ben(n: &Factorization, q: &BenefitQuery) -> RealX {
    let mut total = RealX::ZERO;
    let (a, b) = (n.factors(), q.reference.factors());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (p, beta, alpha) = match (a.get(i), b.get(j)) {
            (Some(&(p, x)), Some(&(r, y))) if p == r => {
                i += 1;
                j += 1;
                (p, x, y)
            }
            (Some(&(p, x)), Some(&(r, _))) if p < r => {
                i += 1;
                (p, x, 0)
            }
            (Some(&(p, x)), None) => {
                i += 1;
                (p, x, 0)
            }
            (_, Some(&(r, y))) => {
                j += 1;
                (r, 0, y)
            }
            (None, None) => unreachable!(),
        };
        total += ben_p(p, beta, alpha, q.eps);
    }
    total
}

/// The two-term form `log((σ(N)/N)/(σ(n)/n)) − ε log(τ(N)/τ(n))`.
pub fn ben_direct(n: &ArithStats, q: &BenefitQuery) -> RealX {
    let r = &q.reference_stats;
    (r.log_sigma_over_n - n.log_sigma_over_n) - q.eps * (r.log_tau - n.log_tau)
}

#[derive(Clone, Debug)]
pub struct BenefitHit {
    pub n: Factorization,
    pub ben: RealX,
    /// `None` for `n = 1` where f₁ is not considered
    pub f1: Option<RealX>,
    /// `τ(n)/τ(N)` against the query reference
    pub tau_ratio: Ratio<u64>,
    pub stats: ArithStats,
}

#[derive(Clone, Copy, Debug)]
struct Deviation {
    beta: u32,
    cost: RealX,
    d_log_n: RealX,
    d_log_tau: RealX,
    d_log_sigma: RealX,
    d_log_phi: RealX,
    d_omega: isize,
}

#[derive(Debug)]
struct PrimeOptions {
    p: u64,
    alpha: u32,
    /// sorted by increasing cost
    options: Vec<Deviation>,
}

fn deviation(p: u64, alpha: u32, beta: u32, q: &BenefitQuery) -> Deviation {
    let ln_p = ln_int(p);
    let present = |e: u32| if e > 0 { 1isize } else { 0 };
    let d_omega = present(beta) - present(alpha);
    Deviation {
        beta,
        cost: ben_p(p, beta, alpha, q.eps),
        d_log_n: RealX::from(i64::from(beta) - i64::from(alpha)) * ln_p,
        d_log_tau: ln_int(u64::from(beta) + 1) - ln_int(u64::from(alpha) + 1),
        d_log_sigma: log_sigma_ratio(p, beta) - log_sigma_ratio(p, alpha),
        d_log_phi: if d_omega == 0 {
            RealX::ZERO
        } else {
            RealX::from(d_omega as i64) * log_p_over_p_minus_1(p)
        },
        d_omega,
    }
}

/// Exponent deviations of `p` that fit in the budget, nearest to α first.
fn options_for(p: u64, alpha: u32, q: &BenefitQuery) -> PrimeOptions {
    let mut options = Vec::new();
    for beta in (0..alpha).rev() {
        let d = deviation(p, alpha, beta, q);
        if d.cost > q.budget {
            break;
        }
        options.push(d);
    }
    // ben_p → ∞ with β, so the upward scan terminates
    let mut beta = alpha + 1;
    loop {
        let d = deviation(p, alpha, beta, q);
        if d.cost > q.budget {
            break;
        }
        options.push(d);
        beta += 1;
    }
    options.sort_by(|a, b| a.cost.partial_cmp(&b.cost).expect("finite costs"));
    PrimeOptions { p, alpha, options }
}

/// Every `n` with `ben(n) <= budget`, sorted by decreasing f₁.
pub fn enumerate(table: &PrimeTable, q: &BenefitQuery) -> Result<Vec<BenefitHit>> {
    let mut candidates: Vec<PrimeOptions> = q
        .reference
        .factors()
        .iter()
        .map(|&(p, a)| options_for(p, a, q))
        .collect();
    // primes absent from the reference: β = 1 costs ε log 2 − log(1 + 1/p),
    // increasing in p; stop at the first prime over budget
    let mut p = match q.reference.largest_prime() {
        Some(top) => table.next_prime(top)?,
        None => 2,
    };
    loop {
        let opts = options_for(p, 0, q);
        if opts.options.is_empty() {
            break;
        }
        candidates.push(opts);
        p = table.next_prime(p)?;
    }
    candidates.retain(|c| !c.options.is_empty());
    candidates.sort_by(|a, b| {
        a.options[0]
            .cost
            .partial_cmp(&b.options[0].cost)
            .expect("finite costs")
            .then(a.p.cmp(&b.p))
    });

    let mut hits = Vec::new();
    let mut stack: Vec<(usize, Deviation)> = Vec::new();
    dfs(&candidates, 0, q.budget, &mut stack, q, &mut hits);
    sort_hits(&mut hits);
    Ok(hits)
}

fn dfs(
    cands: &[PrimeOptions],
    start: usize,
    remaining: RealX,
    stack: &mut Vec<(usize, Deviation)>,
    q: &BenefitQuery,
    out: &mut Vec<BenefitHit>,
) {
    out.push(make_hit(cands, stack, q));
    for k in start..cands.len() {
        // candidates are sorted by cheapest deviation
        if cands[k].options[0].cost > remaining {
            break;
        }
        for d in &cands[k].options {
            if d.cost > remaining {
                break;
            }
            stack.push((k, *d));
            dfs(cands, k + 1, remaining - d.cost, stack, q, out);
            stack.pop();
        }
    }
}

fn make_hit(cands: &[PrimeOptions], stack: &[(usize, Deviation)], q: &BenefitQuery) -> BenefitHit {
    let r = &q.reference_stats;
    let (mut log_n, mut log_tau, mut log_sigma, mut log_phi) =
        (r.log_n, r.log_tau, r.log_sigma_over_n, r.log_n_over_phi);
    let mut omega = r.omega as isize;
    let mut ben = RealX::ZERO;
    let mut tau_ratio = Ratio::from_integer(1u64);
    let mut edits: Vec<(u64, u32)> = Vec::with_capacity(stack.len());
    for &(k, d) in stack {
        let c = &cands[k];
        log_n += d.d_log_n;
        log_tau += d.d_log_tau;
        log_sigma += d.d_log_sigma;
        log_phi += d.d_log_phi;
        omega += d.d_omega;
        ben += d.cost;
        tau_ratio *= Ratio::new(u64::from(d.beta) + 1, u64::from(c.alpha) + 1);
        edits.push((c.p, d.beta));
    }
    let n = apply_edits(&q.reference, &mut edits);
    let stats = ArithStats::from_logs(log_n, log_tau, log_sigma, log_phi, omega as usize);
    BenefitHit {
        f1: f1(&stats).ok(),
        n,
        ben,
        tau_ratio,
        stats,
    }
}

fn apply_edits(reference: &Factorization, edits: &mut [(u64, u32)]) -> Factorization {
    edits.sort_unstable();
    let base = reference.factors();
    let mut out = Vec::with_capacity(base.len() + edits.len());
    let (mut i, mut j) = (0, 0);
    while i < base.len() || j < edits.len() {
        match (base.get(i), edits.get(j)) {
            (Some(&(p, a)), Some(&(r, b))) => {
                if p < r {
                    out.push((p, a));
                    i += 1;
                } else {
                    if b > 0 {
                        out.push((r, b));
                    }
                    j += 1;
                    if p == r {
                        i += 1;
                    }
                }
            }
            (Some(&f), None) => {
                out.push(f);
                i += 1;
            }
            (None, Some(&(r, b))) => {
                if b > 0 {
                    out.push((r, b));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Factorization::new(out).expect("edits keep primes ordered")
}

/// Decreasing f₁, then increasing log n.
pub fn sort_hits(hits: &mut [BenefitHit]) {
    hits.sort_by(|a, b| {
        let fa = a.f1.unwrap_or(-RealX::INFINITY);
        let fb = b.f1.unwrap_or(-RealX::INFINITY);
        fb.partial_cmp(&fa)
            .expect("finite f1")
            .then(a.stats.log_n.partial_cmp(&b.stats.log_n).expect("finite"))
            .then_with(|| a.n.cmp(&b.n))
    });
}

/// Union of the enumerations at `ε_i` (reference `N^(i)`) for each `i`,
/// keeping `n >= 2` with `f₁(n) > threshold`, deduplicated.
pub fn union_above(
    table: &PrimeTable,
    seq: &Superchampions,
    eps_indices: &[usize],
    budget: RealX,
    threshold: RealX,
    inclusive: bool,
) -> Result<Vec<BenefitHit>> {
    let queries = eps_indices
        .iter()
        .map(|&i| {
            let rec = seq.record(i)?;
            BenefitQuery::new(table, rec.eps_hi, &rec, budget)
        })
        .collect::<Result<Vec<_>>>()?;
    merge_filtered(table, &queries, threshold, inclusive)
}

fn merge_filtered(
    table: &PrimeTable,
    queries: &[BenefitQuery],
    threshold: RealX,
    inclusive: bool,
) -> Result<Vec<BenefitHit>> {
    let per_query: Vec<Vec<BenefitHit>> = queries
        .par_iter()
        .map(|q| {
            enumerate(table, q).map(|hits| {
                hits.into_iter()
                    .filter(|h| match h.f1 {
                        Some(f) => f > threshold || (inclusive && f == threshold),
                        None => false,
                    })
                    .collect()
            })
        })
        .collect::<Result<_>>()?;
    let mut merged: BTreeMap<Factorization, BenefitHit> = BTreeMap::new();
    for hits in per_query {
        for h in hits {
            merged.entry(h.n.clone()).or_insert(h);
        }
    }
    let mut out: Vec<BenefitHit> = merged.into_values().collect();
    sort_hits(&mut out);
    Ok(out)
}

/// Result of a ν(x) count.
#[derive(Clone, Debug)]
pub struct Census {
    pub threshold: RealX,
    pub count: usize,
    /// `i` such that the window `[τ(N^(i)), τ(N^(i+1))]` was enumerated
    pub windows: Vec<usize>,
    pub hits: Vec<BenefitHit>,
}

/// `ν(x) = #{n >= 2 : f₁(n) >= x}`.
///
/// Each n lies in a τ-window `[τ(N^(i)), τ(N^(i+1))]` of consecutive
/// superchampions, both maximal at `ε_{i+1}`. Log-concavity of
/// `log(u + log 3)` gives `f₁(n) <= e^{−ben(n)} max(f₁(N^(i)), f₁(N^(i+1)))`,
/// so only windows whose larger end reaches `x` matter and within them
/// `ben(n) <= log(max / x)`.
pub fn nu_census(table: &PrimeTable, seq: &Superchampions, x: RealX) -> Result<Census> {
    if x <= RealX::from(CENSUS_FLOOR) {
        return Err(Error::InvalidArgument(format!(
            "census threshold {} too close to the accumulation value 2.5803",
            x.to_sci(8)
        )));
    }
    let last = seq.len() - 1;
    if seq.stats(last).omega < crate::primes::K0 {
        return Err(Error::OutOfRange(format!(
            "census needs superchampions with ω >= {} (f₁ <= 2.32 beyond); sequence stops at ω = {}",
            crate::primes::K0,
            seq.stats(last).omega
        )));
    }
    let f1s: Vec<Option<RealX>> = (0..seq.len()).map(|i| f1(seq.stats(i)).ok()).collect();
    let mut windows = Vec::new();
    let mut queries = Vec::new();
    for i in 1..last {
        let (Some(a), Some(b)) = (f1s[i], f1s[i + 1]) else {
            continue;
        };
        let m = a.max(b);
        if m < x {
            continue;
        }
        let rec = seq.record(i + 1)?;
        let budget = (m / x).ln();
        queries.push(BenefitQuery::new(table, rec.eps_hi, &rec, budget)?);
        windows.push(i);
    }
    let hits = merge_filtered(table, &queries, x, true)?;
    Ok(Census {
        threshold: x,
        count: hits.len(),
        windows,
        hits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorize_small, SmallFactorizer};
    use crate::primes::sieve;
    use crate::superchampion::generate_sequence;
    use crate::superchampion::{alpha_for, theta};

    fn query_120(budget: f64) -> (PrimeTable, BenefitQuery) {
        let t = sieve(10_000).unwrap();
        let q = BenefitQuery::from_factorization(
            &t,
            RealX::from(0.2),
            factorize_small(120).unwrap(),
            RealX::from(budget),
        )
        .unwrap();
        (t, q)
    }

    #[test]
    fn ben_p_basic_values() {
        let eps = RealX::from(0.01);
        for p in [2u64, 3, 101] {
            let a = alpha_for(p, eps).alpha;
            assert_eq!(ben_p(p, a, a, eps), RealX::ZERO);
        }
        let p = 211;
        assert_eq!(alpha_for(p, eps).alpha, 0);
        let want = eps * *LN_2 - (RealX::ONE / RealX::from(p)).ln_1p();
        assert!((ben_p(p, 1, 0, eps) - want).abs().to_f64() < 1e-31);
    }

    #[test]
    fn ben_p_telescopes() {
        let eps = RealX::from(0.037);
        for p in [2u64, 3, 5, 7, 11, 97] {
            let a = alpha_for(p, eps).alpha;
            for beta in 0..=25u32 {
                let via_theta = theta(p, a, eps) - theta(p, beta, eps);
                let via_sum: RealX = if beta >= a {
                    (a + 1..=beta)
                        .map(|k| crate::arith::ln_ratio_succ(k) * (eps - psi(p, k)))
                        .sum()
                } else {
                    (beta + 1..=a)
                        .map(|k| crate::arith::ln_ratio_succ(k) * (psi(p, k) - eps))
                        .sum()
                };
                let direct = ben_p(p, beta, a, eps);
                let scale = direct.abs().max(RealX::from(1e-300));
                assert!(((direct - via_sum).abs() / scale).to_f64() <= 1e-20 || beta == a);
                assert!(((direct - via_theta).abs() / scale).to_f64() <= 1e-20 || beta == a);
            }
        }
    }

    #[test]
    fn ben_p_unimodal_in_beta() {
        let eps = RealX::from(0.0173);
        let t = sieve(100).unwrap();
        for &p in t.primes() {
            let p = u64::from(p);
            let a = alpha_for(p, eps).alpha;
            for beta in 0..30u32 {
                let (x, y) = (ben_p(p, beta, a, eps), ben_p(p, beta + 1, a, eps));
                assert!(x >= RealX::ZERO);
                if beta >= a {
                    assert!(y >= x, "p={p} beta={beta}");
                } else {
                    assert!(y <= x, "p={p} beta={beta}");
                }
            }
        }
    }

    #[test]
    fn reference_and_budget_validation() {
        let t = sieve(1000).unwrap();
        let f = factorize_small(120).unwrap();
        let e = RealX::from(0.2);
        assert!(BenefitQuery::from_factorization(&t, e, f.clone(), RealX::from(0.2)).is_err());
        assert!(BenefitQuery::from_factorization(&t, e, f.clone(), RealX::from(-0.1)).is_err());
        assert!(
            BenefitQuery::from_factorization(&t, e, factorize_small(60).unwrap(), RealX::ZERO)
                .is_err()
        );
        assert!(BenefitQuery::from_factorization(
            &t,
            e,
            factorize_small(840).unwrap(),
            RealX::ZERO
        )
        .is_err());
        let q = BenefitQuery::from_factorization(&t, e, f, RealX::ZERO).unwrap();
        assert!(q.with_budget(RealX::from(0.5)).is_err());
    }

    #[test]
    fn ben_matches_direct_form_and_is_nonnegative() {
        let (_, q) = query_120(0.05);
        assert_eq!(ben(&q.reference, &q), RealX::ZERO);
        let sf = SmallFactorizer::new(1_000_000).unwrap();
        for n in 1..=1_000_000u64 {
            let f = sf.factorize(n).unwrap();
            let b = ben(&f, &q);
            assert!(b >= RealX::ZERO, "n={n}");
            if n % 4999 == 0 {
                let d = ben_direct(&stats(&f), &q);
                assert!(
                    ((b - d).abs() / b.max(RealX::from(1e-12))).to_f64() <= 1e-18,
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn enumeration_complete_against_brute_force() {
        let (t, q) = query_120(0.05);
        let hits = enumerate(&t, &q).unwrap();
        let mut from_enum: Vec<u128> = hits
            .iter()
            .filter_map(|h| h.n.to_u128())
            .filter(|&n| n <= 1_000_000)
            .collect();
        from_enum.sort_unstable();
        let sf = SmallFactorizer::new(1_000_000).unwrap();
        let brute: Vec<u128> = (1..=1_000_000u64)
            .filter(|&n| ben(&sf.factorize(n).unwrap(), &q) <= q.budget)
            .map(u128::from)
            .collect();
        assert_eq!(from_enum, brute);
        // no duplicates overall
        let mut all: Vec<&Factorization> = hits.iter().map(|h| &h.n).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), hits.len());
        for h in &hits {
            assert!(h.ben <= q.budget);
            let d = ben_direct(&stats(&h.n), &q);
            assert!(((h.ben - d).abs() / h.ben.max(RealX::from(1e-12))).to_f64() <= 1e-18);
            assert_eq!(h.tau_ratio, h.n.tau_ratio(&q.reference));
        }
    }

    #[test]
    fn zero_budget_gives_maximizers() {
        let (t, q) = query_120(0.0);
        let hits = enumerate(&t, &q).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].n.to_u128(), Some(120));
        // at a critical value both neighbours maximize
        let seq = generate_sequence(&t, RealX::from(0.1)).unwrap();
        let rec = seq.record(5).unwrap();
        let q = BenefitQuery::new(&t, rec.eps_hi, &rec, RealX::ZERO).unwrap();
        let mut ns: Vec<u128> = enumerate(&t, &q)
            .unwrap()
            .iter()
            .map(|h| h.n.to_u128().unwrap())
            .collect();
        ns.sort_unstable();
        assert_eq!(ns, vec![60, 120]);
    }

    #[test]
    fn budget_monotone() {
        let (t, q) = query_120(0.02);
        let small: Vec<Factorization> = enumerate(&t, &q)
            .unwrap()
            .into_iter()
            .map(|h| h.n)
            .collect();
        let big: Vec<Factorization> = enumerate(&t, &q.with_budget(RealX::from(0.06)).unwrap())
            .unwrap()
            .into_iter()
            .map(|h| h.n)
            .collect();
        assert!(small.len() < big.len());
        assert!(small.iter().all(|n| big.contains(n)));
    }

    #[test]
    fn census_refuses_low_threshold() {
        let t = sieve(1000).unwrap();
        let seq = generate_sequence(&t, RealX::from(0.05)).unwrap();
        assert!(matches!(
            nu_census(&t, &seq, RealX::from(2.58)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            nu_census(&t, &seq, RealX::from(2.597)),
            Err(Error::OutOfRange(_))
        ));
    }
}
