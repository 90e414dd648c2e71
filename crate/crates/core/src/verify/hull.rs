//! Images `(log τ(n), log σ(n)/n)` of small integers and the superchampion
//! vertex chain bounding them from above.

use serde::Serialize;

use super::scan::divisor_tables;
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::realx::RealX;
use crate::superchampion::generate_until;

/// Tolerance of the dominance check.
pub const HULL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct HullPoint {
    pub n: u64,
    pub tau: u32,
    #[serde(serialize_with = "crate::superchampion::ser_realx")]
    pub log_tau: RealX,
    #[serde(serialize_with = "crate::superchampion::ser_realx")]
    pub log_sigma_over_n: RealX,
}

#[derive(Clone, Debug, Serialize)]
pub struct HullVertex {
    pub index: usize,
    pub n: u64,
    pub tau: u64,
    #[serde(serialize_with = "crate::superchampion::ser_realx")]
    pub log_tau: RealX,
    #[serde(serialize_with = "crate::superchampion::ser_realx")]
    pub log_sigma_over_n: RealX,
    /// slope of the edge arriving at the vertex (`∞` for `n = 1`)
    #[serde(serialize_with = "crate::superchampion::ser_realx")]
    pub eps_hi: RealX,
    /// slope of the edge leaving the vertex
    #[serde(serialize_with = "crate::superchampion::ser_realx")]
    pub eps_lo: RealX,
}

#[derive(Clone, Debug)]
pub struct HullExport {
    pub points: Vec<HullPoint>,
    pub vertices: Vec<HullVertex>,
    /// largest height of a point above the chain (0 at the vertices)
    pub max_excess: RealX,
    /// point attaining `max_excess`
    pub max_excess_at: u64,
}

impl HullExport {
    /// No point lies above a hull edge by more than [`HULL_TOLERANCE`].
    pub fn dominated(&self) -> bool {
        self.max_excess <= RealX::from(HULL_TOLERANCE)
    }
}

/// Images of `1 <= n <= limit` and the superchampions `<= limit`.
pub fn export_hull(table: &PrimeTable, limit: u64) -> Result<HullExport> {
    if limit == 0 {
        return Err(Error::InvalidArgument(
            "hull export needs limit >= 1".into(),
        ));
    }
    let (sigma, tau) = divisor_tables(limit)?;
    let points: Vec<HullPoint> = (1..=limit)
        .map(|n| {
            let i = n as usize;
            HullPoint {
                n,
                tau: tau[i],
                log_tau: RealX::from(u64::from(tau[i])).ln(),
                log_sigma_over_n: (RealX::from(sigma[i]) / RealX::from(n)).ln(),
            }
        })
        .collect();

    let target = RealX::from(limit).ln();
    let seq = generate_until(table, |s| s.stats(s.len() - 1).log_n > target)?;
    let mut vertices = Vec::new();
    for i in 0..seq.len() {
        let f = seq.factorization(i);
        let Some(n) = f.to_u128().filter(|&n| n <= u128::from(limit)) else {
            break;
        };
        let s = seq.stats(i);
        vertices.push(HullVertex {
            index: i,
            n: n as u64,
            tau: f.tau_u128().expect("small") as u64,
            log_tau: s.log_tau,
            log_sigma_over_n: s.log_sigma_over_n,
            eps_hi: seq.eps_hi(i),
            eps_lo: seq.eps_lo(i),
        });
    }

    // the chain is the lower envelope of its supporting lines
    let mut max_excess = -RealX::INFINITY;
    let mut max_excess_at = 0;
    for pt in &points {
        let bound = vertices
            .iter()
            .map(|v| v.log_sigma_over_n + v.eps_lo * (pt.log_tau - v.log_tau))
            .fold(RealX::INFINITY, RealX::min);
        let excess = pt.log_sigma_over_n - bound;
        if excess > max_excess {
            max_excess = excess;
            max_excess_at = pt.n;
        }
    }
    Ok(HullExport {
        points,
        vertices,
        max_excess,
        max_excess_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve;

    #[test]
    fn small_hull() {
        let t = sieve(10_000).unwrap();
        let h = export_hull(&t, 55_440).unwrap();
        assert_eq!(h.points.len(), 55_440);
        assert_eq!(h.points[0].log_tau, RealX::ZERO);
        assert_eq!(h.points[0].log_sigma_over_n, RealX::ZERO);
        let ns: Vec<u64> = h.vertices.iter().map(|v| v.n).collect();
        assert_eq!(ns, [1, 2, 6, 12, 60, 120, 360, 2520, 5040, 55440]);
        assert!(
            h.dominated(),
            "excess {} at {}",
            h.max_excess,
            h.max_excess_at
        );
        assert!(h.max_excess.abs() < RealX::from(1e-25));
    }
}
