//! Exact arithmetic-function tables for `1 <= n <= limit`, built by plain
//! sieving (independent of the factorization code).

use crate::error::{Error, Result};

/// `φ(n)` for `0 <= n <= limit` (`φ(0)` is stored as 0).
pub fn totients(limit: u64) -> Result<Vec<u32>> {
    if limit >= u64::from(u32::MAX) {
        return Err(Error::OutOfRange(format!(
            "totient table limit {limit} too large"
        )));
    }
    let n = limit as usize;
    let mut phi: Vec<u32> = (0..=n as u32).collect();
    for p in 2..=n {
        if phi[p] as usize == p {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u32;
            }
        }
    }
    Ok(phi)
}

/// `(σ(n), τ(n))` for `0 <= n <= limit`, by adding each divisor to its multiples.
pub fn divisor_tables(limit: u64) -> Result<(Vec<u64>, Vec<u32>)> {
    if limit > 100_000_000 {
        return Err(Error::OutOfRange(format!(
            "divisor table limit {limit} too large"
        )));
    }
    let n = limit as usize;
    let mut sigma = vec![0u64; n + 1];
    let mut tau = vec![0u32; n + 1];
    for d in 1..=n {
        for m in (d..=n).step_by(d) {
            sigma[m] += d as u64;
            tau[m] += 1;
        }
    }
    Ok((sigma, tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize_small;

    #[test]
    fn tables_match_factorizations() {
        let phi = totients(5000).unwrap();
        let (sigma, tau) = divisor_tables(5000).unwrap();
        for n in 1..=5000u64 {
            let f = factorize_small(n).unwrap();
            assert_eq!(
                u128::from(phi[n as usize]),
                f.phi_u128().unwrap(),
                "phi {n}"
            );
            assert_eq!(
                u128::from(sigma[n as usize]),
                f.sigma_u128().unwrap(),
                "sigma {n}"
            );
            assert_eq!(
                u128::from(tau[n as usize]),
                f.tau_u128().unwrap(),
                "tau {n}"
            );
        }
    }
}
