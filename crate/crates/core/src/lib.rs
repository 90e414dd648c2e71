//! Extremal values of σ(n)/n, τ(n) and n/φ(n).
//!
//! The crate is organised bottom-up:
//!
//! * [`realx`]: double-double scalar used for every log-domain quantity;
//! * [`primes`]: segmented sieve, `p_k`, `π(x)`, primorials and the effective
//!   prime bounds `λ_k`, `δ(k)`, `β(k)`, `η(k)`, `ρ(k)`;
//! * [`arith`]: factored integers and their statistics (σ/n, τ, n/φ, f₁, f₂);
//! * [`superchampion`]: the ψ/θ calculus and the (σ,τ)-superchampion sequence;
//! * [`benefit`]: benefit function and exhaustive enumeration of the integers
//!   within a benefit budget;
//! * [`verify`]: end-to-end reproduction pipelines that emit claim reports.

pub mod arith;
pub mod benefit;
pub mod error;
pub mod primes;
pub mod realx;
pub mod superchampion;
pub mod verify;

pub use arith::{ArithStats, Factorization, SmallFactorizer};
pub use benefit::{BenefitHit, BenefitQuery, Census};
pub use error::{Error, Result};
pub use primes::PrimeTable;
pub use realx::RealX;
pub use superchampion::{CriticalEpsilon, CriticalStream, SuperchampionRecord, Superchampions};
pub use verify::{ClaimReport, HullExport, Provenance, Status, VerifyContext};
