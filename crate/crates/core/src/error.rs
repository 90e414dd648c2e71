use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    /// Two critical values of ε closer than the tie tolerance; the
    /// four-point maximizer case is not handled.
    #[error("critical values tie: psi({p1},{a1}) and psi({p2},{a2}) differ by g1-gap {gap}")]
    Tie {
        p1: u64,
        a1: u32,
        p2: u64,
        a2: u32,
        gap: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
