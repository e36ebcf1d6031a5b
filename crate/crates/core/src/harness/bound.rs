//! Orbit–stabilizer lower bound for a transitive conjugation action on
//! 3-cycles: `|G| >= 2 C(n,3) · |M| (n-3)!/2 = n! |M| / 6`.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("the orbit-stabilizer bound needs n >= 8, got {0}")]
    TooFewStrands(u64),
    #[error("|M| must be at least 3, got {0}")]
    MTooSmall(u64),
    #[error("64-bit overflow computing the bound for n = {n}, m = {m}")]
    Overflow { n: u64, m: u64 },
}

/// Exact quantities of the bound, all in 64-bit integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundLedger {
    pub n: u64,
    /// Size of the orbit of 3-cycles, `2 C(n,3)`.
    pub orbit_lower: u64,
    /// Lower bound on `|M|`.
    pub m_lower: u64,
    /// `|M| (n-3)! / 2`.
    pub stabilizer_lower: u64,
    /// `orbit_lower · stabilizer_lower`, equal to `n! |M| / 6`.
    pub product: u64,
}

impl BoundLedger {
    /// `n!/2`, the order of `A_n`.
    pub fn half_factorial(&self) -> Option<u64> {
        factorial(self.n).map(|f| f / 2)
    }
}

fn factorial(n: u64) -> Option<u64> {
    (2..=n).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// Builds the ledger with checked arithmetic and cross-checks
/// `product = n! m / 6 >= n!/2`, with equality iff `m = 3`.
pub fn orbit_stabilizer_bound(n: u64, m: u64) -> Result<BoundLedger, BoundError> {
    if n < 8 {
        return Err(BoundError::TooFewStrands(n));
    }
    if m < 3 {
        return Err(BoundError::MTooSmall(m));
    }
    let overflow = BoundError::Overflow { n, m };
    let choose3 = n
        .checked_mul(n - 1)
        .and_then(|x| x.checked_mul(n - 2))
        .map(|x| x / 6)
        .ok_or(overflow.clone())?;
    let orbit_lower = choose3.checked_mul(2).ok_or(overflow.clone())?;
    // (n-3)! is even for n >= 5, so halving first is exact.
    let stabilizer_lower = factorial(n - 3)
        .map(|f| f / 2)
        .and_then(|h| h.checked_mul(m))
        .ok_or(overflow.clone())?;
    let product = orbit_lower
        .checked_mul(stabilizer_lower)
        .ok_or(overflow.clone())?;

    let n_fact = factorial(n).ok_or(overflow.clone())?;
    let via_formula = (n_fact / 6).checked_mul(m).ok_or(overflow)?;
    assert_eq!(
        product, via_formula,
        "orbit x stabilizer disagrees with n! m / 6"
    );
    assert!(product > n_fact / 2 || (m == 3 && product == n_fact / 2));

    Ok(BoundLedger {
        n,
        orbit_lower,
        m_lower: m,
        stabilizer_lower,
        product,
    })
}
