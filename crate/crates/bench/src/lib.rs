//! Fixed inputs shared by the criterion benchmarks.

use bql_core::harness::presentations::carmichael_quotient;
use bql_core::{BraidWord, Presentation, Word};

/// A deterministic pseudo-random braid word of `len` letters on `n` strands.
pub fn scrambled_braid(n: usize, len: usize, mut state: u64) -> BraidWord {
    let mut values = Vec::with_capacity(len);
    for _ in 0..len {
        // xorshift64
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let g = (state % (n as u64 - 1)) as i64 + 1;
        values.push(if state & (1 << 40) == 0 { g } else { -g });
    }
    BraidWord::new(n, Word::from_signed(&values).expect("nonzero letters")).expect("in range")
}

/// The Artin presentation with the order-3 and order-2 relators added.
pub fn carmichael_presentation(n: usize) -> Presentation {
    carmichael_quotient(n).expect("n >= 4").presentation
}
