//! Shared fixtures for the criterion benchmarks.

use kbf_core::exact::{rat, Rational};

/// Fixed generic evaluation point of length `n`.
pub fn generic_point(n: usize) -> Vec<Rational> {
    (0..n).map(|i| rat(2 * i as i64 + 3, i as i64 + 2)).collect()
}
