//! Fixtures shared by the benchmarks.

use ringline_core::{ring_from_text, BuildOptions, RingRef};

/// Rings small enough for every exhaustive algorithm, largest last.
pub const SPECS: &[&str] = &[
    "GF(2)*GF(2)",
    "GF(2)[x]/(x^3-x)",
    "GF(3)*GF(2)",
    "GF(3)[x]/(x^2)",
    "GF(2)[x]/(x^4+x)",
];

pub fn ring(spec: &str) -> RingRef {
    ring_from_text(spec, &BuildOptions::default()).expect("fixture spec builds")
}
