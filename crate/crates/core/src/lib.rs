//! Analysis of finitely presented special monoids `⟨A | u_1 = 1, …, u_k = 1⟩`.
//!
//! The crate covers the whole pipeline on such presentations:
//!
//! * [`presentation`]: alphabets, words, systems and their text/JSON formats;
//! * [`rewrite`]: the length-reducing rewriting system `u_i → 1`, normal forms,
//!   overlaps, critical pairs and an exact confluence decision;
//! * [`units`]: invertible and minimal words, the sets Λ and Δ, and the
//!   decision whether the group of units is trivial;
//! * [`wp_language`]: the context-free grammar of the word problem, CNF, CYK
//!   membership, prefix/suffix closures and an independent erasability oracle;
//! * [`diophantine`]: word equations and a bounded solution search with exact
//!   certificates for the invertibility-shaped equations;
//! * [`analysis`]: the aggregated report used by the command-line tool.

pub mod analysis;
pub mod diophantine;
pub mod error;
pub mod generate;
mod matcher;
pub mod presentation;
pub mod rewrite;
pub mod units;
pub mod wp_language;

pub use error::{Error, Location, Result};
pub use presentation::{Alphabet, Letter, SpecialSystem, Word};

/// Resource caps for the exhaustive parts of the library.
///
/// Every search that could blow up reports [`Error::BudgetExceeded`] when its
/// cap is hit instead of returning a truncated answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum size of a descendant set (and of the erasability oracle's memo).
    pub descendants: usize,
    /// Maximum number of words produced by grammar enumeration or candidate scans.
    pub enumeration: usize,
    /// Maximum number of assignments examined by the equation solver.
    pub assignments: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            descendants: 1_000_000,
            enumeration: 1_000_000,
            assignments: 10_000_000,
        }
    }
}

impl Limits {
    /// Sets every cap to `n`.
    pub fn uniform(n: u64) -> Self {
        let small = usize::try_from(n).unwrap_or(usize::MAX);
        Limits {
            descendants: small,
            enumeration: small,
            assignments: n,
        }
    }
}
