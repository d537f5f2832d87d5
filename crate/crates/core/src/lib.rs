//! # copmem
//!
//! Maximal exact matches (MEMs) between two genomes, found by sampling
//! *both* of them.
//!
//! The reference is sampled every `k1` positions into a flat hash index and
//! the query is scanned every `k2` positions. With `gcd(k1, k2) = 1` and
//! `k1 * k2 <= L - K + 1`, every match of length `L` or more contains a
//! k-mer sampled on both sides, so no MEM is missed.
//!
//! ```
//! use copmem::{build_index, find_mems, select_params, SequenceSet};
//!
//! let reference = SequenceSet::from_sequences([("r1", "AAACCCGGGTTT")])?;
//! let query = SequenceSet::from_sequences([("q1", "TTGCCCGGGCAA")])?;
//!
//! let params = select_params(5, 3, 16)?;
//! let index = build_index(&reference, &params)?;
//! let report = find_mems(&reference, &query, &index, &params)?;
//!
//! let m = report.mems[0];
//! assert_eq!((m.ref_pos, m.query_pos, m.length), (3, 3, 6));
//! # Ok::<(), copmem::Error>(())
//! ```
//!
//! The guide in `book/` walks through each stage.

pub mod cli;
pub mod error;
pub mod fasta;
pub mod mem;
pub mod oracle;
pub mod output;
pub mod sampling;

pub use error::{Error, Result};
pub use fasta::{load_fasta, parse_fasta, Record, SequenceSet, NON_RESIDUE};
pub use mem::{dedupe_and_sort, extend_seed, find_mems, Extension, MatchReport, MatchStats, Mem};
pub use oracle::{brute_force_mems, residue_coverage, OracleConfig};
pub use output::{parse_report, write_report};
pub use sampling::{
    build_index, build_index_with, hash_kmer, select_params, KmerHasher, MatchParams, MixHasher,
    SeedIndex, Xxh3Hasher,
};

/// Code blocks in the guide under `book/src`, compiled and run as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/loading.md")]
    pub mod loading {}
    #[doc = include_str!("../../../book/src/coprime-sampling.md")]
    pub mod coprime_sampling {}
    #[doc = include_str!("../../../book/src/seed-index.md")]
    pub mod seed_index {}
    #[doc = include_str!("../../../book/src/finding-matches.md")]
    pub mod finding_matches {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    pub mod command_line {}
}
