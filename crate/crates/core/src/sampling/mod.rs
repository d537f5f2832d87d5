//! Coprime stride selection and the reference-side k-mer index.

mod hash;
mod index;
mod params;

pub use hash::{hash_kmer, KmerHasher, MixHasher, Xxh3Hasher};
pub use index::{build_index, build_index_with, ensure_indexable, SeedIndex, MAX_INDEXED_LEN};
pub use params::{
    gcd, select_params, MatchParams, DEFAULT_HASH_BITS, DEFAULT_KMER_LEN, MAX_HASH_BITS,
};

pub(crate) use index::for_each_clean_kmer;
