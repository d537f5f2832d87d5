//! K-mer hash functions.
//!
//! The index only needs a deterministic function from k-mer bytes to a slot.
//! Which function is used changes speed and bucket statistics, never the set
//! of reported matches, because every bucket candidate is byte-verified.

use xxhash_rust::xxh3::xxh3_64;

/// A pure hash of k-mer bytes. Implementations must be deterministic.
pub trait KmerHasher {
    fn hash64(&self, kmer: &[u8]) -> u64;

    /// Slot in `[0, 2^bits)`, taken from the high bits of the 64-bit hash.
    #[inline]
    fn slot(&self, kmer: &[u8], bits: u32) -> usize {
        (self.hash64(kmer) >> (64 - bits)) as usize
    }
}

/// Default hasher: folds the k-mer eight bytes at a time with a
/// multiply-rotate step, then applies a 64-bit finalizer.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MixHasher;

const MIX_PRIME: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX_SEED: u64 = 0x2545_F491_4F6C_DD1D;

impl KmerHasher for MixHasher {
    #[inline]
    fn hash64(&self, kmer: &[u8]) -> u64 {
        let mut h = MIX_SEED ^ (kmer.len() as u64).wrapping_mul(MIX_PRIME);
        let mut words = kmer.chunks_exact(8);
        for w in &mut words {
            let w = u64::from_le_bytes(w.try_into().unwrap());
            h = (h ^ w).wrapping_mul(MIX_PRIME).rotate_left(31);
        }
        let tail = words.remainder();
        if !tail.is_empty() {
            let mut buf = [0u8; 8];
            buf[..tail.len()].copy_from_slice(tail);
            h = (h ^ u64::from_le_bytes(buf))
                .wrapping_mul(MIX_PRIME)
                .rotate_left(31);
        }
        fmix64(h)
    }
}

/// xxh3-64 over the raw k-mer bytes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Xxh3Hasher;

impl KmerHasher for Xxh3Hasher {
    #[inline]
    fn hash64(&self, kmer: &[u8]) -> u64 {
        xxh3_64(kmer)
    }
}

/// MurmurHash3 finalizer.
#[inline]
fn fmix64(mut h: u64) -> u64 {
    h ^= h >> 33;
    h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
    h ^= h >> 33;
    h = h.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    h ^= h >> 33;
    h
}

/// Slot of `kmer` in a table of `2^bits` slots under the default hasher.
#[inline]
pub fn hash_kmer(kmer: &[u8], bits: u32) -> usize {
    MixHasher.slot(kmer, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    fn random_kmer(rng: &mut StdRng, k: usize) -> Vec<u8> {
        (0..k).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect()
    }

    #[test]
    fn deterministic_and_in_range() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let kmer = random_kmer(&mut rng, 44);
            assert_eq!(hash_kmer(&kmer, 29), hash_kmer(&kmer.clone(), 29));
            assert!(hash_kmer(&kmer, 29) < 1 << 29);
            assert!(Xxh3Hasher.slot(&kmer, 29) < 1 << 29);
            assert!(hash_kmer(&kmer, 1) < 2);
            assert!(MixHasher.slot(&kmer, 32) < 1 << 32);
        }
    }

    #[test]
    fn odd_lengths_hash_the_tail() {
        assert_ne!(
            MixHasher.hash64(b"ACGTACGTA"),
            MixHasher.hash64(b"ACGTACGTC")
        );
        assert_ne!(MixHasher.hash64(b"ACG"), MixHasher.hash64(b"ACT"));
    }

    fn chi_square_uniform<H: KmerHasher>(hasher: &H, bits: u32, samples: usize) -> (f64, f64) {
        let slots = 1usize << bits;
        let mut counts = vec![0u64; slots];
        let mut rng = StdRng::seed_from_u64(0xC0FFEE);
        for _ in 0..samples {
            counts[hasher.slot(&random_kmer(&mut rng, 44), bits)] += 1;
        }
        let expected = samples as f64 / slots as f64;
        let stat: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        let dist = ChiSquared::new((slots - 1) as f64).unwrap();
        (stat, dist.inverse_cdf(1.0 - 0.001))
    }

    #[test]
    fn slot_histogram_is_uniform() {
        for bits in [8, 12] {
            let (stat, critical) = chi_square_uniform(&MixHasher, bits, 1_000_000);
            assert!(stat < critical, "mix H={bits}: {stat} >= {critical}");
            let (stat, critical) = chi_square_uniform(&Xxh3Hasher, bits, 1_000_000);
            assert!(stat < critical, "xxh3 H={bits}: {stat} >= {critical}");
        }
    }
}
