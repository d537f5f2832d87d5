use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_KMER_LEN: usize = 44;
pub const DEFAULT_HASH_BITS: u32 = 29;
pub const MAX_HASH_BITS: u32 = 32;

/// Every numeric knob of a search.
///
/// Constructed only through [`MatchParams::new`] or [`select_params`], both
/// of which enforce the coverage conditions: `gcd(k1, k2) = 1`,
/// `k1 * k2 <= L - K + 1`, `k1 >= k2 >= 1` and `K <= L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatchParams {
    min_len: usize,
    kmer_len: usize,
    ref_stride: usize,
    query_stride: usize,
    hash_bits: u32,
}

impl MatchParams {
    pub fn new(
        min_len: usize,
        kmer_len: usize,
        ref_stride: usize,
        query_stride: usize,
        hash_bits: u32,
    ) -> Result<Self> {
        check_lengths(min_len, kmer_len)?;
        check_hash_bits(hash_bits)?;
        if query_stride == 0 || ref_stride < query_stride {
            return Err(Error::InvalidParams(format!(
                "strides must satisfy k1 >= k2 >= 1 (k1={ref_stride}, k2={query_stride})"
            )));
        }
        if gcd(ref_stride, query_stride) != 1 {
            return Err(Error::InvalidParams(format!(
                "strides {ref_stride} and {query_stride} are not coprime"
            )));
        }
        let window = min_len - kmer_len + 1;
        if ref_stride
            .checked_mul(query_stride)
            .is_none_or(|p| p > window)
        {
            return Err(Error::InvalidParams(format!(
                "k1*k2 = {ref_stride}*{query_stride} exceeds L-K+1 = {window}"
            )));
        }
        Ok(Self {
            min_len,
            kmer_len,
            ref_stride,
            query_stride,
            hash_bits,
        })
    }

    /// Minimum reported match length, `L`.
    pub fn min_len(&self) -> usize {
        self.min_len
    }

    /// Seed length, `K`.
    pub fn kmer_len(&self) -> usize {
        self.kmer_len
    }

    /// Reference sampling stride, `k1`.
    pub fn ref_stride(&self) -> usize {
        self.ref_stride
    }

    /// Query sampling stride, `k2`.
    pub fn query_stride(&self) -> usize {
        self.query_stride
    }

    /// Hash width `H`; the index has `2^H` slots.
    pub fn hash_bits(&self) -> u32 {
        self.hash_bits
    }

    pub fn slot_count(&self) -> usize {
        1usize << self.hash_bits
    }

    /// Same search with a different table width. Never changes the output.
    pub fn with_hash_bits(self, hash_bits: u32) -> Result<Self> {
        check_hash_bits(hash_bits)?;
        Ok(Self { hash_bits, ..self })
    }
}

impl fmt::Display for MatchParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "L={} K={} k1={} k2={} H={}",
            self.min_len, self.kmer_len, self.ref_stride, self.query_stride, self.hash_bits
        )
    }
}

/// Picks the sampling strides for a minimum match length `L` and seed length
/// `K`.
///
/// With `n = L - K + 1`, returns the largest `k1` such that
/// `k1 * (k1 - 1) <= n`, paired with `k2 = k1 - 1`. For `n = 1` both strides
/// are 1 (every position is sampled on both sides). Consecutive integers are
/// always coprime, and `k1 * k2 <= n` means any `L`-long match holds at least
/// `k2` sampled reference k-mers, enough to cover every query residue class.
pub fn select_params(min_len: usize, kmer_len: usize, hash_bits: u32) -> Result<MatchParams> {
    check_lengths(min_len, kmer_len)?;
    let window = min_len - kmer_len + 1;
    // isqrt gets close; the loops settle the exact boundary.
    let mut k1 = window.isqrt() + 1;
    while k1 * (k1 - 1) > window {
        k1 -= 1;
    }
    while (k1 + 1) * k1 <= window {
        k1 += 1;
    }
    let (k1, k2) = if k1 >= 2 { (k1, k1 - 1) } else { (1, 1) };
    MatchParams::new(min_len, kmer_len, k1, k2, hash_bits)
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_lengths(min_len: usize, kmer_len: usize) -> Result<()> {
    if kmer_len == 0 || min_len == 0 {
        return Err(Error::InvalidParams(format!(
            "L and K must be positive (L={min_len}, K={kmer_len})"
        )));
    }
    if kmer_len > min_len {
        return Err(Error::InvalidParams(format!(
            "k-mer length {kmer_len} exceeds minimum match length {min_len}"
        )));
    }
    Ok(())
}

fn check_hash_bits(bits: u32) -> Result<()> {
    if !(1..=MAX_HASH_BITS).contains(&bits) || bits as usize >= usize::BITS as usize {
        return Err(Error::InvalidParams(format!(
            "hash width must be within 1..={MAX_HASH_BITS} bits, got {bits}"
        )));
    }
    Ok(())
}
