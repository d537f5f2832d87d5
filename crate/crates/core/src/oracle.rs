//! Brute-force references for checking the sampled pipeline.
//!
//! [`brute_force_mems`] enumerates maximal matches straight from the
//! definition by walking every diagonal of every (reference sequence, query
//! sequence) pair. [`residue_coverage`] checks the number-theoretic fact the
//! sampling relies on: with coprime strides `k1` and `k2`, any `k2`
//! consecutive reference samples `i*k1 + r1` hit every residue class mod `k2`.

use crate::error::{Error, Result};
use crate::fasta::{SequenceSet, NON_RESIDUE};
use crate::mem::Mem;
use crate::sampling::gcd;

pub const DEFAULT_MAX_CELLS: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `|R| * |Q|` the quadratic scan will accept.
    pub max_cells: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

/// Every maximal exact match of length at least `min_len`, in report order.
pub fn brute_force_mems(
    reference: &SequenceSet,
    query: &SequenceSet,
    min_len: usize,
    config: &OracleConfig,
) -> Result<Vec<Mem>> {
    if config.max_cells == 0 {
        return Err(Error::InvalidParams(
            "oracle cell cap must be positive".into(),
        ));
    }
    let cells = reference.total_length() as u128 * query.total_length() as u128;
    if cells > config.max_cells {
        return Err(Error::OracleTooLarge {
            cells,
            max_cells: config.max_cells,
        });
    }
    let min_len = min_len.max(1);

    let mut out = Vec::new();
    for ref_seq in 0..reference.len() {
        let r = reference.sequence(ref_seq);
        for query_seq in 0..query.len() {
            let q = query.sequence(query_seq);
            // Diagonal d pairs r[i] with q[i - d]; start at the first cell.
            for d in -(q.len() as isize - 1)..r.len() as isize {
                let (r0, q0) = if d >= 0 {
                    (d as usize, 0)
                } else {
                    (0, (-d) as usize)
                };
                scan_diagonal(&r[r0..], &q[q0..], min_len, |off, length| {
                    out.push(Mem {
                        ref_seq,
                        ref_pos: r0 + off,
                        query_seq,
                        query_pos: q0 + off,
                        length,
                    })
                });
            }
        }
    }
    // Each run is emitted once, so sorting alone gives report order.
    out.sort_unstable();
    Ok(out)
}

/// Reports every maximal run of equal, residue-clean pairs of length at
/// least `min_len` as `(offset, length)`.
///
/// Cells are examined in blocks of 64: bit `i` of a block mask is set when
/// pair `i` matches. A run still open at the end of a block carries into
/// the next one. Blocks holding no run of `min_len` set bits only update
/// the carry; the others are walked run by run.
fn scan_diagonal(r: &[u8], q: &[u8], min_len: usize, mut emit: impl FnMut(usize, usize)) {
    let n = r.len().min(q.len());
    let mut run = 0usize;
    for (block, (rb, qb)) in r[..n].chunks(64).zip(q[..n].chunks(64)).enumerate() {
        let base = block * 64;
        let width = rb.len() as u32;
        let mask = match_mask(rb, qb);

        let mut pos = 0u32;
        if run > 0 {
            let ones = mask.trailing_ones().min(width);
            run += ones as usize;
            if ones == width {
                continue;
            }
            if run >= min_len {
                emit(base + ones as usize - run, run);
            }
            run = 0;
            pos = ones;
        }

        if !has_run(mask >> pos, min_len) {
            // Only the run touching the block end matters, as a carry.
            run = (mask << (64 - width)).leading_ones().min(width - pos) as usize;
            continue;
        }
        while pos < width {
            if run == 0 {
                let rest = mask >> pos;
                if rest == 0 {
                    break;
                }
                pos += rest.trailing_zeros();
            }
            let ones = (mask >> pos).trailing_ones().min(width - pos);
            run += ones as usize;
            pos += ones;
            if pos < width {
                if run >= min_len {
                    emit(base + pos as usize - run, run);
                }
                run = 0;
            }
        }
    }
    if run >= min_len {
        emit(n - run, run);
    }
}

/// Whether `mask` has `len` consecutive set bits.
fn has_run(mut mask: u64, len: usize) -> bool {
    if len > 64 {
        return false;
    }
    let mut covered = 1;
    while covered < len && mask != 0 {
        let shift = covered.min(len - covered);
        mask &= mask >> shift;
        covered += shift;
    }
    mask != 0
}

/// Bit `i` set iff `r[i] == q[i]` and neither is a non-residue byte.
fn match_mask(r: &[u8], q: &[u8]) -> u64 {
    if r.len() < 64 {
        return r.iter().zip(q).enumerate().fold(0, |m, (i, (&a, &b))| {
            m | u64::from((a == b) & (a != NON_RESIDUE)) << i
        });
    }
    let mut mask = 0u64;
    for (i, (rw, qw)) in r.chunks_exact(8).zip(q.chunks_exact(8)).enumerate() {
        let a = u64::from_le_bytes(rw.try_into().unwrap());
        let b = u64::from_le_bytes(qw.try_into().unwrap());
        let bad = nonzero_bytes(a ^ b) | !nonzero_bytes(a ^ SPLAT_N);
        mask |= u64::from(gather_high_bits(!bad & HIGH)) << (8 * i);
    }
    mask
}

const LOW7: u64 = 0x7f7f_7f7f_7f7f_7f7f;
const HIGH: u64 = 0x8080_8080_8080_8080;
const SPLAT_N: u64 = 0x0101_0101_0101_0101 * NON_RESIDUE as u64;

/// High bit of each byte set iff that byte of `x` is nonzero.
#[inline]
fn nonzero_bytes(x: u64) -> u64 {
    (((x & LOW7) + LOW7) | x) & HIGH
}

/// Packs the eight byte-high bits of `v` into one byte, byte 0 lowest.
#[inline]
fn gather_high_bits(v: u64) -> u8 {
    (((v >> 7).wrapping_mul(0x0102_0408_1020_4080)) >> 56) as u8
}

/// Whether `{i*k1 + r1 : 0 <= i < k2}` contains an element congruent to `r`
/// modulo `k2`. Requires coprime `k1, k2 >= 1`, `r1 < k1` and `r < k2`.
pub fn residue_coverage(k1: u64, k2: u64, r1: u64, r: u64) -> Result<bool> {
    if k1 == 0 || k2 == 0 || r1 >= k1 || r >= k2 {
        return Err(Error::InvalidParams(format!(
            "need k1, k2 >= 1, r1 < k1, r < k2 (k1={k1}, k2={k2}, r1={r1}, r={r})"
        )));
    }
    if gcd(k1 as usize, k2 as usize) != 1 {
        return Err(Error::InvalidParams(format!(
            "{k1} and {k2} are not coprime"
        )));
    }
    Ok(enumerate_coverage(k1, k2, r1, r))
}

/// [`residue_coverage`] without the coprimality requirement, for showing
/// what goes wrong when it is dropped.
pub fn enumerate_coverage(k1: u64, k2: u64, r1: u64, r: u64) -> bool {
    (0..k2).any(|i| (i * k1 + r1) % k2 == r)
}

/// Residues mod `k2` hit by `{i*k1 + r1 : 0 <= i < k2}`, ascending.
pub fn covered_residues(k1: u64, k2: u64, r1: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (0..k2).map(|i| (i * k1 + r1) % k2).collect();
    v.sort_unstable();
    v.dedup();
    v
}
