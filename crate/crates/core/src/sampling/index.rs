use std::alloc::{alloc_zeroed, Layout};
use std::collections::BTreeMap;

use super::hash::{KmerHasher, MixHasher};
use super::params::MatchParams;
use crate::error::{Error, Result};
use crate::fasta::{SequenceSet, NON_RESIDUE};

/// Longest sequence set whose positions fit the 4-byte index entries.
pub const MAX_INDEXED_LEN: usize = u32::MAX as usize;

/// Reference k-mers sampled every `k1` positions, bucketed by hash slot.
///
/// Two flat arrays: `offsets` (`2^H + 1` prefix sums) and `positions`
/// (sampled global reference positions, grouped by slot and ascending within
/// a slot). Slot `s` owns `positions[offsets[s]..offsets[s + 1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedIndex<H = MixHasher> {
    offsets: Vec<u32>,
    positions: Vec<u32>,
    params: MatchParams,
    hasher: H,
}

impl<H: KmerHasher> SeedIndex<H> {
    pub fn params(&self) -> &MatchParams {
        &self.params
    }

    pub fn hasher(&self) -> &H {
        &self.hasher
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    /// Total 4-byte entries held: `(2^H + 1) + |positions|`.
    pub fn entry_count(&self) -> usize {
        self.offsets.len() + self.positions.len()
    }

    pub fn bucket(&self, slot: usize) -> &[u32] {
        &self.positions[self.offsets[slot] as usize..self.offsets[slot + 1] as usize]
    }

    /// Candidate reference positions for `kmer`. These are whole-bucket
    /// contents and may include hash collisions; callers must compare bytes.
    #[inline]
    pub fn lookup(&self, kmer: &[u8]) -> &[u32] {
        self.bucket(self.hasher.slot(kmer, self.params.hash_bits()))
    }

    /// Maps bucket size to the number of slots of that size.
    pub fn occupancy_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for w in self.offsets.windows(2) {
            *hist.entry((w[1] - w[0]) as usize).or_insert(0) += 1;
        }
        hist
    }
}

/// Builds the reference index with the default hasher.
pub fn build_index(reference: &SequenceSet, params: &MatchParams) -> Result<SeedIndex> {
    build_index_with(reference, params, MixHasher)
}

/// Two-pass counting-sort build: count slot occupancy, prefix-sum the
/// counts into offsets, then place each sampled position at its slot cursor.
pub fn build_index_with<H: KmerHasher>(
    reference: &SequenceSet,
    params: &MatchParams,
    hasher: H,
) -> Result<SeedIndex<H>> {
    ensure_indexable(reference.total_length())?;
    let k = params.kmer_len();
    let bits = params.hash_bits();
    let slots = params.slot_count();
    let symbols = reference.symbols();

    let mut offsets = zeroed_u32(slots + 1)?;
    let mut sampled = 0usize;
    for_each_clean_kmer(reference, k, params.ref_stride(), |_, p| {
        offsets[hasher.slot(&symbols[p..p + k], bits) + 1] += 1;
        sampled += 1;
    });

    let mut acc = 0u32;
    for o in offsets.iter_mut() {
        acc += *o;
        *o = acc;
    }

    let mut positions = Vec::new();
    positions
        .try_reserve_exact(sampled)
        .map_err(|_| Error::Allocation { entries: sampled })?;
    positions.resize(sampled, 0u32);
    for_each_clean_kmer(reference, k, params.ref_stride(), |_, p| {
        let cursor = &mut offsets[hasher.slot(&symbols[p..p + k], bits)];
        positions[*cursor as usize] = p as u32;
        *cursor += 1;
    });
    // Each cursor now sits at its slot's end, which is the next slot's start.
    offsets.copy_within(0..slots, 1);
    offsets[0] = 0;

    Ok(SeedIndex {
        offsets,
        positions,
        params: *params,
        hasher,
    })
}

pub fn ensure_indexable(len: usize) -> Result<()> {
    if len > MAX_INDEXED_LEN {
        return Err(Error::TooLong {
            len,
            max: MAX_INDEXED_LEN,
        });
    }
    Ok(())
}

/// Calls `f(seq_id, global_pos)` for every position `p` with
/// `p % stride == 0` whose k-mer lies inside one sequence and holds no
/// non-residue byte, in ascending order.
pub(crate) fn for_each_clean_kmer(
    set: &SequenceSet,
    k: usize,
    stride: usize,
    mut f: impl FnMut(usize, usize),
) {
    let symbols = set.symbols();
    // First non-residue at or after the current position (or buffer end).
    let mut next_bad: Option<usize> = None;
    for (id, rec) in set.records().iter().enumerate() {
        let end = rec.global_end();
        let mut p = rec.global_start.next_multiple_of(stride);
        while p + k <= end {
            let bad = match next_bad {
                Some(b) if b >= p => b,
                _ => {
                    let b = symbols[p..]
                        .iter()
                        .position(|&b| b == NON_RESIDUE)
                        .map_or(symbols.len(), |i| p + i);
                    next_bad = Some(b);
                    b
                }
            };
            if bad >= p + k {
                f(id, p);
                p += stride;
            } else {
                p = (bad + 1).next_multiple_of(stride);
            }
        }
    }
}

fn zeroed_u32(len: usize) -> Result<Vec<u32>> {
    let err = || Error::Allocation { entries: len };
    let layout = Layout::array::<u32>(len).map_err(|_| err())?;
    if layout.size() == 0 {
        return Ok(Vec::new());
    }
    // SAFETY: the layout is non-zero sized and matches `Vec<u32>` with
    // capacity `len`; all-zero bytes are valid `u32`s.
    unsafe {
        let ptr = alloc_zeroed(layout) as *mut u32;
        if ptr.is_null() {
            return Err(err());
        }
        Ok(Vec::from_raw_parts(ptr, len, len))
    }
}
