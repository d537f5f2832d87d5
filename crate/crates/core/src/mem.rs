//! Query scan, seed verification, extension and result assembly.

use std::cmp::Ordering;
use std::ops::Range;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::fasta::{SequenceSet, NON_RESIDUE};
use crate::sampling::{for_each_clean_kmer, KmerHasher, MatchParams, SeedIndex};

/// One maximal exact match, in per-sequence 0-based coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mem {
    pub ref_seq: usize,
    pub ref_pos: usize,
    pub query_seq: usize,
    pub query_pos: usize,
    pub length: usize,
}

impl Mem {
    fn sort_key(&self) -> (usize, usize, usize, usize, usize) {
        (
            self.query_seq,
            self.query_pos,
            self.ref_seq,
            self.ref_pos,
            self.length,
        )
    }
}

/// Reports are ordered by query sequence, query position, reference
/// sequence, reference position, then length.
impl Ord for Mem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Mem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchStats {
    /// Query k-mers looked up in the index.
    pub query_probes: u64,
    /// Bucket entries returned by those lookups.
    pub hash_hits: u64,
    /// Bucket entries whose bytes really equal the query k-mer.
    pub verified_seeds: u64,
    /// Seeds extended all the way to a maximal span.
    pub extensions: u64,
    /// Verified seeds dropped because an earlier seed on the same diagonal
    /// already covers their match.
    pub redundant_seeds: u64,
    /// Identical candidates merged during deduplication.
    pub duplicates_suppressed: u64,
    pub scan_time: Duration,
    pub dedupe_time: Duration,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchReport {
    pub mems: Vec<Mem>,
    pub stats: MatchStats,
}

/// A maximal span around a seed, in global coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extension {
    pub ref_start: usize,
    pub query_start: usize,
    pub length: usize,
}

/// Finds every maximal exact match of length at least `L` between the
/// reference the index was built from and `query`.
pub fn find_mems<H: KmerHasher>(
    reference: &SequenceSet,
    query: &SequenceSet,
    index: &SeedIndex<H>,
    params: &MatchParams,
) -> Result<MatchReport> {
    let built = index.params();
    if built != params {
        return Err(Error::ParamsMismatch {
            index: built.to_string(),
            search: params.to_string(),
        });
    }
    if let Some(&last) = index.positions().iter().max() {
        if last as usize + params.kmer_len() > reference.total_length() {
            return Err(Error::InvalidParams(
                "index does not belong to this reference".into(),
            ));
        }
    }

    let k = params.kmer_len();
    // Seeds on one diagonal that hit both samplings recur every k1*k2 bases.
    let seed_period = params.ref_stride() * params.query_stride();
    let rsym = reference.symbols();
    let qsym = query.symbols();
    let mut stats = MatchStats::default();
    let mut raw = Vec::new();

    let scan_start = Instant::now();
    for_each_clean_kmer(query, k, params.query_stride(), |q_seq, q| {
        stats.query_probes += 1;
        let kmer = &qsym[q..q + k];
        let candidates = index.lookup(kmer);
        stats.hash_hits += candidates.len() as u64;
        let q_bounds = query.record(q_seq).range();
        for &r in candidates {
            let r = r as usize;
            if &rsym[r..r + k] != kmer {
                continue;
            }
            stats.verified_seeds += 1;
            let r_seq = reference.translate(r).expect("indexed position in range").0;
            let r_bounds = reference.record(r_seq).range();
            let Some(ext) = extend_within(
                rsym,
                qsym,
                r_bounds.clone(),
                q_bounds.clone(),
                r,
                q,
                k,
                seed_period,
            ) else {
                stats.redundant_seeds += 1;
                continue;
            };
            stats.extensions += 1;
            if ext.length >= params.min_len() {
                raw.push(Mem {
                    ref_seq: r_seq,
                    ref_pos: ext.ref_start - r_bounds.start,
                    query_seq: q_seq,
                    query_pos: ext.query_start - q_bounds.start,
                    length: ext.length,
                });
            }
        }
    });
    stats.scan_time = scan_start.elapsed();

    let dedupe_start = Instant::now();
    let before = raw.len();
    let mems = dedupe_and_sort(raw);
    stats.duplicates_suppressed = (before - mems.len()) as u64;
    stats.dedupe_time = dedupe_start.elapsed();

    Ok(MatchReport { mems, stats })
}

/// Extends a verified seed to its maximal span: left then right, one byte
/// at a time, stopping at a mismatch, a non-residue byte or the end of
/// either containing sequence. Positions are global.
///
/// # Panics
///
/// If the seed bytes are out of range, unequal or not residue-clean.
pub fn extend_seed(
    reference: &SequenceSet,
    query: &SequenceSet,
    ref_pos: usize,
    query_pos: usize,
    kmer_len: usize,
) -> Extension {
    let (r_seq, _) = reference
        .translate(ref_pos)
        .expect("seed outside reference");
    let (q_seq, _) = query.translate(query_pos).expect("seed outside query");
    let r_bounds = reference.record(r_seq).range();
    let q_bounds = query.record(q_seq).range();
    assert!(
        ref_pos + kmer_len <= r_bounds.end && query_pos + kmer_len <= q_bounds.end,
        "seed crosses a sequence boundary"
    );
    let (r, q) = (reference.symbols(), query.symbols());
    assert!(
        r[ref_pos..ref_pos + kmer_len] == q[query_pos..query_pos + kmer_len]
            && r[ref_pos..ref_pos + kmer_len]
                .iter()
                .all(|&b| b != NON_RESIDUE),
        "seed bytes are not an exact residue-clean match"
    );
    extend_within(
        r,
        q,
        r_bounds,
        q_bounds,
        ref_pos,
        query_pos,
        kmer_len,
        usize::MAX,
    )
    .expect("unbounded left extension always completes")
}

/// Core of [`extend_seed`]. Returns `None` when the match reaches at least
/// `left_cap` bytes left of the seed: the seed `left_cap` positions earlier
/// on this diagonal is then also sampled on both sides and yields the same
/// span.
#[allow(clippy::too_many_arguments)]
#[inline]
fn extend_within(
    r: &[u8],
    q: &[u8],
    r_bounds: Range<usize>,
    q_bounds: Range<usize>,
    r_pos: usize,
    q_pos: usize,
    k: usize,
    left_cap: usize,
) -> Option<Extension> {
    let max_left = (r_pos - r_bounds.start).min(q_pos - q_bounds.start);
    let mut left = 0;
    while left < max_left {
        let (a, b) = (r[r_pos - left - 1], q[q_pos - left - 1]);
        if a != b || a == NON_RESIDUE {
            break;
        }
        left += 1;
        if left >= left_cap {
            return None;
        }
    }

    let max_right = (r_bounds.end - r_pos - k).min(q_bounds.end - q_pos - k);
    let (rt, qt) = (&r[r_pos + k..], &q[q_pos + k..]);
    let right = rt[..max_right]
        .iter()
        .zip(&qt[..max_right])
        .take_while(|(a, b)| a == b && **a != NON_RESIDUE)
        .count();

    Some(Extension {
        ref_start: r_pos - left,
        query_start: q_pos - left,
        length: left + k + right,
    })
}

/// Sorts candidates into report order and keeps one copy of each.
pub fn dedupe_and_sort(mut raw: Vec<Mem>) -> Vec<Mem> {
    raw.sort_unstable();
    raw.dedup();
    raw
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{build_index, select_params};

    fn one(name: &str, seq: &str) -> SequenceSet {
        SequenceSet::from_sequences([(name, seq)]).unwrap()
    }

    fn mem(
        ref_seq: usize,
        ref_pos: usize,
        query_seq: usize,
        query_pos: usize,
        length: usize,
    ) -> Mem {
        Mem {
            ref_seq,
            ref_pos,
            query_seq,
            query_pos,
            length,
        }
    }

    #[test]
    fn shared_cccggg() {
        let r = one("r1", "AAACCCGGGTTT");
        let q = one("q1", "TTGCCCGGGCAA");
        let params = select_params(5, 3, 8).unwrap();
        assert_eq!((params.ref_stride(), params.query_stride()), (2, 1));
        let idx = build_index(&r, &params).unwrap();
        let report = find_mems(&r, &q, &idx, &params).unwrap();
        assert_eq!(report.mems, vec![mem(0, 3, 0, 3, 6)]);
    }

    #[test]
    fn extend_cccggg_seed() {
        let r = one("r1", "AAACCCGGGTTT");
        let q = one("q1", "TTGCCCGGGCAA");
        let ext = extend_seed(&r, &q, 4, 4, 3);
        assert_eq!(
            ext,
            Extension {
                ref_start: 3,
                query_start: 3,
                length: 6
            }
        );
    }

    #[test]
    fn extension_stops_at_sequence_start_and_mismatch() {
        let r = one("r", "ACGTA");
        let q = one("q", "ACGTC");
        let ext = extend_seed(&r, &q, 0, 0, 3);
        assert_eq!((ext.ref_start, ext.query_start, ext.length), (0, 0, 4));
    }

    #[test]
    fn extension_stops_at_non_residue() {
        // Both sides carry N at the same offset; N never matches N.
        let r = one("r", "GGNACGTACGTNGG");
        let q = one("q", "GGNACGTACGTNGG");
        let ext = extend_seed(&r, &q, 5, 5, 3);
        assert_eq!((ext.ref_start, ext.query_start, ext.length), (3, 3, 8));
    }

    #[test]
    fn extension_respects_record_boundaries() {
        let r = SequenceSet::from_sequences([("a", "TTACG"), ("b", "TACGT")]).unwrap();
        let q = one("q", "TTACGTACGT");
        // Seed "CGT" at global 7, inside record b (global 5..10).
        let ext = extend_seed(&r, &q, 7, 3, 3);
        // Left stops at the start of record b (global 5), right at its end.
        assert_eq!((ext.ref_start, ext.query_start, ext.length), (5, 1, 5));
    }

    #[test]
    #[should_panic]
    fn unequal_seed_panics() {
        let r = one("r", "ACGT");
        let q = one("q", "ACCT");
        extend_seed(&r, &q, 0, 0, 3);
    }

    #[test]
    fn disjoint_alphabets() {
        let r = one("r", "AAAAAAAAAA");
        let q = one("q", "TTTTTTTTTT");
        let params = select_params(4, 2, 4).unwrap();
        let idx = build_index(&r, &params).unwrap();
        assert!(find_mems(&r, &q, &idx, &params).unwrap().mems.is_empty());
    }

    #[test]
    fn identical_unique_content_gives_one_full_match() {
        // de Bruijn-like sequence: every 4-mer distinct.
        let s =
            "AAAACAAAGAAATAACCAACGAACTAAGCAAGGAAGTAATCAATGAATTACACAGACATACCCACCGACCTACGCACGGACGT";
        let r = one("r", s);
        let q = one("q", s);
        for l in [4, 10, s.len()] {
            let params = select_params(l, 4, 10).unwrap();
            let idx = build_index(&r, &params).unwrap();
            let rep = find_mems(&r, &q, &idx, &params).unwrap();
            assert_eq!(rep.mems, vec![mem(0, 0, 0, 0, s.len())], "L={l}");
        }
    }

    #[test]
    fn one_long_match_found_by_many_seeds_is_reported_once() {
        let params = select_params(100, 44, 12).unwrap();
        assert_eq!((params.ref_stride(), params.query_stride()), (8, 7));
        let core: String = {
            let mut x = 12345u64;
            (0..200)
                .map(|_| {
                    x = x
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    b"ACGT"[(x >> 62) as usize] as char
                })
                .collect()
        };
        let r = one("r", &format!("GGGGG{core}CCCCC"));
        let q = one("q", &format!("TTT{core}AAA"));
        let r_sym = r.symbols();
        let q_sym = q.symbols();

        // Every sampled pair inside the match extends to the same span.
        let mut discoveries = Vec::new();
        for rp in (0..r.total_length() - 44).filter(|p| p % 8 == 0) {
            for qp in (0..q.total_length() - 44).filter(|p| p % 7 == 0) {
                if r_sym[rp..rp + 44] == q_sym[qp..qp + 44] {
                    let e = extend_seed(&r, &q, rp, qp, 44);
                    discoveries.push(mem(0, e.ref_start, 0, e.query_start, e.length));
                }
            }
        }
        assert!(discoveries.len() > 1);
        assert_eq!(dedupe_and_sort(discoveries), vec![mem(0, 5, 0, 3, 200)]);

        let idx = build_index(&r, &params).unwrap();
        let rep = find_mems(&r, &q, &idx, &params).unwrap();
        assert_eq!(rep.mems, vec![mem(0, 5, 0, 3, 200)]);
        assert_eq!(rep.stats.extensions, 1);
        assert!(rep.stats.redundant_seeds >= 1);
    }

    #[test]
    fn dedupe_edge_cases() {
        assert!(dedupe_and_sort(vec![]).is_empty());
        let unique = vec![mem(1, 0, 0, 5, 9), mem(0, 2, 0, 1, 9), mem(0, 0, 1, 0, 9)];
        let mut expected = unique.clone();
        expected.sort();
        assert_eq!(dedupe_and_sort(unique), expected);
        assert_eq!(
            dedupe_and_sort(vec![mem(0, 0, 0, 0, 5), mem(0, 0, 0, 0, 5)]),
            vec![mem(0, 0, 0, 0, 5)]
        );
    }

    #[test]
    fn sort_order_is_query_major() {
        let mut v = vec![mem(0, 9, 1, 0, 5), mem(2, 0, 0, 7, 5), mem(1, 0, 0, 7, 5)];
        v.sort();
        assert_eq!(
            v,
            vec![mem(1, 0, 0, 7, 5), mem(2, 0, 0, 7, 5), mem(0, 9, 1, 0, 5)]
        );
    }

    #[test]
    fn mismatched_params_are_rejected() {
        let r = one("r", "ACGTACGTACGT");
        let built = select_params(6, 3, 4).unwrap();
        let idx = build_index(&r, &built).unwrap();
        let other = select_params(7, 3, 4).unwrap();
        assert!(matches!(
            find_mems(&r, &r, &idx, &other),
            Err(Error::ParamsMismatch { .. })
        ));
        let wider = built.with_hash_bits(6).unwrap();
        assert!(matches!(
            find_mems(&r, &r, &idx, &wider),
            Err(Error::ParamsMismatch { .. })
        ));
    }
}
