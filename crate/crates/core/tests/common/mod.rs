#![allow(dead_code)]

use copmem::{Mem, SequenceSet, NON_RESIDUE};
use rand::rngs::StdRng;
use rand::Rng;

pub const ACGT: &[u8; 4] = b"ACGT";

pub fn random_dna(rng: &mut StdRng, len: usize) -> Vec<u8> {
    (0..len).map(|_| ACGT[rng.gen_range(0..4)]).collect()
}

/// Splits `total` into `parts` positive lengths.
fn split_lengths(rng: &mut StdRng, total: usize, parts: usize) -> Vec<usize> {
    let parts = parts.clamp(1, total);
    let mut cuts: Vec<usize> = (0..parts - 1).map(|_| rng.gen_range(1..total)).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let mut out = Vec::new();
    let mut prev = 0;
    for c in cuts.into_iter().chain([total]) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// A reference/query pair sharing planted segments of roughly `min_len`
/// scale, some with point mutations, some repeated, with `n_rate` of all
/// positions replaced by `N`.
pub struct PairSpec {
    pub ref_len: usize,
    pub query_len: usize,
    pub ref_seqs: usize,
    pub query_seqs: usize,
    pub min_len: usize,
    pub n_rate: f64,
}

pub fn planted_pair(rng: &mut StdRng, spec: &PairSpec) -> (SequenceSet, SequenceSet) {
    let mut r = random_dna(rng, spec.ref_len);
    // Internal repeats in the reference so one query k-mer hits several places.
    for _ in 0..rng.gen_range(0..4) {
        let len = rng
            .gen_range(spec.min_len / 2..spec.min_len * 3)
            .min(spec.ref_len / 4)
            .max(1);
        let from = rng.gen_range(0..=spec.ref_len - len);
        let to = rng.gen_range(0..=spec.ref_len - len);
        let chunk = r[from..from + len].to_vec();
        r[to..to + len].copy_from_slice(&chunk);
    }

    let mut q = Vec::with_capacity(spec.query_len);
    while q.len() < spec.query_len {
        let room = spec.query_len - q.len();
        if rng.gen_bool(0.5) {
            let len = rng.gen_range(1..spec.min_len * 2).min(room);
            q.extend(random_dna(rng, len));
        } else {
            let len = rng
                .gen_range(spec.min_len / 2..spec.min_len * 4)
                .min(room)
                .min(spec.ref_len);
            let from = rng.gen_range(0..=spec.ref_len - len);
            let start = q.len();
            q.extend_from_slice(&r[from..from + len]);
            for _ in 0..rng.gen_range(0..3) {
                let i = start + rng.gen_range(0..len);
                q[i] = ACGT[rng.gen_range(0..4)];
            }
        }
    }

    for seq in [&mut r, &mut q] {
        let ns = (seq.len() as f64 * spec.n_rate) as usize;
        for _ in 0..ns {
            let i = rng.gen_range(0..seq.len());
            seq[i] = b'N';
        }
    }

    (
        into_set(rng, "ref", &r, spec.ref_seqs),
        into_set(rng, "qry", &q, spec.query_seqs),
    )
}

pub fn into_set(rng: &mut StdRng, prefix: &str, seq: &[u8], parts: usize) -> SequenceSet {
    let mut start = 0;
    let pieces: Vec<(String, &[u8])> = split_lengths(rng, seq.len(), parts)
        .into_iter()
        .enumerate()
        .map(|(i, len)| {
            let piece = &seq[start..start + len];
            start += len;
            (format!("{prefix}{i}"), piece)
        })
        .collect();
    SequenceSet::from_sequences(pieces).unwrap()
}

/// Re-reads both sets: equal residue-clean bytes over the whole match, and
/// no possible extension on either side.
pub fn check_sound(
    r: &SequenceSet,
    q: &SequenceSet,
    m: &Mem,
    min_len: usize,
) -> Result<(), String> {
    let rs = r.sequence(m.ref_seq);
    let qs = q.sequence(m.query_seq);
    if m.length < min_len {
        return Err(format!("{m:?} shorter than {min_len}"));
    }
    if m.ref_pos + m.length > rs.len() || m.query_pos + m.length > qs.len() {
        return Err(format!("{m:?} runs past a sequence end"));
    }
    let a = &rs[m.ref_pos..m.ref_pos + m.length];
    let b = &qs[m.query_pos..m.query_pos + m.length];
    if a != b || a.contains(&NON_RESIDUE) {
        return Err(format!("{m:?} is not an exact residue-clean match"));
    }
    let extendable = |x: Option<&u8>, y: Option<&u8>| matches!((x, y), (Some(x), Some(y)) if x == y && *x != NON_RESIDUE);
    let left = m.ref_pos > 0
        && m.query_pos > 0
        && extendable(rs.get(m.ref_pos - 1), qs.get(m.query_pos - 1));
    let right = extendable(rs.get(m.ref_pos + m.length), qs.get(m.query_pos + m.length));
    if left || right {
        return Err(format!("{m:?} is not maximal"));
    }
    Ok(())
}
