//! The `.mems` text format.
//!
//! For each query sequence with at least one match, in query file order:
//!
//! ```text
//! > <query name>
//!   <ref name> <ref pos> <query pos> <length>
//! ```
//!
//! Positions are 1-based. Query sequences without matches get no header.

use std::collections::HashMap;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::fasta::SequenceSet;
use crate::mem::Mem;

/// Writes `mems` (already in report order) and returns the bytes written.
pub fn write_report<W: Write>(
    mems: &[Mem],
    reference: &SequenceSet,
    query: &SequenceSet,
    out: W,
) -> io::Result<u64> {
    let mut out = CountingWriter {
        inner: out,
        count: 0,
    };
    let mut current = None;
    for m in mems {
        if current != Some(m.query_seq) {
            writeln!(out, "> {}", query.record(m.query_seq).name)?;
            current = Some(m.query_seq);
        }
        writeln!(
            out,
            "  {} {} {} {}",
            reference.record(m.ref_seq).name,
            m.ref_pos + 1,
            m.query_pos + 1,
            m.length
        )?;
    }
    out.flush()?;
    Ok(out.count)
}

/// Reads the format back into 0-based [`Mem`]s, resolving names against the
/// two sequence sets.
pub fn parse_report(text: &str, reference: &SequenceSet, query: &SequenceSet) -> Result<Vec<Mem>> {
    let ids = |set: &SequenceSet| -> HashMap<String, usize> {
        set.records()
            .iter()
            .enumerate()
            .map(|(i, r)| (r.name.clone(), i))
            .collect()
    };
    let (ref_ids, query_ids) = (ids(reference), ids(query));
    let bad = |line: usize, reason: &str| Error::MalformedReport {
        line,
        reason: reason.to_string(),
    };

    let mut mems = Vec::new();
    let mut current = None;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if let Some(name) = line.strip_prefix("> ") {
            current = Some(
                *query_ids
                    .get(name)
                    .ok_or_else(|| bad(lineno, "unknown query name"))?,
            );
            continue;
        }
        let body = line
            .strip_prefix("  ")
            .ok_or_else(|| bad(lineno, "expected header or indented match"))?;
        let query_seq = current.ok_or_else(|| bad(lineno, "match before any header"))?;
        let fields: Vec<&str> = body.split(' ').collect();
        let [name, rpos, qpos, len] = fields[..] else {
            return Err(bad(lineno, "expected four fields"));
        };
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| bad(lineno, "expected a positive integer"))
        };
        mems.push(Mem {
            ref_seq: *ref_ids
                .get(name)
                .ok_or_else(|| bad(lineno, "unknown reference name"))?,
            ref_pos: num(rpos)? - 1,
            query_seq,
            query_pos: num(qpos)? - 1,
            length: num(len)?,
        });
    }
    Ok(mems)
}

struct CountingWriter<W> {
    inner: W,
    count: u64,
}

impl<W: Write> Write for CountingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.count += n as u64;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}
