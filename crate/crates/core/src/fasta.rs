//! Multi-FASTA loading into one flat symbol buffer per genome.
//!
//! Every sequence of a file is concatenated, in file order, into a single
//! byte buffer with no separators. Sequence boundaries live only in the
//! [`Record`] table, so code that must not cross a boundary (seeding and
//! extension) checks ranges explicitly.
//!
//! Symbols are normalized on load: residues are uppercased and every byte
//! that is not `A`, `C`, `G` or `T` becomes [`NON_RESIDUE`]. That byte never
//! matches anything, itself included.

use std::collections::HashSet;
use std::io::Write;
use std::ops::Range;
use std::path::Path;

use crate::error::{Error, Result};

/// The single byte that stands in for `N`, IUPAC codes and any other
/// non-nucleotide symbol.
pub const NON_RESIDUE: u8 = b'N';

/// `true` for the four canonical nucleotides.
#[inline]
pub fn is_residue(b: u8) -> bool {
    matches!(b, b'A' | b'C' | b'G' | b'T')
}

/// Maps a raw input byte to its stored form.
#[inline]
pub fn normalize(b: u8) -> u8 {
    let up = b.to_ascii_uppercase();
    if is_residue(up) {
        up
    } else {
        NON_RESIDUE
    }
}

/// One FASTA entry: its name and where it lives in the concatenated buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub name: String,
    pub global_start: usize,
    pub length: usize,
}

impl Record {
    pub fn range(&self) -> Range<usize> {
        self.global_start..self.global_start + self.length
    }

    pub fn global_end(&self) -> usize {
        self.global_start + self.length
    }
}

/// One side of a comparison (reference or query).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSet {
    symbols: Vec<u8>,
    records: Vec<Record>,
}

impl SequenceSet {
    /// Builds a set from in-memory `(name, residues)` pairs, normalizing the
    /// residues exactly as [`load_fasta`] would.
    pub fn from_sequences<I, N, S>(sequences: I) -> Result<Self>
    where
        I: IntoIterator<Item = (N, S)>,
        N: Into<String>,
        S: AsRef<[u8]>,
    {
        let mut builder = Builder::default();
        for (name, seq) in sequences {
            builder.start(name.into())?;
            builder.extend(seq.as_ref());
        }
        builder.finish()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn record(&self, seq_id: usize) -> &Record {
        &self.records[seq_id]
    }

    pub fn total_length(&self) -> usize {
        self.symbols.len()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Residues of one sequence.
    pub fn sequence(&self, seq_id: usize) -> &[u8] {
        &self.symbols[self.records[seq_id].range()]
    }

    /// Maps a position in the concatenated buffer to `(seq_id, local_pos)`.
    pub fn translate(&self, global_pos: usize) -> Result<(usize, usize)> {
        if global_pos >= self.total_length() {
            return Err(Error::OutOfRange {
                pos: global_pos,
                len: self.total_length(),
            });
        }
        let seq_id = self
            .records
            .partition_point(|r| r.global_start <= global_pos)
            - 1;
        Ok((seq_id, global_pos - self.records[seq_id].global_start))
    }

    /// Inverse of [`translate`](Self::translate).
    pub fn global_position(&self, seq_id: usize, local_pos: usize) -> usize {
        self.records[seq_id].global_start + local_pos
    }

    /// Writes the canonical FASTA form: one header per record and residues
    /// wrapped at `line_width` (0 disables wrapping).
    pub fn write_fasta<W: Write>(&self, mut out: W, line_width: usize) -> std::io::Result<()> {
        for (id, rec) in self.records.iter().enumerate() {
            writeln!(out, ">{}", rec.name)?;
            let seq = self.sequence(id);
            let width = if line_width == 0 {
                seq.len()
            } else {
                line_width
            };
            for line in seq.chunks(width) {
                out.write_all(line)?;
                out.write_all(b"\n")?;
            }
        }
        Ok(())
    }
}

/// Reads a multi-FASTA file fully into memory.
pub fn load_fasta<P: AsRef<Path>>(path: P) -> Result<SequenceSet> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_fasta(&bytes).map_err(|e| Error::InFile {
        path: path.to_path_buf(),
        source: Box::new(e),
    })
}

/// Parses multi-FASTA text. Accepts any line wrapping and LF or CRLF line
/// endings. The sequence name is the first whitespace-delimited word of the
/// header line.
pub fn parse_fasta(input: &[u8]) -> Result<SequenceSet> {
    let body = input.trim_ascii_start();
    if body.is_empty() {
        return Err(Error::EmptyInput);
    }
    if body[0] != b'>' {
        return Err(Error::MissingHeader);
    }
    let first_line = input[..input.len() - body.len()]
        .iter()
        .filter(|&&b| b == b'\n')
        .count()
        + 1;

    let mut builder = Builder::with_capacity(body.len());
    for (offset, line) in body.split(|&b| b == b'\n').enumerate() {
        if let Some(header) = line.strip_prefix(b">") {
            let name = header
                .split(|b| b.is_ascii_whitespace())
                .find(|w| !w.is_empty())
                .ok_or(Error::EmptyName {
                    line: first_line + offset,
                })?;
            builder.start(String::from_utf8_lossy(name).into_owned())?;
        } else {
            builder.extend(line);
        }
    }
    builder.finish()
}

#[derive(Default)]
struct Builder {
    symbols: Vec<u8>,
    records: Vec<Record>,
    names: HashSet<String>,
}

impl Builder {
    fn with_capacity(cap: usize) -> Self {
        Self {
            symbols: Vec::with_capacity(cap),
            ..Self::default()
        }
    }

    fn start(&mut self, name: String) -> Result<()> {
        self.close_current()?;
        if name.is_empty() {
            return Err(Error::EmptyName {
                line: self.records.len() + 1,
            });
        }
        if !self.names.insert(name.clone()) {
            return Err(Error::DuplicateName(name));
        }
        self.records.push(Record {
            name,
            global_start: self.symbols.len(),
            length: 0,
        });
        Ok(())
    }

    fn extend(&mut self, line: &[u8]) {
        self.symbols.extend(
            line.iter()
                .filter(|b| !b.is_ascii_whitespace())
                .map(|&b| normalize(b)),
        );
    }

    fn close_current(&mut self) -> Result<()> {
        if let Some(last) = self.records.last_mut() {
            last.length = self.symbols.len() - last.global_start;
            if last.length == 0 {
                return Err(Error::EmptySequence(last.name.clone()));
            }
        }
        Ok(())
    }

    fn finish(mut self) -> Result<SequenceSet> {
        self.close_current()?;
        if self.records.is_empty() {
            return Err(Error::EmptyInput);
        }
        self.symbols.shrink_to_fit();
        Ok(SequenceSet {
            symbols: self.symbols,
            records: self.records,
        })
    }
}
