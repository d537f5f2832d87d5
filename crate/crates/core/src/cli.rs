//! The `copmem` command line: load both genomes, index the reference,
//! scan the query and write the `.mems` file.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, ValueEnum};

use crate::error::{Error, Result};
use crate::fasta::{load_fasta, SequenceSet};
use crate::mem::{find_mems, MatchReport, MatchStats};
use crate::oracle::{brute_force_mems, OracleConfig};
use crate::output::write_report;
use crate::sampling::{
    build_index_with, ensure_indexable, select_params, KmerHasher, MatchParams, MixHasher,
    Xxh3Hasher, DEFAULT_HASH_BITS, DEFAULT_KMER_LEN, MAX_HASH_BITS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HashChoice {
    /// Multiply-rotate fold with a 64-bit finalizer.
    Mix,
    /// xxh3-64.
    Xxh3,
}

/// Finds maximal exact matches between a reference and a query genome.
#[derive(Debug, Clone, Parser)]
#[command(name = "copmem", version)]
pub struct CliConfig {
    /// Reference multi-FASTA (indexed).
    pub ref_path: PathBuf,

    /// Query multi-FASTA (scanned).
    pub query_path: PathBuf,

    /// Output file for the match list.
    #[arg(short = 'o', value_name = "FILE")]
    pub output_path: PathBuf,

    /// Minimum match length L.
    #[arg(short = 'l', default_value_t = 100)]
    pub min_length: usize,

    /// Seed length K.
    #[arg(long = "kmer", default_value_t = DEFAULT_KMER_LEN)]
    pub kmer: usize,

    /// Hash table width in bits (2^H slots).
    #[arg(
        long = "hash-bits",
        default_value_t = DEFAULT_HASH_BITS,
        value_parser = clap::value_parser!(u32).range(1..=MAX_HASH_BITS as i64)
    )]
    pub hash_bits: u32,

    /// Hash function used to bucket k-mers.
    #[arg(long = "hash", value_enum, default_value_t = HashChoice::Mix)]
    pub hash: HashChoice,

    /// Print per-phase timings, counters and the slot occupancy histogram.
    #[arg(short = 'v')]
    pub verbose: bool,

    /// Use the brute-force diagonal scan instead of the sampled index.
    #[arg(long = "oracle", hide = true)]
    pub oracle: bool,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub params: MatchParams,
    pub mem_count: usize,
    pub stats: MatchStats,
    pub phases: Vec<(&'static str, Duration)>,
}

/// Runs the whole pipeline. Timing lines go to `stdout`; matches go only to
/// the `-o` file.
pub fn run<W: Write>(config: &CliConfig, mut stdout: W) -> Result<RunSummary> {
    let start = Instant::now();
    let params = select_params(config.min_length, config.kmer, config.hash_bits)?;
    let mut out = BufWriter::new(create(&config.output_path)?);
    let mut phases = Vec::new();

    let t = Instant::now();
    let reference = load_fasta(&config.ref_path)?;
    ensure_indexable(reference.total_length())?;
    phases.push(("load_reference", t.elapsed()));

    let t = Instant::now();
    let query = load_fasta(&config.query_path)?;
    ensure_indexable(query.total_length())?;
    phases.push(("load_query", t.elapsed()));

    let mut histogram = None;
    let report = if config.oracle {
        let t = Instant::now();
        let mems = brute_force_mems(
            &reference,
            &query,
            params.min_len(),
            &OracleConfig::default(),
        )?;
        phases.push(("oracle", t.elapsed()));
        MatchReport {
            mems,
            stats: MatchStats::default(),
        }
    } else {
        let hist = config.verbose.then_some(&mut histogram);
        match config.hash {
            HashChoice::Mix => search(&reference, &query, &params, MixHasher, &mut phases, hist)?,
            HashChoice::Xxh3 => search(&reference, &query, &params, Xxh3Hasher, &mut phases, hist)?,
        }
    };

    let t = Instant::now();
    let write_err = |source| Error::Write {
        path: config.output_path.clone(),
        source,
    };
    write_report(&report.mems, &reference, &query, &mut out).map_err(write_err)?;
    out.into_inner()
        .map_err(|e| write_err(e.into_error()))?
        .sync_all()
        .map_err(write_err)?;
    phases.push(("write_output", t.elapsed()));
    phases.push(("total", start.elapsed()));

    print_summary(
        &mut stdout,
        config,
        &params,
        &report,
        &phases,
        histogram.as_ref(),
    )
    .map_err(|source| Error::Write {
        path: PathBuf::from("<stdout>"),
        source,
    })?;

    Ok(RunSummary {
        params,
        mem_count: report.mems.len(),
        stats: report.stats,
        phases,
    })
}

fn search<H: KmerHasher>(
    reference: &SequenceSet,
    query: &SequenceSet,
    params: &MatchParams,
    hasher: H,
    phases: &mut Vec<(&'static str, Duration)>,
    histogram: Option<&mut Option<Vec<(usize, usize)>>>,
) -> Result<MatchReport> {
    let t = Instant::now();
    let index = build_index_with(reference, params, hasher)?;
    phases.push(("build_index", t.elapsed()));
    if let Some(h) = histogram {
        *h = Some(index.occupancy_histogram().into_iter().collect());
    }
    let t = Instant::now();
    let report = find_mems(reference, query, &index, params)?;
    phases.push(("find_mems", t.elapsed()));
    Ok(report)
}

fn print_summary<W: Write>(
    out: &mut W,
    config: &CliConfig,
    params: &MatchParams,
    report: &MatchReport,
    phases: &[(&str, Duration)],
    histogram: Option<&Vec<(usize, usize)>>,
) -> std::io::Result<()> {
    if !config.verbose {
        let total = phases.last().map_or(0.0, |p| p.1.as_secs_f64());
        writeln!(out, "total\t{total:.3}")?;
        writeln!(out, "mems\t{}", report.mems.len())?;
        return Ok(());
    }
    writeln!(out, "# {params}")?;
    for (phase, d) in phases {
        writeln!(out, "{phase}\t{:.3}", d.as_secs_f64())?;
    }
    let s = &report.stats;
    for (name, v) in [
        ("query_probes", s.query_probes),
        ("hash_hits", s.hash_hits),
        ("verified_seeds", s.verified_seeds),
        ("extensions", s.extensions),
        ("redundant_seeds", s.redundant_seeds),
        ("duplicates_suppressed", s.duplicates_suppressed),
        ("mems", report.mems.len() as u64),
    ] {
        writeln!(out, "{name}\t{v}")?;
    }
    if let Some(hist) = histogram {
        writeln!(out, "# slot_count\tfrequency")?;
        for (size, slots) in hist {
            writeln!(out, "{size}\t{slots}")?;
        }
    }
    Ok(())
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::Write {
        path: path.to_path_buf(),
        source,
    })
}
