//! Permutation null model.
//!
//! Every topic column is shuffled independently, which keeps the number and
//! sizes of its opinion groups while destroying any association between
//! topics. Replicate `r` permutes topic `t` with a ChaCha8 stream seeded by
//! `derive_seed(derive_seed(master, r), t)`, so results depend only on the
//! master seed and never on scheduling.

use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alignment::{
    alignment_spectrum, resolve_max_order, spectrum_scores, Scorer, SpectrumOptions,
    SpectrumReport,
};
use crate::error::{invalid, Error, Result};
use crate::info::{NormalizationKind, ScoreKind};
use crate::par::map_indexed;
use crate::partition::{OpinionMatrix, Partition};

/// `<A_null>` within this distance of one makes the net score undefined.
pub const NULL_MEAN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullOptions {
    pub replicates: usize,
    pub alpha: f64,
    pub seed: u64,
    /// Smallest replicate count accepted for percentile estimation.
    pub min_replicates: usize,
}

impl Default for NullOptions {
    fn default() -> Self {
        Self { replicates: 1000, alpha: 0.05, seed: 0, min_replicates: 100 }
    }
}

impl NullOptions {
    fn validate(&self) -> Result<()> {
        if self.replicates < 1 || self.replicates < self.min_replicates {
            return Err(invalid(alloc::format!(
                "{} replicates requested, at least {} required",
                self.replicates,
                self.min_replicates.max(1)
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(invalid(alloc::format!("alpha {} outside (0, 1)", self.alpha)));
        }
        Ok(())
    }
}

/// Summary of the null scores of one subset.
#[derive(Debug, Clone, PartialEq)]
pub struct NullStats {
    pub subset: Vec<String>,
    pub replicates: usize,
    pub mean: f64,
    /// Percentile at `alpha / 2`.
    pub lower: f64,
    pub median: f64,
    /// Percentile at `1 - alpha / 2`.
    pub upper: f64,
    pub alpha: f64,
    pub master_seed: u64,
}

/// Observed score against its null.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetScore {
    pub raw: f64,
    pub null_mean: f64,
    pub net: f64,
    pub significant: bool,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for stream `stream` of `master`.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    splitmix64(master ^ splitmix64(stream))
}

fn permutation(n: usize, seed: u64, topic: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, topic as u64));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    order
}

fn permuted_column(matrix: &OpinionMatrix, topic: usize, seed: u64) -> (Partition, Vec<String>) {
    matrix.gather_column(topic, &permutation(matrix.n(), seed, topic))
}

fn permuted_partition(matrix: &OpinionMatrix, topic: usize, seed: u64) -> Partition {
    let col = matrix.column(topic);
    let raw: Vec<u32> = permutation(matrix.n(), seed, topic).iter().map(|&r| col.labels()[r]).collect();
    Partition::from_bounded(&raw, col.group_count())
}

/// One null replicate: each column permuted independently.
pub fn null_replicate(matrix: &OpinionMatrix, seed: u64) -> OpinionMatrix {
    let cols = (0..matrix.m()).map(|t| permuted_column(matrix, t, seed)).collect();
    matrix.replace_columns(cols)
}

/// Nearest-rank percentile of an ascending slice, `0 < p <= 1`.
pub fn percentile_nearest_rank(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let rank = libm::ceil(p * n as f64 - 1e-9).max(1.0) as usize;
    sorted[rank.min(n) - 1]
}

fn summarize(subset: Vec<String>, scores: &[f64], opts: &NullOptions) -> NullStats {
    let mean = scores.iter().sum::<f64>() / scores.len() as f64;
    let mut sorted = scores.to_vec();
    sorted.sort_by(f64::total_cmp);
    NullStats {
        subset,
        replicates: scores.len(),
        mean,
        lower: percentile_nearest_rank(&sorted, opts.alpha / 2.0),
        median: percentile_nearest_rank(&sorted, 0.5),
        upper: percentile_nearest_rank(&sorted, 1.0 - opts.alpha / 2.0),
        alpha: opts.alpha,
        master_seed: opts.seed,
    }
}

/// Raw null scores of `subset`, one per replicate in replicate order.
pub fn null_scores<S: AsRef<str>>(
    matrix: &OpinionMatrix,
    subset: &[S],
    score: ScoreKind,
    norm: NormalizationKind,
    opts: &NullOptions,
) -> Result<Vec<f64>> {
    opts.validate()?;
    let idx = matrix.resolve_subset(subset)?;
    if idx.len() < 2 {
        return Err(invalid("alignment needs at least two topics"));
    }
    let scorer = Scorer::for_matrix(matrix, score, norm);
    Ok(map_indexed(opts.replicates, |r| {
        let seed = derive_seed(opts.seed, r as u64);
        let cols: Vec<Partition> = idx.iter().map(|&t| permuted_partition(matrix, t, seed)).collect();
        let refs: Vec<&Partition> = cols.iter().collect();
        scorer.alignment(&refs)
    }))
}

/// Null mean and percentiles of the multiway alignment of `subset`.
pub fn null_distribution<S: AsRef<str>>(
    matrix: &OpinionMatrix,
    subset: &[S],
    score: ScoreKind,
    norm: NormalizationKind,
    opts: &NullOptions,
) -> Result<NullStats> {
    let scores = null_scores(matrix, subset, score, norm, opts)?;
    let idx = matrix.resolve_subset(subset)?;
    Ok(summarize(matrix.subset_names(&idx), &scores, opts))
}

/// `(raw - mean) / (1 - mean)`.
pub fn net_score(raw: f64, null_mean: f64) -> Result<f64> {
    if (1.0 - null_mean).abs() < NULL_MEAN_TOL {
        return Err(Error::DegenerateNull(null_mean));
    }
    Ok((raw - null_mean) / (1.0 - null_mean))
}

/// Observed alignment, its null mean, the net score, and whether the
/// observation exceeds the upper null percentile.
pub fn net_alignment<S: AsRef<str>>(
    matrix: &OpinionMatrix,
    subset: &[S],
    score: ScoreKind,
    norm: NormalizationKind,
    opts: &NullOptions,
) -> Result<(NetScore, NullStats)> {
    let raw = crate::alignment::multiway_alignment(matrix, subset, score, norm)?;
    let stats = null_distribution(matrix, subset, score, norm, opts)?;
    let net = net_score(raw, stats.mean)?;
    Ok((
        NetScore { raw, null_mean: stats.mean, net, significant: raw > stats.upper },
        stats,
    ))
}

/// Spectrum plus per-subset null statistics. Each replicate recomputes the
/// whole spectrum on a permuted matrix with the lattice cache.
pub fn spectrum_with_null(
    matrix: &OpinionMatrix,
    spectrum: &SpectrumOptions,
    opts: &NullOptions,
) -> Result<SpectrumReport> {
    opts.validate()?;
    let mut report = alignment_spectrum(matrix, spectrum)?;
    let max_order = resolve_max_order(matrix.m(), spectrum.max_order)?;
    let scorer = Scorer::for_matrix(matrix, spectrum.score, spectrum.norm);
    let order = matrix.sorted_topic_order();
    let per_replicate: Vec<Vec<f64>> = map_indexed(opts.replicates, |r| {
        let seed = derive_seed(opts.seed, r as u64);
        let cols: Vec<Partition> = order.iter().map(|&t| permuted_partition(matrix, t, seed)).collect();
        let refs: Vec<&Partition> = cols.iter().collect();
        spectrum_scores(&refs, max_order, &scorer, true)
    });
    let mut column = Vec::with_capacity(opts.replicates);
    let stats = report
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            column.clear();
            column.extend(per_replicate.iter().map(|rep| rep[i]));
            summarize(e.subset.clone(), &column, opts)
        })
        .collect();
    report.null = Some(stats);
    report.meta.null = Some(*opts);
    Ok(report)
}
