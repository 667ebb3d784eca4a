//! Multiway alignment scores, alignment spectra and the maximal alignment curve.
//!
//! A spectrum scores every topic subset of order `2..=max_order`. Scoring a
//! subset `S` needs the consensus partition of each `S \ {t}`, so subsets are
//! processed level by level: level `k` is scored against the cached level
//! `k - 1`, and `C(S)` itself is obtained by refining the cached consensus of
//! `S` minus its last topic. Only two levels are alive at a time.

use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{invalid, Error, Result};
use crate::info::{
    cell_xlnx, entropy, mi_tables, nmi, similarity_parts, EmiMemo, LogTables, Marginal,
    NormalizationKind, ScoreKind,
};
use crate::null::{NullOptions, NullStats};
use crate::par::map_indexed;
use crate::partition::{
    consensus_of_columns, contingency_unchecked, for_each_cell, OpinionMatrix, Partition,
};

/// Default cap on the number of subsets a spectrum may touch.
pub const DEFAULT_BUDGET_CAP: u128 = 1_000_000;

/// `|A(base)|` below this makes a relative change undefined.
pub const DELTA_BASE_TOL: f64 = 1e-9;

/// Precomputed state for scoring partitions of one population size.
pub(crate) struct Scorer {
    tables: LogTables,
    score: ScoreKind,
    norm: NormalizationKind,
    memo: Option<EmiMemo>,
}

impl Scorer {
    pub(crate) fn new(n: usize, score: ScoreKind, norm: NormalizationKind) -> Self {
        Self { tables: LogTables::new(n), score, norm, memo: None }
    }

    /// Scorer for many similarities whose first argument has the group
    /// sizes of some topic of `matrix` (permuted copies included).
    pub(crate) fn for_matrix(matrix: &OpinionMatrix, score: ScoreKind, norm: NormalizationKind) -> Self {
        let mut s = Self::new(matrix.n(), score, norm);
        if score == ScoreKind::Ami {
            let sizes = (0..matrix.m()).flat_map(|t| matrix.column(t).sizes().iter().copied());
            s.memo = Some(EmiMemo::new(&s.tables, matrix.n(), sizes));
        }
        s
    }

    pub(crate) fn marginal(&self, p: &Partition) -> Marginal {
        Marginal::new(&self.tables, p.sizes(), p.n(), self.score)
    }

    pub(crate) fn similarity(&self, topic: &Partition, consensus: &Partition) -> f64 {
        self.similarity_marginals(topic, &self.marginal(topic), consensus, &self.marginal(consensus))
    }

    /// Similarity with both marginal terms supplied by the caller.
    pub(crate) fn similarity_marginals(
        &self,
        topic: &Partition,
        tm: &Marginal,
        consensus: &Partition,
        cm: &Marginal,
    ) -> f64 {
        let mut cells = 0.0;
        for_each_cell(topic, consensus, |_, _, c| cells += cell_xlnx(&self.tables, c));
        similarity_parts(&self.tables, topic.n(), cells, tm, cm, self.score, self.norm, self.memo.as_ref())
    }

    /// Mean similarity over `columns`, with complements built from scratch.
    pub(crate) fn alignment(&self, columns: &[&Partition]) -> f64 {
        let k = columns.len();
        let mut rest: Vec<&Partition> = Vec::with_capacity(k - 1);
        let mut sum = 0.0;
        for i in 0..k {
            rest.clear();
            rest.extend(columns.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| *p));
            sum += self.similarity(columns[i], &consensus_of_columns(&rest));
        }
        sum / k as f64
    }
}

fn resolve_multi<S: AsRef<str>>(matrix: &OpinionMatrix, subset: &[S]) -> Result<Vec<usize>> {
    let idx = matrix.resolve_subset(subset)?;
    if idx.len() < 2 {
        return Err(invalid("alignment needs at least two topics"));
    }
    Ok(idx)
}

fn columns_of<'a>(matrix: &'a OpinionMatrix, idx: &[usize]) -> Vec<&'a Partition> {
    idx.iter().map(|&t| matrix.column(t)).collect()
}

/// Multiway alignment: the mean similarity between each topic and the
/// consensus partition of the remaining topics in `subset`.
pub fn multiway_alignment<S: AsRef<str>>(
    matrix: &OpinionMatrix,
    subset: &[S],
    score: ScoreKind,
    norm: NormalizationKind,
) -> Result<f64> {
    let idx = resolve_multi(matrix, subset)?;
    let scorer = Scorer::new(matrix.n(), score, norm);
    Ok(scorer.alignment(&columns_of(matrix, &idx)))
}

/// Plain pairwise similarity `S(a, b)` between two topics.
pub fn pairwise_score(
    matrix: &OpinionMatrix,
    a: &str,
    b: &str,
    score: ScoreKind,
    norm: NormalizationKind,
) -> Result<f64> {
    let (ia, ib) = (matrix.topic_index(a)?, matrix.topic_index(b)?);
    let scorer = Scorer::new(matrix.n(), score, norm);
    Ok(scorer.similarity(matrix.column(ia), matrix.column(ib)))
}

/// Alternative score comparing each topic with the consensus of the whole
/// subset: `(1/k) * sum NMI(C(subset), T_i)`.
pub fn multiway_alignment_full<S: AsRef<str>>(
    matrix: &OpinionMatrix,
    subset: &[S],
    norm: NormalizationKind,
) -> Result<f64> {
    let idx = resolve_multi(matrix, subset)?;
    let cols = columns_of(matrix, &idx);
    let full = consensus_of_columns(&cols);
    let sum: f64 = cols.iter().map(|t| nmi(&contingency_unchecked(&full, t), norm)).sum();
    Ok(sum / idx.len() as f64)
}

/// `A*` through its closed form `(1/k) * sum 2 H(T_i) / (H(T_i) + H(C))`
/// (arithmetic normalization); single-group topics contribute 1 when C is
/// also a single group.
pub fn multiway_alignment_full_closed_form<S: AsRef<str>>(
    matrix: &OpinionMatrix,
    subset: &[S],
) -> Result<f64> {
    let idx = resolve_multi(matrix, subset)?;
    let cols = columns_of(matrix, &idx);
    let hc = entropy(&consensus_of_columns(&cols));
    let sum: f64 = cols
        .iter()
        .map(|t| {
            let ht = entropy(t);
            match (ht == 0.0, hc == 0.0) {
                (true, true) => 1.0,
                (true, false) => 0.0,
                _ => 2.0 * ht / (ht + hc),
            }
        })
        .sum();
    Ok(sum / idx.len() as f64)
}

/// Score of one topic subset.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetScore {
    /// Topic names, sorted.
    pub subset: Vec<String>,
    pub order: usize,
    pub score: f64,
    pub score_kind: ScoreKind,
    pub norm: NormalizationKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    /// Highest subset order; `None` means all topics.
    pub max_order: Option<usize>,
    pub score: ScoreKind,
    pub norm: NormalizationKind,
    pub budget_cap: u128,
    /// Disable to rebuild every consensus partition from scratch.
    pub lattice_cache: bool,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            max_order: None,
            score: ScoreKind::Ami,
            norm: NormalizationKind::Arithmetic,
            budget_cap: DEFAULT_BUDGET_CAP,
            lattice_cache: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMeta {
    pub score_kind: ScoreKind,
    pub norm: NormalizationKind,
    pub max_order: usize,
    pub null: Option<NullOptions>,
}

/// Every subset score of a spectrum in canonical order (by order, then
/// lexicographically by sorted topic names), with optional null statistics
/// aligned index by index.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub entries: Vec<SubsetScore>,
    pub null: Option<Vec<NullStats>>,
    pub meta: SpectrumMeta,
}

impl SpectrumReport {
    /// Whether entry `i` exceeds the upper null percentile.
    pub fn significant(&self, i: usize) -> Option<bool> {
        self.null.as_ref().map(|n| self.entries[i].score > n[i].upper)
    }
}

fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}

/// Number of subsets with order in `2..=max_order`.
pub fn subset_count(m: usize, max_order: usize) -> u128 {
    (2..=max_order.min(m)).map(|k| binomial(m, k)).sum()
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub(crate) fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > m {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        while i > 0 && c[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

fn mask_of(c: &[usize]) -> u64 {
    c.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

pub(crate) fn check_budget(m: usize, max_order: usize, cap: u128) -> Result<()> {
    if m > 64 {
        return Err(invalid("spectra support at most 64 topics"));
    }
    let count = subset_count(m, max_order);
    if count > cap {
        return Err(Error::BudgetExceeded { count, cap });
    }
    Ok(())
}

/// Scores for every subset of `columns` (positions, already in canonical
/// order) of order `2..=max_order`.
pub(crate) fn spectrum_scores(
    columns: &[&Partition],
    max_order: usize,
    scorer: &Scorer,
    cached: bool,
) -> Vec<f64> {
    let m = columns.len();
    let mut out = Vec::with_capacity(subset_count(m, max_order) as usize);
    if !cached {
        for k in 2..=max_order {
            let combos = combinations(m, k);
            out.extend(map_indexed(combos.len(), |ci| {
                let cols: Vec<&Partition> = combos[ci].iter().map(|&t| columns[t]).collect();
                scorer.alignment(&cols)
            }));
        }
        return out;
    }

    // Each cached consensus is scored against up to `m - k + 1` topics, so its
    // marginal terms are kept next to it.
    let topic_marginals: Vec<Marginal> = columns.iter().map(|p| scorer.marginal(p)).collect();
    let mut prev_index: HashMap<u64, usize> = (0..m).map(|t| (1u64 << t, t)).collect();
    let mut prev: Vec<(Partition, Marginal)> =
        columns.iter().zip(&topic_marginals).map(|(&p, mg)| (p.clone(), mg.clone())).collect();
    for k in 2..=max_order {
        let combos = combinations(m, k);
        let build_next = k < max_order;
        let level: Vec<(f64, Option<(Partition, Marginal)>)> = map_indexed(combos.len(), |ci| {
            let c = &combos[ci];
            let mask = mask_of(c);
            let mut sum = 0.0;
            for &t in c {
                let (rest, rm) = &prev[prev_index[&(mask & !(1u64 << t))]];
                sum += scorer.similarity_marginals(columns[t], &topic_marginals[t], rest, rm);
            }
            let next = build_next.then(|| {
                let last = c[k - 1];
                let p = prev[prev_index[&(mask & !(1u64 << last))]].0.refine_unchecked(columns[last]);
                let mg = scorer.marginal(&p);
                (p, mg)
            });
            (sum / k as f64, next)
        });
        let mut parts = Vec::with_capacity(if build_next { combos.len() } else { 0 });
        for (score, part) in level {
            out.push(score);
            if let Some(p) = part {
                parts.push(p);
            }
        }
        if build_next {
            prev_index = combos.iter().enumerate().map(|(i, c)| (mask_of(c), i)).collect();
            prev = parts;
        }
    }
    out
}

/// Canonical subsets (as matrix column indices) of order `2..=max_order`.
pub(crate) fn canonical_subsets(matrix: &OpinionMatrix, max_order: usize) -> Vec<Vec<usize>> {
    let order = matrix.sorted_topic_order();
    (2..=max_order)
        .flat_map(|k| combinations(order.len(), k))
        .map(|c| c.iter().map(|&p| order[p]).collect())
        .collect()
}

pub(crate) fn resolve_max_order(m: usize, max_order: Option<usize>) -> Result<usize> {
    let k = max_order.unwrap_or(m);
    if m < 2 {
        return Err(invalid("spectra need at least two topics"));
    }
    if !(2..=m).contains(&k) {
        return Err(invalid(alloc::format!("max order {k} outside 2..={m}")));
    }
    Ok(k)
}

/// Scores every topic subset with order `2..=max_order`.
pub fn alignment_spectrum(matrix: &OpinionMatrix, opts: &SpectrumOptions) -> Result<SpectrumReport> {
    let max_order = resolve_max_order(matrix.m(), opts.max_order)?;
    check_budget(matrix.m(), max_order, opts.budget_cap)?;
    let scorer = Scorer::for_matrix(matrix, opts.score, opts.norm);
    let order = matrix.sorted_topic_order();
    let columns: Vec<&Partition> = order.iter().map(|&t| matrix.column(t)).collect();
    let scores = spectrum_scores(&columns, max_order, &scorer, opts.lattice_cache);
    let entries = canonical_subsets(matrix, max_order)
        .into_iter()
        .zip(scores)
        .map(|(idx, score)| SubsetScore {
            order: idx.len(),
            subset: matrix.subset_names(&idx),
            score,
            score_kind: opts.score,
            norm: opts.norm,
        })
        .collect();
    Ok(SpectrumReport {
        entries,
        null: None,
        meta: SpectrumMeta { score_kind: opts.score, norm: opts.norm, max_order, null: None },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub order: usize,
    pub subset: Vec<String>,
    pub score: f64,
}

/// Highest score per order plus the normalized area under the curve.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalCurve {
    pub points: Vec<CurvePoint>,
    pub auc: f64,
}

/// Trapezoidal area over consecutive orders divided by the number of unit
/// intervals; a single point is its own area.
pub fn area_under_curve(scores: &[f64]) -> f64 {
    match scores {
        [] => 0.0,
        [only] => *only,
        _ => {
            let area: f64 = scores.windows(2).map(|w| (w[0] + w[1]) / 2.0).sum();
            area / (scores.len() - 1) as f64
        }
    }
}

/// Maximal alignment curve from the entries of a spectrum. Ties keep the
/// first (lexicographically smallest) subset.
pub fn curve_from_entries(entries: &[SubsetScore]) -> MaximalCurve {
    let mut points: Vec<CurvePoint> = Vec::new();
    for e in entries {
        match points.last_mut() {
            Some(p) if p.order == e.order => {
                if e.score > p.score {
                    p.score = e.score;
                    p.subset = e.subset.clone();
                }
            }
            _ => points.push(CurvePoint { order: e.order, subset: e.subset.clone(), score: e.score }),
        }
    }
    let scores: Vec<f64> = points.iter().map(|p| p.score).collect();
    MaximalCurve { auc: area_under_curve(&scores), points }
}

/// Best subset and score for each order `2..=m`.
pub fn maximal_alignment_curve(
    matrix: &OpinionMatrix,
    score: ScoreKind,
    norm: NormalizationKind,
    budget_cap: u128,
) -> Result<MaximalCurve> {
    let report = alignment_spectrum(
        matrix,
        &SpectrumOptions { max_order: None, score, norm, budget_cap, lattice_cache: true },
    )?;
    Ok(curve_from_entries(&report.entries))
}

/// Relative change `(A(base + t) - A(base)) / A(base)` when topic `added`
/// joins `base`.
pub fn topic_addition_delta<S: AsRef<str>>(
    matrix: &OpinionMatrix,
    base: &[S],
    added: &str,
    score: ScoreKind,
    norm: NormalizationKind,
) -> Result<f64> {
    let idx = resolve_multi(matrix, base)?;
    let t = matrix.topic_index(added)?;
    if idx.contains(&t) {
        return Err(invalid(alloc::format!("topic `{added}` is already in the base subset")));
    }
    let scorer = Scorer::new(matrix.n(), score, norm);
    let (_, _, delta) = delta_of(matrix, &scorer, &idx, t);
    delta
}

fn delta_of(
    matrix: &OpinionMatrix,
    scorer: &Scorer,
    base: &[usize],
    added: usize,
) -> (f64, f64, Result<f64>) {
    let before = scorer.alignment(&columns_of(matrix, base));
    let mut ext: Vec<usize> = base.to_vec();
    ext.push(added);
    let ext = sort_by_name(matrix, ext);
    let after = scorer.alignment(&columns_of(matrix, &ext));
    let delta = if before.abs() < DELTA_BASE_TOL {
        Err(Error::DegenerateBase(before))
    } else {
        Ok((after - before) / before)
    };
    (before, after, delta)
}

fn sort_by_name(matrix: &OpinionMatrix, mut idx: Vec<usize>) -> Vec<usize> {
    idx.sort_by(|&a, &b| matrix.topics()[a].cmp(&matrix.topics()[b]));
    idx
}

/// One row of a batch topic-addition analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaRecord {
    pub base: Vec<String>,
    pub added: String,
    pub order: usize,
    pub base_score: f64,
    pub extended_score: f64,
    /// `None` when the base score is too close to zero.
    pub delta: Option<f64>,
}

/// Topic-addition deltas for every base subset of the other topics with
/// order `2..=max_base_order`, in canonical order.
pub fn topic_addition_deltas(
    matrix: &OpinionMatrix,
    added: &str,
    max_base_order: usize,
    score: ScoreKind,
    norm: NormalizationKind,
    budget_cap: u128,
) -> Result<Vec<DeltaRecord>> {
    let t = matrix.topic_index(added)?;
    let others: Vec<usize> =
        matrix.sorted_topic_order().into_iter().filter(|&i| i != t).collect();
    let top = max_base_order.min(others.len());
    if top < 2 {
        return Err(invalid("need at least two other topics for a base subset"));
    }
    check_budget(others.len(), top, budget_cap)?;
    let bases: Vec<Vec<usize>> = (2..=top)
        .flat_map(|k| combinations(others.len(), k))
        .map(|c| c.iter().map(|&p| others[p]).collect())
        .collect();
    let scorer = Scorer::for_matrix(matrix, score, norm);
    let rows = map_indexed(bases.len(), |i| delta_of(matrix, &scorer, &bases[i], t));
    Ok(bases
        .iter()
        .zip(rows)
        .map(|(b, (before, after, delta))| DeltaRecord {
            base: matrix.subset_names(b),
            added: added.into(),
            order: b.len(),
            base_score: before,
            extended_score: after,
            delta: delta.ok(),
        })
        .collect())
}

/// Multiway alignment with unnormalized mutual information as the similarity.
pub fn multiway_mutual_information<S: AsRef<str>>(
    matrix: &OpinionMatrix,
    subset: &[S],
) -> Result<f64> {
    let idx = resolve_multi(matrix, subset)?;
    let tables = LogTables::new(matrix.n());
    Ok(a_mi(matrix, &tables, &idx))
}

fn a_mi(matrix: &OpinionMatrix, tables: &LogTables, idx: &[usize]) -> f64 {
    let cols = columns_of(matrix, idx);
    let mut rest: Vec<&Partition> = Vec::with_capacity(cols.len() - 1);
    let mut sum = 0.0;
    for i in 0..cols.len() {
        rest.clear();
        rest.extend(cols.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| *p));
        let c = consensus_of_columns(&rest);
        sum += mi_tables(tables, &contingency_unchecked(cols[i], &c));
    }
    sum / cols.len() as f64
}

/// Recursive average of lower-order `A_MI` terms over the leave-one-out
/// subsets of `idx`.
fn lower_order_average(matrix: &OpinionMatrix, tables: &LogTables, idx: &[usize]) -> f64 {
    if idx.len() <= 2 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut sub = Vec::with_capacity(idx.len() - 1);
    for skip in 0..idx.len() {
        sub.clear();
        sub.extend(idx.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &t)| t));
        sum += a_mi(matrix, tables, &sub) + lower_order_average(matrix, tables, &sub);
    }
    sum / idx.len() as f64
}

/// Absolute gap between `A_MI` computed directly and through its expansion
/// `sum H(T_i) - H(T_1..T_k) - avg_k`, where `avg_k` recursively averages the
/// lower-order alignments. Supports `2 <= k <= 6`.
pub fn mi_decomposition_residual<S: AsRef<str>>(matrix: &OpinionMatrix, subset: &[S]) -> Result<f64> {
    let idx = resolve_multi(matrix, subset)?;
    if idx.len() > 6 {
        return Err(invalid("decomposition check supports at most 6 topics"));
    }
    let tables = LogTables::new(matrix.n());
    let direct = a_mi(matrix, &tables, &idx);
    let cols = columns_of(matrix, &idx);
    let marginal: f64 = cols.iter().map(|c| entropy(c)).sum();
    let joint = entropy(&consensus_of_columns(&cols));
    let expanded = marginal - joint - lower_order_average(matrix, &tables, &idx);
    Ok((direct - expanded).abs())
}
