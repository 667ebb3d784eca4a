//! Entropy and the mutual-information family, in nats.
//!
//! Entropies and MI are evaluated from integer counts as
//! `(N ln N - sum c ln c) / N`. Using one expression everywhere makes the MI
//! of two identical partitions bit-equal to their entropy, so NMI and AMI of
//! identical partitions come out as exactly 1.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{invalid, Result};
use crate::partition::{consensus_of, ContingencyTable, OpinionMatrix, Partition};

/// Tolerance used by the degenerate-denominator rule of [`ami`].
pub const AMI_DEGENERATE_TOL: f64 = 1e-12;

/// Which MI upper bound is used as the normalizing denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum NormalizationKind {
    #[default]
    Arithmetic,
    Geometric,
    Max,
}

impl NormalizationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Arithmetic => "arithmetic",
            Self::Geometric => "geometric",
            Self::Max => "max",
        }
    }

    /// Upper bound on MI given the two marginal entropies.
    pub fn bound(self, hu: f64, hv: f64) -> f64 {
        match self {
            Self::Arithmetic => (hu + hv) / 2.0,
            Self::Geometric => libm::sqrt(hu * hv),
            Self::Max => hu.max(hv),
        }
    }
}

impl fmt::Display for NormalizationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormalizationKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arithmetic" => Ok(Self::Arithmetic),
            "geometric" => Ok(Self::Geometric),
            "max" => Ok(Self::Max),
            other => Err(invalid(alloc::format!("unknown normalization `{other}`"))),
        }
    }
}

/// Similarity used inside the multiway score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum ScoreKind {
    Nmi,
    #[default]
    Ami,
}

impl ScoreKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Nmi => "nmi",
            Self::Ami => "ami",
        }
    }
}

impl fmt::Display for ScoreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScoreKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nmi" => Ok(Self::Nmi),
            "ami" => Ok(Self::Ami),
            other => Err(invalid(alloc::format!("unknown score `{other}`"))),
        }
    }
}

/// Natural logs and log-factorials of `0..=n`, shared read-only across
/// every score computed on populations of size `n`.
#[derive(Debug, Clone)]
pub struct LogTables {
    ln: Vec<f64>,
    ln_fact: Vec<f64>,
}

impl LogTables {
    pub fn new(n: usize) -> Self {
        let mut ln = Vec::with_capacity(n + 1);
        let mut ln_fact = Vec::with_capacity(n + 1);
        ln.push(0.0);
        ln_fact.push(0.0);
        for i in 1..=n {
            let l = libm::log(i as f64);
            ln.push(l);
            ln_fact.push(ln_fact[i - 1] + l);
        }
        Self { ln, ln_fact }
    }

    pub fn n(&self) -> usize {
        self.ln.len() - 1
    }
}

fn sum_xlnx(counts: impl Iterator<Item = u32>, ln: &impl Fn(u32) -> f64) -> f64 {
    counts.fold(0.0, |acc, c| acc + c as f64 * ln(c))
}

fn entropy_with(sizes: &[u32], n: usize, ln: impl Fn(u32) -> f64) -> f64 {
    let nf = n as f64;
    let h = (nf * ln(n as u32) - sum_xlnx(sizes.iter().copied(), &ln)) / nf;
    h.max(0.0)
}

fn plain_ln(c: u32) -> f64 {
    libm::log(c as f64)
}

/// Shannon entropy of a partition.
pub fn entropy(p: &Partition) -> f64 {
    entropy_with(p.sizes(), p.n(), plain_ln)
}

/// Shannon entropy of a list of positive group sizes.
pub fn entropy_of_sizes(sizes: &[u32]) -> f64 {
    let n: usize = sizes.iter().map(|&s| s as usize).sum();
    if n == 0 {
        return 0.0;
    }
    entropy_with(sizes, n, plain_ln)
}

fn mi_with(t: &ContingencyTable, ln: impl Fn(u32) -> f64) -> f64 {
    let nf = t.n() as f64;
    let cells = sum_xlnx(t.cells().iter().map(|c| c.count), &ln);
    let rows = sum_xlnx(t.row_marginals().iter().copied(), &ln);
    let cols = sum_xlnx(t.column_marginals().iter().copied(), &ln);
    let mi = ((cells - rows) - cols + nf * ln(t.n() as u32)) / nf;
    mi.max(0.0)
}

/// Mutual information of the two partitions tabulated in `t`.
pub fn mutual_information(t: &ContingencyTable) -> f64 {
    mi_with(t, plain_ln)
}

fn distinct_counts(marginals: &[u32]) -> Vec<(u32, u32)> {
    let mut sorted = marginals.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<(u32, u32)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((value, mult)) if *value == v => *mult += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

fn check_marginals(rows: &[u32], cols: &[u32], n: usize) -> Result<()> {
    if rows.is_empty() || cols.is_empty() {
        return Err(invalid("marginals are empty"));
    }
    if rows.iter().chain(cols).any(|&c| c == 0) {
        return Err(invalid("marginals must be positive"));
    }
    let rs: usize = rows.iter().map(|&c| c as usize).sum();
    let cs: usize = cols.iter().map(|&c| c as usize).sum();
    if rs != n || cs != n {
        return Err(invalid(alloc::format!(
            "marginals sum to {rs} and {cs}, expected {n}"
        )));
    }
    Ok(())
}

/// Expected MI under random permutation of one labeling with both sets of
/// group sizes held fixed (hypergeometric cell counts).
pub fn expected_mutual_information(rows: &[u32], cols: &[u32], n: usize) -> Result<f64> {
    check_marginals(rows, cols, n)?;
    Ok(emi_with(&LogTables::new(n), rows, cols, n))
}

/// EMI with precomputed tables. Cells sharing a marginal pair contribute
/// identically, so the double sum runs over distinct marginal values only.
fn emi_with(tables: &LogTables, rows: &[u32], cols: &[u32], n: usize) -> f64 {
    emi_distinct(tables, &distinct_counts(rows), &distinct_counts(cols), n, None)
}

/// Relative weight below which hypergeometric tail terms are dropped.
const EMI_TAIL_CUTOFF: f64 = 1e-30;

/// Expected contribution of one cell whose row and column sums are `a`, `b`.
fn emi_cell(tables: &LogTables, a: usize, b: usize, n: usize) -> f64 {
    let lf = &tables.ln_fact;
    let ln = &tables.ln;
    let nf = n as f64;
    let ln_n = ln[n];
    let lo = (a + b).saturating_sub(n).max(1);
    let hi = a.min(b);
    if lo > hi {
        return 0.0;
    }
    let base = lf[a] + lf[b] + lf[n - a] + lf[n - b] - lf[n];
    let ln_ab = ln[a] + ln[b];
    let term = |w: usize| (w as f64 / nf) * (ln_n + ln[w] - ln_ab);
    // Hypergeometric weights are unimodal: one exp at the mode, then ratio
    // steps outwards until the weight is negligible.
    let mode = ((a + 1) * (b + 1) / (n + 2)).clamp(lo, hi);
    let p0 = libm::exp(base - lf[mode] - lf[a - mode] - lf[b - mode] - lf[n + mode - a - b]);
    let floor = p0 * EMI_TAIL_CUTOFF;
    let mut cell = term(mode) * p0;
    let mut p = p0;
    for w in mode..hi {
        p *= ((a - w) as f64 * (b - w) as f64) / ((w + 1) as f64 * (n + w + 1 - a - b) as f64);
        if p < floor {
            break;
        }
        cell += term(w + 1) * p;
    }
    p = p0;
    for w in (lo + 1..=mode).rev() {
        p *= (w as f64 * (n + w - a - b) as f64) / ((a - w + 1) as f64 * (b - w + 1) as f64);
        if p < floor {
            break;
        }
        cell += term(w - 1) * p;
    }
    cell
}

/// `emi_cell(a, b)` for every `b in 0..=n`, for a fixed set of row sums `a`.
#[derive(Debug, Clone, Default)]
pub(crate) struct EmiMemo {
    rows: Vec<(u32, Vec<f64>)>,
}

impl EmiMemo {
    pub(crate) fn new(tables: &LogTables, n: usize, row_sums: impl IntoIterator<Item = u32>) -> Self {
        let mut keys: Vec<u32> = row_sums.into_iter().collect();
        keys.sort_unstable();
        keys.dedup();
        let rows = keys
            .into_iter()
            .map(|a| (a, (0..=n).map(|b| emi_cell(tables, a as usize, b, n)).collect()))
            .collect();
        Self { rows }
    }

    fn row(&self, a: u32) -> Option<&[f64]> {
        self.rows.binary_search_by_key(&a, |r| r.0).ok().map(|i| self.rows[i].1.as_slice())
    }
}

fn emi_distinct(
    tables: &LogTables,
    rows: &[(u32, u32)],
    cols: &[(u32, u32)],
    n: usize,
    memo: Option<&EmiMemo>,
) -> f64 {
    debug_assert!(tables.n() >= n);
    let mut total = 0.0;
    for &(a, ma) in rows {
        let row = memo.and_then(|m| m.row(a));
        for &(b, mb) in cols {
            let cell = match row {
                Some(r) => r[b as usize],
                None => emi_cell(tables, a as usize, b as usize, n),
            };
            total += (ma as f64) * (mb as f64) * cell;
        }
    }
    total.max(0.0)
}

/// Normalized mutual information. Both entropies zero gives 1, exactly one
/// zero gives 0.
pub fn nmi(t: &ContingencyTable, norm: NormalizationKind) -> f64 {
    nmi_with(t, norm, plain_ln)
}

fn marginal_entropies(t: &ContingencyTable, ln: &impl Fn(u32) -> f64) -> (f64, f64) {
    (
        entropy_with(t.row_marginals(), t.n(), ln),
        entropy_with(t.column_marginals(), t.n(), ln),
    )
}

fn nmi_with(t: &ContingencyTable, norm: NormalizationKind, ln: impl Fn(u32) -> f64) -> f64 {
    let (hu, hv) = marginal_entropies(t, &ln);
    if hu == 0.0 && hv == 0.0 {
        return 1.0;
    }
    if hu == 0.0 || hv == 0.0 {
        return 0.0;
    }
    let denom = norm.bound(hu, hv);
    (mi_with(t, ln) / denom).clamp(0.0, 1.0)
}

/// Adjusted mutual information, `(MI - EMI) / (bound - EMI)`.
///
/// Negative values are returned unclamped. When the denominator is within
/// [`AMI_DEGENERATE_TOL`] of zero the result is 1 if MI attains the bound and
/// 0 otherwise; a single-group partition against a non-trivial one scores 0.
pub fn ami(t: &ContingencyTable, norm: NormalizationKind) -> f64 {
    ami_with(&LogTables::new(t.n()), t, norm)
}

pub(crate) fn ami_with(tables: &LogTables, t: &ContingencyTable, norm: NormalizationKind) -> f64 {
    similarity_with(tables, t, ScoreKind::Ami, norm)
}

/// Per-partition terms of a score: `sum s ln s` over group sizes, the
/// entropy, and (for AMI) the distinct group sizes with multiplicities.
/// Computed once per partition and reused against many partners.
#[derive(Debug, Clone)]
pub(crate) struct Marginal {
    xlnx: f64,
    entropy: f64,
    distinct: Vec<(u32, u32)>,
}

impl Marginal {
    pub(crate) fn new(tables: &LogTables, sizes: &[u32], n: usize, score: ScoreKind) -> Self {
        let ln = |c: u32| tables.ln[c as usize];
        let xlnx = sum_xlnx(sizes.iter().copied(), &ln);
        let nf = n as f64;
        let entropy = ((nf * ln(n as u32) - xlnx) / nf).max(0.0);
        let distinct = match score {
            ScoreKind::Ami => distinct_counts(sizes),
            ScoreKind::Nmi => Vec::new(),
        };
        Self { xlnx, entropy, distinct }
    }
}

/// Score from the cell term `sum c ln c` of a joint table and the two
/// marginals.
#[allow(clippy::too_many_arguments)]
pub(crate) fn similarity_parts(
    tables: &LogTables,
    n: usize,
    cells_xlnx: f64,
    u: &Marginal,
    v: &Marginal,
    score: ScoreKind,
    norm: NormalizationKind,
    memo: Option<&EmiMemo>,
) -> f64 {
    let (hu, hv) = (u.entropy, v.entropy);
    if hu == 0.0 && hv == 0.0 {
        return 1.0;
    }
    if hu == 0.0 || hv == 0.0 {
        return 0.0;
    }
    let nf = n as f64;
    let mi = (((cells_xlnx - u.xlnx) - v.xlnx + nf * tables.ln[n]) / nf).max(0.0);
    let bound = norm.bound(hu, hv);
    match score {
        ScoreKind::Nmi => (mi / bound).clamp(0.0, 1.0),
        ScoreKind::Ami => {
            let emi = emi_distinct(tables, &u.distinct, &v.distinct, n, memo);
            let denom = bound - emi;
            if denom.abs() < AMI_DEGENERATE_TOL {
                return if (mi - bound).abs() < AMI_DEGENERATE_TOL { 1.0 } else { 0.0 };
            }
            (mi - emi) / denom
        }
    }
}

/// Score of `t` under the chosen similarity, reusing precomputed tables.
pub(crate) fn similarity_with(
    tables: &LogTables,
    t: &ContingencyTable,
    score: ScoreKind,
    norm: NormalizationKind,
) -> f64 {
    let n = t.n();
    let u = Marginal::new(tables, t.row_marginals(), n, score);
    let v = Marginal::new(tables, t.column_marginals(), n, score);
    let cells = sum_xlnx(t.cells().iter().map(|c| c.count), &|c: u32| tables.ln[c as usize]);
    similarity_parts(tables, n, cells, &u, &v, score, norm, None)
}

pub(crate) fn cell_xlnx(tables: &LogTables, c: u32) -> f64 {
    c as f64 * tables.ln[c as usize]
}

pub(crate) fn mi_tables(tables: &LogTables, t: &ContingencyTable) -> f64 {
    mi_with(t, |c| tables.ln[c as usize])
}

/// `H(p | q) = H(p, q) - H(q)`.
pub fn conditional_entropy(p: &Partition, q: &Partition) -> Result<f64> {
    let joint = q.refine(p)?;
    Ok(entropy(&joint) - entropy(q))
}

/// Variation of information, `H(p | q) + H(q | p)`.
pub fn variation_of_information(p: &Partition, q: &Partition) -> Result<f64> {
    Ok(conditional_entropy(p, q)? + conditional_entropy(q, p)?)
}

fn resolve_multi<S: AsRef<str>>(matrix: &OpinionMatrix, subset: &[S]) -> Result<Vec<usize>> {
    let idx = matrix.resolve_subset(subset)?;
    if idx.len() < 2 {
        return Err(invalid("multivariate measures need at least two topics"));
    }
    Ok(idx)
}

/// Sum of the topics' entropies minus their joint entropy.
pub fn total_correlation<S: AsRef<str>>(matrix: &OpinionMatrix, subset: &[S]) -> Result<f64> {
    let idx = resolve_multi(matrix, subset)?;
    Ok(tc_of(matrix, &idx))
}

fn tc_of(matrix: &OpinionMatrix, idx: &[usize]) -> f64 {
    let marginal: f64 = idx.iter().map(|&t| entropy(matrix.column(t))).sum();
    marginal - entropy(&consensus_of(matrix, idx))
}

/// Joint entropy minus the sum of each topic's entropy conditioned on all others.
pub fn dual_total_correlation<S: AsRef<str>>(matrix: &OpinionMatrix, subset: &[S]) -> Result<f64> {
    let idx = resolve_multi(matrix, subset)?;
    Ok(dtc_of(matrix, &idx))
}

fn dtc_of(matrix: &OpinionMatrix, idx: &[usize]) -> f64 {
    let joint = entropy(&consensus_of(matrix, idx));
    let mut rest: Vec<usize> = Vec::with_capacity(idx.len() - 1);
    let mut residual = 0.0;
    for i in 0..idx.len() {
        rest.clear();
        rest.extend(idx.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &t)| t));
        residual += joint - entropy(&consensus_of(matrix, &rest));
    }
    joint - residual
}

/// DTC divided by the joint entropy; 0 when the joint entropy is 0.
pub fn normalized_dual_total_correlation<S: AsRef<str>>(
    matrix: &OpinionMatrix,
    subset: &[S],
) -> Result<f64> {
    let idx = resolve_multi(matrix, subset)?;
    let joint = entropy(&consensus_of(matrix, &idx));
    Ok(if joint == 0.0 { 0.0 } else { dtc_of(matrix, &idx) / joint })
}

/// O-information, `TC - DTC`: positive for redundancy, negative for synergy.
pub fn o_information<S: AsRef<str>>(matrix: &OpinionMatrix, subset: &[S]) -> Result<f64> {
    let idx = resolve_multi(matrix, subset)?;
    Ok(tc_of(matrix, &idx) - dtc_of(matrix, &idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::contingency;
    use alloc::string::{String, ToString};
    use alloc::vec;

    const LN2: f64 = core::f64::consts::LN_2;

    fn part(labels: &[u32]) -> Partition {
        Partition::from_labels(labels).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert!((entropy(&part(&[0, 0, 1, 1])) - LN2).abs() < 1e-15);
        assert_eq!(entropy(&part(&[5, 5, 5])), 0.0);
        let expected = 0.25 * libm::log(4.0) + 0.75 * libm::log(4.0 / 3.0);
        assert!((entropy(&part(&[0, 1, 1, 1])) - expected).abs() < 1e-15);
    }

    #[test]
    fn mutual_information_examples() {
        let p = part(&[0, 0, 1, 1]);
        assert!((mutual_information(&contingency(&p, &p).unwrap()) - LN2).abs() < 1e-15);
        let t = ContingencyTable::from_dense(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(mutual_information(&t).abs() < 1e-15);
        // Hand evaluation: 2 * (2/6) ln(6*2/9) + 2 * (1/6) ln(6/9).
        let t = ContingencyTable::from_dense(&[vec![2, 1], vec![1, 2]]).unwrap();
        let expected = (4.0 / 6.0) * libm::log(12.0 / 9.0) + (2.0 / 6.0) * libm::log(6.0 / 9.0);
        assert!((mutual_information(&t) - expected).abs() < 1e-15);
    }

    #[test]
    fn identical_partitions_give_exactly_one() {
        let p = part(&[0, 1, 2, 0, 1, 1, 3, 3, 3]);
        let t = contingency(&p, &p).unwrap();
        for norm in [NormalizationKind::Arithmetic, NormalizationKind::Geometric, NormalizationKind::Max] {
            assert_eq!(nmi(&t, norm), 1.0);
            assert_eq!(ami(&t, norm), 1.0);
        }
    }

    #[test]
    fn degenerate_rules() {
        let one = part(&[0, 0, 0, 0]);
        let two = part(&[0, 1, 0, 1]);
        let t = contingency(&one, &one).unwrap();
        assert_eq!(nmi(&t, NormalizationKind::Arithmetic), 1.0);
        assert_eq!(ami(&t, NormalizationKind::Arithmetic), 1.0);
        let t = contingency(&one, &two).unwrap();
        for norm in [NormalizationKind::Arithmetic, NormalizationKind::Geometric, NormalizationKind::Max] {
            assert_eq!(nmi(&t, norm), 0.0);
            assert_eq!(ami(&t, norm), 0.0);
        }
        let t = ContingencyTable::from_dense(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(nmi(&t, NormalizationKind::Arithmetic), 0.0);
    }

    #[test]
    fn all_singletons_use_degenerate_denominator() {
        let p = part(&[0, 1, 2, 3, 4]);
        let t = contingency(&p, &p).unwrap();
        assert_eq!(ami(&t, NormalizationKind::Arithmetic), 1.0);
    }

    #[test]
    fn emi_single_group_is_zero() {
        assert_eq!(expected_mutual_information(&[7], &[7], 7).unwrap(), 0.0);
    }

    #[test]
    fn emi_rejects_inconsistent_marginals() {
        assert!(expected_mutual_information(&[2, 2], &[3, 2], 4).is_err());
        assert!(expected_mutual_information(&[2, 2], &[4, 0], 4).is_err());
    }

    #[test]
    fn enums_parse() {
        assert_eq!("geometric".parse::<NormalizationKind>().unwrap(), NormalizationKind::Geometric);
        assert_eq!("nmi".parse::<ScoreKind>().unwrap(), ScoreKind::Nmi);
        assert!("min".parse::<NormalizationKind>().is_err());
        assert_eq!(NormalizationKind::default(), NormalizationKind::Arithmetic);
    }

    fn matrix(cols: &[Vec<u32>]) -> OpinionMatrix {
        let topics: Vec<String> = (0..cols.len()).map(|i| alloc::format!("t{i}")).collect();
        let cols: Vec<Vec<String>> =
            cols.iter().map(|c| c.iter().map(|v| v.to_string()).collect()).collect();
        OpinionMatrix::from_columns(topics, &cols).unwrap()
    }

    fn factorial(k: usize, reps: usize) -> OpinionMatrix {
        let n = (1 << k) * reps;
        let cols: Vec<Vec<u32>> =
            (0..k).map(|t| (0..n).map(|r| ((r % (1 << k)) >> t) as u32 & 1).collect()).collect();
        matrix(&cols)
    }

    #[test]
    fn multivariate_measures_on_copies() {
        let base: Vec<u32> = vec![0, 1, 0, 1, 1, 0, 1, 0];
        for k in 2..=4 {
            let m = matrix(&vec![base.clone(); k]);
            let names: Vec<&str> = m.topics().iter().map(String::as_str).collect();
            let tc = total_correlation(&m, &names).unwrap();
            assert!((tc - (k as f64 - 1.0) * LN2).abs() < 1e-12);
            let dtc = dual_total_correlation(&m, &names).unwrap();
            assert!((dtc - LN2).abs() < 1e-12);
            let o = o_information(&m, &names).unwrap();
            assert!((o - (k as f64 - 2.0) * LN2).abs() < 1e-12);
            assert!((normalized_dual_total_correlation(&m, &names).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn multivariate_measures_on_product_design() {
        let m = factorial(3, 2);
        let names = ["t0", "t1", "t2"];
        assert!(total_correlation(&m, &names).unwrap().abs() < 1e-12);
        assert!(dual_total_correlation(&m, &names).unwrap().abs() < 1e-12);
        assert!(o_information(&m, &names).unwrap().abs() < 1e-12);
    }

    #[test]
    fn pair_measures_reduce_to_mi() {
        let m = matrix(&[vec![0, 0, 1, 1, 2, 2, 0], vec![0, 1, 1, 1, 0, 0, 0]]);
        let mi = mutual_information(&contingency(m.column(0), m.column(1)).unwrap());
        let tc = total_correlation(&m, &["t0", "t1"]).unwrap();
        let dtc = dual_total_correlation(&m, &["t0", "t1"]).unwrap();
        assert!((tc - mi).abs() < 1e-12);
        assert!((dtc - mi).abs() < 1e-12);
        assert!(o_information(&m, &["t0", "t1"]).unwrap().abs() < 1e-12);
        assert!(total_correlation(&m, &["t0"]).is_err());
    }

    #[test]
    fn conditional_entropy_and_vi() {
        let p = part(&[0, 0, 1, 1]);
        let q = part(&[0, 1, 2, 3]);
        assert_eq!(conditional_entropy(&p, &q).unwrap(), 0.0);
        assert!((conditional_entropy(&q, &p).unwrap() - LN2).abs() < 1e-15);
        assert!((variation_of_information(&p, &q).unwrap() - LN2).abs() < 1e-15);
    }
}
