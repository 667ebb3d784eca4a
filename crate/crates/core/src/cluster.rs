//! Roll-call clustering: cosine distances between vote vectors, DBSCAN over
//! the precomputed distances, and a silhouette-driven hyperparameter search.
//! The resulting partitions feed straight into the alignment functions.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::par::map_indexed;
use crate::partition::Partition;

/// Votes of one topic: `cells[v * items + i]` is voter `v` on item `i`,
/// coded 1 (yes), -1 (no) or 0 (absent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoteMatrix {
    voters: Vec<String>,
    items: Vec<String>,
    cells: Vec<i8>,
}

impl VoteMatrix {
    pub fn new(voters: Vec<String>, items: Vec<String>, cells: Vec<i8>) -> Result<Self> {
        if voters.len() < 2 {
            return Err(invalid("a vote matrix needs at least two voters"));
        }
        if items.is_empty() {
            return Err(invalid("a vote matrix needs at least one item"));
        }
        if cells.len() != voters.len() * items.len() {
            return Err(invalid(alloc::format!(
                "{} cells for {} voters and {} items",
                cells.len(),
                voters.len(),
                items.len()
            )));
        }
        if let Some(pos) = cells.iter().position(|c| !(-1..=1).contains(c)) {
            return Err(invalid(alloc::format!(
                "vote {} for voter {} item {} is not -1, 0 or 1",
                cells[pos],
                pos / items.len(),
                pos % items.len()
            )));
        }
        Ok(Self { voters, items, cells })
    }

    /// Builds a matrix from per-voter rows with generated ids.
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let items = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != items) {
            return Err(invalid("vote rows have different lengths"));
        }
        Self::new(
            (0..rows.len()).map(|i| alloc::format!("v{i}")).collect(),
            (0..items).map(|i| alloc::format!("i{i}")).collect(),
            rows.concat(),
        )
    }

    pub fn voters(&self) -> &[String] {
        &self.voters
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn row(&self, voter: usize) -> &[i8] {
        let k = self.items.len();
        &self.cells[voter * k..(voter + 1) * k]
    }
}

/// Symmetric `v x v` distances, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    /// Validates symmetry, a zero diagonal and the `[0, 2]` range.
    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(invalid("distance matrix is not square"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row[i] != 0.0 {
                return Err(invalid(alloc::format!("nonzero diagonal at {i}")));
            }
            for (j, &x) in row.iter().enumerate() {
                if !(0.0..=2.0).contains(&x) || x != rows[j][i] {
                    return Err(invalid(alloc::format!("bad distance at ({i}, {j})")));
                }
            }
        }
        Ok(Self { n, d: rows.concat() })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.n..(i + 1) * self.n]
    }
}

/// `1 - cos(u_i, u_j)`. A voter with no votes sits at distance 1 from
/// everyone else.
pub fn cosine_distance(votes: &VoteMatrix) -> DistanceMatrix {
    let n = votes.voters.len();
    let norms: Vec<i64> = (0..n)
        .map(|v| votes.row(v).iter().map(|&x| i64::from(x) * i64::from(x)).sum())
        .collect();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let x = if norms[i] == 0 || norms[j] == 0 {
                1.0
            } else {
                let dot: i64 = votes
                    .row(i)
                    .iter()
                    .zip(votes.row(j))
                    .map(|(&a, &b)| i64::from(a) * i64::from(b))
                    .sum();
                let cos = dot as f64 / libm::sqrt((norms[i] * norms[j]) as f64);
                (1.0 - cos).clamp(0.0, 2.0)
            };
            d[i * n + j] = x;
            d[j * n + i] = x;
        }
    }
    DistanceMatrix { n, d }
}

/// DBSCAN labels: `None` marks noise, clusters are numbered in discovery order.
pub fn dbscan(d: &DistanceMatrix, eps: f64, min_samples: usize) -> Result<Vec<Option<u32>>> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(invalid(alloc::format!("eps must be positive, got {eps}")));
    }
    if min_samples < 2 {
        return Err(invalid("min_samples must be at least 2"));
    }
    let n = d.len();
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| d.get(i, j) <= eps).collect())
        .collect();
    let core: Vec<bool> = neighbors.iter().map(|nb| nb.len() >= min_samples).collect();
    let mut labels: Vec<Option<u32>> = vec![None; n];
    let mut next = 0u32;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if !core[start] || labels[start].is_some() {
            continue;
        }
        labels[start] = Some(next);
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            for &q in &neighbors[p] {
                if labels[q].is_none() {
                    labels[q] = Some(next);
                    if core[q] {
                        queue.push_back(q);
                    }
                }
            }
        }
        next += 1;
    }
    Ok(labels)
}

/// Mean silhouette over non-noise points. Members of singleton clusters
/// contribute 0.
pub fn silhouette(d: &DistanceMatrix, labels: &[Option<u32>]) -> Result<f64> {
    if labels.len() != d.len() {
        return Err(invalid("label count differs from distance matrix size"));
    }
    let k = labels.iter().flatten().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut sizes = vec![0usize; k];
    for &c in labels.iter().flatten() {
        sizes[c as usize] += 1;
    }
    if sizes.iter().filter(|&&s| s > 0).count() < 2 {
        return Err(Error::Undefined(String::from("silhouette needs at least two clusters")));
    }
    let mut total = 0.0;
    let mut count = 0usize;
    let mut sums = vec![0.0; k];
    for (i, li) in labels.iter().enumerate() {
        let Some(ci) = li.map(|c| c as usize) else { continue };
        count += 1;
        if sizes[ci] == 1 {
            continue;
        }
        sums.iter_mut().for_each(|s| *s = 0.0);
        for (j, lj) in labels.iter().enumerate() {
            if let Some(cj) = lj {
                if j != i {
                    sums[*cj as usize] += d.get(i, j);
                }
            }
        }
        let a = sums[ci] / (sizes[ci] - 1) as f64;
        let b = (0..k)
            .filter(|&c| c != ci && sizes[c] > 0)
            .map(|c| sums[c] / sizes[c] as f64)
            .fold(f64::INFINITY, f64::min);
        let m = a.max(b);
        if m > 0.0 {
            total += (b - a) / m;
        }
    }
    Ok(total / count as f64)
}

/// How DBSCAN noise points enter the final partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoisePolicy {
    /// Each noise point forms its own group.
    #[default]
    Singletons,
    /// All noise points share one group.
    Pooled,
}

impl NoisePolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Singletons => "singletons",
            Self::Pooled => "pooled",
        }
    }
}

impl fmt::Display for NoisePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NoisePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singletons" => Ok(Self::Singletons),
            "pooled" => Ok(Self::Pooled),
            _ => Err(invalid(alloc::format!("unknown noise policy '{s}'"))),
        }
    }
}

/// Turns DBSCAN labels into a partition.
pub fn labels_to_partition(labels: &[Option<u32>], policy: NoisePolicy) -> Result<Partition> {
    let clusters = labels.iter().flatten().map(|&c| c as usize + 1).max().unwrap_or(0) as u64;
    let raw: Vec<u64> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| match (l, policy) {
            (Some(c), _) => u64::from(*c),
            (None, NoisePolicy::Pooled) => clusters,
            (None, NoisePolicy::Singletons) => clusters + 1 + i as u64,
        })
        .collect();
    Partition::from_labels(&raw)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringResult {
    pub partition: Partition,
    pub eps: f64,
    pub min_samples: usize,
    pub silhouette: f64,
    pub noise_count: usize,
    /// DBSCAN clusters, not counting noise groups.
    pub n_clusters: usize,
}

/// `0.05, 0.10, ..., 0.95`.
pub fn default_eps_grid() -> Vec<f64> {
    (1..=19).map(|i| i as f64 / 20.0).collect()
}

/// `2..=10`.
pub fn default_min_samples_grid() -> Vec<usize> {
    (2..=10).collect()
}

/// Grid search keeping the configuration with the highest silhouette. Ties
/// go to the smaller eps, then the smaller min_samples.
pub fn optimize_clustering(
    votes: &VoteMatrix,
    eps_grid: &[f64],
    min_samples_grid: &[usize],
    policy: NoisePolicy,
) -> Result<ClusteringResult> {
    if eps_grid.is_empty() || min_samples_grid.is_empty() {
        return Err(invalid("clustering grids must be non-empty"));
    }
    let d = cosine_distance(votes);
    let mut grid: Vec<(f64, usize)> = Vec::with_capacity(eps_grid.len() * min_samples_grid.len());
    for &e in eps_grid {
        for &s in min_samples_grid {
            grid.push((e, s));
        }
    }
    type Run = Option<(f64, Vec<Option<u32>>)>;
    let runs: Vec<Result<Run>> = map_indexed(grid.len(), |g| {
        let (eps, ms) = grid[g];
        let labels = dbscan(&d, eps, ms)?;
        Ok(match silhouette(&d, &labels) {
            Ok(s) => Some((s, labels)),
            Err(Error::Undefined(_)) => None,
            Err(e) => return Err(e),
        })
    });
    let mut best: Option<(usize, f64, Vec<Option<u32>>)> = None;
    for (g, run) in runs.into_iter().enumerate() {
        let Some((s, labels)) = run? else { continue };
        let better = match &best {
            None => true,
            Some((bg, bs, _)) => {
                s > *bs || (s == *bs && (grid[g].0, grid[g].1) < (grid[*bg].0, grid[*bg].1))
            }
        };
        if better {
            best = Some((g, s, labels));
        }
    }
    let (g, s, labels) = best.ok_or(Error::NoValidClustering)?;
    Ok(ClusteringResult {
        partition: labels_to_partition(&labels, policy)?,
        eps: grid[g].0,
        min_samples: grid[g].1,
        silhouette: s,
        noise_count: labels.iter().filter(|l| l.is_none()).count(),
        n_clusters: labels.iter().flatten().map(|&c| c as usize + 1).max().unwrap_or(0),
    })
}
