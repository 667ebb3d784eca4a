//! Partitions, opinion matrices, consensus partitions and contingency tables.
//!
//! Group ids are always dense (`0..G`) and assigned in order of first
//! occurrence, so two partitions that group individuals identically carry
//! identical label vectors.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::hash::Hash;

use hashbrown::HashMap;

use crate::error::{invalid, Error, Result};

/// Assignment of every individual to exactly one nonempty group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<u32>,
    sizes: Vec<u32>,
}

impl Partition {
    /// Relabels arbitrary categorical values to dense ids in first-occurrence order.
    pub fn from_labels<T: Hash + Eq>(raw: &[T]) -> Result<Self> {
        if raw.is_empty() {
            return Err(invalid("partition needs at least one individual"));
        }
        let mut ids: HashMap<&T, u32> = HashMap::new();
        let mut labels = Vec::with_capacity(raw.len());
        let mut sizes: Vec<u32> = Vec::new();
        for value in raw {
            let next = sizes.len() as u32;
            let id = *ids.entry(value).or_insert(next);
            if id == next {
                sizes.push(0);
            }
            sizes[id as usize] += 1;
            labels.push(id);
        }
        Ok(Self { labels, sizes })
    }

    /// Canonicalizes small integer labels; faster than `from_labels` when the
    /// label range is known to be at most `bound`.
    pub(crate) fn from_bounded(raw: &[u32], bound: usize) -> Self {
        let mut map = vec![u32::MAX; bound];
        let mut labels = Vec::with_capacity(raw.len());
        let mut sizes: Vec<u32> = Vec::new();
        for &value in raw {
            let slot = &mut map[value as usize];
            if *slot == u32::MAX {
                *slot = sizes.len() as u32;
                sizes.push(0);
            }
            sizes[*slot as usize] += 1;
            labels.push(*slot);
        }
        Self { labels, sizes }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn group_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Group sizes indexed by group id.
    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// Pairwise consensus: the nonempty intersections of `self`'s groups
    /// with `other`'s groups, ids in first-occurrence order.
    pub fn refine(&self, other: &Partition) -> Result<Partition> {
        if self.n() != other.n() {
            return Err(invalid(format!(
                "partitions cover {} and {} individuals",
                self.n(),
                other.n()
            )));
        }
        Ok(self.refine_unchecked(other))
    }

    pub(crate) fn refine_unchecked(&self, other: &Partition) -> Partition {
        let width = other.group_count();
        let cells = self.group_count().saturating_mul(width);
        let mut labels = Vec::with_capacity(self.n());
        let mut sizes: Vec<u32> = Vec::new();
        if cells <= dense_limit(self.n()) {
            let mut map = vec![u32::MAX; cells];
            for (&a, &b) in self.labels.iter().zip(&other.labels) {
                let slot = &mut map[a as usize * width + b as usize];
                if *slot == u32::MAX {
                    *slot = sizes.len() as u32;
                    sizes.push(0);
                }
                sizes[*slot as usize] += 1;
                labels.push(*slot);
            }
        } else {
            let mut map: HashMap<u64, u32> = HashMap::with_capacity(self.n());
            for (&a, &b) in self.labels.iter().zip(&other.labels) {
                let key = ((a as u64) << 32) | b as u64;
                let next = sizes.len() as u32;
                let id = *map.entry(key).or_insert(next);
                if id == next {
                    sizes.push(0);
                }
                sizes[id as usize] += 1;
                labels.push(id);
            }
        }
        Partition { labels, sizes }
    }

    /// True when every group of `self` lies inside a single group of `coarser`.
    pub fn is_refinement_of(&self, coarser: &Partition) -> bool {
        if self.n() != coarser.n() {
            return false;
        }
        let mut parent = vec![u32::MAX; self.group_count()];
        for (&fine, &coarse) in self.labels.iter().zip(&coarser.labels) {
            let slot = &mut parent[fine as usize];
            if *slot == u32::MAX {
                *slot = coarse;
            } else if *slot != coarse {
                return false;
            }
        }
        true
    }
}

fn dense_limit(n: usize) -> usize {
    (4 * n).max(1 << 16)
}

/// n individuals by m named topics, one categorical label per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct OpinionMatrix {
    topics: Vec<String>,
    individuals: Option<Vec<String>>,
    columns: Vec<Partition>,
    alphabets: Vec<Vec<String>>,
}

impl OpinionMatrix {
    /// Builds a matrix from column-major labels, one column per topic.
    pub fn from_columns<S: AsRef<str>>(topics: Vec<String>, columns: &[Vec<S>]) -> Result<Self> {
        if topics.len() != columns.len() {
            return Err(invalid(format!(
                "{} topic names for {} columns",
                topics.len(),
                columns.len()
            )));
        }
        let mut parts = Vec::with_capacity(columns.len());
        let mut alphabets = Vec::with_capacity(columns.len());
        for column in columns {
            let strs: Vec<&str> = column.iter().map(AsRef::as_ref).collect();
            let part = Partition::from_labels(&strs)?;
            let mut alphabet = vec![String::new(); part.group_count()];
            for (value, &id) in strs.iter().zip(part.labels()) {
                if alphabet[id as usize].is_empty() {
                    alphabet[id as usize] = value.to_string();
                }
            }
            parts.push(part);
            alphabets.push(alphabet);
        }
        Self::assemble(topics, None, parts, alphabets)
    }

    /// Builds a matrix from row-major labels.
    pub fn from_rows<S: AsRef<str>>(topics: Vec<String>, rows: &[Vec<S>]) -> Result<Self> {
        let m = topics.len();
        let mut columns: Vec<Vec<&str>> = vec![Vec::with_capacity(rows.len()); m];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(invalid(format!("row {r} has {} cells, expected {m}", row.len())));
            }
            for (c, cell) in row.iter().enumerate() {
                columns[c].push(cell.as_ref());
            }
        }
        Self::from_columns(topics, &columns)
    }

    /// Builds a matrix directly from partitions; labels become the group ids.
    pub fn from_partitions(topics: Vec<String>, columns: Vec<Partition>) -> Result<Self> {
        let alphabets = columns
            .iter()
            .map(|p| (0..p.group_count()).map(|g| g.to_string()).collect())
            .collect();
        Self::assemble(topics, None, columns, alphabets)
    }

    fn assemble(
        topics: Vec<String>,
        individuals: Option<Vec<String>>,
        columns: Vec<Partition>,
        alphabets: Vec<Vec<String>>,
    ) -> Result<Self> {
        if topics.is_empty() {
            return Err(invalid("opinion matrix needs at least one topic"));
        }
        for (i, t) in topics.iter().enumerate() {
            if t.is_empty() {
                return Err(invalid(format!("topic {i} has an empty name")));
            }
            if topics[..i].contains(t) {
                return Err(invalid(format!("duplicate topic `{t}`")));
            }
        }
        if topics.len() != columns.len() {
            return Err(invalid("topic count does not match column count"));
        }
        let n = columns[0].n();
        if n == 0 {
            return Err(invalid("opinion matrix needs at least one individual"));
        }
        if columns.iter().any(|c| c.n() != n) {
            return Err(invalid("columns have different lengths"));
        }
        let matrix = Self { topics, individuals: None, columns, alphabets };
        match individuals {
            Some(ids) => matrix.with_individuals(ids),
            None => Ok(matrix),
        }
    }

    /// Attaches individual ids (one per row).
    pub fn with_individuals(mut self, ids: Vec<String>) -> Result<Self> {
        if ids.len() != self.n() {
            return Err(invalid(format!("{} ids for {} individuals", ids.len(), self.n())));
        }
        self.individuals = Some(ids);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.columns[0].n()
    }

    pub fn m(&self) -> usize {
        self.topics.len()
    }

    pub fn topics(&self) -> &[String] {
        &self.topics
    }

    pub fn individuals(&self) -> Option<&[String]> {
        self.individuals.as_deref()
    }

    pub fn column(&self, topic: usize) -> &Partition {
        &self.columns[topic]
    }

    pub fn columns(&self) -> &[Partition] {
        &self.columns
    }

    /// Original label strings of a topic, indexed by group id.
    pub fn alphabet(&self, topic: usize) -> &[String] {
        &self.alphabets[topic]
    }

    pub fn label(&self, row: usize, topic: usize) -> &str {
        &self.alphabets[topic][self.columns[topic].labels[row] as usize]
    }

    pub fn topic_index(&self, name: &str) -> Result<usize> {
        self.topics
            .iter()
            .position(|t| t == name)
            .ok_or_else(|| Error::UnknownTopic(name.to_string()))
    }

    /// Resolves topic names to column indices, canonically ordered by name.
    pub fn resolve_subset<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        if names.is_empty() {
            return Err(invalid("topic subset is empty"));
        }
        let mut idx = Vec::with_capacity(names.len());
        for name in names {
            let i = self.topic_index(name.as_ref())?;
            if idx.contains(&i) {
                return Err(invalid(format!("topic `{}` listed twice", name.as_ref())));
            }
            idx.push(i);
        }
        idx.sort_by(|&a, &b| self.topics[a].cmp(&self.topics[b]));
        Ok(idx)
    }

    /// All column indices ordered by topic name.
    pub fn sorted_topic_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.m()).collect();
        idx.sort_by(|&a, &b| self.topics[a].cmp(&self.topics[b]));
        idx
    }

    pub fn subset_names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.topics[i].clone()).collect()
    }

    /// Matrix restricted to the named topics, in name order.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        let idx = self.resolve_subset(names)?;
        Ok(Self {
            topics: self.subset_names(&idx),
            individuals: self.individuals.clone(),
            columns: idx.iter().map(|&i| self.columns[i].clone()).collect(),
            alphabets: idx.iter().map(|&i| self.alphabets[i].clone()).collect(),
        })
    }

    /// Returns a copy whose column `topic` has row `r` taken from row `source[r]`.
    pub(crate) fn gather_column(&self, topic: usize, source: &[usize]) -> (Partition, Vec<String>) {
        let old = &self.columns[topic];
        let raw: Vec<u32> = source.iter().map(|&r| old.labels[r]).collect();
        let part = Partition::from_bounded(&raw, old.group_count());
        let mut alphabet = vec![String::new(); part.group_count()];
        for (&o, &g) in raw.iter().zip(part.labels()) {
            if alphabet[g as usize].is_empty() {
                alphabet[g as usize] = self.alphabets[topic][o as usize].clone();
            }
        }
        (part, alphabet)
    }

    pub(crate) fn replace_columns(&self, columns: Vec<(Partition, Vec<String>)>) -> Self {
        let (columns, alphabets) = columns.into_iter().unzip();
        Self {
            topics: self.topics.clone(),
            individuals: self.individuals.clone(),
            columns,
            alphabets,
        }
    }
}

/// A consensus partition together with the (name-sorted) topics inducing it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusPartition {
    pub partition: Partition,
    pub source_topics: Vec<String>,
}

/// Consensus partition of the named topics.
pub fn consensus_partition<S: AsRef<str>>(
    matrix: &OpinionMatrix,
    subset: &[S],
) -> Result<ConsensusPartition> {
    let idx = matrix.resolve_subset(subset)?;
    Ok(ConsensusPartition {
        partition: consensus_of(matrix, &idx),
        source_topics: matrix.subset_names(&idx),
    })
}

/// One-pass consensus over label tuples. Group ids follow the first row
/// carrying each tuple, so the result does not depend on topic order.
pub(crate) fn consensus_of(matrix: &OpinionMatrix, idx: &[usize]) -> Partition {
    if idx.is_empty() {
        return Partition { labels: vec![0; matrix.n()], sizes: vec![matrix.n() as u32] };
    }
    let cols: Vec<&Partition> = idx.iter().map(|&t| &matrix.columns[t]).collect();
    consensus_of_columns(&cols)
}

/// Consensus of a nonempty list of equally long partitions.
pub(crate) fn consensus_of_columns(columns: &[&Partition]) -> Partition {
    match columns {
        [single] => (*single).clone(),
        _ => {
            let n = columns[0].n();
            let k = columns.len();
            let mut flat = Vec::with_capacity(n * k);
            for r in 0..n {
                flat.extend(columns.iter().map(|c| c.labels[r]));
            }
            let mut ids: HashMap<&[u32], u32> = HashMap::with_capacity(n);
            let mut labels = Vec::with_capacity(n);
            let mut sizes: Vec<u32> = Vec::new();
            for tuple in flat.chunks_exact(k) {
                let next = sizes.len() as u32;
                let id = *ids.entry(tuple).or_insert(next);
                if id == next {
                    sizes.push(0);
                }
                sizes[id as usize] += 1;
                labels.push(id);
            }
            Partition { labels, sizes }
        }
    }
}

/// One nonzero cell of a contingency table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
    pub count: u32,
}

/// Cross-tabulation of two partitions, stored as nonzero cells in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    rows: Vec<u32>,
    cols: Vec<u32>,
    cells: Vec<Cell>,
    n: usize,
}

impl ContingencyTable {
    /// Builds a table from dense counts; every row and column must have a positive sum.
    pub fn from_dense(counts: &[Vec<u32>]) -> Result<Self> {
        let width = counts.first().map_or(0, Vec::len);
        if counts.is_empty() || width == 0 {
            return Err(invalid("contingency table is empty"));
        }
        let mut rows = vec![0u32; counts.len()];
        let mut cols = vec![0u32; width];
        let mut cells = Vec::new();
        for (i, row) in counts.iter().enumerate() {
            if row.len() != width {
                return Err(invalid("ragged contingency table"));
            }
            for (j, &c) in row.iter().enumerate() {
                rows[i] += c;
                cols[j] += c;
                if c > 0 {
                    cells.push(Cell { row: i as u32, col: j as u32, count: c });
                }
            }
        }
        if rows.iter().chain(&cols).any(|&s| s == 0) {
            return Err(invalid("contingency marginals must be positive"));
        }
        let n = rows.iter().map(|&r| r as usize).sum();
        Ok(Self { rows, cols, cells, n })
    }

    pub fn row_marginals(&self) -> &[u32] {
        &self.rows
    }

    pub fn column_marginals(&self) -> &[u32] {
        &self.cols
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.cells
            .binary_search_by(|c| (c.row as usize, c.col as usize).cmp(&(row, col)))
            .map_or(0, |i| self.cells[i].count)
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0; self.cols.len()]; self.rows.len()];
        for c in &self.cells {
            out[c.row as usize][c.col as usize] = c.count;
        }
        out
    }
}

/// Cross-tabulates `p` (rows) against `q` (columns).
pub fn contingency(p: &Partition, q: &Partition) -> Result<ContingencyTable> {
    if p.n() != q.n() {
        return Err(invalid(format!("partitions cover {} and {} individuals", p.n(), q.n())));
    }
    Ok(contingency_unchecked(p, q))
}

/// Visits the non-empty cells of the joint table of `p` and `q` in row-major
/// order as `(row, col, count)`.
pub(crate) fn for_each_cell(p: &Partition, q: &Partition, mut f: impl FnMut(u32, u32, u32)) {
    let width = q.group_count();
    let total = p.group_count().saturating_mul(width);
    if total <= dense_limit(p.n()) {
        let mut dense = vec![0u32; total];
        for (&a, &b) in p.labels.iter().zip(&q.labels) {
            dense[a as usize * width + b as usize] += 1;
        }
        for (i, &count) in dense.iter().enumerate() {
            if count > 0 {
                f((i / width) as u32, (i % width) as u32, count);
            }
        }
    } else {
        let mut keys: Vec<u64> = p
            .labels
            .iter()
            .zip(&q.labels)
            .map(|(&a, &b)| ((a as u64) << 32) | b as u64)
            .collect();
        keys.sort_unstable();
        let mut iter = keys.into_iter().peekable();
        while let Some(key) = iter.next() {
            let mut count = 1;
            while iter.peek() == Some(&key) {
                iter.next();
                count += 1;
            }
            f((key >> 32) as u32, key as u32, count);
        }
    }
}

pub(crate) fn contingency_unchecked(p: &Partition, q: &Partition) -> ContingencyTable {
    let mut cells = Vec::new();
    for_each_cell(p, q, |row, col, count| cells.push(Cell { row, col, count }));
    ContingencyTable { rows: p.sizes.clone(), cols: q.sizes.clone(), cells, n: p.n() }
}
