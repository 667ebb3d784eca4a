//! CSV readers and writers for opinion tables and roll-call votes.

use std::collections::HashMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use mwa_core::cluster::VoteMatrix;
use mwa_core::OpinionMatrix;

/// Label given to missing cells under [`MissingPolicy::MissingAsCategory`].
pub const MISSING_LABEL: &str = "NA";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    /// Skip every row with a missing cell.
    #[default]
    DropRows,
    /// Treat missing as one more opinion.
    MissingAsCategory,
}

impl MissingPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::DropRows => "drop-rows",
            Self::MissingAsCategory => "missing-as-category",
        }
    }
}

impl fmt::Display for MissingPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MissingPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "drop-rows" => Ok(Self::DropRows),
            "missing-as-category" => Ok(Self::MissingAsCategory),
            _ => Err(format!("unknown missing-data policy '{s}'")),
        }
    }
}

/// A malformed input file, with the offending line and column when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestError {
    pub line: Option<u64>,
    pub column: Option<String>,
    pub message: String,
}

impl IngestError {
    fn new(message: impl Into<String>) -> Self {
        Self { line: None, column: None, message: message.into() }
    }

    fn at(line: u64, column: Option<&str>, message: impl Into<String>) -> Self {
        Self { line: Some(line), column: column.map(str::to_string), message: message.into() }
    }
}

impl fmt::Display for IngestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.line, &self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column '{c}': {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            (None, Some(c)) => write!(f, "column '{c}': {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for IngestError {}

impl From<csv::Error> for IngestError {
    fn from(e: csv::Error) -> Self {
        let line = e.position().map(|p| p.line());
        Self { line, column: None, message: e.to_string() }
    }
}

/// An opinion table plus what the missing-data policy did to it.
#[derive(Debug, Clone)]
pub struct LoadedOpinions {
    pub matrix: OpinionMatrix,
    pub rows_read: usize,
    pub rows_dropped: usize,
}

fn is_missing(cell: &str) -> bool {
    cell.is_empty() || cell == MISSING_LABEL
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn open(path: &Path) -> Result<std::fs::File, IngestError> {
    std::fs::File::open(path).map_err(|e| IngestError::new(format!("cannot open {}: {e}", path.display())))
}

pub fn load_opinions(path: &Path, policy: MissingPolicy) -> Result<LoadedOpinions, IngestError> {
    read_opinions(open(path)?, policy)
}

/// Reads a header row of topic names (optionally led by an `id` column)
/// followed by one row of labels per individual.
pub fn read_opinions<R: Read>(reader: R, policy: MissingPolicy) -> Result<LoadedOpinions, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let header = rdr.headers()?.clone();
    let has_id = header.get(0) == Some("id");
    let names: Vec<String> = header.iter().skip(usize::from(has_id)).map(str::to_string).collect();
    if names.is_empty() {
        return Err(IngestError::at(1, None, "no topic columns"));
    }
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(IngestError::at(1, None, format!("topic column {} has an empty name", i + 1)));
        }
        if names[..i].contains(name) {
            return Err(IngestError::at(1, Some(name), "duplicate topic name"));
        }
    }
    let width = header.len();
    let mut ids = Vec::new();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let (mut read, mut dropped) = (0, 0);
    for record in rdr.records() {
        let record = record?;
        let line = line_of(&record);
        if record.len() != width {
            return Err(IngestError::at(line, None, format!("{} fields, header has {width}", record.len())));
        }
        read += 1;
        let cells = record.iter().skip(usize::from(has_id));
        if policy == MissingPolicy::DropRows && cells.clone().any(is_missing) {
            dropped += 1;
            continue;
        }
        if has_id {
            ids.push(record[0].to_string());
        }
        rows.push(cells.map(|c| if is_missing(c) { MISSING_LABEL.to_string() } else { c.to_string() }).collect());
    }
    if rows.is_empty() {
        return Err(IngestError::new(format!("no usable rows ({read} read, {dropped} dropped for missing values)")));
    }
    let mut matrix = OpinionMatrix::from_rows(names, &rows).map_err(|e| IngestError::new(e.to_string()))?;
    if has_id {
        matrix = matrix.with_individuals(ids).map_err(|e| IngestError::new(e.to_string()))?;
    }
    Ok(LoadedOpinions { matrix, rows_read: read, rows_dropped: dropped })
}

/// Writes `matrix` in the layout [`read_opinions`] accepts.
pub fn write_opinions<W: Write>(matrix: &OpinionMatrix, writer: W) -> Result<(), IngestError> {
    let mut w = csv::Writer::from_writer(writer);
    let ids = matrix.individuals();
    let mut header: Vec<&str> = Vec::with_capacity(matrix.m() + 1);
    if ids.is_some() {
        header.push("id");
    }
    header.extend(matrix.topics().iter().map(String::as_str));
    w.write_record(&header)?;
    for r in 0..matrix.n() {
        let mut row: Vec<&str> = Vec::with_capacity(header.len());
        if let Some(ids) = ids {
            row.push(&ids[r]);
        }
        row.extend((0..matrix.m()).map(|t| matrix.label(r, t)));
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| IngestError::new(e.to_string()))
}

/// Roll-call votes of every topic over a shared, ordered voter list.
#[derive(Debug, Clone)]
pub struct VoteSet {
    pub voters: Vec<String>,
    pub topics: Vec<(String, VoteMatrix)>,
}

pub fn load_votes(path: &Path) -> Result<VoteSet, IngestError> {
    read_votes(open(path)?)
}

const VOTE_COLUMNS: [&str; 4] = ["voter_id", "topic", "item_id", "vote"];

/// Reads long-format votes (`voter_id, topic, item_id, vote`). Voters,
/// topics and items keep their order of first appearance; pairs a voter
/// never voted on are coded 0.
pub fn read_votes<R: Read>(reader: R) -> Result<VoteSet, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let header = rdr.headers()?.clone();
    let mut pos = [0usize; 4];
    for (slot, name) in pos.iter_mut().zip(VOTE_COLUMNS) {
        *slot = header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IngestError::at(1, Some(name), "required column missing"))?;
    }
    let mut voters: Vec<String> = Vec::new();
    let mut voter_index: HashMap<String, usize> = HashMap::new();
    let mut topics: Vec<(String, Vec<String>, HashMap<String, usize>)> = Vec::new();
    let mut topic_index: HashMap<String, usize> = HashMap::new();
    let mut votes: HashMap<(usize, usize, usize), i8> = HashMap::new();
    for record in rdr.records() {
        let record = record?;
        let line = line_of(&record);
        if record.len() != header.len() {
            return Err(IngestError::at(line, None, format!("{} fields, header has {}", record.len(), header.len())));
        }
        let [v, t, i, x] = pos.map(|p| &record[p]);
        let code: i8 = match x.trim() {
            "1" | "+1" => 1,
            "0" => 0,
            "-1" => -1,
            other => return Err(IngestError::at(line, Some("vote"), format!("vote '{other}' is not -1, 0 or 1"))),
        };
        let vi = *voter_index.entry(v.to_string()).or_insert_with(|| {
            voters.push(v.to_string());
            voters.len() - 1
        });
        let ti = *topic_index.entry(t.to_string()).or_insert_with(|| {
            topics.push((t.to_string(), Vec::new(), HashMap::new()));
            topics.len() - 1
        });
        let (_, items, item_index) = &mut topics[ti];
        let ii = *item_index.entry(i.to_string()).or_insert_with(|| {
            items.push(i.to_string());
            items.len() - 1
        });
        if votes.insert((ti, vi, ii), code).is_some() {
            return Err(IngestError::at(line, None, format!("duplicate vote of '{v}' on '{t}'/'{i}'")));
        }
    }
    if topics.is_empty() {
        return Err(IngestError::new("no votes"));
    }
    let mut out = Vec::with_capacity(topics.len());
    for (ti, (name, items, _)) in topics.into_iter().enumerate() {
        let mut cells = vec![0i8; voters.len() * items.len()];
        for (vi, row) in cells.chunks_mut(items.len()).enumerate() {
            for (ii, cell) in row.iter_mut().enumerate() {
                if let Some(&c) = votes.get(&(ti, vi, ii)) {
                    *cell = c;
                }
            }
        }
        let m = VoteMatrix::new(voters.clone(), items, cells)
            .map_err(|e| IngestError { line: None, column: Some(name.clone()), message: e.to_string() })?;
        out.push((name, m));
    }
    Ok(VoteSet { voters, topics: out })
}
