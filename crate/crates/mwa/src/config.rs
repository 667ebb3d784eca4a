//! Effective run configuration, echoed into every output document.

use std::path::PathBuf;

use clap::builder::RangedU64ValueParser;
use mwa_core::alignment::DEFAULT_BUDGET_CAP;
use mwa_core::cluster::NoisePolicy;
use mwa_core::null::NullOptions;
use mwa_core::{NormalizationKind, ScoreKind};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::ingest::MissingPolicy;

/// Base-subset order limit for batch deltas when `--max-order` is absent.
pub const DEFAULT_DELTA_ORDER: usize = 6;

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if a > 0.0 && a < 1.0 {
        Ok(a)
    } else {
        Err(format!("alpha must lie strictly between 0 and 1, got {a}"))
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, clap::Args)]
pub struct Flags {
    /// Input CSV (opinion table, or long-format votes for cluster-votes).
    #[arg(long)]
    pub input: PathBuf,
    /// Write the JSON document here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Pairwise similarity: nmi or ami.
    #[arg(long, default_value = "ami")]
    pub score: ScoreKind,
    /// Entropy bound used as denominator: arithmetic, geometric or max.
    #[arg(long, default_value = "arithmetic")]
    pub norm: NormalizationKind,
    /// Highest subset order (spectrum, curve) or base order (delta).
    #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(2..))]
    pub max_order: Option<usize>,
    /// Comma-separated topic names.
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<String>>,
    /// Null-model replicates; on spectrum, giving this enables the null.
    #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(100..))]
    pub replicates: Option<usize>,
    /// Two-sided level of the null percentile band.
    #[arg(long, default_value_t = 0.05, value_parser = parse_alpha)]
    pub alpha: f64,
    /// Master seed of the null model.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// drop-rows or missing-as-category.
    #[arg(long, default_value = "drop-rows")]
    pub missing: MissingPolicy,
    /// Largest number of subsets a run may enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET_CAP)]
    pub budget: u128,
    /// How DBSCAN noise enters partitions: singletons or pooled.
    #[arg(long, default_value = "singletons")]
    pub noise: NoisePolicy,
    /// Topic added to each base subset (delta).
    #[arg(long)]
    pub topic: Option<String>,
    /// Also write the clustered partitions as an opinion CSV (cluster-votes).
    #[arg(long)]
    pub partitions: Option<PathBuf>,
}

impl Flags {
    pub fn null_options(&self) -> NullOptions {
        NullOptions {
            replicates: self.replicates.unwrap_or(NullOptions::default().replicates),
            alpha: self.alpha,
            seed: self.seed,
            ..NullOptions::default()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub input: String,
    pub score_kind: String,
    pub norm: String,
    pub max_order: Option<usize>,
    pub subset: Option<Vec<String>>,
    pub topic: Option<String>,
    pub null_model: bool,
    pub replicates: usize,
    pub alpha: f64,
    pub master_seed: u64,
    pub missing_policy: String,
    pub budget_cap: u128,
    pub noise_policy: String,
    pub metadata: Map<String, Value>,
}

impl RunConfig {
    pub fn new(command: &str, flags: &Flags) -> Self {
        let null = flags.null_options();
        Self {
            command: command.to_string(),
            input: flags.input.display().to_string(),
            score_kind: flags.score.to_string(),
            norm: flags.norm.to_string(),
            max_order: flags.max_order,
            subset: flags.subset.clone(),
            topic: flags.topic.clone(),
            null_model: false,
            replicates: null.replicates,
            alpha: null.alpha,
            master_seed: null.seed,
            missing_policy: flags.missing.to_string(),
            budget_cap: flags.budget,
            noise_policy: flags.noise.to_string(),
            metadata: Map::new(),
        }
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.metadata.insert(key.to_string(), value.into());
    }
}
