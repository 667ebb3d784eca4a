//! One function per subcommand, each producing the `results` and optional
//! `plot_data` members of the output document.

use std::collections::BTreeMap;

use mwa_core::alignment::{
    alignment_spectrum, curve_from_entries, multiway_alignment, topic_addition_delta, topic_addition_deltas,
    SpectrumOptions, SubsetScore,
};
use mwa_core::cluster::{default_eps_grid, default_min_samples_grid, optimize_clustering};
use mwa_core::null::{net_score, null_distribution, spectrum_with_null, NullStats};
use mwa_core::{Error as CoreError, OpinionMatrix};
use serde_json::{json, Value};

use crate::config::{Flags, RunConfig, DEFAULT_DELTA_ORDER};
use crate::ingest::{load_opinions, load_votes, write_opinions};
use crate::output::real;
use crate::CliError;

pub struct Report {
    pub config: RunConfig,
    pub results: Vec<Value>,
    pub plot_data: Option<Value>,
}

impl Report {
    pub fn into_json(self) -> Value {
        let mut doc = json!({
            "config": serde_json::to_value(&self.config).expect("config serializes"),
            "results": self.results,
        });
        if let Some(p) = self.plot_data {
            doc["plot_data"] = p;
        }
        doc
    }
}

fn load(flags: &Flags, config: &mut RunConfig) -> Result<OpinionMatrix, CliError> {
    let loaded = load_opinions(&flags.input, flags.missing)?;
    config.note("rows_read", loaded.rows_read);
    config.note("rows_dropped", loaded.rows_dropped);
    config.note("n", loaded.matrix.n());
    config.note("m", loaded.matrix.m());
    Ok(loaded.matrix)
}

/// The requested subset, or every topic in name order.
fn subset_or_all(flags: &Flags, matrix: &OpinionMatrix) -> Result<Vec<String>, CliError> {
    let names = match &flags.subset {
        Some(s) => s.clone(),
        None => matrix.topics().to_vec(),
    };
    let idx = matrix.resolve_subset(&names)?;
    Ok(matrix.subset_names(&idx))
}

fn stats_json(s: &NullStats) -> Value {
    json!({
        "mean": real(s.mean),
        "lower": real(s.lower),
        "median": real(s.median),
        "upper": real(s.upper),
        "alpha": real(s.alpha),
        "replicates": s.replicates,
    })
}

fn entry_json(e: &SubsetScore) -> Value {
    json!({
        "subset": e.subset,
        "order": e.order,
        "score": real(e.score),
        "score_kind": e.score_kind.as_str(),
        "norm": e.norm.as_str(),
    })
}

pub fn score(flags: &Flags) -> Result<Report, CliError> {
    let mut config = RunConfig::new("score", flags);
    let matrix = load(flags, &mut config)?;
    let subset = subset_or_all(flags, &matrix)?;
    let s = multiway_alignment(&matrix, &subset, flags.score, flags.norm)?;
    config.subset = Some(subset.clone());
    config.max_order = Some(subset.len());
    let result = json!({
        "subset": subset,
        "order": subset.len(),
        "score": real(s),
        "score_kind": flags.score.as_str(),
        "norm": flags.norm.as_str(),
    });
    Ok(Report { config, results: vec![result], plot_data: None })
}

fn restrict(flags: &Flags, matrix: OpinionMatrix) -> Result<OpinionMatrix, CliError> {
    match &flags.subset {
        Some(s) => Ok(matrix.select(s)?),
        None => Ok(matrix),
    }
}

fn spectrum_options(flags: &Flags, m: usize) -> SpectrumOptions {
    SpectrumOptions {
        max_order: Some(flags.max_order.unwrap_or(m)),
        score: flags.score,
        norm: flags.norm,
        budget_cap: flags.budget,
        lattice_cache: true,
    }
}

pub fn spectrum(flags: &Flags) -> Result<Report, CliError> {
    let mut config = RunConfig::new("spectrum", flags);
    let matrix = restrict(flags, load(flags, &mut config)?)?;
    let opts = spectrum_options(flags, matrix.m());
    let report = match flags.replicates {
        Some(_) => {
            config.null_model = true;
            config.note("percentile_method", "nearest-rank");
            spectrum_with_null(&matrix, &opts, &flags.null_options())?
        }
        None => alignment_spectrum(&matrix, &opts)?,
    };
    config.max_order = Some(report.meta.max_order);
    let mut results = Vec::with_capacity(report.entries.len());
    let mut by_order: BTreeMap<usize, Vec<Value>> = BTreeMap::new();
    for (i, e) in report.entries.iter().enumerate() {
        let mut r = entry_json(e);
        let mut point = json!({"k": e.order, "score": real(e.score), "subset": e.subset});
        if let (Some(stats), Some(sig)) = (&report.null, report.significant(i)) {
            r["null"] = stats_json(&stats[i]);
            r["significant"] = Value::Bool(sig);
            point["significant"] = Value::Bool(sig);
        }
        results.push(r);
        by_order.entry(e.order).or_default().push(point);
    }
    let orders: Vec<Value> = by_order.into_iter().map(|(k, points)| json!({"k": k, "points": points})).collect();
    Ok(Report { config, results, plot_data: Some(json!({ "orders": orders })) })
}

pub fn curve(flags: &Flags) -> Result<Report, CliError> {
    let mut config = RunConfig::new("curve", flags);
    let matrix = restrict(flags, load(flags, &mut config)?)?;
    let report = alignment_spectrum(&matrix, &spectrum_options(flags, matrix.m()))?;
    config.max_order = Some(report.meta.max_order);
    config.note("auc_normalization", "trapezoid area divided by (orders - 1); single point: its score");
    let curve = curve_from_entries(&report.entries);
    let results: Vec<Value> = curve
        .points
        .iter()
        .map(|p| json!({"order": p.order, "subset": p.subset, "score": real(p.score)}))
        .collect();
    let points: Vec<Value> =
        curve.points.iter().map(|p| json!({"k": p.order, "score": real(p.score), "subset": p.subset})).collect();
    Ok(Report { config, results, plot_data: Some(json!({"auc": real(curve.auc), "points": points})) })
}

pub fn null(flags: &Flags) -> Result<Report, CliError> {
    let mut config = RunConfig::new("null", flags);
    let matrix = load(flags, &mut config)?;
    let subset = subset_or_all(flags, &matrix)?;
    let opts = flags.null_options();
    let raw = multiway_alignment(&matrix, &subset, flags.score, flags.norm)?;
    let stats = null_distribution(&matrix, &subset, flags.score, flags.norm, &opts)?;
    let net = match net_score(raw, stats.mean) {
        Ok(x) => real(x),
        Err(CoreError::DegenerateNull(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    config.null_model = true;
    config.subset = Some(subset.clone());
    config.max_order = Some(subset.len());
    config.note("percentile_method", "nearest-rank");
    config.note("net_definition", "(score - null mean) / (1 - null mean)");
    let result = json!({
        "subset": subset,
        "order": subset.len(),
        "score": real(raw),
        "score_kind": flags.score.as_str(),
        "norm": flags.norm.as_str(),
        "null": stats_json(&stats),
        "net": net,
        "significant": raw > stats.upper,
    });
    Ok(Report { config, results: vec![result], plot_data: None })
}

pub fn delta(flags: &Flags) -> Result<Report, CliError> {
    let mut config = RunConfig::new("delta", flags);
    let matrix = load(flags, &mut config)?;
    let topic = flags.topic.clone().ok_or_else(|| CliError::Usage("delta needs --topic".into()))?;
    config.note("delta_definition", "(extended score - base score) / base score");
    let records: Vec<Value> = match &flags.subset {
        Some(base) => {
            let idx = matrix.resolve_subset(base)?;
            let base = matrix.subset_names(&idx);
            let before = multiway_alignment(&matrix, &base, flags.score, flags.norm)?;
            let mut ext = base.clone();
            ext.push(topic.clone());
            let after = multiway_alignment(&matrix, &ext, flags.score, flags.norm)?;
            let d = match topic_addition_delta(&matrix, &base, &topic, flags.score, flags.norm) {
                Ok(x) => real(x),
                Err(CoreError::DegenerateBase(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            config.max_order = Some(base.len());
            vec![json!({
                "base": base,
                "added": topic,
                "order": base.len(),
                "base_score": real(before),
                "extended_score": real(after),
                "delta": d,
            })]
        }
        None => {
            let top = flags.max_order.unwrap_or(DEFAULT_DELTA_ORDER);
            let rows = topic_addition_deltas(&matrix, &topic, top, flags.score, flags.norm, flags.budget)?;
            config.max_order = Some(top.min(matrix.m().saturating_sub(1)));
            rows.iter()
                .map(|r| {
                    json!({
                        "base": r.base,
                        "added": r.added,
                        "order": r.order,
                        "base_score": real(r.base_score),
                        "extended_score": real(r.extended_score),
                        "delta": r.delta.map_or(Value::Null, real),
                    })
                })
                .collect()
        }
    };
    config.topic = Some(topic);
    Ok(Report { config, results: records, plot_data: None })
}

pub fn cluster_votes(flags: &Flags) -> Result<Report, CliError> {
    let mut config = RunConfig::new("cluster-votes", flags);
    let set = load_votes(&flags.input)?;
    let eps = default_eps_grid();
    let min_samples = default_min_samples_grid();
    config.note("voters", set.voters.len());
    config.note("topics", set.topics.len());
    config.note("eps_grid", eps.clone());
    config.note("min_samples_grid", min_samples.clone());
    let mut results = Vec::with_capacity(set.topics.len());
    let mut columns = Vec::new();
    for (name, votes) in &set.topics {
        match optimize_clustering(votes, &eps, &min_samples, flags.noise) {
            Ok(r) => {
                results.push(json!({
                    "topic": name,
                    "status": "ok",
                    "eps": real(r.eps),
                    "min_samples": r.min_samples,
                    "silhouette": real(r.silhouette),
                    "clusters": r.n_clusters,
                    "noise_count": r.noise_count,
                    "groups": r.partition.group_count(),
                    "labels": r.partition.labels(),
                }));
                columns.push((name.clone(), r.partition));
            }
            Err(CoreError::NoValidClustering) => {
                results.push(json!({"topic": name, "status": "no-valid-clustering"}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(path) = &flags.partitions {
        if columns.is_empty() {
            return Err(CliError::Data("no topic produced a valid clustering".into()));
        }
        let (names, parts): (Vec<String>, Vec<_>) = columns.into_iter().unzip();
        let matrix = OpinionMatrix::from_partitions(names, parts)?.with_individuals(set.voters.clone())?;
        let file = std::fs::File::create(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        write_opinions(&matrix, file)?;
    }
    Ok(Report { config, results, plot_data: None })
}
