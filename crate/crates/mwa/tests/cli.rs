mod support;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mwa_core::api::multiway_alignment_score;
use mwa_core::ScoreKind;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use support::{aligned_topics, csv, matrix, random_labels, two_bloc_votes};

fn mwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mwa")).args(args).env("MWA_THREADS", "2").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = mwa(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn random_csv(dir: &Path, m: usize, n: usize) -> PathBuf {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cols: Vec<Vec<u32>> = (0..m).map(|_| random_labels(&mut rng, n, 3)).collect();
    write(dir, "random.csv", &csv(&cols))
}

#[test]
fn spectrum_lists_every_subset_up_to_max_order() {
    let dir = tempfile::tempdir().unwrap();
    let input = random_csv(dir.path(), 6, 60);
    let doc = json(&["spectrum", "--input", input.to_str().unwrap(), "--max-order", "3", "--seed", "7"]);
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 15 + 20);
    assert_eq!(results[0]["subset"], serde_json::json!(["t00", "t01"]));
    assert_eq!(results.last().unwrap()["subset"], serde_json::json!(["t03", "t04", "t05"]));
    assert_eq!(doc["config"]["max_order"], 3);
    assert_eq!(doc["config"]["master_seed"], 7);
    let orders = doc["plot_data"]["orders"].as_array().unwrap();
    assert_eq!(orders.len(), 2);
    assert_eq!(orders[1]["points"].as_array().unwrap().len(), 20);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let input = random_csv(dir.path(), 4, 40);
    let args = ["spectrum", "--input", input.to_str().unwrap(), "--replicates", "100", "--seed", "11"];
    let a = mwa(&args);
    let b = mwa(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.ends_with(b"}\n"));
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(doc["results"][0]["null"]["mean"].is_number());
    assert!(doc["results"][0]["significant"].is_boolean());
}

#[test]
fn identical_topics_give_a_flat_curve_at_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let base = random_labels(&mut rng, 50, 3);
    let input = write(dir.path(), "same.csv", &csv(&vec![base; 4]));
    let doc = json(&["curve", "--input", input.to_str().unwrap()]);
    assert_eq!(doc["plot_data"]["auc"], 1.0);
    let scores: Vec<f64> = doc["results"].as_array().unwrap().iter().map(|r| r["score"].as_f64().unwrap()).collect();
    assert_eq!(scores, vec![1.0; 3]);
}

#[test]
fn exit_codes_separate_usage_from_data_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = random_csv(dir.path(), 3, 20);
    let path = input.to_str().unwrap();
    assert_eq!(mwa(&["score", "--input", path, "--score", "bogus"]).status.code(), Some(2));
    assert_eq!(mwa(&["null", "--input", path, "--replicates", "10"]).status.code(), Some(2));
    assert_eq!(mwa(&["null", "--input", path, "--alpha", "1.5"]).status.code(), Some(2));
    assert_eq!(mwa(&["delta", "--input", path]).status.code(), Some(2));
    assert_eq!(mwa(&["score", "--input", path, "--subset", "t00,zz"]).status.code(), Some(1));
    assert_eq!(mwa(&["score", "--input", "/nonexistent/x.csv"]).status.code(), Some(1));
    let ragged = write(dir.path(), "ragged.csv", "a,b\n1,2\n3\n");
    assert_eq!(mwa(&["score", "--input", ragged.to_str().unwrap()]).status.code(), Some(1));
    let out = mwa(&["spectrum", "--input", path, "--budget", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_value_policies() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "gaps.csv", "id,a,b\nr1,x,y\nr2,,y\nr3,NA,z\nr4,x,z\nr5,w,y\n");
    let path = input.to_str().unwrap();
    let dropped = json(&["score", "--input", path]);
    assert_eq!(dropped["config"]["metadata"]["rows_read"], 5);
    assert_eq!(dropped["config"]["metadata"]["rows_dropped"], 2);
    assert_eq!(dropped["config"]["metadata"]["n"], 3);
    let kept = json(&["score", "--input", path, "--missing", "missing-as-category"]);
    assert_eq!(kept["config"]["metadata"]["n"], 5);
    assert_eq!(kept["config"]["missing_policy"], "missing-as-category");
    assert_eq!(mwa(&["score", "--input", path, "--missing", "impute"]).status.code(), Some(2));
}

#[test]
fn delta_single_base_and_batch() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let latent = random_labels(&mut rng, 200, 2);
    let input = write(dir.path(), "aligned.csv", &csv(&aligned_topics(&mut rng, &latent, 4, 0.1)));
    let path = input.to_str().unwrap();
    let one = json(&["delta", "--input", path, "--subset", "t00,t01", "--topic", "t02"]);
    let r = &one["results"][0];
    let (before, after) = (r["base_score"].as_f64().unwrap(), r["extended_score"].as_f64().unwrap());
    assert!((r["delta"].as_f64().unwrap() - (after - before) / before).abs() < 1e-9);
    let batch = json(&["delta", "--input", path, "--topic", "t03"]);
    // Bases drawn from t00..t02: three pairs and one triple.
    assert_eq!(batch["results"].as_array().unwrap().len(), 4);
    assert!(batch["results"].as_array().unwrap().iter().all(|r| r["added"] == "t03"));
}

#[test]
fn clustered_partitions_feed_back_into_score() {
    let dir = tempfile::tempdir().unwrap();
    let votes = write(dir.path(), "votes.csv", &two_bloc_votes(&["econ", "social"], 6, 4, 8));
    let parts = dir.path().join("parts.csv");
    let doc = json(&[
        "cluster-votes",
        "--input",
        votes.to_str().unwrap(),
        "--partitions",
        parts.to_str().unwrap(),
    ]);
    for r in doc["results"].as_array().unwrap() {
        assert_eq!(r["status"], "ok");
        assert_eq!(r["clusters"], 2);
        assert_eq!(r["silhouette"], 1.0);
    }
    let text = std::fs::read_to_string(&parts).unwrap();
    assert!(text.starts_with("id,econ,social\n"));
    assert_eq!(text.lines().count(), 11);
    let score = json(&["score", "--input", parts.to_str().unwrap()]);
    assert_eq!(score["results"][0]["score"], 1.0);
}

#[test]
fn cli_score_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "table.csv", "a,b,c\nA,B,C\nA,B,D\nA,E,C\nF,B,C\n");
    let path = input.to_str().unwrap();
    let m = matrix(&[vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, 1, 0, 0]]);
    for (kind, flag) in [(ScoreKind::Ami, "ami"), (ScoreKind::Nmi, "nmi")] {
        let lib = multiway_alignment_score(&m, kind, false).unwrap();
        let cli = json(&["score", "--input", path, "--score", flag])["results"][0]["score"].as_f64().unwrap();
        assert!((lib - cli).abs() <= 1e-11 * lib.abs().max(1.0), "{flag}: {lib} vs {cli}");
    }
}
