//! Fixture generators shared by the CLI and acceptance tests.

#![allow(dead_code)]

use mwa_core::OpinionMatrix;
use rand::Rng;

pub fn names(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("t{i:02}")).collect()
}

pub fn matrix(cols: &[Vec<u32>]) -> OpinionMatrix {
    let cols: Vec<Vec<String>> = cols.iter().map(|c| c.iter().map(u32::to_string).collect()).collect();
    OpinionMatrix::from_columns(names(cols.len()), &cols).unwrap()
}

pub fn random_labels<R: Rng>(rng: &mut R, n: usize, groups: u32) -> Vec<u32> {
    (0..n).map(|_| rng.random_range(0..groups)).collect()
}

/// Copies of a shared binary latent, each cell flipped with probability `flip`.
pub fn aligned_topics<R: Rng>(rng: &mut R, latent: &[u32], m: usize, flip: f64) -> Vec<Vec<u32>> {
    (0..m)
        .map(|_| latent.iter().map(|&l| if rng.random_bool(flip) { 1 - l } else { l }).collect())
        .collect()
}

/// Every combination of `m` binary opinions, each row repeated `reps` times.
pub fn full_factorial(m: usize, reps: usize) -> Vec<Vec<u32>> {
    (0..m)
        .map(|t| (0..(1usize << m) * reps).map(|r| (((r / reps) >> t) & 1) as u32).collect())
        .collect()
}

pub fn csv(cols: &[Vec<u32>]) -> String {
    let mut s = names(cols.len()).join(",");
    s.push('\n');
    for r in 0..cols[0].len() {
        let row: Vec<String> = cols.iter().map(|c| c[r].to_string()).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

/// Long-format votes: two blocs voting in opposition on every item.
pub fn two_bloc_votes(topics: &[&str], a: usize, b: usize, items: usize) -> String {
    let mut s = String::from("voter_id,topic,item_id,vote\n");
    for t in topics {
        for v in 0..a + b {
            for i in 0..items {
                let yes = (i % 2 == 0) == (v < a);
                s.push_str(&format!("v{v:03},{t},{i},{}\n", if yes { 1 } else { -1 }));
            }
        }
    }
    s
}
