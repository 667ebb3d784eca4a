//! Brute-force reference implementations written directly from the textbook
//! definitions. Nothing here calls into the library's math.

#![allow(dead_code)]

use std::collections::BTreeMap;

use mwa_core::OpinionMatrix;
use rand::Rng;

pub fn random_labels<R: Rng>(rng: &mut R, n: usize, groups: u32) -> Vec<u32> {
    (0..n).map(|_| rng.random_range(0..groups)).collect()
}

pub fn topic_names(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("t{i:02}")).collect()
}

pub fn matrix(cols: &[Vec<u32>]) -> OpinionMatrix {
    let cols: Vec<Vec<String>> = cols.iter().map(|c| c.iter().map(u32::to_string).collect()).collect();
    OpinionMatrix::from_columns(topic_names(cols.len()), &cols).unwrap()
}

fn counts<T: Ord + Clone>(xs: &[T]) -> BTreeMap<T, usize> {
    let mut m = BTreeMap::new();
    for x in xs {
        *m.entry(x.clone()).or_insert(0) += 1;
    }
    m
}

/// `-sum p ln p`.
pub fn entropy<T: Ord + Clone>(xs: &[T]) -> f64 {
    let n = xs.len() as f64;
    counts(xs).values().map(|&c| c as f64 / n).map(|p| -p * p.ln()).sum()
}

/// `sum p_ij ln(p_ij / (p_i p_j))`.
pub fn mutual_information(a: &[u32], b: &[u32]) -> f64 {
    let n = a.len() as f64;
    let ca = counts(a);
    let cb = counts(b);
    let pairs: Vec<(u32, u32)> = a.iter().copied().zip(b.iter().copied()).collect();
    counts(&pairs)
        .iter()
        .map(|(&(x, y), &c)| {
            let pij = c as f64 / n;
            pij * (pij / ((ca[&x] as f64 / n) * (cb[&y] as f64 / n))).ln()
        })
        .sum()
}

/// Row tuples over the given columns.
pub fn joint(cols: &[&[u32]]) -> Vec<Vec<u32>> {
    (0..cols[0].len()).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

/// Dense relabeling of arbitrary values by first occurrence.
pub fn relabel<T: Ord + Clone>(xs: &[T]) -> Vec<u32> {
    let mut seen = BTreeMap::new();
    xs.iter()
        .map(|x| {
            let next = seen.len() as u32;
            *seen.entry(x.clone()).or_insert(next)
        })
        .collect()
}

/// Labels with the given group sizes, in blocks.
pub fn blocks(sizes: &[usize]) -> Vec<u32> {
    sizes.iter().enumerate().flat_map(|(g, &s)| std::iter::repeat_n(g as u32, s)).collect()
}

/// Mean MI over every permutation of `b` (Heap's algorithm).
pub fn emi_exhaustive(a: &[u32], b: &[u32]) -> f64 {
    let n = b.len();
    let mut perm = b.to_vec();
    let mut c = vec![0usize; n];
    let mut total = mutual_information(a, &perm);
    let mut count = 1u64;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            total += mutual_information(a, &perm);
            count += 1;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total / count as f64
}

/// Arithmetic-mean NMI with the zero-entropy conventions.
pub fn nmi_arithmetic(a: &[u32], b: &[u32]) -> f64 {
    let (ha, hb) = (entropy(a), entropy(b));
    if ha == 0.0 && hb == 0.0 {
        return 1.0;
    }
    if ha == 0.0 || hb == 0.0 {
        return 0.0;
    }
    mutual_information(a, b) / ((ha + hb) / 2.0)
}

/// Silhouette straight from the definition, looping over explicit member
/// lists. Noise (`None`) is skipped; singleton members score 0.
pub fn silhouette(d: &[Vec<f64>], labels: &[Option<u32>]) -> f64 {
    let mut members: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if let Some(c) = l {
            members.entry(*c).or_default().push(i);
        }
    }
    let mut scores = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        let Some(c) = l else { continue };
        let own = &members[c];
        if own.len() == 1 {
            scores.push(0.0);
            continue;
        }
        let a = own.iter().filter(|&&j| j != i).map(|&j| d[i][j]).sum::<f64>() / (own.len() - 1) as f64;
        let b = members
            .iter()
            .filter(|(k, _)| *k != c)
            .map(|(_, ms)| ms.iter().map(|&j| d[i][j]).sum::<f64>() / ms.len() as f64)
            .fold(f64::INFINITY, f64::min);
        scores.push(if a.max(b) == 0.0 { 0.0 } else { (b - a) / a.max(b) });
    }
    scores.iter().sum::<f64>() / scores.len() as f64
}
