mod common;

use mwa_core::cluster::{
    cosine_distance, dbscan, default_eps_grid, default_min_samples_grid, optimize_clustering, silhouette,
    DistanceMatrix, NoisePolicy, VoteMatrix,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_distances(rng: &mut ChaCha8Rng, v: usize) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; v]; v];
    for (i, j) in (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))) {
        let x = rng.random_range(0.0..2.0);
        d[i][j] = x;
        d[j][i] = x;
    }
    d
}

#[test]
fn silhouette_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    while checked < 300 {
        let v = rng.random_range(3..=20);
        let rows = random_distances(&mut rng, v);
        let k = rng.random_range(2..=4);
        let labels: Vec<Option<u32>> =
            (0..v).map(|_| if rng.random_bool(0.15) { None } else { Some(rng.random_range(0..k)) }).collect();
        let d = DistanceMatrix::from_dense(&rows).unwrap();
        let Ok(s) = silhouette(&d, &labels) else { continue };
        let oracle = common::silhouette(&rows, &labels);
        assert!((s - oracle).abs() < 1e-12, "{s} vs {oracle}");
        assert!((-1.0..=1.0).contains(&s));
        checked += 1;
    }
}

#[test]
fn silhouette_on_dbscan_output_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..100 {
        let v = rng.random_range(4..=20);
        let items = rng.random_range(1..8);
        let rows: Vec<Vec<i8>> = (0..v).map(|_| (0..items).map(|_| rng.random_range(-1..=1)).collect()).collect();
        let d = cosine_distance(&VoteMatrix::from_rows(&rows).unwrap());
        let dense: Vec<Vec<f64>> = (0..v).map(|i| d.row(i).to_vec()).collect();
        let labels = dbscan(&d, 0.3, 2).unwrap();
        if let Ok(s) = silhouette(&d, &labels) {
            assert!((s - common::silhouette(&dense, &labels)).abs() < 1e-12);
        }
    }
}

#[test]
fn distances_are_symmetric_and_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..50 {
        let v = rng.random_range(2..15);
        let items = rng.random_range(1..10);
        let rows: Vec<Vec<i8>> = (0..v).map(|_| (0..items).map(|_| rng.random_range(-1..=1)).collect()).collect();
        let d = cosine_distance(&VoteMatrix::from_rows(&rows).unwrap());
        let dense: Vec<Vec<f64>> = (0..v).map(|i| d.row(i).to_vec()).collect();
        assert!(DistanceMatrix::from_dense(&dense).is_ok());
    }
}

#[test]
fn dbscan_ignores_voter_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..50 {
        let v = rng.random_range(4..20);
        let centers: Vec<Vec<i8>> = (0..3).map(|_| (0..6).map(|_| rng.random_range(-1..=1)).collect()).collect();
        let rows: Vec<Vec<i8>> = (0..v)
            .map(|_| {
                let mut r = centers[rng.random_range(0..3)].clone();
                if rng.random_bool(0.3) {
                    let i = rng.random_range(0..6);
                    r[i] = rng.random_range(-1..=1);
                }
                r
            })
            .collect();
        let mut order: Vec<usize> = (0..v).collect();
        order.shuffle(&mut rng);
        let shuffled: Vec<Vec<i8>> = order.iter().map(|&i| rows[i].clone()).collect();
        // Core-only clusters are order independent; use a radius no border point can straddle.
        let a = dbscan(&cosine_distance(&VoteMatrix::from_rows(&rows).unwrap()), 1e-9, 2).unwrap();
        let b = dbscan(&cosine_distance(&VoteMatrix::from_rows(&shuffled).unwrap()), 1e-9, 2).unwrap();
        let back: Vec<Option<u32>> = {
            let mut out = vec![None; v];
            for (pos, &i) in order.iter().enumerate() {
                out[i] = b[pos];
            }
            out
        };
        assert_eq!(common::relabel(&a), common::relabel(&back));
    }
}

#[test]
fn two_blocs_are_recovered() {
    let mut rows = vec![vec![1i8, 1, -1, 1, 0]; 6];
    rows.extend(vec![vec![-1i8, -1, 1, -1, 0]; 5]);
    let votes = VoteMatrix::from_rows(&rows).unwrap();
    let r = optimize_clustering(&votes, &default_eps_grid(), &default_min_samples_grid(), NoisePolicy::Singletons).unwrap();
    assert_eq!(r.n_clusters, 2);
    assert_eq!(r.noise_count, 0);
    assert_eq!(r.silhouette, 1.0);
    assert_eq!(r.partition.group_count(), 2);
}
