//! Whole-table convenience functions mirroring the Python package names.

use alloc::vec::Vec;

use crate::alignment::multiway_alignment;
use crate::error::Result;
use crate::info::{NormalizationKind, ScoreKind};
use crate::null::{net_alignment, NullOptions};
use crate::partition::{consensus_of, OpinionMatrix};

/// Consensus labels over every topic of `opinions`.
pub fn get_consensus_labels(opinions: &OpinionMatrix) -> Vec<u32> {
    let all: Vec<usize> = (0..opinions.m()).collect();
    consensus_of(opinions, &all).labels().to_vec()
}

/// Multiway alignment over every topic. With `adjusted` the net score
/// against the default permutation null is returned instead.
pub fn multiway_alignment_score(opinions: &OpinionMatrix, which_score: ScoreKind, adjusted: bool) -> Result<f64> {
    multiway_alignment_score_with(
        opinions,
        which_score,
        adjusted,
        NormalizationKind::default(),
        &NullOptions::default(),
    )
}

pub fn multiway_alignment_score_with(
    opinions: &OpinionMatrix,
    which_score: ScoreKind,
    adjusted: bool,
    norm: NormalizationKind,
    null: &NullOptions,
) -> Result<f64> {
    let topics = opinions.topics();
    if adjusted {
        Ok(net_alignment(opinions, topics, which_score, norm, null)?.0.net)
    } else {
        multiway_alignment(opinions, topics, which_score, norm)
    }
}
