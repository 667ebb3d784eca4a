//! Multiway alignment of categorical opinion data.
//!
//! Each topic splits a population into opinion groups. Intersecting the
//! groups of several topics yields a *consensus partition*; multiway
//! alignment averages, over every topic in a set, how much that topic's
//! partition agrees with the consensus partition of the remaining topics.
//!
//! The crate is `no_std` (with `alloc`). The default `std` feature only adds
//! data-parallel evaluation through rayon; results are bit-identical either
//! way because every reduction runs in a fixed order.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod alignment;
pub mod api;
pub mod cluster;
mod error;
pub mod info;
pub mod null;
pub mod partition;
mod par;

pub use error::{Error, Result};
pub use info::{NormalizationKind, ScoreKind};
pub use partition::{ConsensusPartition, ContingencyTable, OpinionMatrix, Partition};
