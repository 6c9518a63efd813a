//! Free groups of finite rank.
//!
//! Every retract of `F_k` is free of rank at most `k`, and each `F_i` with
//! `i <= k` is a retract (project away the extra generators). So the
//! dominated classes are `F_0, ..., F_k` and the only chains are rank chains.

use std::fmt;

use thiserror::Error;

pub const MAX_RANK: u32 = i32::MAX as u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("free group rank {0} exceeds the supported maximum {MAX_RANK}")]
pub struct RankTooLarge(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeGroup {
    rank: u32,
}

impl FreeGroup {
    pub fn new(rank: u64) -> Result<Self, RankTooLarge> {
        if rank > u64::from(MAX_RANK) {
            return Err(RankTooLarge(rank));
        }
        Ok(FreeGroup { rank: rank as u32 })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn capacity(&self) -> u64 {
        u64::from(self.rank) + 1
    }

    pub fn strong_capacity(&self) -> u64 {
        u64::from(self.rank)
    }

    pub fn depth(&self) -> u64 {
        u64::from(self.rank) + 1
    }

    pub fn strong_depth(&self) -> u64 {
        self.depth()
    }

    /// `F_0, F_1, ..., F_rank`.
    pub fn dominated_classes(&self) -> impl Iterator<Item = FreeGroup> {
        (0..=self.rank).map(|rank| FreeGroup { rank })
    }

    /// Whether `self` is a retract of `other`.
    pub fn is_retract_of(&self, other: &FreeGroup) -> bool {
        self.rank <= other.rank
    }

    /// Rank chain `F_0 < F_1 < ... < F_rank`, smallest first.
    pub fn witness_chain(&self) -> Vec<FreeGroup> {
        self.dominated_classes().collect()
    }
}

impl fmt::Display for FreeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.rank)
    }
}
