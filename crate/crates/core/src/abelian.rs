//! Finitely generated abelian groups in primary-decomposition normal form.
//!
//! A group is stored as a sorted list of distinct factors, each either the
//! infinite cyclic group `Z` or a cyclic group `Z_{p^a}` of prime-power
//! order, together with a multiplicity. For such a group with multiplicities
//! `k_1, ..., k_n` the direct summands up to isomorphism are exactly the
//! groups obtained by keeping `0 <= t_i <= k_i` copies of each factor, which
//! gives
//!
//! * capacity `C = (k_1 + 1) * ... * (k_n + 1)`,
//! * strong capacity `SC = C - 1` (finitely generated abelian groups are Hopfian),
//! * depth and strong depth `D = SD = k_1 + ... + k_n + 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime-power exponent must be at least 1")]
    ZeroExponent,
    #[error("{prime}^{exponent} does not fit in 64 bits")]
    ModulusOverflow { prime: u64, exponent: u32 },
    #[error("multiplicity overflow while merging factor {0}")]
    MultiplicityOverflow(Factor),
}

/// A single indecomposable cyclic factor.
///
/// The derived ordering puts `InfiniteCyclic` first and then sorts prime
/// powers by `(prime, exponent)`, which is the canonical summand order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    InfiniteCyclic,
    PrimePower { prime: u64, exponent: u32 },
}

impl Factor {
    pub fn prime_power(prime: u64, exponent: u32) -> Result<Self, AbelianError> {
        if exponent == 0 {
            return Err(AbelianError::ZeroExponent);
        }
        if !is_prime(prime) {
            return Err(AbelianError::NotPrime(prime));
        }
        prime
            .checked_pow(exponent)
            .ok_or(AbelianError::ModulusOverflow { prime, exponent })?;
        Ok(Factor::PrimePower { prime, exponent })
    }

    /// Order of the cyclic factor, `None` for `Z`.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            Factor::InfiniteCyclic => None,
            // checked at construction
            Factor::PrimePower { prime, exponent } => Some(prime.pow(exponent)),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Factor::PrimePower { .. })
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus() {
            None => write!(f, "Z"),
            Some(m) => write!(f, "Z_{m}"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// A finitely generated abelian group in canonical primary decomposition.
///
/// Invariants: factors are pairwise distinct, sorted by [`Factor`]'s order,
/// and every multiplicity is at least 1. The empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AbelianGroup {
    summands: Vec<(Factor, u64)>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// `Z^rank`.
    pub fn free_abelian(rank: u64) -> Self {
        let summands = if rank == 0 {
            Vec::new()
        } else {
            vec![(Factor::InfiniteCyclic, rank)]
        };
        AbelianGroup { summands }
    }

    /// Normalizes a list of `(modulus, multiplicity)` pairs.
    ///
    /// Modulus `0` stands for `Z`, modulus `1` for the trivial factor and any
    /// `m >= 2` for `Z_m`; composite moduli are split into prime-power parts.
    pub fn canonicalize(raw: &[(u64, u32)]) -> Self {
        let mut merged: BTreeMap<Factor, u64> = BTreeMap::new();
        for &(modulus, multiplicity) in raw {
            if multiplicity == 0 {
                continue;
            }
            let k = u64::from(multiplicity);
            match modulus {
                0 => *merged.entry(Factor::InfiniteCyclic).or_default() += k,
                1 => {}
                m => {
                    for (prime, exponent) in num_prime::nt_funcs::factorize64(m) {
                        let factor = Factor::PrimePower {
                            prime,
                            exponent: exponent as u32,
                        };
                        // each raw entry adds at most u32::MAX, so u64 cannot
                        // overflow for any list that fits in memory
                        *merged.entry(factor).or_default() += k;
                    }
                }
            }
        }
        AbelianGroup {
            summands: merged.into_iter().collect(),
        }
    }

    /// Builds a group from already-indecomposable factors, merging repeats.
    pub fn from_factors<I>(factors: I) -> Result<Self, AbelianError>
    where
        I: IntoIterator<Item = (Factor, u64)>,
    {
        let mut merged: BTreeMap<Factor, u64> = BTreeMap::new();
        for (factor, k) in factors {
            if k == 0 {
                continue;
            }
            let slot = merged.entry(factor).or_default();
            *slot = slot
                .checked_add(k)
                .ok_or(AbelianError::MultiplicityOverflow(factor))?;
        }
        Ok(AbelianGroup {
            summands: merged.into_iter().collect(),
        })
    }

    /// Inverse of [`AbelianGroup::canonicalize`] up to normalization: one
    /// `(modulus, multiplicity)` pair per factor, splitting multiplicities
    /// larger than `u32::MAX`.
    pub fn to_raw(&self) -> Vec<(u64, u32)> {
        let mut raw = Vec::with_capacity(self.summands.len());
        for &(factor, k) in &self.summands {
            let modulus = factor.modulus().unwrap_or(0);
            let mut rest = k;
            while rest > 0 {
                let chunk = rest.min(u64::from(u32::MAX));
                raw.push((modulus, chunk as u32));
                rest -= chunk;
            }
        }
        raw
    }

    pub fn summands(&self) -> &[(Factor, u64)] {
        &self.summands
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.summands.iter().all(|(f, _)| f.is_finite())
    }

    pub fn multiplicity(&self, factor: Factor) -> u64 {
        self.summands
            .binary_search_by(|(f, _)| f.cmp(&factor))
            .map(|i| self.summands[i].1)
            .unwrap_or(0)
    }

    /// Torsion-free rank.
    pub fn rank(&self) -> u64 {
        self.multiplicity(Factor::InfiniteCyclic)
    }

    /// Group order, or `None` when the group is infinite.
    pub fn order(&self) -> Option<BigUint> {
        let mut order = BigUint::one();
        for &(factor, k) in &self.summands {
            let m = BigUint::from(factor.modulus()?);
            order *= num_traits::pow::Pow::pow(&m, k);
        }
        Some(order)
    }

    /// Number of indecomposable cyclic factors counted with multiplicity.
    pub fn factor_count(&self) -> u64 {
        self.summands
            .iter()
            .try_fold(0u64, |acc, &(_, k)| acc.checked_add(k))
            .expect("factor count exceeds u64")
    }

    /// Whether `self` is isomorphic to a direct summand of `other`.
    pub fn is_summand_of(&self, other: &AbelianGroup) -> bool {
        self.summands
            .iter()
            .all(|&(factor, k)| k <= other.multiplicity(factor))
    }

    /// Every way of choosing `0 <= t_i <= k_i` copies of each factor, in
    /// lexicographic order of `(t_1, ..., t_n)`.
    pub fn selections(&self) -> Selections<'_> {
        Selections {
            group: self,
            next: Some(vec![0; self.summands.len()]),
        }
    }

    /// Direct summands up to isomorphism, one per [`SummandSelection`].
    pub fn direct_summands(&self) -> impl Iterator<Item = AbelianGroup> + '_ {
        self.selections().map(|s| s.to_group())
    }

    pub fn capacity(&self) -> BigUint {
        self.summands.iter().fold(BigUint::one(), |acc, &(_, k)| {
            acc * (BigUint::from(k) + 1u32)
        })
    }

    pub fn strong_capacity(&self) -> BigUint {
        self.capacity() - 1u32
    }

    /// Longest chain length, `k_1 + ... + k_n + 1`.
    pub fn depth(&self) -> u64 {
        self.factor_count()
            .checked_add(1)
            .expect("depth exceeds u64")
    }

    pub fn strong_depth(&self) -> u64 {
        self.depth()
    }

    /// A chain of proper direct summands of length [`depth`](Self::depth),
    /// smallest first. Multiplicities grow one factor at a time in canonical
    /// order: `1, A, A^2, ..., A^k, A^k + B, ...`.
    pub fn witness_chain(&self) -> Vec<AbelianGroup> {
        let mut chain = vec![AbelianGroup::trivial()];
        let mut current: Vec<(Factor, u64)> = Vec::new();
        for &(factor, k) in &self.summands {
            current.push((factor, 0));
            for _ in 0..k {
                current.last_mut().unwrap().1 += 1;
                chain.push(AbelianGroup {
                    summands: current.clone(),
                });
            }
        }
        chain
    }

    /// All finite abelian groups of the given order, sorted.
    pub fn all_of_order(order: u64) -> Vec<AbelianGroup> {
        if order == 0 {
            return Vec::new();
        }
        let mut groups = vec![Vec::new()];
        for (prime, exponent) in num_prime::nt_funcs::factorize64(order) {
            let mut next = Vec::new();
            for partition in partitions(exponent as u32) {
                let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
                for part in partition {
                    *counts.entry(part).or_default() += 1;
                }
                for prefix in &groups {
                    let mut g: Vec<(Factor, u64)> = Vec::clone(prefix);
                    g.extend(
                        counts
                            .iter()
                            .map(|(&exponent, &k)| (Factor::PrimePower { prime, exponent }, k)),
                    );
                    next.push(g);
                }
            }
            groups = next;
        }
        let mut out: Vec<AbelianGroup> = groups
            .into_iter()
            .map(|mut summands| {
                summands.sort();
                AbelianGroup { summands }
            })
            .collect();
        out.sort();
        out
    }

    /// All finite abelian groups of order `1..=max_order`, by order.
    pub fn all_up_to_order(max_order: u64) -> Vec<AbelianGroup> {
        (1..=max_order).flat_map(Self::all_of_order).collect()
    }
}

// Partitions of n into positive parts, each listed in non-increasing order.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "1");
        }
        for (i, (factor, k)) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{factor}")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

pub fn is_summand(candidate: &AbelianGroup, group: &AbelianGroup) -> bool {
    candidate.is_summand_of(group)
}

/// A choice of `t_i` copies of each factor of a fixed group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandSelection<'a> {
    group: &'a AbelianGroup,
    counts: Vec<u64>,
}

impl<'a> SummandSelection<'a> {
    pub fn new(group: &'a AbelianGroup, counts: Vec<u64>) -> Option<Self> {
        let fits = counts.len() == group.summands.len()
            && counts
                .iter()
                .zip(&group.summands)
                .all(|(&t, &(_, k))| t <= k);
        fits.then_some(SummandSelection { group, counts })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn to_group(&self) -> AbelianGroup {
        AbelianGroup {
            summands: self
                .group
                .summands
                .iter()
                .zip(&self.counts)
                .filter(|(_, &t)| t > 0)
                .map(|(&(factor, _), &t)| (factor, t))
                .collect(),
        }
    }
}

pub struct Selections<'a> {
    group: &'a AbelianGroup,
    next: Option<Vec<u64>>,
}

impl<'a> Iterator for Selections<'a> {
    type Item = SummandSelection<'a>;

    fn next(&mut self) -> Option<Self::Item> {
        let counts = self.next.take()?;
        // odometer, last position fastest
        let mut succ = counts.clone();
        let mut advanced = false;
        for i in (0..succ.len()).rev() {
            if succ[i] < self.group.summands[i].1 {
                succ[i] += 1;
                advanced = true;
                break;
            }
            succ[i] = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(SummandSelection {
            group: self.group,
            counts,
        })
    }
}
