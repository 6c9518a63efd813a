//! Depth bounds for finite polyhedra and a catalog of known values.
//!
//! For a finite `n`-dimensional polyhedron `P` whose fundamental group has
//! depth `k_1` and whose universal cover has homology `H_i` of depth `k_i`
//! (`2 <= i <= n`), with every retract of these groups Hopfian,
//!
//! ```text
//! D(P) <= (k_1 + ... + k_n) - n + 1
//! ```
//!
//! Missing homology groups are trivial and contribute `k_i = 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::abelian::AbelianGroup;
use crate::free::FreeGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("{0}: depth was asserted without attesting that every retract is Hopfian")]
    HopfianAssumptionMissing(Slot),
    #[error("homology index {index} is outside 2..={dimension}")]
    DimensionMismatch { index: u32, dimension: u32 },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("asserted depth must be at least 1")]
    ZeroDepth,
    #[error("bound does not fit in 64 bits")]
    Overflow,
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("invalid catalog parameter: {0}")]
    InvalidParameter(String),
}

/// Position of a group in a descriptor: the fundamental group or `H_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Pi1,
    Homology(u32),
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Pi1 => write!(f, "pi1"),
            Slot::Homology(i) => write!(f, "H_{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Abelian(AbelianGroup),
    Free(FreeGroup),
    /// A depth known from elsewhere. The bound needs every retract to be
    /// Hopfian, which cannot be checked here and must be attested.
    AssertedDepth {
        depth: u64,
        hopfian_retracts: bool,
    },
}

impl GroupSpec {
    pub fn asserted(depth: u64, hopfian_retracts: bool) -> Result<Self, BoundError> {
        if depth == 0 {
            return Err(BoundError::ZeroDepth);
        }
        Ok(GroupSpec::AssertedDepth {
            depth,
            hopfian_retracts,
        })
    }

    pub fn trivial() -> Self {
        GroupSpec::Abelian(AbelianGroup::trivial())
    }

    fn resolve(&self, slot: Slot) -> Result<u64, BoundError> {
        match self {
            GroupSpec::Abelian(g) => Ok(g.depth()),
            GroupSpec::Free(f) => Ok(f.depth()),
            GroupSpec::AssertedDepth {
                hopfian_retracts: false,
                ..
            } => Err(BoundError::HopfianAssumptionMissing(slot)),
            GroupSpec::AssertedDepth { depth: 0, .. } => Err(BoundError::ZeroDepth),
            GroupSpec::AssertedDepth { depth, .. } => Ok(*depth),
        }
    }

    pub fn resolve_depth(&self) -> Result<u64, BoundError> {
        self.resolve(Slot::Pi1)
    }

    /// `Some(true)` when the group is known to be finite.
    pub fn is_finite(&self) -> Option<bool> {
        match self {
            GroupSpec::Abelian(g) => Some(g.is_finite()),
            GroupSpec::Free(f) => Some(f.rank() == 0),
            GroupSpec::AssertedDepth { .. } => None,
        }
    }

    /// Number of cyclic factors in the primary decomposition, for abelian specs.
    pub fn cyclic_factor_count(&self) -> Option<u64> {
        match self {
            GroupSpec::Abelian(g) => Some(g.factor_count()),
            GroupSpec::Free(f) if f.rank() == 0 => Some(0),
            _ => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Abelian(g) => write!(f, "{g}"),
            GroupSpec::Free(g) => write!(f, "{g}"),
            GroupSpec::AssertedDepth { depth, .. } => write!(f, "<depth {depth}>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedronDescriptor {
    dimension: u32,
    pi1: GroupSpec,
    homology: BTreeMap<u32, GroupSpec>,
}

impl PolyhedronDescriptor {
    pub fn new(dimension: u32, pi1: GroupSpec) -> Result<Self, BoundError> {
        if dimension == 0 {
            return Err(BoundError::ZeroDimension);
        }
        Ok(PolyhedronDescriptor {
            dimension,
            pi1,
            homology: BTreeMap::new(),
        })
    }

    /// Sets `H_index` of the universal cover; `index` must lie in `2..=n`.
    pub fn with_homology(mut self, index: u32, spec: GroupSpec) -> Result<Self, BoundError> {
        if !(2..=self.dimension).contains(&index) {
            return Err(BoundError::DimensionMismatch {
                index,
                dimension: self.dimension,
            });
        }
        self.homology.insert(index, spec);
        Ok(self)
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn pi1(&self) -> &GroupSpec {
        &self.pi1
    }

    pub fn homology(&self, index: u32) -> Option<&GroupSpec> {
        self.homology.get(&index)
    }

    /// `(slot, spec)` for `pi1, H_2, ..., H_n`; missing groups are `None`.
    pub fn slots(&self) -> impl Iterator<Item = (Slot, Option<&GroupSpec>)> {
        std::iter::once((Slot::Pi1, Some(&self.pi1)))
            .chain((2..=self.dimension).map(|i| (Slot::Homology(i), self.homology.get(&i))))
    }

    /// Depths `k_1, ..., k_n`.
    pub fn depths(&self) -> Result<Vec<u64>, BoundError> {
        self.slots()
            .map(|(slot, spec)| spec.map_or(Ok(1), |s| s.resolve(slot)))
            .collect()
    }
}

/// `(k_1 + ... + k_n) - n + 1`.
pub fn theorem_bound(desc: &PolyhedronDescriptor) -> Result<u64, BoundError> {
    // as 1 + sum(k_i - 1), every k_i >= 1
    desc.depths()?
        .into_iter()
        .try_fold(1u64, |acc, k| acc.checked_add(k - 1))
        .ok_or(BoundError::Overflow)
}

/// Bound for finite fundamental group: `D(pi1) + t_2 + ... + t_n`, where
/// `t_i` counts the cyclic factors of `H_i`.
pub fn corollary_finite_pi1(pi1_depth: u64, t: &[u64]) -> Result<u64, BoundError> {
    t.iter()
        .try_fold(pi1_depth, |acc, &x| acc.checked_add(x))
        .ok_or(BoundError::Overflow)
}

/// Bound when `pi1` and every `H_i` are finitely generated abelian with
/// `t_i` cyclic factors: `t_1 + ... + t_n + 1`.
pub fn corollary_abelian(t: &[u64]) -> Result<u64, BoundError> {
    t.iter()
        .try_fold(1u64, |acc, &x| acc.checked_add(x))
        .ok_or(BoundError::Overflow)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary {
    FinitePi1,
    Abelian,
}

impl fmt::Display for Corollary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Corollary::FinitePi1 => write!(f, "finite_pi1"),
            Corollary::Abelian => write!(f, "abelian"),
        }
    }
}

/// Evaluates every corollary whose hypotheses the descriptor meets.
pub fn applicable_corollaries(
    desc: &PolyhedronDescriptor,
) -> Result<Vec<(Corollary, u64)>, BoundError> {
    let homology_counts: Option<Vec<u64>> = desc
        .slots()
        .skip(1)
        .map(|(_, spec)| spec.map_or(Some(0), GroupSpec::cyclic_factor_count))
        .collect();
    let Some(homology_counts) = homology_counts else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    if desc.pi1.is_finite() == Some(true) {
        let value = corollary_finite_pi1(desc.pi1.resolve_depth()?, &homology_counts)?;
        out.push((Corollary::FinitePi1, value));
    }
    if let Some(t1) = desc.pi1.cyclic_factor_count() {
        let mut t = vec![t1];
        t.extend(homology_counts);
        out.push((Corollary::Abelian, corollary_abelian(&t)?));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub capacity: Option<BigUint>,
    pub depth: Option<u64>,
    pub citation: &'static str,
}

impl CatalogEntry {
    fn new(name: String, capacity: BigUint, depth: Option<u64>, citation: &'static str) -> Self {
        CatalogEntry {
            name,
            capacity: Some(capacity),
            depth,
            citation,
        }
    }
}

/// Connected sum of two tori.
pub fn torus_connected_sum() -> CatalogEntry {
    CatalogEntry::new(
        "T#T".into(),
        4u32.into(),
        Some(4),
        "connected-sum-vs-product",
    )
}

pub fn circle_times_sphere() -> CatalogEntry {
    CatalogEntry::new(
        "S1xS2".into(),
        4u32.into(),
        Some(3),
        "connected-sum-vs-product",
    )
}

/// Closed orientable surface of genus `g`: capacity and depth `g + 2`.
pub fn orientable_surface(genus: u64) -> CatalogEntry {
    let value = u128::from(genus) + 2;
    CatalogEntry::new(
        format!("surface:{genus}"),
        value.into(),
        u64::try_from(value).ok(),
        "closed-surfaces",
    )
}

/// Closed non-orientable surface of genus `g >= 1`: `floor(g/2) + 2`.
pub fn nonorientable_surface(genus: u64) -> Result<CatalogEntry, BoundError> {
    if genus == 0 {
        return Err(BoundError::InvalidParameter(
            "non-orientable genus must be at least 1".into(),
        ));
    }
    let value = genus / 2 + 2;
    Ok(CatalogEntry::new(
        format!("nonorientable:{genus}"),
        value.into(),
        Some(value),
        "closed-surfaces",
    ))
}

/// Wedge of `k` circles: capacity `k + 1`, matching `F_k`. No depth is
/// recorded for this family.
pub fn wedge_circles(k: u64) -> CatalogEntry {
    CatalogEntry::new(
        format!("wedge-circles:{k}"),
        (u128::from(k) + 1).into(),
        None,
        "wedge-of-circles",
    )
}

/// Wedge over distinct dimensions `n` of `i_n` copies of `S^n`: capacity
/// `prod(i_n + 1)`. Depth is only reported for a single dimension, where it
/// equals the capacity.
pub fn wedge_spheres(parts: &[(u32, u64)]) -> Result<CatalogEntry, BoundError> {
    if parts.is_empty() {
        return Err(BoundError::InvalidParameter("empty wedge".into()));
    }
    let mut dims: Vec<u32> = parts.iter().map(|p| p.0).collect();
    dims.sort_unstable();
    dims.dedup();
    if dims.len() != parts.len() {
        return Err(BoundError::InvalidParameter(
            "repeated sphere dimension".into(),
        ));
    }
    if parts.iter().any(|&(n, i)| n == 0 || i == 0) {
        return Err(BoundError::InvalidParameter(
            "dimensions and copy counts must be positive".into(),
        ));
    }
    let capacity = parts.iter().fold(BigUint::one(), |acc, &(_, i)| {
        acc * (BigUint::from(i) + 1u32)
    });
    let depth = match parts {
        [(_, i)] => i.checked_add(1),
        _ => None,
    };
    let name = parts
        .iter()
        .map(|(n, i)| format!("{n}*{i}"))
        .collect::<Vec<_>>()
        .join(",");
    Ok(CatalogEntry {
        name: format!("wedge-spheres:{name}"),
        capacity: Some(capacity),
        depth,
        citation: "wedges-of-spheres",
    })
}

/// The fixed entries plus small instances of each parameterized family.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = vec![torus_connected_sum(), circle_times_sphere()];
    out.extend((0..=5).map(orientable_surface));
    out.extend((1..=5).map(|g| nonorientable_surface(g).unwrap()));
    out.extend((1..=5).map(wedge_circles));
    out.push(wedge_spheres(&[(2, 2), (3, 1)]).unwrap());
    out
}

/// Looks up `T#T`, `S1xS2`, `surface:G`, `nonorientable:G`,
/// `wedge-circles:K` or `wedge-spheres:N*I,N*I,...`.
pub fn lookup(name: &str) -> Result<CatalogEntry, BoundError> {
    let name = name.trim();
    let number = |text: &str| -> Result<u64, BoundError> {
        text.trim().parse().map_err(|_| {
            BoundError::InvalidParameter(format!("not a non-negative integer: {text:?}"))
        })
    };
    match name {
        "T#T" => return Ok(torus_connected_sum()),
        "S1xS2" => return Ok(circle_times_sphere()),
        _ => {}
    }
    let (family, arg) = name
        .split_once(':')
        .ok_or_else(|| BoundError::UnknownEntry(name.to_string()))?;
    match family {
        "surface" => Ok(orientable_surface(number(arg)?)),
        "nonorientable" => nonorientable_surface(number(arg)?),
        "wedge-circles" => Ok(wedge_circles(number(arg)?)),
        "wedge-spheres" => {
            let parts = arg
                .split(',')
                .map(|part| {
                    let (n, i) = part.split_once('*').ok_or_else(|| {
                        BoundError::InvalidParameter(format!("expected DIM*COUNT, found {part:?}"))
                    })?;
                    let n = u32::try_from(number(n)?)
                        .map_err(|_| BoundError::InvalidParameter("dimension too large".into()))?;
                    Ok((n, number(i)?))
                })
                .collect::<Result<Vec<_>, BoundError>>()?;
            wedge_spheres(&parts)
        }
        _ => Err(BoundError::UnknownEntry(name.to_string())),
    }
}
