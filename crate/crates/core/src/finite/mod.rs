//! Brute-force analysis of small finite groups given by Cayley tables.
//!
//! This is the independent oracle for the closed forms in
//! [`crate::abelian`]: retracts are found as images of idempotent
//! endomorphisms, capacity is the number of their isomorphism classes and
//! depth is the longest chain in the retract DAG.

mod endo;
mod iso;
pub mod named;
mod retract;
mod subgroup;

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::abelian::AbelianGroup;

pub use endo::Endomorphism;
pub use iso::{is_isomorphic, IsoProfile};
pub use retract::{BruteForce, BruteForceError, IdempotentBound, RetractClass, DEFAULT_MAX_ORDER};
pub use subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(i) => write!(f, "row {i}"),
            Line::Column(j) => write!(f, "column {j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("entry ({row}, {col}) = {value} is outside [0, n)")]
    NotClosed { row: usize, col: usize, value: i64 },
    #[error("element 0 is not an identity: entry ({row}, {col}) is wrong")]
    NoIdentityAtZero { row: usize, col: usize },
    #[error("{line} repeats element {value}")]
    NotLatinSquare { line: Line, value: usize },
    #[error("({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Multiplication table of a finite group with identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl CayleyTable {
    /// Validates a raw square table: closure, identity at 0, Latin square,
    /// then associativity (cubic).
    pub fn validate(raw: &[Vec<i64>]) -> Result<Self, TableError> {
        let n = raw.len();
        if n == 0 {
            return Err(TableError::Malformed("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, entries) in raw.iter().enumerate() {
            if entries.len() != n {
                return Err(TableError::Malformed(format!(
                    "row {row} has {} entries, expected {n}",
                    entries.len()
                )));
            }
            for (col, &value) in entries.iter().enumerate() {
                if value < 0 || value as u64 >= n as u64 {
                    return Err(TableError::NotClosed { row, col, value });
                }
                table.push(value as usize);
            }
        }
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<usize>) -> Result<Self, TableError> {
        debug_assert_eq!(table.len(), n * n);
        let at = |i: usize, j: usize| table[i * n + j];
        for j in 0..n {
            if at(0, j) != j {
                return Err(TableError::NoIdentityAtZero { row: 0, col: j });
            }
            if at(j, 0) != j {
                return Err(TableError::NoIdentityAtZero { row: j, col: 0 });
            }
        }
        let mut seen = FixedBitSet::with_capacity(n);
        for i in 0..n {
            seen.clear();
            for j in 0..n {
                if seen.put(at(i, j)) {
                    return Err(TableError::NotLatinSquare {
                        line: Line::Row(i),
                        value: at(i, j),
                    });
                }
            }
        }
        for j in 0..n {
            seen.clear();
            for i in 0..n {
                if seen.put(at(i, j)) {
                    return Err(TableError::NotLatinSquare {
                        line: Line::Column(j),
                        value: at(i, j),
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(TableError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| at(a, b) == 0).unwrap())
            .collect();
        Ok(CayleyTable {
            order: n,
            table,
            inverses,
        })
    }

    /// Parses the text format: first line `n`, then `n` rows of `n`
    /// whitespace-separated indices. `#` lines and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first, header) = lines
            .next()
            .ok_or_else(|| TableError::Malformed("missing order line".into()))?;
        let n: usize = header.parse().map_err(|_| TableError::Parse {
            line: first,
            message: format!("expected the group order, found {header:?}"),
        })?;
        let mut raw = Vec::with_capacity(n.min(1024));
        for (line, content) in lines {
            let row = content
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>().map_err(|_| TableError::Parse {
                        line,
                        message: format!("not an integer: {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            raw.push(row);
        }
        if raw.len() != n {
            return Err(TableError::Malformed(format!(
                "expected {n} rows, found {}",
                raw.len()
            )));
        }
        Self::validate(&raw)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.table.chunks(self.order)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Size of the centralizer of `a`.
    pub fn centralizer_order(&self, a: usize) -> usize {
        (0..self.order)
            .filter(|&b| self.mul(a, b) == self.mul(b, a))
            .count()
    }

    /// Primary decomposition of an abelian table; `None` if nonabelian.
    ///
    /// For each prime `p`, the sizes of the `p^j`-torsion subgroups
    /// determine how many cyclic factors have exponent at least `j`.
    pub fn abelian_type(&self) -> Option<AbelianGroup> {
        if !self.is_abelian() {
            return None;
        }
        let orders: Vec<u64> = (0..self.order)
            .map(|x| self.element_order(x) as u64)
            .collect();
        let mut raw = Vec::new();
        for (p, _) in num_prime::nt_funcs::factorize64(self.order as u64) {
            let mut at_least = Vec::new();
            let mut torsion = 1usize;
            let mut q = 1u64;
            loop {
                q *= p;
                let count = orders.iter().filter(|&&o| q % o == 0).count();
                if count == torsion {
                    break;
                }
                let mut ratio = count / torsion;
                let mut k = 0u32;
                while ratio > 1 {
                    ratio /= p as usize;
                    k += 1;
                }
                at_least.push(k);
                torsion = count;
            }
            let mut modulus = 1u64;
            for (j, &k) in at_least.iter().enumerate() {
                modulus *= p;
                let exact = k - at_least.get(j + 1).copied().unwrap_or(0);
                if exact > 0 {
                    raw.push((modulus, exact));
                }
            }
        }
        Some(AbelianGroup::canonicalize(&raw))
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> FixedBitSet {
        let mut members = FixedBitSet::with_capacity(self.order);
        members.insert(0);
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !members.put(y) {
                    queue.push(y);
                }
            }
        }
        members
    }

    /// Greedy generating set: repeatedly add the element that enlarges the
    /// generated subgroup the most, smallest index on ties.
    pub fn minimal_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.closure(&gens);
        while current.count_ones(..) < self.order {
            let mut best: Option<(usize, FixedBitSet)> = None;
            for x in 0..self.order {
                if current.contains(x) {
                    continue;
                }
                gens.push(x);
                let candidate = self.closure(&gens);
                gens.pop();
                let better = best
                    .as_ref()
                    .is_none_or(|(_, b)| candidate.count_ones(..) > b.count_ones(..));
                if better {
                    best = Some((x, candidate));
                }
            }
            let (x, grown) = best.expect("a proper subgroup misses some element");
            gens.push(x);
            current = grown;
        }
        gens
    }

    /// Table of the subgroup on `members`, re-indexed by ascending original
    /// index (so the identity stays at 0).
    pub fn induced(&self, members: &[usize]) -> Result<CayleyTable, TableError> {
        let mut position = vec![usize::MAX; self.order];
        for (i, &x) in members.iter().enumerate() {
            position[x] = i;
        }
        let m = members.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in members {
            for &b in members {
                let p = position[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(TableError::Malformed(format!(
                        "{a}*{b} leaves the given subset"
                    )));
                }
                table.push(p);
            }
        }
        CayleyTable::from_flat(m, table)
    }
}
