//! Domination DAGs over isomorphism classes.
//!
//! Nodes are isomorphism classes dominated by a root object `A`; there is an
//! edge `u -> v` when `v` is properly dominated by `u`. For the groups handled
//! here (all Hopfian) proper and strong domination coincide, so a single edge
//! kind is stored. A pair of classes that dominate each other would be a
//! d-equal but non-isomorphic pair, which only happens for non-Hopfian
//! objects; such inputs are rejected as [`PosetError::CycleDetected`].

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate class id {0}")]
    DuplicateId(usize),
    #[error("root id {0} is not a node")]
    UnknownRoot(usize),
    #[error("classes {0} and {1} dominate each other without being isomorphic")]
    CycleDetected(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassNode<P> {
    pub id: usize,
    pub label: String,
    pub payload: P,
}

impl<P> ClassNode<P> {
    pub fn new(id: usize, label: impl Into<String>, payload: P) -> Self {
        ClassNode {
            id,
            label: label.into(),
            payload,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    UnknownId,
    /// `chain[index]` is not properly dominated by `chain[index + 1]`.
    NotProperlyDominated,
    /// `chain[index]` repeats an earlier class.
    Repeated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("chain violation at index {index}: {kind:?}")]
pub struct ChainViolation {
    pub index: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone)]
pub struct DominationDag<P> {
    nodes: Vec<ClassNode<P>>,
    index: HashMap<usize, usize>,
    // below[u] holds v iff v is properly dominated by u (transitively closed)
    below: Vec<FixedBitSet>,
    root: usize,
}

impl<P> DominationDag<P> {
    /// Builds the DAG. `dominates(x, y)` means `x` is dominated by `y`;
    /// `proper(x, y)` means `x` and `y` are not isomorphic.
    pub fn build<D, Q>(
        nodes: Vec<ClassNode<P>>,
        root_id: usize,
        dominates: D,
        proper: Q,
    ) -> Result<Self, PosetError>
    where
        D: Fn(&ClassNode<P>, &ClassNode<P>) -> bool,
        Q: Fn(&ClassNode<P>, &ClassNode<P>) -> bool,
    {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if index.insert(node.id, i).is_some() {
                return Err(PosetError::DuplicateId(node.id));
            }
        }
        let root = *index
            .get(&root_id)
            .ok_or(PosetError::UnknownRoot(root_id))?;

        let n = nodes.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for u in 0..n {
            for v in 0..n {
                if u != v && dominates(&nodes[v], &nodes[u]) && proper(&nodes[v], &nodes[u]) {
                    below[u].insert(v);
                }
            }
        }
        for u in 0..n {
            for v in below[u].ones() {
                if v > u && below[v].contains(u) {
                    return Err(PosetError::CycleDetected(nodes[u].id, nodes[v].id));
                }
            }
        }

        let below = transitive_closure(&below)
            .map_err(|(u, v)| PosetError::CycleDetected(nodes[u].id, nodes[v].id))?;

        Ok(DominationDag {
            nodes,
            index,
            below,
            root,
        })
    }

    pub fn nodes(&self) -> &[ClassNode<P>] {
        &self.nodes
    }

    pub fn root(&self) -> &ClassNode<P> {
        &self.nodes[self.root]
    }

    pub fn node(&self, id: usize) -> Option<&ClassNode<P>> {
        self.index.get(&id).map(|&i| &self.nodes[i])
    }

    /// Capacity of the root, as a class count.
    pub fn class_count(&self) -> usize {
        self.nodes.len()
    }

    /// Whether `lower` is properly dominated by `upper`.
    pub fn has_edge(&self, upper: usize, lower: usize) -> bool {
        match (self.index.get(&upper), self.index.get(&lower)) {
            (Some(&u), Some(&v)) => self.below[u].contains(v),
            _ => false,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.below.iter().map(|row| row.count_ones(..)).sum()
    }

    /// Longest chain `X_k <p ... <p X_1`, returned smallest class first.
    ///
    /// Among maximal chains the one whose id sequence is lexicographically
    /// smallest is chosen.
    pub fn longest_chain(&self) -> (usize, Vec<&ClassNode<P>>) {
        let n = self.nodes.len();
        if n == 0 {
            return (0, Vec::new());
        }
        // up[v] = nodes on the longest path starting at v and climbing to
        // dominating classes
        let order = self.top_down_order();
        let mut up = vec![1usize; n];
        for &u in &order {
            for v in self.below[u].ones() {
                up[v] = up[v].max(up[u] + 1);
            }
        }
        let length = *up.iter().max().unwrap();
        let by_id = |a: &usize, b: &usize| self.nodes[*a].id.cmp(&self.nodes[*b].id);

        let mut current = (0..n).filter(|&v| up[v] == length).min_by(by_id).unwrap();
        let mut witness = vec![&self.nodes[current]];
        while up[current] > 1 {
            current = (0..n)
                .filter(|&u| self.below[u].contains(current) && up[u] + 1 == up[current])
                .min_by(by_id)
                .unwrap();
            witness.push(&self.nodes[current]);
        }
        (length, witness)
    }

    // Sources (most dominant) first: a node's dominators always come before it.
    fn top_down_order(&self) -> Vec<usize> {
        let n = self.nodes.len();
        let mut above_count = vec![0usize; n];
        for row in &self.below {
            for v in row.ones() {
                above_count[v] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| above_count[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = ready.pop() {
            order.push(u);
            for v in self.below[u].ones() {
                above_count[v] -= 1;
                if above_count[v] == 0 {
                    ready.push(v);
                }
            }
        }
        order
    }

    /// Checks that each class is properly dominated by the next and that no
    /// class repeats. Chains are given smallest first, by id.
    pub fn verify_chain(&self, chain: &[usize]) -> Result<(), ChainViolation> {
        let mut seen = FixedBitSet::with_capacity(self.nodes.len());
        let mut previous: Option<usize> = None;
        for (i, id) in chain.iter().enumerate() {
            let Some(&v) = self.index.get(id) else {
                return Err(ChainViolation {
                    index: i,
                    kind: ViolationKind::UnknownId,
                });
            };
            if seen.put(v) {
                return Err(ChainViolation {
                    index: i,
                    kind: ViolationKind::Repeated,
                });
            }
            if let Some(p) = previous {
                if !self.below[v].contains(p) {
                    return Err(ChainViolation {
                        index: i - 1,
                        kind: ViolationKind::NotProperlyDominated,
                    });
                }
            }
            previous = Some(v);
        }
        Ok(())
    }
}

// Closure by DFS post-order: each row is the union of its children's closed
// rows. A back edge `(u, v)` is returned as the cycle witness.
fn transitive_closure(direct: &[FixedBitSet]) -> Result<Vec<FixedBitSet>, (usize, usize)> {
    const NEW: u8 = 0;
    const OPEN: u8 = 1;
    const DONE: u8 = 2;
    let n = direct.len();
    let mut state = vec![NEW; n];
    let mut closed = vec![FixedBitSet::with_capacity(n); n];
    for start in 0..n {
        if state[start] != NEW {
            continue;
        }
        state[start] = OPEN;
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, direct[start].ones().collect())];
        while let Some((u, pending)) = stack.last_mut() {
            let u = *u;
            match pending.pop() {
                Some(v) if state[v] == NEW => {
                    state[v] = OPEN;
                    stack.push((v, direct[v].ones().collect()));
                }
                Some(v) if state[v] == OPEN => return Err((u, v)),
                Some(_) => {}
                None => {
                    let mut row = direct[u].clone();
                    for v in direct[u].ones() {
                        row.union_with(&closed[v]);
                    }
                    closed[u] = row;
                    state[u] = DONE;
                    stack.pop();
                }
            }
        }
    }
    Ok(closed)
}

impl<P: Clone> DominationDag<P> {
    /// Sub-DAG of the classes dominated by `id` (itself included), rooted there.
    pub fn down_set(&self, id: usize) -> Option<DominationDag<P>> {
        let &top = self.index.get(&id)?;
        let keep: Vec<usize> = (0..self.nodes.len())
            .filter(|&v| v == top || self.below[top].contains(v))
            .collect();
        let nodes: Vec<ClassNode<P>> = keep.iter().map(|&v| self.nodes[v].clone()).collect();
        let index = nodes.iter().enumerate().map(|(i, n)| (n.id, i)).collect();
        let below = keep
            .iter()
            .map(|&u| {
                let mut row = FixedBitSet::with_capacity(keep.len());
                for (j, &v) in keep.iter().enumerate() {
                    if self.below[u].contains(v) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let root = keep.iter().position(|&v| v == top).unwrap();
        Some(DominationDag {
            nodes,
            index,
            below,
            root,
        })
    }
}
