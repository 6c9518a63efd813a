use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::CayleyTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: FixedBitSet,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_normal_in(&self, group: &CayleyTable, group_generators: &[usize]) -> bool {
        group_generators.iter().all(|&g| {
            let g_inv = group.inverse(g);
            self.generators
                .iter()
                .all(|&k| self.members.contains(group.mul(group.mul(g, k), g_inv)))
        })
    }
}

/// Every subgroup of `group`, sorted by order and then by member list.
pub(crate) fn all_subgroups(group: &CayleyTable) -> Vec<Subgroup> {
    let trivial = Subgroup {
        members: group.closure(&[]),
        generators: Vec::new(),
    };
    let mut seen: HashSet<FixedBitSet> = HashSet::from([trivial.members.clone()]);
    let mut found = vec![trivial];
    let mut next = 0;
    while next < found.len() {
        let base = found[next].clone();
        next += 1;
        for x in 0..group.order() {
            if base.members.contains(x) {
                continue;
            }
            let mut generators = base.generators.clone();
            generators.push(x);
            let members = group.closure(&generators);
            if seen.insert(members.clone()) {
                found.push(Subgroup {
                    members,
                    generators,
                });
            }
        }
    }
    found.sort_by_cached_key(|s| (s.order(), s.elements()));
    found
}
