use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use super::subgroup::all_subgroups;
use super::CayleyTable;

const UNSET: usize = usize::MAX;

/// An endomorphism stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endomorphism {
    images: Vec<usize>,
}

impl Endomorphism {
    /// Checks `images` against the homomorphism law exhaustively.
    pub fn new(group: &CayleyTable, images: Vec<usize>) -> Option<Self> {
        let candidate = Endomorphism { images };
        candidate.is_endomorphism_of(group).then_some(candidate)
    }

    pub fn identity(order: usize) -> Self {
        Endomorphism {
            images: (0..order).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&y| self.images[y] == y)
    }

    pub fn is_endomorphism_of(&self, group: &CayleyTable) -> bool {
        let n = group.order();
        self.images.len() == n
            && self.images.first() == Some(&0)
            && self.images.iter().all(|&y| y < n)
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    self.images[group.mul(i, j)] == group.mul(self.images[i], self.images[j])
                })
            })
    }

    /// Sorted image elements.
    pub fn image(&self) -> Vec<usize> {
        let mut set = FixedBitSet::with_capacity(self.images.len());
        for &y in &self.images {
            set.insert(y);
        }
        set.ones().collect()
    }
}

/// Homomorphism from `source` to `target` defined on the subgroup generated by
/// the generators assigned so far. Extending by one generator runs a closure
/// over right multiplication that fails on the first inconsistent product.
pub(crate) struct PartialHom<'a> {
    source: &'a CayleyTable,
    target: &'a CayleyTable,
    generators: &'a [usize],
    images: Vec<usize>,
    map: Vec<usize>,
    domain: Vec<usize>,
    marks: Vec<usize>,
    // only tracked for injective searches
    used: Option<FixedBitSet>,
}

impl<'a> PartialHom<'a> {
    pub(crate) fn new(
        source: &'a CayleyTable,
        target: &'a CayleyTable,
        generators: &'a [usize],
        injective: bool,
    ) -> Self {
        let mut map = vec![UNSET; source.order()];
        map[0] = 0;
        let used = injective.then(|| {
            let mut used = FixedBitSet::with_capacity(target.order());
            used.insert(0);
            used
        });
        PartialHom {
            source,
            target,
            generators,
            images: Vec::with_capacity(generators.len()),
            map,
            domain: vec![0],
            marks: Vec::with_capacity(generators.len()),
            used,
        }
    }

    pub(crate) fn level(&self) -> usize {
        self.images.len()
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.images.len() == self.generators.len()
    }

    pub(crate) fn map(&self) -> &[usize] {
        &self.map
    }

    /// Assigns the next generator's image. On failure the state is restored.
    pub(crate) fn push(&mut self, image: usize) -> bool {
        let mark = self.domain.len();
        self.images.push(image);
        let assigned = self.images.len();
        let mut i = 0;
        while i < self.domain.len() {
            let x = self.domain[i];
            let fx = self.map[x];
            for j in 0..assigned {
                let y = self.source.mul(x, self.generators[j]);
                let fy = self.target.mul(fx, self.images[j]);
                if self.map[y] == UNSET {
                    if let Some(used) = self.used.as_mut() {
                        if used.put(fy) {
                            self.rollback(mark);
                            return false;
                        }
                    }
                    self.map[y] = fy;
                    self.domain.push(y);
                } else if self.map[y] != fy {
                    self.rollback(mark);
                    return false;
                }
            }
            i += 1;
        }
        self.marks.push(mark);
        true
    }

    pub(crate) fn pop(&mut self) {
        let keep = self.marks.pop().expect("pop without push");
        self.rollback(keep);
    }

    fn rollback(&mut self, keep: usize) {
        for &y in &self.domain[keep..] {
            if let Some(used) = self.used.as_mut() {
                used.set(self.map[y], false);
            }
            self.map[y] = UNSET;
        }
        self.domain.truncate(keep);
        self.images.pop();
    }
}

/// Calls `visit` once per endomorphism of `group`, in lexicographic order of
/// generator images, until it breaks.
pub(crate) fn for_each_endomorphism(
    group: &CayleyTable,
    mut visit: impl FnMut(&Endomorphism) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let generators = group.minimal_generators();
    let orders: Vec<usize> = (0..group.order()).map(|x| group.element_order(x)).collect();
    let mut hom = PartialHom::new(group, group, &generators, false);
    return search(&mut hom, &orders, &mut visit);

    fn search(
        hom: &mut PartialHom<'_>,
        orders: &[usize],
        visit: &mut impl FnMut(&Endomorphism) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if hom.is_complete() {
            let endo = Endomorphism {
                images: hom.map().to_vec(),
            };
            assert!(
                endo.is_endomorphism_of(hom.source),
                "backtracking produced a non-homomorphism"
            );
            return visit(&endo);
        }
        let g = hom.generators[hom.level()];
        for y in 0..hom.target.order() {
            if orders[g] % orders[y] != 0 {
                continue;
            }
            if hom.push(y) {
                let flow = search(hom, orders, visit);
                hom.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Idempotents from semidirect decompositions.
///
/// An idempotent `h` splits `G` as `ker h ⋊ im h`: `x = h(x) * (h(x)^-1 x)`
/// with the second factor in the kernel, and `im h ∩ ker h = 1` because `h`
/// fixes its image. Conversely a normal `K` with a complement `H` gives the
/// idempotent `hk ↦ h`. So idempotents correspond to pairs `(K, H)`.
pub(crate) fn idempotents_by_complements(group: &CayleyTable) -> Vec<Endomorphism> {
    let n = group.order();
    let generators = group.minimal_generators();
    let subgroups = all_subgroups(group);
    let mut out = Vec::new();
    for kernel in subgroups
        .iter()
        .filter(|k| k.is_normal_in(group, &generators))
    {
        let image_order = n / kernel.order();
        for image in subgroups.iter().filter(|h| h.order() == image_order) {
            let mut meet = image.members().clone();
            meet.intersect_with(kernel.members());
            if meet.count_ones(..) != 1 {
                continue;
            }
            let mut images = vec![UNSET; n];
            for a in image.members().ones() {
                for b in kernel.members().ones() {
                    images[group.mul(a, b)] = a;
                }
            }
            debug_assert!(images.iter().all(|&y| y != UNSET));
            out.push(Endomorphism { images });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;
    use crate::finite::named;

    fn endos(group: &CayleyTable) -> Vec<Endomorphism> {
        let mut out = Vec::new();
        let _ = for_each_endomorphism(group, |e| {
            out.push(e.clone());
            ControlFlow::Continue(())
        });
        out
    }

    // every map with f(0) = 0, checked against the homomorphism law
    fn exhaustive_endomorphism_count(group: &CayleyTable) -> usize {
        let n = group.order();
        let mut count = 0;
        let mut images = vec![0usize; n];
        loop {
            if Endomorphism::new(group, images.clone()).is_some() {
                count += 1;
            }
            let mut i = 1;
            while i < n && images[i] == n - 1 {
                images[i] = 0;
                i += 1;
            }
            if i >= n {
                return count;
            }
            images[i] += 1;
        }
    }

    #[test]
    fn small_endomorphism_counts() {
        assert_eq!(endos(&named::cyclic(2)).len(), 2);
        assert_eq!(endos(&named::cyclic(1)).len(), 1);
        assert_eq!(endos(&named::symmetric3()).len(), 10);
        assert_eq!(endos(&named::cyclic(4)).len(), 4);
        assert_eq!(
            endos(&named::cyclic(2)).len(),
            exhaustive_endomorphism_count(&named::cyclic(2))
        );
        assert_eq!(
            endos(&named::symmetric3()).len(),
            exhaustive_endomorphism_count(&named::symmetric3())
        );
        let v4 = named::abelian(&AbelianGroup::canonicalize(&[(2, 2)])).unwrap();
        assert_eq!(endos(&v4).len(), 16);
        assert_eq!(endos(&v4).len(), exhaustive_endomorphism_count(&v4));
    }

    #[test]
    fn endomorphisms_are_distinct_and_sorted_by_generator_images() {
        let list = endos(&named::dihedral(4));
        let mut dedup = list.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), list.len());
        assert_eq!(list.len(), 36);
        assert_eq!(
            list.len(),
            exhaustive_endomorphism_count(&named::dihedral(4))
        );
    }

    #[test]
    fn injective_search_rejects_collisions() {
        let z4 = named::cyclic(4);
        let gens = z4.minimal_generators();
        let mut hom = PartialHom::new(&z4, &z4, &gens, true);
        assert!(!hom.push(2));
        assert_eq!(hom.level(), 0);
        assert!(hom.push(3));
        assert!(hom.is_complete());
        assert_eq!(hom.map(), &[0, 3, 2, 1]);
    }

    #[test]
    fn complement_idempotents_match_filtered_endomorphisms() {
        let groups = [
            named::cyclic(1),
            named::cyclic(2),
            named::cyclic(4),
            named::cyclic(6),
            named::symmetric3(),
            named::dihedral(4),
            named::quaternion8(),
            named::abelian(&AbelianGroup::canonicalize(&[(2, 2), (4, 1)])).unwrap(),
        ];
        for group in &groups {
            let mut filtered: Vec<Endomorphism> = endos(group)
                .into_iter()
                .filter(Endomorphism::is_idempotent)
                .collect();
            let mut split = idempotents_by_complements(group);
            filtered.sort();
            split.sort();
            assert_eq!(filtered, split);
            assert!(split
                .iter()
                .all(|e| e.is_endomorphism_of(group) && e.is_idempotent()));
        }
    }

    #[test]
    fn idempotent_counts() {
        assert_eq!(idempotents_by_complements(&named::cyclic(2)).len(), 2);
        assert_eq!(idempotents_by_complements(&named::symmetric3()).len(), 5);
        assert_eq!(idempotents_by_complements(&named::cyclic(4)).len(), 2);
        assert_eq!(idempotents_by_complements(&named::quaternion8()).len(), 2);
        assert_eq!(idempotents_by_complements(&named::dihedral(4)).len(), 10);
    }

    #[test]
    fn composition() {
        let z6 = named::cyclic(6);
        let double = Endomorphism::new(&z6, vec![0, 2, 4, 0, 2, 4]).unwrap();
        let triple = Endomorphism::new(&z6, vec![0, 3, 0, 3, 0, 3]).unwrap();
        assert!(triple.is_idempotent());
        assert!(!double.is_idempotent());
        assert_eq!(double.compose(&triple).images(), &[0, 0, 0, 0, 0, 0]);
        assert_eq!(double.image(), [0, 2, 4]);
        assert!(Endomorphism::new(&z6, vec![0, 1, 0, 1, 0, 1]).is_none());
        assert!(Endomorphism::identity(6).is_idempotent());
    }
}
