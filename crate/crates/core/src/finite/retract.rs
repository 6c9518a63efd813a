use std::ops::ControlFlow;

use thiserror::Error;

use super::endo::{for_each_endomorphism, idempotents_by_complements, Endomorphism};
use super::iso::{is_isomorphic, IsoProfile};
use super::CayleyTable;
use crate::poset::{ClassNode, DominationDag, PosetError};

pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteForceError {
    #[error("group order {order} exceeds the brute-force cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("retract of a retract has no matching class (order {0})")]
    MissingClass(usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// One isomorphism class of retracts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractClass {
    /// Table induced on `subgroup`.
    pub representative: CayleyTable,
    /// Sorted original indices of the representative subgroup.
    pub subgroup: Vec<usize>,
    /// An idempotent whose image is `subgroup`.
    pub witness: Endomorphism,
    pub profile: IsoProfile,
}

impl RetractClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdempotentBound {
    pub capacity: usize,
    pub idempotents: usize,
    pub holds: bool,
}

/// Brute-force oracle with an order cap.
///
/// Retracts are the images of idempotent endomorphisms: if `g ∘ f = id_H`
/// then `f ∘ g` is idempotent with image `f(H) ≅ H`, and an idempotent `h`
/// retracts `G` onto `im h` with the inclusion as section.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForce {
    max_order: usize,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl BruteForce {
    pub fn new(max_order: usize) -> Self {
        BruteForce { max_order }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    fn check(&self, group: &CayleyTable) -> Result<(), BruteForceError> {
        if group.order() > self.max_order {
            return Err(BruteForceError::OrderCapExceeded {
                order: group.order(),
                cap: self.max_order,
            });
        }
        Ok(())
    }

    pub fn endomorphisms(&self, group: &CayleyTable) -> Result<Vec<Endomorphism>, BruteForceError> {
        let mut out = Vec::new();
        self.for_each_endomorphism(group, |e| out.push(e.clone()))?;
        Ok(out)
    }

    pub fn for_each_endomorphism(
        &self,
        group: &CayleyTable,
        visit: impl FnMut(&Endomorphism),
    ) -> Result<(), BruteForceError> {
        self.check(group)?;
        let mut visit = visit;
        let _ = for_each_endomorphism(group, |e| {
            visit(e);
            ControlFlow::Continue(())
        });
        Ok(())
    }

    pub fn endomorphism_count(&self, group: &CayleyTable) -> Result<usize, BruteForceError> {
        let mut count = 0;
        self.for_each_endomorphism(group, |_| count += 1)?;
        Ok(count)
    }

    /// Number of endomorphisms, or `None` once it exceeds `limit`.
    pub fn endomorphism_count_up_to(
        &self,
        group: &CayleyTable,
        limit: usize,
    ) -> Result<Option<usize>, BruteForceError> {
        self.check(group)?;
        let mut count = 0;
        let flow = for_each_endomorphism(group, |_| {
            count += 1;
            if count > limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        Ok(flow.is_continue().then_some(count))
    }

    /// All idempotent endomorphisms, one per (kernel, complement) pair.
    pub fn idempotents(&self, group: &CayleyTable) -> Result<Vec<Endomorphism>, BruteForceError> {
        self.check(group)?;
        Ok(idempotents_by_complements(group))
    }

    pub fn idempotent_count(&self, group: &CayleyTable) -> Result<usize, BruteForceError> {
        Ok(self.idempotents(group)?.len())
    }

    /// One class per isomorphism type of idempotent image, ordered by group
    /// order, then profile, then first appearance.
    pub fn retract_classes(
        &self,
        group: &CayleyTable,
    ) -> Result<Vec<RetractClass>, BruteForceError> {
        self.check(group)?;
        let mut classes: Vec<RetractClass> = Vec::new();
        let mut seen_images: Vec<Vec<usize>> = Vec::new();
        for witness in idempotents_by_complements(group) {
            let subgroup = witness.image();
            if seen_images.contains(&subgroup) {
                continue;
            }
            let representative = group
                .induced(&subgroup)
                .expect("image of an endomorphism is a subgroup");
            seen_images.push(subgroup.clone());
            let profile = IsoProfile::of(&representative);
            let known = classes
                .iter()
                .any(|c| c.profile == profile && is_isomorphic(&c.representative, &representative));
            if !known {
                classes.push(RetractClass {
                    representative,
                    subgroup,
                    witness,
                    profile,
                });
            }
        }
        classes.sort_by(|a, b| (a.order(), &a.profile).cmp(&(b.order(), &b.profile)));
        Ok(classes)
    }

    pub fn capacity(&self, group: &CayleyTable) -> Result<usize, BruteForceError> {
        Ok(self.retract_classes(group)?.len())
    }

    /// DAG on the retract classes with an edge `K -> H` when `H` is a retract
    /// of `K` and not isomorphic to it. Node ids are class positions; the
    /// root is `group` itself.
    pub fn retract_dag(
        &self,
        group: &CayleyTable,
    ) -> Result<DominationDag<RetractClass>, BruteForceError> {
        let classes = self.retract_classes(group)?;
        // below[j] = classes that are retracts of class j
        let mut below: Vec<Vec<usize>> = Vec::with_capacity(classes.len());
        for class in &classes {
            let mut ids = Vec::new();
            for sub in self.retract_classes(&class.representative)? {
                let id = classes
                    .iter()
                    .position(|c| {
                        c.profile == sub.profile
                            && is_isomorphic(&c.representative, &sub.representative)
                    })
                    .ok_or(BruteForceError::MissingClass(sub.order()))?;
                ids.push(id);
            }
            below.push(ids);
        }
        let root = classes
            .iter()
            .position(|c| c.order() == group.order())
            .expect("identity idempotent gives the whole group");
        let nodes = classes
            .into_iter()
            .enumerate()
            .map(|(i, c)| ClassNode::new(i, format!("order {}", c.order()), c))
            .collect();
        Ok(DominationDag::build(
            nodes,
            root,
            |x, y| below[y.id].contains(&x.id),
            |x, y| x.id != y.id,
        )?)
    }

    /// Longest chain of proper retracts (all finite groups are Hopfian, so
    /// proper and strong chains agree).
    pub fn depth(&self, group: &CayleyTable) -> Result<usize, BruteForceError> {
        Ok(self.retract_dag(group)?.longest_chain().0)
    }

    pub fn idempotent_bound_report(
        &self,
        group: &CayleyTable,
    ) -> Result<IdempotentBound, BruteForceError> {
        let capacity = self.capacity(group)?;
        let idempotents = self.idempotent_count(group)?;
        Ok(IdempotentBound {
            capacity,
            idempotents,
            holds: capacity <= idempotents,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;
    use crate::finite::named;

    fn ab(raw: &[(u64, u32)]) -> CayleyTable {
        named::abelian(&AbelianGroup::canonicalize(raw)).unwrap()
    }

    fn class_orders(group: &CayleyTable) -> Vec<usize> {
        BruteForce::default()
            .retract_classes(group)
            .unwrap()
            .iter()
            .map(RetractClass::order)
            .collect()
    }

    #[test]
    fn retract_classes_of_small_groups() {
        assert_eq!(class_orders(&named::cyclic(2)), [1, 2]);
        assert_eq!(class_orders(&named::cyclic(1)), [1]);
        assert_eq!(class_orders(&named::symmetric3()), [1, 2, 6]);
        assert_eq!(class_orders(&named::quaternion8()), [1, 8]);
        assert_eq!(class_orders(&named::dihedral(4)), [1, 2, 8]);
    }

    #[test]
    fn witnesses_are_idempotent_onto_their_subgroup() {
        let s3 = named::symmetric3();
        for class in BruteForce::default().retract_classes(&s3).unwrap() {
            assert!(class.witness.is_idempotent());
            assert!(class.witness.is_endomorphism_of(&s3));
            assert_eq!(class.witness.image(), class.subgroup);
        }
    }

    #[test]
    fn capacity_and_depth() {
        let bf = BruteForce::default();
        assert_eq!(bf.capacity(&ab(&[(2, 2)])).unwrap(), 3);
        assert_eq!(bf.depth(&ab(&[(2, 2)])).unwrap(), 3);
        assert_eq!(bf.capacity(&named::symmetric3()).unwrap(), 3);
        assert_eq!(bf.depth(&named::symmetric3()).unwrap(), 3);
        assert_eq!(bf.capacity(&named::cyclic(8)).unwrap(), 2);
        assert_eq!(bf.depth(&named::cyclic(1)).unwrap(), 1);
        assert_eq!(bf.depth(&ab(&[(2, 1), (3, 1)])).unwrap(), 3);
        assert_eq!(bf.capacity(&ab(&[(2, 1), (3, 1)])).unwrap(), 4);
    }

    #[test]
    fn s3_dag_chain() {
        let dag = BruteForce::default()
            .retract_dag(&named::symmetric3())
            .unwrap();
        let (length, chain) = dag.longest_chain();
        assert_eq!(length, 3);
        let orders: Vec<usize> = chain.iter().map(|n| n.payload.order()).collect();
        assert_eq!(orders, [1, 2, 6]);
        let ids: Vec<usize> = chain.iter().map(|n| n.id).collect();
        assert!(dag.verify_chain(&ids).is_ok());
    }

    #[test]
    fn order_cap() {
        let bf = BruteForce::new(4);
        assert_eq!(
            bf.capacity(&named::cyclic(5)),
            Err(BruteForceError::OrderCapExceeded { order: 5, cap: 4 })
        );
        assert!(bf.endomorphisms(&named::cyclic(5)).is_err());
        assert!(bf.capacity(&named::cyclic(4)).is_ok());
    }

    #[test]
    fn bounded_endomorphism_count() {
        let bf = BruteForce::default();
        let s3 = named::symmetric3();
        assert_eq!(bf.endomorphism_count_up_to(&s3, 10).unwrap(), Some(10));
        assert_eq!(bf.endomorphism_count_up_to(&s3, 9).unwrap(), None);
        let big = named::abelian(&AbelianGroup::canonicalize(&[(2, 6)])).unwrap();
        assert_eq!(bf.endomorphism_count_up_to(&big, 1000).unwrap(), None);
    }

    #[test]
    fn idempotent_bound_on_nonabelian_fixtures() {
        let bf = BruteForce::default();
        for (group, capacity, idempotents) in [
            (named::symmetric3(), 3, 5),
            (named::dihedral(4), 3, 10),
            (named::quaternion8(), 2, 2),
        ] {
            let report = bf.idempotent_bound_report(&group).unwrap();
            assert_eq!(report.capacity, capacity);
            assert_eq!(report.idempotents, idempotents);
            assert!(report.holds);
        }
    }

    #[test]
    fn retracts_of_retracts_are_retracts() {
        let bf = BruteForce::default();
        for group in [
            ab(&[(2, 2), (4, 1)]),
            named::dihedral(4),
            ab(&[(2, 1), (3, 1), (9, 1)]),
        ] {
            let classes = bf.retract_classes(&group).unwrap();
            for class in &classes {
                for sub in bf.retract_classes(&class.representative).unwrap() {
                    assert!(classes
                        .iter()
                        .any(|c| is_isomorphic(&c.representative, &sub.representative)));
                }
            }
        }
    }
}
