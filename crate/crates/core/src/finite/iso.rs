use super::endo::PartialHom;
use super::CayleyTable;

/// Isomorphism invariants used to rule out non-isomorphic pairs cheaply.
/// Equal profiles prove nothing on their own.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoProfile {
    pub order: usize,
    pub abelian: bool,
    /// Sorted element orders.
    pub element_orders: Vec<usize>,
    /// Sorted `(element order, centralizer order)` pairs.
    pub order_centralizer: Vec<(usize, usize)>,
}

impl IsoProfile {
    pub fn of(group: &CayleyTable) -> Self {
        let signatures = signatures(group);
        let mut element_orders: Vec<usize> = signatures.iter().map(|s| s.0).collect();
        element_orders.sort_unstable();
        let mut order_centralizer = signatures;
        order_centralizer.sort_unstable();
        IsoProfile {
            order: group.order(),
            abelian: group.is_abelian(),
            element_orders,
            order_centralizer,
        }
    }
}

fn signatures(group: &CayleyTable) -> Vec<(usize, usize)> {
    (0..group.order())
        .map(|x| (group.element_order(x), group.centralizer_order(x)))
        .collect()
}

/// Exact isomorphism test: profile filter, then a search for an injective
/// homomorphism over images of `g`'s generators that preserve element order
/// and centralizer size.
pub fn is_isomorphic(g: &CayleyTable, h: &CayleyTable) -> bool {
    if g.order() != h.order() {
        return false;
    }
    if IsoProfile::of(g) != IsoProfile::of(h) {
        return false;
    }
    let generators = g.minimal_generators();
    let source_sig = signatures(g);
    let target_sig = signatures(h);
    let mut hom = PartialHom::new(g, h, &generators, true);
    return search(&mut hom, &generators, &source_sig, &target_sig, h.order());

    fn search(
        hom: &mut PartialHom<'_>,
        generators: &[usize],
        source_sig: &[(usize, usize)],
        target_sig: &[(usize, usize)],
        n: usize,
    ) -> bool {
        if hom.is_complete() {
            // injective on a generating set's closure of full size
            return true;
        }
        let wanted = source_sig[generators[hom.level()]];
        for y in (0..n).filter(|&y| target_sig[y] == wanted) {
            if hom.push(y) {
                if search(hom, generators, source_sig, target_sig, n) {
                    return true;
                }
                hom.pop();
            }
        }
        false
    }
}
