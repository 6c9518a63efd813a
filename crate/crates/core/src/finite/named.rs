//! Cayley tables of some standard groups.

use std::collections::BTreeSet;

use super::CayleyTable;
use crate::abelian::AbelianGroup;

fn build(n: usize, mul: impl Fn(usize, usize) -> usize) -> CayleyTable {
    let table = (0..n * n).map(|k| mul(k / n, k % n)).collect();
    CayleyTable::from_flat(n, table).expect("generated table is a group")
}

pub fn cyclic(n: usize) -> CayleyTable {
    assert!(n >= 1);
    build(n, |a, b| (a + b) % n)
}

/// Table of a finite abelian group; elements are mixed-radix vectors over the
/// expanded cyclic factors, first coordinate least significant. `None` for
/// infinite groups or orders that do not fit in memory.
pub fn abelian(group: &AbelianGroup) -> Option<CayleyTable> {
    let mut moduli = Vec::new();
    for &(factor, k) in group.summands() {
        let m = usize::try_from(factor.modulus()?).ok()?;
        for _ in 0..k {
            moduli.push(m);
        }
    }
    let n = moduli
        .iter()
        .try_fold(1usize, |acc, &m| acc.checked_mul(m))
        .filter(|&n| n.checked_mul(n).is_some())?;
    Some(build(n, |a, b| {
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for &m in &moduli {
            out += ((a % m + b % m) % m) * place;
            place *= m;
            a /= m;
            b /= m;
        }
        out
    }))
}

/// Dihedral group of order `2n`: element `r^a s^b` has index `b*n + a`.
pub fn dihedral(n: usize) -> CayleyTable {
    assert!(n >= 1);
    build(2 * n, |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
        ((b + d) % 2) * n + rot
    })
}

/// Quaternion group: index `2*u + s` is `(-1)^s * unit[u]` with units `1, i, j, k`.
pub fn quaternion8() -> CayleyTable {
    // unit products as (sign, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    build(8, |x, y| {
        let (s, u) = UNIT[x / 2][y / 2];
        2 * u + (s + x % 2 + y % 2) % 2
    })
}

/// Group generated by permutations of `0..degree`, composed right to left.
/// Elements are indexed in lexicographic order of their images, so the
/// identity is at 0.
pub fn permutation_group(generators: &[Vec<usize>]) -> CayleyTable {
    let degree = generators.first().map_or(0, Vec::len);
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = BTreeSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = compose(&p, g);
            if elements.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    let elements: Vec<Vec<usize>> = elements.into_iter().collect();
    build(elements.len(), |a, b| {
        let c = compose(&elements[a], &elements[b]);
        elements.binary_search(&c).unwrap()
    })
}

/// Symmetric group on three points.
pub fn symmetric3() -> CayleyTable {
    permutation_group(&[vec![1, 2, 0], vec![1, 0, 2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric3().order(), 6);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(quaternion8().order(), 8);
        assert_eq!(
            permutation_group(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).order(),
            24
        );
        let g = AbelianGroup::canonicalize(&[(2, 2), (9, 1)]);
        assert_eq!(abelian(&g).unwrap().order(), 36);
        assert!(abelian(&AbelianGroup::free_abelian(1)).is_none());
        assert_eq!(abelian(&AbelianGroup::trivial()).unwrap().order(), 1);
    }

    #[test]
    fn commutativity() {
        assert!(!symmetric3().is_abelian());
        assert!(!dihedral(4).is_abelian());
        assert!(!quaternion8().is_abelian());
        assert!(dihedral(2).is_abelian());
        assert!(cyclic(9).is_abelian());
    }

    #[test]
    fn quaternion_element_orders() {
        let q = quaternion8();
        let orders: Vec<usize> = (0..8).map(|x| q.element_order(x)).collect();
        assert_eq!(orders, [1, 2, 4, 4, 4, 4, 4, 4]);
    }
}
