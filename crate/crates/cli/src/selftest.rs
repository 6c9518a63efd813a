//! Brute force against closed forms, plus randomized bound identities.

use domlab_core::abelian::is_summand;
use domlab_core::finite::named;
use domlab_core::polyhedron::{self, corollary_abelian, corollary_finite_pi1, theorem_bound};
use domlab_core::{
    AbelianGroup, BruteForce, CayleyTable, ClassNode, DominationDag, FreeGroup, GroupSpec,
    PolyhedronDescriptor,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::output::Record;

pub const IDENTITY_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub groups: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn to_record(&self, max_order: usize, seed: u64) -> Record {
        let mut record = Record::new("selftest")
            .input("max_order", max_order)
            .input("seed", seed);
        record.set("status", if self.passed() { "pass" } else { "fail" });
        record.set("groups", self.groups);
        record.set("checks", self.checks);
        record.set("failures", self.failures.clone());
        record
    }
}

/// Summand DAG of `group`, ids in enumeration order, root last.
pub fn summand_dag(group: &AbelianGroup) -> DominationDag<AbelianGroup> {
    let nodes: Vec<_> = group
        .direct_summands()
        .enumerate()
        .map(|(i, h)| ClassNode::new(i, h.to_string(), h))
        .collect();
    let root = nodes.len() - 1;
    DominationDag::build(
        nodes,
        root,
        |x, y| is_summand(&x.payload, &y.payload),
        |x, y| x.payload != y.payload,
    )
    .expect("direct summands of an abelian group form a DAG")
}

fn check_table(report: &mut Report, name: &str, table: &CayleyTable, bf: &BruteForce) {
    let bound = match bf.idempotent_bound_report(table) {
        Ok(bound) => bound,
        Err(e) => return report.check(false, || format!("{name}: {e}")),
    };
    report.check(bound.holds, || {
        format!(
            "{name}: capacity {} > idempotents {}",
            bound.capacity, bound.idempotents
        )
    });
    match bf.retract_dag(table) {
        Ok(dag) => {
            let (length, chain) = dag.longest_chain();
            let ids: Vec<usize> = chain.iter().map(|n| n.id).collect();
            report.check(dag.verify_chain(&ids).is_ok(), || {
                format!("{name}: longest retract chain fails verification")
            });
            report.check(length <= dag.class_count(), || {
                format!("{name}: depth {length} > capacity {}", dag.class_count())
            });
            report.check(dag.class_count() == bound.capacity, || {
                format!(
                    "{name}: DAG has {} classes, capacity {}",
                    dag.class_count(),
                    bound.capacity
                )
            });
        }
        Err(e) => report.check(false, || format!("{name}: {e}")),
    }
}

fn check_abelian(report: &mut Report, group: &AbelianGroup, bf: &BruteForce) {
    report.groups += 1;
    let name = group.to_string();
    let Some(table) = named::abelian(group) else {
        return report.check(false, || format!("{name}: no table"));
    };
    report.check(table.abelian_type().as_ref() == Some(group), || {
        format!("{name}: table decomposes differently")
    });
    match bf.capacity(&table) {
        Ok(c) => report.check(BigUint::from(c) == group.capacity(), || {
            format!(
                "{name}: brute-force capacity {c}, closed form {}",
                group.capacity()
            )
        }),
        Err(e) => report.check(false, || format!("{name}: {e}")),
    }
    match bf.depth(&table) {
        Ok(d) => report.check(d as u64 == group.depth(), || {
            format!(
                "{name}: brute-force depth {d}, closed form {}",
                group.depth()
            )
        }),
        Err(e) => report.check(false, || format!("{name}: {e}")),
    }
    check_table(report, &name, &table, bf);

    let dag = summand_dag(group);
    let (length, _) = dag.longest_chain();
    report.check(length as u64 == group.depth(), || {
        format!(
            "{name}: summand DAG chain {length}, depth {}",
            group.depth()
        )
    });
    let chain = group.witness_chain();
    report.check(
        chain.len() as u64 == group.depth()
            && chain
                .windows(2)
                .all(|w| is_summand(&w[0], &w[1]) && w[0] != w[1]),
        || format!("{name}: witness chain is not a proper chain of summands"),
    );
}

fn check_identities(report: &mut Report, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..IDENTITY_SAMPLES {
        let n = rng.random_range(1..=10usize);
        let t: Vec<u64> = (0..n).map(|_| rng.random_range(0..=5)).collect();
        let depth = |x: u64| GroupSpec::asserted(x, true).expect("positive depth");
        let build = |pi1: u64| {
            let mut desc = PolyhedronDescriptor::new(n as u32, depth(pi1)).unwrap();
            for (i, &ti) in t.iter().enumerate().skip(1) {
                desc = desc.with_homology(i as u32 + 1, depth(ti + 1)).unwrap();
            }
            desc
        };
        let via_theorem = theorem_bound(&build(t[0] + 1)).unwrap();
        report.check(corollary_abelian(&t) == Ok(via_theorem), || {
            format!("t = {t:?}: abelian corollary disagrees with the theorem")
        });
        let d = rng.random_range(1..=20u64);
        let via_theorem = theorem_bound(&build(d)).unwrap();
        report.check(corollary_finite_pi1(d, &t[1..]) == Ok(via_theorem), || {
            format!("d = {d}, t = {t:?}: finite-pi1 corollary disagrees with the theorem")
        });
    }
}

fn check_free_and_catalog(report: &mut Report) {
    for k in 0..=10u64 {
        let f = FreeGroup::new(k).unwrap();
        report.check(
            f.capacity() == k + 1
                && f.strong_capacity() == k
                && f.depth() == k + 1
                && f.strong_depth() == k + 1,
            || format!("F_{k}: closed forms"),
        );
        if k >= 1 {
            let wedge = polyhedron::wedge_circles(k);
            report.check(wedge.capacity == Some(f.capacity().into()), || {
                format!("wedge of {k} circles disagrees with F_{k}")
            });
        }
    }
}

/// Runs every check on abelian groups of order at most `max_order`, the
/// nonabelian fixtures that fit, free groups, and `IDENTITY_SAMPLES`
/// randomized bound identities drawn from `seed`.
pub fn run(max_order: usize, bf: &BruteForce, seed: u64) -> Report {
    let mut report = Report::default();
    for group in AbelianGroup::all_up_to_order(max_order as u64) {
        check_abelian(&mut report, &group, bf);
    }
    let fixtures = [
        ("S_3", named::symmetric3()),
        ("D_4", named::dihedral(4)),
        ("Q_8", named::quaternion8()),
        ("D_5", named::dihedral(5)),
        ("D_6", named::dihedral(6)),
    ];
    for (name, table) in fixtures.iter().filter(|(_, t)| t.order() <= max_order) {
        report.groups += 1;
        check_table(&mut report, name, table, bf);
    }
    check_free_and_catalog(&mut report);
    check_identities(&mut report, seed);
    report
}
