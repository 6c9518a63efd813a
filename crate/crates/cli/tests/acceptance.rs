//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Time limits are wall-clock for the whole criterion.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use domlab_cli::run;
use domlab_cli::selftest::summand_dag;
use domlab_core::finite::is_isomorphic;
use domlab_core::finite::named;
use domlab_core::polyhedron::{self, corollary_abelian, corollary_finite_pi1, theorem_bound};
use domlab_core::{
    AbelianGroup, BruteForce, CayleyTable, FreeGroup, GroupSpec, PolyhedronDescriptor,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 20_240_601;
const RANDOM_GROUPS: usize = 250;
const MAX_FACTORS: u64 = 12;
const IDENTITY_SAMPLES: usize = 1000;

/// Capacity, strong capacity, depth and strong depth of one computed group.
#[derive(Debug, Clone)]
struct Instance {
    name: String,
    c: BigUint,
    sc: BigUint,
    d: u64,
    sd: u64,
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn fixture(name: &str) -> CayleyTable {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    CayleyTable::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = ["domlab", "--format", "json"]
        .into_iter()
        .chain(args.iter().copied());
    let code = run(argv, None, &mut out, &mut err);
    if code != 0 {
        return Err(format!(
            "{args:?} exited {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    }
    serde_json::from_slice(&out).map_err(|e| e.to_string())
}

fn brute_instance(name: &str, table: &CayleyTable, bf: &BruteForce) -> Result<Instance, String> {
    let classes = bf.retract_classes(table).map_err(|e| e.to_string())?;
    let dag = bf.retract_dag(table).map_err(|e| e.to_string())?;
    let depth = dag.longest_chain().0 as u64;
    // a class strongly dominated by G cannot dominate G back, so it is smaller
    let strong = classes.iter().filter(|c| c.order() < table.order()).count();
    Ok(Instance {
        name: name.to_string(),
        c: classes.len().into(),
        sc: strong.into(),
        d: depth,
        sd: depth,
    })
}

fn criterion_1(instances: &mut Vec<Instance>) -> Outcome {
    let cap = cli_json(&["cap", "Z_2 + Z^2"])?;
    let depth = cli_json(&["depth", "Z_2 + Z^2"])?;
    let got = (
        &cap["result"]["capacity"],
        &cap["result"]["strong_capacity"],
        &depth["result"]["depth"],
        &depth["result"]["strong_depth"],
    );
    ensure(got == (&6.into(), &5.into(), &4.into(), &4.into()), || {
        format!("got C, SC, D, SD = {got:?}")
    })?;
    instances.push(Instance {
        name: "Z^2 + Z_2".into(),
        c: 6u32.into(),
        sc: 5u32.into(),
        d: 4,
        sd: 4,
    });
    Ok("C 6, SC 5, D 4, SD 4".into())
}

fn criterion_2(instances: &mut Vec<Instance>) -> Outcome {
    for k in 0..=10u64 {
        let f = FreeGroup::new(k).unwrap();
        let got = (
            f.capacity(),
            f.strong_capacity(),
            f.depth(),
            f.strong_depth(),
        );
        ensure(got == (k + 1, k, k + 1, k + 1), || {
            format!("F_{k}: {got:?}")
        })?;
        let via_cli = cli_json(&["cap", &format!("F_{k}")])?;
        ensure(via_cli["result"]["capacity"] == k + 1, || {
            format!("cli cap F_{k}: {via_cli}")
        })?;
        instances.push(Instance {
            name: f.to_string(),
            c: got.0.into(),
            sc: got.1.into(),
            d: got.2,
            sd: got.3,
        });
    }
    Ok("k = 0..10".into())
}

fn criterion_3(bf: &BruteForce, instances: &mut Vec<Instance>) -> Outcome {
    let groups = AbelianGroup::all_up_to_order(32);
    for group in &groups {
        let table = named::abelian(group).unwrap();
        let instance = brute_instance(&group.to_string(), &table, bf)?;
        let product: BigUint = group
            .summands()
            .iter()
            .map(|&(_, k)| BigUint::from(k + 1))
            .product();
        let sum: u64 = group.summands().iter().map(|&(_, k)| k).sum::<u64>() + 1;
        ensure(instance.c == product && instance.d == sum, || {
            format!(
                "{group}: brute force C {} D {}, closed form C {product} D {sum}",
                instance.c, instance.d
            )
        })?;
        instances.push(instance);
    }
    Ok(format!("{} groups", groups.len()))
}

fn criterion_4(bf: &BruteForce) -> Outcome {
    let mut tables: Vec<(String, CayleyTable)> = AbelianGroup::all_up_to_order(32)
        .into_iter()
        .map(|g| (g.to_string(), named::abelian(&g).unwrap()))
        .collect();
    for name in ["s3.txt", "d4.txt", "q8.txt"] {
        tables.push((name.to_string(), fixture(name)));
    }
    for (name, table) in &tables {
        let report = bf
            .idempotent_bound_report(table)
            .map_err(|e| e.to_string())?;
        ensure(report.holds, || {
            format!("{name}: C {} > e {}", report.capacity, report.idempotents)
        })?;
    }
    Ok(format!("{} groups incl. S3, D4, Q8", tables.len()))
}

fn s3_values(bf: &BruteForce) -> Result<(usize, usize, usize, usize, Vec<String>), String> {
    let s3 = fixture("s3.txt");
    let err = |e: domlab_core::BruteForceError| e.to_string();
    let classes = bf.retract_classes(&s3).map_err(err)?;
    let mut labels = Vec::new();
    for class in &classes {
        let label = match class.representative.abelian_type() {
            Some(g) => g.to_string(),
            None if is_isomorphic(&class.representative, &named::symmetric3()) => "S_3".into(),
            None => format!("unknown of order {}", class.order()),
        };
        labels.push(label);
    }
    Ok((
        bf.endomorphism_count(&s3).map_err(err)?,
        bf.idempotent_count(&s3).map_err(err)?,
        bf.capacity(&s3).map_err(err)?,
        bf.depth(&s3).map_err(err)?,
        labels,
    ))
}

fn criterion_5(bf: &BruteForce, instances: &mut Vec<Instance>) -> Outcome {
    let first = s3_values(bf)?;
    let second = s3_values(bf)?;
    ensure(first == second, || "S3 values differ between runs".into())?;
    let expected = (
        10,
        5,
        3,
        3,
        vec!["1".to_string(), "Z_2".into(), "S_3".into()],
    );
    ensure(first == expected, || format!("S3: {first:?}"))?;
    for name in ["s3.txt", "d4.txt", "q8.txt"] {
        instances.push(brute_instance(name, &fixture(name), bf)?);
    }
    Ok("S3: 10 endomorphisms, e 5, C 3, D 3, {1, Z_2, S_3}".into())
}

fn random_group(rng: &mut ChaCha8Rng) -> AbelianGroup {
    const POOL: [u64; 14] = [0, 2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49];
    let total = rng.random_range(0..=MAX_FACTORS);
    let raw: Vec<(u64, u32)> = (0..total)
        .map(|_| (POOL[rng.random_range(0..POOL.len())], 1))
        .collect();
    AbelianGroup::canonicalize(&raw)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut largest = 0usize;
    for _ in 0..RANDOM_GROUPS {
        let group = random_group(&mut rng);
        ensure(group.factor_count() <= MAX_FACTORS, || {
            format!("{group} too large")
        })?;
        let dag = summand_dag(&group);
        largest = largest.max(dag.class_count());
        let chain = group.witness_chain();
        let ids: Vec<usize> = chain
            .iter()
            .map(|h| {
                dag.nodes()
                    .iter()
                    .find(|n| n.payload == *h)
                    .map(|n| n.id)
                    .ok_or_else(|| format!("{h} is not a summand class of {group}"))
            })
            .collect::<Result<_, _>>()?;
        dag.verify_chain(&ids)
            .map_err(|v| format!("{group}: witness chain {v}"))?;
        ensure(chain.len() as u64 == group.depth(), || {
            format!(
                "{group}: chain length {} vs depth {}",
                chain.len(),
                group.depth()
            )
        })?;
        let (longest, _) = dag.longest_chain();
        ensure(longest == chain.len(), || {
            format!(
                "{group}: DAG longest chain {longest} vs witness {}",
                chain.len()
            )
        })?;
    }
    Ok(format!(
        "{RANDOM_GROUPS} groups, seed {SEED}, up to {largest} classes"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let depth = |k: u64| GroupSpec::asserted(k, true).unwrap();
    for _ in 0..IDENTITY_SAMPLES {
        let n = rng.random_range(1..=10usize);
        let t: Vec<u64> = (0..n).map(|_| rng.random_range(0..=5)).collect();
        let d_pi1 = rng.random_range(1..=20u64);
        let build = |k1: u64| {
            let mut desc = PolyhedronDescriptor::new(n as u32, depth(k1)).unwrap();
            for (i, &ti) in t.iter().enumerate().skip(1) {
                desc = desc.with_homology(i as u32 + 1, depth(ti + 1)).unwrap();
            }
            desc
        };
        let sum_k: u64 = t.iter().map(|x| x + 1).sum();
        let closed = sum_k - n as u64 + 1;
        let sum_t: u64 = t.iter().sum();
        ensure(closed == sum_t + 1, || format!("t = {t:?}: arithmetic"))?;
        ensure(corollary_abelian(&t) == Ok(closed), || {
            format!("t = {t:?}: abelian corollary")
        })?;
        ensure(theorem_bound(&build(t[0] + 1)) == Ok(closed), || {
            format!("t = {t:?}: theorem bound")
        })?;
        let finite = d_pi1 + t[1..].iter().sum::<u64>();
        ensure(corollary_finite_pi1(d_pi1, &t[1..]) == Ok(finite), || {
            format!("d = {d_pi1}, t = {t:?}: finite-pi1 corollary")
        })?;
        ensure(theorem_bound(&build(d_pi1)) == Ok(finite), || {
            format!("d = {d_pi1}, t = {t:?}: theorem vs finite-pi1 corollary")
        })?;
    }
    Ok(format!("{IDENTITY_SAMPLES} samples, seed {SEED}"))
}

fn criterion_8() -> Outcome {
    let check = |name: &str, c: u64, d: Option<u64>| -> Result<(), String> {
        let entry = polyhedron::lookup(name).map_err(|e| e.to_string())?;
        ensure(entry.capacity == Some(c.into()) && entry.depth == d, || {
            format!("{name}: {entry:?}")
        })
    };
    check("T#T", 4, Some(4))?;
    check("S1xS2", 4, Some(3))?;
    for g in 0..=5 {
        check(&format!("surface:{g}"), g + 2, Some(g + 2))?;
    }
    for k in 1..=10u64 {
        let free = FreeGroup::new(k).unwrap().capacity();
        ensure(free == k + 1, || format!("F_{k} capacity {free}"))?;
        check(&format!("wedge-circles:{k}"), free, None)?;
    }
    let via_cli = cli_json(&["catalog", "T#T"])?;
    ensure(
        via_cli["result"]["capacity"] == 4 && via_cli["result"]["depth"] == 4,
        || format!("cli catalog T#T: {via_cli}"),
    )?;
    Ok("T#T, S1xS2, surfaces g = 0..5, wedges k = 1..10".into())
}

fn criterion_9(instances: &[Instance]) -> Outcome {
    for i in instances {
        let d = BigUint::from(i.d);
        let sd = BigUint::from(i.sd);
        let floor = (&d).min(&i.c);
        ensure(d <= i.c, || format!("{}: D {} > C {}", i.name, i.d, i.c))?;
        ensure(&sd <= floor, || {
            format!("{}: SD {} > min(D, C) {floor}", i.name, i.sd)
        })?;
        ensure(i.sc < i.c, || {
            format!("{}: SC {} > C - 1 = {} - 1", i.name, i.sc, i.c)
        })?;
    }
    Ok(format!("{} instances", instances.len()))
}

fn report(
    number: usize,
    title: &str,
    limit: Option<Duration>,
    body: impl FnOnce() -> Outcome,
) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(_), Some(limit)) if elapsed >= limit => Err(format!(
            "took {:.2}s, limit {}s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        )),
        (other, _) => other,
    };
    let (tag, detail) = match &outcome {
        Ok(detail) => ("PASS", detail),
        Err(detail) => ("FAIL", detail),
    };
    let limit_text = limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
    println!(
        "[{tag}] {number}. {title}: {detail} ({:.3}s{limit_text})",
        elapsed.as_secs_f64()
    );
    outcome.is_ok()
}

fn main() -> ExitCode {
    let bf = BruteForce::default();
    let mut instances = Vec::new();
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        report(1, "fixture cap/depth of Z_2 + Z^2", secs(1), || {
            criterion_1(&mut instances)
        }),
        report(2, "free groups", secs(1), || criterion_2(&mut instances)),
        report(
            3,
            "brute force vs closed forms, order <= 32",
            secs(60),
            || criterion_3(&bf, &mut instances),
        ),
        report(4, "capacity <= idempotent count", secs(30), || {
            criterion_4(&bf)
        }),
        report(5, "S3 regression values", None, || {
            criterion_5(&bf, &mut instances)
        }),
        report(6, "witness chains verify", None, criterion_6),
        report(7, "bound identities", None, criterion_7),
        report(8, "catalog values", None, criterion_8),
        report(9, "D <= C, SD <= min(D, C), SC <= C - 1", None, || {
            criterion_9(&instances)
        }),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
