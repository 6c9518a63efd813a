//! Command-line front end for `domlab-core`.
//!
//! [`run`] takes the arguments, the raw `DOMLAB_MAX_ORDER` value and the two
//! output streams, and returns the exit code: 0 on success, 2 for bad input,
//! 3 when an internal invariant fails.

pub mod expr;
pub mod output;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use domlab_core::finite::DEFAULT_MAX_ORDER;
use domlab_core::polyhedron::{self, applicable_corollaries, theorem_bound};
use domlab_core::{
    AbelianGroup, BoundError, BruteForce, BruteForceError, CayleyTable, GroupSpec,
    PolyhedronDescriptor, RetractClass, TableError,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::expr::{parse_expression, ExprError, GroupExpression};
use crate::output::{big, Format, Record};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Longest list `summands` and `chain` will print by default.
pub const DEFAULT_LIST_LIMIT: u64 = 100_000;

/// `brute --what all` stops counting endomorphisms past this many.
const ENDOMORPHISM_REPORT_LIMIT: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "domlab",
    version,
    about = "Capacity and depth of groups, and depth bounds for finite polyhedra"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Seed for the randomized identity checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Capacity and strong capacity.
    Cap { expr: String },
    /// Depth and strong depth.
    Depth { expr: String },
    /// Direct summands up to isomorphism (abelian groups only).
    Summands {
        expr: String,
        #[arg(long, default_value_t = DEFAULT_LIST_LIMIT)]
        limit: u64,
    },
    /// A chain of proper retracts realizing the depth.
    Chain {
        expr: String,
        #[arg(long, default_value_t = DEFAULT_LIST_LIMIT)]
        limit: u64,
    },
    /// Brute-force analysis of a Cayley table file.
    Brute {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = What::All)]
        what: What,
    },
    /// Depth bound for a finite polyhedron.
    Poly(PolyArgs),
    /// Known capacity and depth values.
    Catalog { name: Option<String> },
    /// Brute force against closed forms on every abelian group up to an order.
    Selftest {
        #[arg(long, default_value_t = 32)]
        max_order: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Cap,
    Depth,
    Endos,
    Idem,
    Retracts,
    All,
}

#[derive(Debug, Args)]
struct PolyArgs {
    /// Dimension n of the polyhedron.
    #[arg(long)]
    dim: u32,
    /// Fundamental group as an expression.
    #[arg(
        long,
        conflicts_with = "pi1_depth",
        required_unless_present = "pi1_depth"
    )]
    pi1: Option<String>,
    /// Depth of the fundamental group, when known from elsewhere.
    #[arg(long)]
    pi1_depth: Option<u64>,
    /// Attest that every retract of each group given by depth is Hopfian.
    #[arg(long)]
    hopfian: bool,
    /// Homology of the universal cover, I=EXPR.
    #[arg(long = "h", value_name = "I=EXPR")]
    homology: Vec<String>,
    /// Homology depth of the universal cover, I=K.
    #[arg(long = "h-depth", value_name = "I=K")]
    homology_depth: Vec<String>,
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        Failure::Input(format!("invalid Cayley table: {e}"))
    }
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<BruteForceError> for Failure {
    fn from(e: BruteForceError) -> Self {
        match e {
            BruteForceError::OrderCapExceeded { .. } => Failure::Input(e.to_string()),
            other => Failure::Invariant(other.to_string()),
        }
    }
}

struct Context {
    brute: BruteForce,
    seed: u64,
}

/// Parses `args` (program name first) and runs one command.
pub fn run<I, T>(
    args: I,
    env_max_order: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let outcome = max_order(env_max_order).and_then(|cap| {
        let context = Context {
            brute: BruteForce::new(cap),
            seed: cli.seed,
        };
        dispatch(cli.command, &context)
    });
    match outcome {
        Ok((record, code)) => {
            if record.write(cli.format, out).is_err() {
                return 1;
            }
            code
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            failure.code()
        }
    }
}

fn max_order(raw: Option<&str>) -> Result<usize, Failure> {
    match raw {
        None => Ok(DEFAULT_MAX_ORDER),
        Some(text) => text
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| {
                Failure::Input(format!(
                    "DOMLAB_MAX_ORDER must be a positive integer, found {text:?}"
                ))
            }),
    }
}

fn dispatch(command: Command, context: &Context) -> Result<(Record, i32), Failure> {
    let record = match command {
        Command::Cap { expr } => cap(&expr)?,
        Command::Depth { expr } => depth(&expr)?,
        Command::Summands { expr, limit } => summands(&expr, limit)?,
        Command::Chain { expr, limit } => chain(&expr, limit)?,
        Command::Brute { file, what } => brute(&file, what, &context.brute)?,
        Command::Poly(args) => poly(&args)?,
        Command::Catalog { name } => catalog(name.as_deref())?,
        Command::Selftest { max_order } => {
            if max_order > context.brute.max_order() {
                return Err(Failure::Input(format!(
                    "--max-order {max_order} exceeds the brute-force cap {}",
                    context.brute.max_order()
                )));
            }
            let report = selftest::run(max_order, &context.brute, context.seed);
            let code = if report.passed() { 0 } else { EXIT_INVARIANT };
            return Ok((report.to_record(max_order, context.seed), code));
        }
    };
    Ok((record, 0))
}

// Z_2 + Z^2 has capacity 6 and strong capacity 5; the 5 is easily misread as
// a second capacity value.
fn note_known_misreadings(group: &GroupExpression, record: &mut Record) {
    if let GroupExpression::Abelian(g) = group {
        if *g == AbelianGroup::canonicalize(&[(2, 1), (0, 2)]) {
            record.warn("for Z^2 + Z_2 the value 5 is the strong capacity SC; the capacity C is 6");
        }
    }
}

fn parsed(command: &'static str, text: &str) -> Result<(GroupExpression, Record), Failure> {
    let group = parse_expression(text)?;
    let mut record = Record::new(command).input("expr", text);
    record.set("group", group.to_string());
    Ok((group, record))
}

fn cap(text: &str) -> Result<Record, Failure> {
    let (group, mut record) = parsed("cap", text)?;
    note_known_misreadings(&group, &mut record);
    match &group {
        GroupExpression::Abelian(g) => {
            record.set("capacity", big(&g.capacity()));
            record.set("strong_capacity", big(&g.strong_capacity()));
        }
        GroupExpression::Free(f) => {
            record.set("capacity", f.capacity());
            record.set("strong_capacity", f.strong_capacity());
        }
    }
    Ok(record)
}

fn depth(text: &str) -> Result<Record, Failure> {
    let (group, mut record) = parsed("depth", text)?;
    let (d, sd) = match &group {
        GroupExpression::Abelian(g) => (g.depth(), g.strong_depth()),
        GroupExpression::Free(f) => (f.depth(), f.strong_depth()),
    };
    record.set("depth", d);
    record.set("strong_depth", sd);
    Ok(record)
}

fn summands(text: &str, limit: u64) -> Result<Record, Failure> {
    let (group, mut record) = parsed("summands", text)?;
    let GroupExpression::Abelian(g) = group else {
        return Err(Failure::Input(
            "summands applies to abelian groups only; free groups have no direct sum structure to list".into(),
        ));
    };
    let count = g.capacity();
    if count > limit.into() {
        return Err(Failure::Input(format!(
            "{g} has {count} summand classes, more than --limit {limit}"
        )));
    }
    let list: Vec<Value> = g.direct_summands().map(|h| h.to_string().into()).collect();
    record.set("count", big(&count));
    record.set("summands", list);
    Ok(record)
}

fn chain(text: &str, limit: u64) -> Result<Record, Failure> {
    let (group, mut record) = parsed("chain", text)?;
    let length = match &group {
        GroupExpression::Abelian(g) => g.depth(),
        GroupExpression::Free(f) => f.depth(),
    };
    if length > limit {
        return Err(Failure::Input(format!(
            "chain of length {length} is longer than --limit {limit}"
        )));
    }
    let witness: Vec<Value> = match &group {
        GroupExpression::Abelian(g) => g
            .witness_chain()
            .iter()
            .map(|h| h.to_string().into())
            .collect(),
        GroupExpression::Free(f) => f
            .witness_chain()
            .iter()
            .map(|h| h.to_string().into())
            .collect(),
    };
    record.set("length", length);
    record.witness(witness);
    Ok(record)
}

fn class_label(class: &RetractClass) -> String {
    match class.representative.abelian_type() {
        Some(g) => g.to_string(),
        None => format!("nonabelian of order {}", class.order()),
    }
}

fn class_json(class: &RetractClass) -> Value {
    json!({
        "order": class.order(),
        "label": class_label(class),
        "subgroup": class.subgroup,
        "idempotent": class.witness.images(),
    })
}

fn brute(path: &PathBuf, what: What, bf: &BruteForce) -> Result<Record, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let table = CayleyTable::parse(&text)?;
    let mut record = Record::new("brute")
        .input("file", path.display().to_string())
        .input("what", format!("{what:?}").to_lowercase());
    record.set("order", table.order());
    if let Some(g) = table.abelian_type() {
        record.set("group", g.to_string());
    }
    let wants = |w: What| what == w || what == What::All;

    if what == What::Endos {
        record.set("endomorphisms", bf.endomorphism_count(&table)?);
    } else if what == What::All {
        match bf.endomorphism_count_up_to(&table, ENDOMORPHISM_REPORT_LIMIT)? {
            Some(count) => record.set("endomorphisms", count),
            None => {
                record.set("endomorphisms", Value::Null);
                record.warn(format!(
                    "more than {ENDOMORPHISM_REPORT_LIMIT} endomorphisms; use --what endos for the exact count"
                ));
            }
        }
    }
    if wants(What::Idem) {
        record.set("idempotents", bf.idempotent_count(&table)?);
    }
    if wants(What::Cap) {
        record.set("capacity", bf.capacity(&table)?);
    }
    if wants(What::Retracts) {
        let classes = bf.retract_classes(&table)?;
        record.set(
            "retracts",
            classes.iter().map(class_json).collect::<Vec<_>>(),
        );
    }
    if wants(What::Depth) {
        let dag = bf.retract_dag(&table)?;
        let (length, chain) = dag.longest_chain();
        let ids: Vec<usize> = chain.iter().map(|n| n.id).collect();
        dag.verify_chain(&ids)
            .map_err(|v| Failure::Invariant(format!("retract chain fails verification: {v}")))?;
        if length > dag.class_count() {
            return Err(Failure::Invariant(format!(
                "depth {length} exceeds capacity {}",
                dag.class_count()
            )));
        }
        record.set("depth", length);
        record.witness(
            chain
                .iter()
                .map(|n| Value::from(class_label(&n.payload)))
                .collect::<Vec<_>>(),
        );
    }
    if what == What::All {
        let report = bf.idempotent_bound_report(&table)?;
        if !report.holds {
            return Err(Failure::Invariant(format!(
                "capacity {} exceeds idempotent count {}",
                report.capacity, report.idempotents
            )));
        }
        record.set("capacity_at_most_idempotents", report.holds);
    }
    Ok(record)
}

fn split_index(raw: &str, flag: &str) -> Result<(u32, String), Failure> {
    let (index, value) = raw
        .split_once('=')
        .ok_or_else(|| Failure::Input(format!("{flag} expects I=VALUE, found {raw:?}")))?;
    let index = index
        .trim()
        .parse::<u32>()
        .map_err(|_| Failure::Input(format!("{flag}: bad index {index:?}")))?;
    Ok((index, value.trim().to_string()))
}

fn expression_spec(text: &str) -> Result<GroupSpec, Failure> {
    Ok(match parse_expression(text)? {
        GroupExpression::Abelian(g) => GroupSpec::Abelian(g),
        GroupExpression::Free(f) => GroupSpec::Free(f),
    })
}

fn depth_spec(k: u64, hopfian: bool) -> Result<GroupSpec, Failure> {
    Ok(GroupSpec::asserted(k, hopfian)?)
}

fn poly(args: &PolyArgs) -> Result<Record, Failure> {
    let mut record = Record::new("poly").input("dim", args.dim);
    let pi1 = match (&args.pi1, args.pi1_depth) {
        (Some(text), _) => {
            record = record.input("pi1", text.as_str());
            expression_spec(text)?
        }
        (None, Some(k)) => {
            record = record.input("pi1_depth", k);
            depth_spec(k, args.hopfian)?
        }
        (None, None) => unreachable!("clap requires one of --pi1 and --pi1-depth"),
    };
    let mut desc = PolyhedronDescriptor::new(args.dim, pi1)?;
    let mut homology = serde_json::Map::new();
    let mut seen = Vec::new();
    let mut add = |desc: PolyhedronDescriptor, index: u32, spec: GroupSpec, shown: Value| {
        if seen.contains(&index) {
            return Err(Failure::Input(format!("homology H_{index} given twice")));
        }
        seen.push(index);
        homology.insert(index.to_string(), shown);
        Ok(desc.with_homology(index, spec)?)
    };
    for raw in &args.homology {
        let (index, text) = split_index(raw, "--h")?;
        let spec = expression_spec(&text)?;
        desc = add(desc, index, spec, text.into())?;
    }
    for raw in &args.homology_depth {
        let (index, text) = split_index(raw, "--h-depth")?;
        let k = text
            .parse::<u64>()
            .map_err(|_| Failure::Input(format!("--h-depth: bad depth {text:?}")))?;
        desc = add(
            desc,
            index,
            depth_spec(k, args.hopfian)?,
            json!({ "depth": k }),
        )?;
    }
    record = record
        .input("homology", Value::Object(homology))
        .input("hopfian", args.hopfian);

    let bound = theorem_bound(&desc)?;
    record.set("depths", desc.depths()?);
    record.set("bound", bound);
    let mut corollaries = serde_json::Map::new();
    for (which, value) in applicable_corollaries(&desc)? {
        if value != bound {
            return Err(Failure::Invariant(format!(
                "{which} corollary gives {value}, theorem gives {bound}"
            )));
        }
        corollaries.insert(which.to_string(), value.into());
    }
    record.set("corollaries", Value::Object(corollaries));
    if desc
        .slots()
        .any(|(_, spec)| matches!(spec, Some(GroupSpec::AssertedDepth { .. })))
    {
        record.warn("depths given with --pi1-depth or --h-depth are taken on trust");
    }
    Ok(record)
}

fn catalog_json(entry: &polyhedron::CatalogEntry) -> Value {
    json!({
        "name": entry.name,
        "capacity": entry.capacity.as_ref().map(big),
        "depth": entry.depth,
        "source": entry.citation,
    })
}

fn catalog(name: Option<&str>) -> Result<Record, Failure> {
    let mut record = Record::new("catalog");
    match name {
        Some(name) => {
            record = record.input("name", name);
            let entry = polyhedron::lookup(name)?;
            if let Value::Object(fields) = catalog_json(&entry) {
                for (key, value) in fields {
                    record.set(&key, value);
                }
            }
        }
        None => {
            let entries: Vec<Value> = polyhedron::catalog().iter().map(catalog_json).collect();
            record.set("entries", entries);
        }
    }
    Ok(record)
}
