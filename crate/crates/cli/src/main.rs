//! Command-line surface: parse instance files, run validations, decisions,
//! constructions, enumerations, and emit machine-readable reports and
//! witnesses.
//!
//! All structured output goes to standard output as JSON; human-readable
//! summaries go to standard error. Exit codes: 0 affirmative/success,
//! 1 negative decision, 2 error.

use burncat_core::burnside::classical::{classical_class, in_iota_image, iota_rig};
use burncat_core::burnside::enumerate::{enumerate_classes, test_cancellation};
use burncat_core::burnside::induce::{induce, induce_gset, induce_rig};
use burncat_core::burnside::{rig_class, RingElement};
use burncat_core::double::{translation_double, verify_double_axioms};
use burncat_core::engine::{
    skeleton, split_discrete, sqre_orbit_partition, weak_equivalent, Budget, SkeletonOutcome,
};
use burncat_core::groupoid::{decompose_ring, groupoid_sqre_partition, groupoid_weak_equivalent};
use burncat_core::io::{self, Loaded};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "burncat",
    version,
    about = "Exact computation with categorified group- and groupoid-sets and their Burnside rings"
)]
struct Cli {
    /// Bound on exhaustive searches (maximum arrow count); overrides the
    /// BURNCAT_BUDGET environment variable. Default 8.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the validator appropriate to the file's kind
    Validate { path: PathBuf },
    /// Decide weak equivalence of two instances (exit 0 equivalent, 1 not)
    Weq {
        path1: PathBuf,
        path2: PathBuf,
        /// Write the witness file here on a positive decision
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Re-validate a witness file against two instance files (exit 0/1)
    CheckWitness {
        witness: PathBuf,
        path1: PathBuf,
        path2: PathBuf,
    },
    /// Compute a skeleton, or report the orbit blocking every choice
    Skeleton {
        path: PathBuf,
        /// Write the skeleton instance here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Square-orbit decomposition into indecomposable blocks
    Orbits { path: PathBuf },
    /// Split into parts with discrete and non-discrete skeletons
    Split { path: PathBuf },
    /// Build the right translation double category and verify its axioms
    Double {
        path: PathBuf,
        /// Write the double-category export here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Burnside rig operations
    Rig {
        #[command(subcommand)]
        op: RigOp,
    },
    /// Burnside ring operations on formal differences
    Ring {
        #[command(subcommand)]
        op: RingOp,
    },
    /// Comparison map: classical class of a G-set into the categorified rig
    Iota {
        path: PathBuf,
        /// Write the resulting rig element file here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Induce along a group homomorphism (gset, catgset or rig input)
    Induce {
        hom: PathBuf,
        path: PathBuf,
        /// Write the induced artifact here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate weak-equivalence classes with at most n arrows
    Enumerate { group: PathBuf, n: usize },
    /// Cancellation sweep: search for X⊎E ~ Y⊎E with X not equivalent to Y
    Cancel { group: PathBuf, bound: usize },
    /// Component decomposition of the categorified Burnside ring
    Decompose { groupoid: PathBuf, bound: usize },
}

#[derive(Subcommand)]
enum RigOp {
    /// The rig class of a categorified instance
    Class {
        path: PathBuf,
        /// Write the rig element file here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Add {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Mul {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equality in the rig quotient (exit 0 equal, 1 not)
    Eq { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum RingOp {
    /// Form a ring element from positive and negative rig parts
    Make {
        pos: PathBuf,
        neg: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Add {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Neg {
        a: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Mul {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equality in the ring (exit 0 equal, 1 not)
    Eq { a: PathBuf, b: PathBuf },
}

std::thread_local! {
    static PARSE_MS: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

/// Loads a file while accumulating parse/validation time for the report.
fn timed_load(path: &std::path::Path) -> Result<Loaded, io::IoError> {
    let started = Instant::now();
    let result = io::load_path(path);
    PARSE_MS.with(|c| c.set(c.get() + started.elapsed().as_millis() as u64));
    result
}

struct Failure {
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let budget = resolve_budget(cli.budget);
    let started = Instant::now();
    let command_name = command_name(&cli.command);
    match run(cli.command, &budget) {
        Ok((status, payload)) => {
            let total = started.elapsed().as_millis() as u64;
            let parse = PARSE_MS.with(|c| c.get());
            let report = json!({
                "command": command_name,
                "status": if status == 0 { "ok" } else { "no" },
                "payload": payload,
                "timings": {
                    "parse_ms": parse,
                    "compute_ms": total.saturating_sub(parse),
                    "total_ms": total,
                },
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            eprintln!(
                "{command_name}: {} ({} ms)",
                if status == 0 { "ok" } else { "no" },
                started.elapsed().as_millis()
            );
            std::process::exit(status);
        }
        Err(failure) => {
            let total = started.elapsed().as_millis() as u64;
            let parse = PARSE_MS.with(|c| c.get());
            let report = json!({
                "command": command_name,
                "status": "error",
                "payload": {"message": failure.message},
                "timings": {
                    "parse_ms": parse,
                    "compute_ms": total.saturating_sub(parse),
                    "total_ms": total,
                },
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            eprintln!("{command_name}: error: {}", failure.message);
            std::process::exit(2);
        }
    }
}

fn resolve_budget(flag: Option<usize>) -> Budget {
    let max_arrows = flag.or_else(|| {
        std::env::var("BURNCAT_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    match max_arrows {
        Some(n) => Budget::with_max_arrows(n),
        None => Budget::default(),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Weq { .. } => "weq",
        Command::CheckWitness { .. } => "check-witness",
        Command::Skeleton { .. } => "skeleton",
        Command::Orbits { .. } => "orbits",
        Command::Split { .. } => "split",
        Command::Double { .. } => "double",
        Command::Rig { .. } => "rig",
        Command::Ring { .. } => "ring",
        Command::Iota { .. } => "iota",
        Command::Induce { .. } => "induce",
        Command::Enumerate { .. } => "enumerate",
        Command::Cancel { .. } => "cancel",
        Command::Decompose { .. } => "decompose",
    }
}

fn run(command: Command, budget: &Budget) -> Result<(i32, Value), Failure> {
    match command {
        Command::Validate { path } => {
            let loaded = timed_load(&path)?;
            Ok((0, json!({"kind": loaded.kind(), "valid": true})))
        }
        Command::Weq {
            path1,
            path2,
            witness,
        } => cmd_weq(&path1, &path2, witness.as_deref(), budget),
        Command::CheckWitness {
            witness,
            path1,
            path2,
        } => cmd_check_witness(&witness, &path1, &path2),
        Command::Skeleton { path, out } => cmd_skeleton(&path, out.as_deref()),
        Command::Orbits { path } => cmd_orbits(&path),
        Command::Split { path } => cmd_split(&path),
        Command::Double { path, out } => cmd_double(&path, out.as_deref()),
        Command::Rig { op } => cmd_rig(op, budget),
        Command::Ring { op } => cmd_ring(op, budget),
        Command::Iota { path, out } => cmd_iota(&path, out.as_deref()),
        Command::Induce { hom, path, out } => cmd_induce(&hom, &path, out.as_deref()),
        Command::Enumerate { group, n } => cmd_enumerate(&group, n, budget),
        Command::Cancel { group, bound } => cmd_cancel(&group, bound, budget),
        Command::Decompose { groupoid, bound } => cmd_decompose(&groupoid, bound, budget),
    }
}

fn write_out(value: &Value, out: Option<&std::path::Path>) -> Result<(), Failure> {
    if let Some(path) = out {
        std::fs::write(path, serde_json::to_string_pretty(value).unwrap()).map_err(|e| {
            Failure {
                message: format!("cannot write {}: {e}", path.display()),
            }
        })?;
    }
    Ok(())
}

fn load_catgset(path: &std::path::Path) -> Result<std::sync::Arc<burncat_core::CatGSet>, Failure> {
    match timed_load(path)? {
        Loaded::CatGSet(x) => Ok(x),
        other => Err(Failure {
            message: format!(
                "{}: expected a catgset, found {}",
                path.display(),
                other.kind()
            ),
        }),
    }
}

fn cmd_weq(
    path1: &std::path::Path,
    path2: &std::path::Path,
    witness_out: Option<&std::path::Path>,
    budget: &Budget,
) -> Result<(i32, Value), Failure> {
    let a = timed_load(path1)?;
    let b = timed_load(path2)?;
    match (a, b) {
        (Loaded::CatGSet(x), Loaded::CatGSet(y)) => match weak_equivalent(&x, &y, budget)? {
            Some(w) => {
                w.validate(&x, &y)?;
                let wj = io::witness_json(&w);
                if let Some(out) = witness_out {
                    std::fs::write(out, serde_json::to_string_pretty(&wj).unwrap()).map_err(
                        |e| Failure {
                            message: format!("cannot write witness: {e}"),
                        },
                    )?;
                }
                Ok((
                    0,
                    json!({"equivalent": true, "witness_written": witness_out.is_some()}),
                ))
            }
            None => Ok((1, json!({"equivalent": false}))),
        },
        (Loaded::CatGroupoidSet(x), Loaded::CatGroupoidSet(y)) => {
            match groupoid_weak_equivalent(&x, &y, budget)? {
                Some(w) => {
                    w.validate(&x, &y)?;
                    let wj = io::groupoid_witness_json(&w);
                    if let Some(out) = witness_out {
                        std::fs::write(out, serde_json::to_string_pretty(&wj).unwrap()).map_err(
                            |e| Failure {
                                message: format!("cannot write witness: {e}"),
                            },
                        )?;
                    }
                    Ok((
                        0,
                        json!({"equivalent": true, "witness_written": witness_out.is_some()}),
                    ))
                }
                None => Ok((1, json!({"equivalent": false}))),
            }
        }
        (a, b) => Err(Failure {
            message: format!(
                "weq expects two catgset or two cat-groupoid-set files, found {} and {}",
                a.kind(),
                b.kind()
            ),
        }),
    }
}

fn cmd_check_witness(
    witness: &std::path::Path,
    path1: &std::path::Path,
    path2: &std::path::Path,
) -> Result<(i32, Value), Failure> {
    let w = timed_load(witness)?;
    let a = timed_load(path1)?;
    let b = timed_load(path2)?;
    let valid = match (w, a, b) {
        (Loaded::Witness(w), Loaded::CatGSet(x), Loaded::CatGSet(y)) => w.validate(&x, &y).is_ok(),
        (Loaded::GroupoidWitness(w), Loaded::CatGroupoidSet(x), Loaded::CatGroupoidSet(y)) => {
            w.validate(&x, &y).is_ok()
        }
        (w, ..) => {
            return Err(Failure {
                message: format!("unsupported witness/instance combination ({})", w.kind()),
            })
        }
    };
    Ok((if valid { 0 } else { 1 }, json!({"witness_valid": valid})))
}

fn cmd_skeleton(
    path: &std::path::Path,
    out: Option<&std::path::Path>,
) -> Result<(i32, Value), Failure> {
    let x = load_catgset(path)?;
    match skeleton(&x) {
        SkeletonOutcome::Skeleton(data) => {
            let sj = io::catgset_json(&data.skeleton);
            if let Some(out) = out {
                std::fs::write(out, serde_json::to_string_pretty(&sj).unwrap()).map_err(|e| {
                    Failure {
                        message: format!("cannot write skeleton: {e}"),
                    }
                })?;
            }
            Ok((
                0,
                json!({
                    "objects": data.skeleton.n_objects(),
                    "arrows": data.skeleton.n_arrows(),
                    "object_map": data.obj_map,
                    "skeleton": sj,
                }),
            ))
        }
        SkeletonOutcome::NoEquivariantSkeleton { orbit } => Ok((
            1,
            json!({"no_equivariant_skeleton": true, "witness_orbit": orbit}),
        )),
    }
}

fn cmd_orbits(path: &std::path::Path) -> Result<(i32, Value), Failure> {
    match timed_load(path)? {
        Loaded::CatGSet(x) => {
            let blocks = sqre_orbit_partition(&x);
            Ok((
                0,
                json!({
                    "blocks": blocks.iter().map(|(rep, b)| json!({
                        "representative": rep,
                        "objects": b.obj_map,
                        "arrows": b.arr_map,
                    })).collect::<Vec<_>>(),
                }),
            ))
        }
        Loaded::CatGroupoidSet(x) => {
            let blocks = groupoid_sqre_partition(&x);
            Ok((
                0,
                json!({
                    "blocks": blocks.iter().map(|(rep, b)| json!({
                        "representative": rep,
                        "objects": b.obj_map,
                        "arrows": b.arr_map,
                    })).collect::<Vec<_>>(),
                }),
            ))
        }
        other => Err(Failure {
            message: format!(
                "orbits expects a categorified instance, found {}",
                other.kind()
            ),
        }),
    }
}

fn cmd_split(path: &std::path::Path) -> Result<(i32, Value), Failure> {
    let x = load_catgset(path)?;
    let (d, nd) = split_discrete(&x);
    Ok((
        0,
        json!({
            "discrete_part": {
                "objects": d.obj_map,
                "instance": io::catgset_json(&d.cat),
            },
            "non_discrete_part": {
                "objects": nd.obj_map,
                "instance": io::catgset_json(&nd.cat),
            },
        }),
    ))
}

fn cmd_double(
    path: &std::path::Path,
    out: Option<&std::path::Path>,
) -> Result<(i32, Value), Failure> {
    let x = load_catgset(path)?;
    let d = translation_double(&x);
    let violations = verify_double_axioms(&d);
    let export = io::double_json(&d);
    if let Some(out) = out {
        std::fs::write(out, serde_json::to_string_pretty(&export).unwrap()).map_err(|e| {
            Failure {
                message: format!("cannot write double export: {e}"),
            }
        })?;
    }
    let ok = violations.is_empty();
    Ok((
        if ok { 0 } else { 1 },
        json!({
            "objects": d.n_objects(),
            "horizontal": d.n_horizontal(),
            "vertical": d.n_vertical(),
            "squares": d.n_squares(),
            "violations": violations,
            "export": export,
        }),
    ))
}

fn load_rig_file(path: &std::path::Path) -> Result<burncat_core::burnside::RigElement, Failure> {
    match timed_load(path)? {
        Loaded::Rig(u) => Ok(u),
        other => Err(Failure {
            message: format!(
                "{}: expected a rig element, found {}",
                path.display(),
                other.kind()
            ),
        }),
    }
}

fn load_ring_file(path: &std::path::Path) -> Result<RingElement, Failure> {
    match timed_load(path)? {
        Loaded::Ring(r) => Ok(r),
        Loaded::Rig(u) => Ok(RingElement::from_rig(u)),
        other => Err(Failure {
            message: format!(
                "{}: expected a ring element, found {}",
                path.display(),
                other.kind()
            ),
        }),
    }
}

fn cmd_rig(op: RigOp, budget: &Budget) -> Result<(i32, Value), Failure> {
    match op {
        RigOp::Class { path, out } => {
            let x = load_catgset(&path)?;
            let u = io::rig_json(&rig_class(&x));
            write_out(&u, out.as_deref())?;
            Ok((0, u))
        }
        RigOp::Add { a, b, out } => {
            let u = io::rig_json(&load_rig_file(&a)?.add(&load_rig_file(&b)?)?);
            write_out(&u, out.as_deref())?;
            Ok((0, u))
        }
        RigOp::Mul { a, b, out } => {
            let u = io::rig_json(&load_rig_file(&a)?.mul(&load_rig_file(&b)?)?);
            write_out(&u, out.as_deref())?;
            Ok((0, u))
        }
        RigOp::Eq { a, b } => {
            let equal = load_rig_file(&a)?.equal(&load_rig_file(&b)?, budget)?;
            Ok((if equal { 0 } else { 1 }, json!({"equal": equal})))
        }
    }
}

fn cmd_ring(op: RingOp, budget: &Budget) -> Result<(i32, Value), Failure> {
    match op {
        RingOp::Make { pos, neg, out } => {
            let r = io::ring_json(&RingElement::new(
                load_rig_file(&pos)?,
                load_rig_file(&neg)?,
            )?);
            write_out(&r, out.as_deref())?;
            Ok((0, r))
        }
        RingOp::Add { a, b, out } => {
            let r = io::ring_json(&load_ring_file(&a)?.add(&load_ring_file(&b)?)?);
            write_out(&r, out.as_deref())?;
            Ok((0, r))
        }
        RingOp::Neg { a, out } => {
            let r = io::ring_json(&load_ring_file(&a)?.neg());
            write_out(&r, out.as_deref())?;
            Ok((0, r))
        }
        RingOp::Mul { a, b, out } => {
            let r = io::ring_json(&load_ring_file(&a)?.mul(&load_ring_file(&b)?)?);
            write_out(&r, out.as_deref())?;
            Ok((0, r))
        }
        RingOp::Eq { a, b } => {
            let equal = load_ring_file(&a)?.equal(&load_ring_file(&b)?, budget)?;
            Ok((if equal { 0 } else { 1 }, json!({"equal": equal})))
        }
    }
}

fn cmd_iota(
    path: &std::path::Path,
    out: Option<&std::path::Path>,
) -> Result<(i32, Value), Failure> {
    match timed_load(path)? {
        Loaded::GSet(x) => {
            let classical = classical_class(&x);
            let u = iota_rig(&classical);
            write_out(&io::rig_json(&u), out)?;
            Ok((
                0,
                json!({
                    "classical": classical.orbit_classes().iter().map(|(k, m)| json!({
                        "stabilizer_class": k,
                        "multiplicity": m,
                    })).collect::<Vec<_>>(),
                    "rig": io::rig_json(&u),
                }),
            ))
        }
        Loaded::Rig(u) => {
            // membership test for the comparison map's image
            let inside = in_iota_image(&u)?;
            Ok((if inside { 0 } else { 1 }, json!({"in_iota_image": inside})))
        }
        other => Err(Failure {
            message: format!("iota expects a gset or rig file, found {}", other.kind()),
        }),
    }
}

fn cmd_induce(
    hom: &std::path::Path,
    path: &std::path::Path,
    out: Option<&std::path::Path>,
) -> Result<(i32, Value), Failure> {
    let phi = match timed_load(hom)? {
        Loaded::Hom(h) => h,
        other => {
            return Err(Failure {
                message: format!("{}: expected a hom, found {}", hom.display(), other.kind()),
            })
        }
    };
    match timed_load(path)? {
        Loaded::CatGSet(x) => {
            let induced = induce(&phi, &x)?;
            let y = io::catgset_json(&induced);
            write_out(&y, out)?;
            Ok((0, y))
        }
        Loaded::GSet(x) => {
            let y = io::gset_json(&induce_gset(&phi, &x)?);
            write_out(&y, out)?;
            Ok((0, y))
        }
        Loaded::Rig(u) => {
            let v = io::rig_json(&induce_rig(&phi, &u)?);
            write_out(&v, out)?;
            Ok((0, v))
        }
        other => Err(Failure {
            message: format!(
                "induce expects a catgset, gset or rig file, found {}",
                other.kind()
            ),
        }),
    }
}

fn cmd_enumerate(
    group: &std::path::Path,
    n: usize,
    budget: &Budget,
) -> Result<(i32, Value), Failure> {
    let g = match timed_load(group)? {
        Loaded::Group(g) => g,
        other => {
            return Err(Failure {
                message: format!(
                    "{}: expected a group, found {}",
                    group.display(),
                    other.kind()
                ),
            })
        }
    };
    let classes = enumerate_classes(&g, n, budget)?;
    Ok((
        0,
        json!({
            "class_count": classes.len(),
            "classes": classes.iter().map(|c| json!({
                "arrows": c.representative.n_arrows(),
                "objects": c.representative.n_objects(),
                "canonical_forms_merged": c.members,
                "representative": io::catgset_json(&c.representative),
            })).collect::<Vec<_>>(),
        }),
    ))
}

fn cmd_cancel(
    group: &std::path::Path,
    bound: usize,
    budget: &Budget,
) -> Result<(i32, Value), Failure> {
    let g = match timed_load(group)? {
        Loaded::Group(g) => g,
        other => {
            return Err(Failure {
                message: format!(
                    "{}: expected a group, found {}",
                    group.display(),
                    other.kind()
                ),
            })
        }
    };
    let failures = test_cancellation(&g, bound, budget)?;
    let ok = failures.is_empty();
    Ok((
        if ok { 0 } else { 1 },
        json!({
            "counterexamples": failures.iter().map(|f| json!({
                "x": f.x.0,
                "y": f.y.0,
                "e": f.e.0,
            })).collect::<Vec<_>>(),
        }),
    ))
}

fn cmd_decompose(
    groupoid: &std::path::Path,
    bound: usize,
    budget: &Budget,
) -> Result<(i32, Value), Failure> {
    let gd = match timed_load(groupoid)? {
        Loaded::Groupoid(g) => g,
        other => {
            return Err(Failure {
                message: format!(
                    "{}: expected a groupoid, found {}",
                    groupoid.display(),
                    other.kind()
                ),
            })
        }
    };
    let report = decompose_ring(&gd, bound, budget)?;
    let ok = report.bijective && report.homomorphism_ok && report.square_ok;
    Ok((
        if ok { 0 } else { 1 },
        json!({
            "components": report.components.iter().map(|c| json!({
                "objects": c.objects,
                "isotropy_order": c.isotropy_order,
                "class_count": c.class_count,
            })).collect::<Vec<_>>(),
            "groupoid_class_count": report.groupoid_class_count,
            "tuples": report.tuples,
            "expected_tuple_count": report.expected_tuple_count,
            "bijective": report.bijective,
            "sum_checks": report.sum_checks,
            "product_checks": report.product_checks,
            "homomorphism_ok": report.homomorphism_ok,
            "square_ok": report.square_ok,
        }),
    ))
}
