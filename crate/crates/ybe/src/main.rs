//! Batch command-line front end.
//!
//! Exit codes: 0 on success, 2 on domain errors (invalid algebra,
//! non-involutive input where required, closure caps), 1 on I/O and parse
//! errors. JSON output is newline-terminated and byte-stable across thread
//! counts.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use ybe::braces::{self, SkewBrace};
use ybe::error::Error;
use ybe::intlin::IntMatrix;
use ybe::promislow;
use ybe::solutions::{enumerate, Solution};
use ybe::structure_group::{eval_word, AffineElement, StructureRep, Word};

#[derive(Parser)]
#[command(name = "ybe", version, about = "Yang-Baxter solutions, structure groups and skew braces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Cap on explicit group closures.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    closure_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct FileArg {
    /// Solution file (JSON or the line-oriented text format).
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check non-degeneracy, bijectivity of r and the braid identity.
    Verify(FileArg),
    /// Check whether r^2 = id.
    Involutive(FileArg),
    /// Retract along sigma-equality classes.
    Retract(FileArg),
    /// Multipermutation level, if any.
    MpLevel(FileArg),
    /// The permutation group generated by the sigma maps.
    PermGroup(FileArg),
    /// Evaluate a word in the affine representation of the structure group.
    Rep {
        #[command(flatten)]
        file: FileArg,
        /// Signed word, e.g. "1,-2" for x1 x2^-1.
        #[arg(long)]
        word: String,
        /// Render as an (n+1)x(n+1) integer matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Translation lattice of the structure group.
    Lattice(FileArg),
    /// Search the structure group for a Promislow subgroup.
    FindPromislow(FileArg),
    /// Unique-product-failure witness for the 14-element set built from x, y.
    UppWitness {
        #[command(flatten)]
        file: FileArg,
        /// Signed word for x.
        #[arg(long)]
        x: String,
        /// Signed word for y.
        #[arg(long)]
        y: String,
        /// Include the full product table with factorization counts.
        #[arg(long)]
        verbose: bool,
    },
    /// Enumerate involutive solutions of size n <= 4 up to isomorphism.
    EnumerateSolutions {
        #[arg(long)]
        n: usize,
        /// Report only totals.
        #[arg(long)]
        count_only: bool,
    },
    /// Test two solutions for isomorphism.
    Iso { first: PathBuf, second: PathBuf },
    /// Skew brace operations.
    #[command(subcommand)]
    Brace(BraceCommand),
    /// Write the bundled example solutions to a directory.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum BraceCommand {
    /// Check the skew brace axioms of a pair of tables.
    Verify(FileArg),
    /// Socle, right and left series with nilpotency verdicts.
    Series(FileArg),
    /// Right and left p-nilpotency.
    Pnilp {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        p: usize,
    },
    /// The associated solution of a skew brace.
    ToSolution(FileArg),
    /// The brace on the permutation group of an involutive solution.
    PermBrace(FileArg),
    /// All skew braces of the given order, up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        count_only: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
    match run(&cli) {
        Ok(value) => print_output(&value, cli.format),
        Err(exit) => std::process::exit(exit),
    }
}

/// Maps failures to the exit-code contract: parse/read problems are 1,
/// domain errors are 2.
fn fail(e: Error) -> i32 {
    eprintln!("error: {e}");
    match e {
        Error::Parse(_) => 1,
        _ => 2,
    }
}

fn read_file(path: &Path) -> Result<String, i32> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        1
    })
}

fn load_solution(path: &Path) -> Result<Solution, i32> {
    let text = read_file(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        Solution::from_json(&text)
    } else {
        Solution::parse_text(&text)
    };
    parsed.map_err(fail)
}

fn load_brace(path: &Path) -> Result<SkewBrace, i32> {
    let (order, add, circ) = load_brace_tables(path)?;
    if add.len() != order || circ.len() != order {
        eprintln!("error: table sizes differ from order");
        return Err(2);
    }
    SkewBrace::from_tables(add, circ).map_err(fail)
}

#[allow(clippy::type_complexity)]
fn load_brace_tables(path: &Path) -> Result<(usize, Vec<Vec<usize>>, Vec<Vec<usize>>), i32> {
    #[derive(serde::Deserialize)]
    struct BraceJson {
        order: usize,
        add: Vec<Vec<usize>>,
        circ: Vec<Vec<usize>>,
    }
    let text = read_file(path)?;
    let raw: BraceJson = serde_json::from_str(&text).map_err(|e| fail(Error::Parse(e.to_string())))?;
    Ok((raw.order, raw.add, raw.circ))
}

fn parse_word(text: &str) -> Result<Word, i32> {
    Word::parse(text).map_err(fail)
}

fn run(cli: &Cli) -> Result<Value, i32> {
    let cap = cli.closure_cap;
    match &cli.command {
        Command::Verify(f) => {
            let s = load_solution(&f.file)?;
            let report = s.verify();
            Ok(json!({
                "nondegenerate": report.nondegenerate,
                "bijective_r": report.bijective_r,
                "braid": report.braid,
            }))
        }
        Command::Involutive(f) => {
            let s = load_solution(&f.file)?;
            Ok(json!({ "involutive": s.is_involutive() }))
        }
        Command::Retract(f) => {
            let s = load_solution(&f.file)?;
            let (retracted, classes) = s.retract().map_err(fail)?;
            Ok(json!({
                "solution": solution_value(&retracted),
                "classes": classes,
            }))
        }
        Command::MpLevel(f) => {
            let s = load_solution(&f.file)?;
            match s.mp_level().map_err(fail)? {
                Some(level) => Ok(json!({ "multipermutation": true, "level": level })),
                None => Ok(json!({ "multipermutation": false })),
            }
        }
        Command::PermGroup(f) => {
            let s = load_solution(&f.file)?;
            let g = s.permutation_group(cap).map_err(fail)?;
            let sylow: Vec<Value> = ybe::perm::prime_divisors(g.order())
                .into_iter()
                .map(|p| json!({ "p": p, "cyclic": g.sylow_cyclic(p) }))
                .collect();
            Ok(json!({
                "degree": g.degree(),
                "order": g.order(),
                "exponent": g.exponent(),
                "is_cyclic": g.is_cyclic(),
                "sylow": sylow,
            }))
        }
        Command::Rep { file, word, matrix } => {
            let s = load_solution(&file.file)?;
            let w = parse_word(word)?;
            let e = eval_word(&s, &w).map_err(fail)?;
            if *matrix {
                Ok(json!({ "matrix": matrix_value(&e.to_matrix()) }))
            } else {
                Ok(affine_value(&e))
            }
        }
        Command::Lattice(f) => {
            let s = load_solution(&f.file)?;
            let rep = StructureRep::new(&s, cap).map_err(fail)?;
            let lattice = rep.lattice();
            Ok(json!({
                "ambient_dim": lattice.ambient_dim(),
                "rank": lattice.rank(),
                "basis": matrix_value(lattice.basis()),
                "index": lattice.index_in_ambient().map(|i| i.to_string()),
            }))
        }
        Command::FindPromislow(f) => {
            let s = load_solution(&f.file)?;
            let rep = StructureRep::new(&s, cap).map_err(fail)?;
            let report = promislow::find_promislow(&rep).map_err(fail)?;
            Ok(json!({
                "pairs_tested": report.pairs_tested,
                "exhausted": report.exhausted,
                "certificate": report.certificate.map(|c| json!({
                    "alpha": affine_value(&c.alpha),
                    "beta": affine_value(&c.beta),
                    "verified_relations": c.verified_relations,
                })),
            }))
        }
        Command::UppWitness { file, x, y, verbose } => {
            let s = load_solution(&file.file)?;
            let xe = eval_word(&s, &parse_word(x)?).map_err(fail)?;
            let ye = eval_word(&s, &parse_word(y)?).map_err(fail)?;
            let set = promislow::promislow_set(&xe, &ye).map_err(fail)?;
            let witness = promislow::upp_failure_witness(&set);
            let mut out = json!({ "upp_failure_witness": witness, "set_size": set.len() });
            if *verbose {
                let counts = promislow::product_factorizations(&set);
                let mut rows: Vec<(Value, usize)> =
                    counts.iter().map(|(e, &c)| (affine_value(e), c)).collect();
                rows.sort_by_key(|(v, _)| v.to_string());
                out["products"] = rows
                    .into_iter()
                    .map(|(e, c)| json!({ "element": e, "factorizations": c }))
                    .collect();
            }
            Ok(out)
        }
        Command::EnumerateSolutions { n, count_only } => {
            let solutions = enumerate(*n).map_err(fail)?;
            if *count_only {
                let mut not_mp = 0usize;
                for s in &solutions {
                    if s.mp_level().map_err(fail)?.is_none() {
                        not_mp += 1;
                    }
                }
                Ok(json!({ "total": solutions.len(), "not_mp": not_mp }))
            } else {
                Ok(Value::Array(solutions.iter().map(solution_value).collect()))
            }
        }
        Command::Iso { first, second } => {
            let a = load_solution(first)?;
            let b = load_solution(second)?;
            match a.is_isomorphic(&b).map_err(fail)? {
                Some(f) => Ok(json!({ "isomorphic": true, "map": f.images() })),
                None => Ok(json!({ "isomorphic": false })),
            }
        }
        Command::Brace(cmd) => run_brace(cmd, cap),
        Command::Fixtures { dir } => {
            fs::create_dir_all(dir).map_err(|e| {
                eprintln!("error: {}: {e}", dir.display());
                1
            })?;
            let mut written = Vec::new();
            for (stem, s) in ybe::fixtures::registry() {
                let path = dir.join(format!("{stem}.json"));
                fs::write(&path, format!("{}\n", s.to_json())).map_err(|e| {
                    eprintln!("error: {}: {e}", path.display());
                    1
                })?;
                written.push(path.display().to_string());
            }
            Ok(json!({ "written": written }))
        }
    }
}

fn run_brace(cmd: &BraceCommand, cap: usize) -> Result<Value, i32> {
    match cmd {
        BraceCommand::Verify(f) => {
            let (_, add, circ) = load_brace_tables(&f.file)?;
            let check = braces::check_tables(&add, &circ);
            Ok(json!({
                "additive_group": check.additive_group,
                "multiplicative_group": check.multiplicative_group,
                "compatible": check.compatible,
                "valid": check.all_ok(),
            }))
        }
        BraceCommand::Series(f) => {
            let b = load_brace(&f.file)?;
            Ok(json!({
                "socle_series": b.socle_series(),
                "right_series": b.right_series(),
                "left_series": b.left_series(),
                "right_nilpotent": b.is_right_nilpotent(),
                "left_nilpotent": b.is_left_nilpotent(),
            }))
        }
        BraceCommand::Pnilp { file, p } => {
            let b = load_brace(&file.file)?;
            let right = b.is_right_p_nilpotent(*p).map_err(fail)?;
            let left = b.is_left_p_nilpotent(*p).map_err(fail)?;
            Ok(json!({ "p": p, "right_p_nilpotent": right, "left_p_nilpotent": left }))
        }
        BraceCommand::ToSolution(f) => {
            let b = load_brace(&f.file)?;
            Ok(solution_value(&b.to_solution()))
        }
        BraceCommand::PermBrace(f) => {
            let s = load_solution(&f.file)?;
            let rep = StructureRep::new(&s, cap).map_err(fail)?;
            let b = braces::permutation_brace(&rep).map_err(fail)?;
            Ok(brace_value(&b))
        }
        BraceCommand::Enumerate { order, count_only } => {
            let all = braces::enumerate_braces(*order).map_err(fail)?;
            if *count_only {
                Ok(json!({ "order": order, "count": all.len() }))
            } else {
                Ok(Value::Array(all.iter().map(brace_value).collect()))
            }
        }
    }
}

fn solution_value(s: &Solution) -> Value {
    let n = s.size();
    let sigma: Vec<Vec<usize>> = (0..n).map(|x| s.sigma(x).images().to_vec()).collect();
    let tau: Vec<Vec<usize>> = (0..n).map(|y| s.tau(y).images().to_vec()).collect();
    json!({ "n": n, "sigma": sigma, "tau": tau })
}

fn brace_value(b: &SkewBrace) -> Value {
    json!({
        "order": b.order(),
        "add": b.additive().table(),
        "circ": b.multiplicative().table(),
    })
}

fn int_value(i: &BigInt) -> Value {
    match i64::try_from(i.clone()) {
        Ok(v) => json!(v),
        Err(_) => json!(i.to_string()),
    }
}

fn affine_value(e: &AffineElement) -> Value {
    json!({
        "perm": e.perm_part().images(),
        "trans": e.translation().iter().map(int_value).collect::<Vec<_>>(),
    })
}

/// Matrices render as arrays of decimal strings so arbitrary-precision
/// entries stay exact.
fn matrix_value(m: &IntMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

fn print_output(value: &Value, format: Format) {
    match format {
        Format::Json => println!("{value}"),
        Format::Text => {
            let mut out = String::new();
            render_text(value, 0, &mut out);
            print!("{out}");
        }
    }
}

fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                if v.is_object() || (v.is_array() && v.as_array().unwrap().iter().any(Value::is_object))
                {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(v, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", compact(v)));
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if item.is_object() {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(item, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", compact(item)));
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", compact(other))),
    }
}

fn compact(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
