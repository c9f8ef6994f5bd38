//! Command-line front end for the Johnson-scheme eigenspace toolkit.
//!
//! Every subcommand prints one JSON envelope on stdout:
//! `{"command", "params", "provenance", "result"}` with sorted keys, big
//! integers as decimal strings and rationals as "p/q". Human diagnostics go
//! to stderr. Exit codes: 0 success, 1 invalid arguments or unreadable
//! files, 2 computation refused (caps, regime or congruence violations).

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jel::bounds::{
    bounds_report, build_even_partition, build_odd_partition, even_quotient_eigenvector,
    odd_quotient_eigenvector, read_partition, verify_equitable, verify_quotient_eigvec,
    write_partition, QuotientMatrix, VertexPartition,
};
use jel::combinat::JohnsonParams;
use jel::error::Error;
use jel::exactlinalg::{nullspace, rat, Rat, RatMatrix};
use jel::minsupport::{
    conjecture_scan, min_support_certificate, oracle_min_support, AttainingClass,
    MinSupportCertificate, ScanReport,
};
use jel::search::{
    export_witness_json, min_negatives_exhaustive, random_upper_search, SearchMethod, SearchResult,
    SearchValue,
};
use jel::spectra::{eberlein, eigenvalue};

#[derive(Parser)]
#[command(
    name = "jel",
    version,
    about = "Exact computations in Johnson-scheme eigenspaces"
)]
struct Cli {
    /// Worker threads for scans and searches (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Eberlein polynomial E_k(i,w,n).
    Eberlein {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        w: u32,
        #[arg(long)]
        n: u32,
    },
    /// Evaluate the eigenvalue lambda_i(n,w) = (w-i)(n-w-i) - i.
    Eigenvalue {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        w: u32,
    },
    /// Minimum support of a nonzero first-eigenspace vector (closed form).
    MinSupport(MinSupportArgs),
    /// Evaluate the closed form over a range of n and report conjecture
    /// violations.
    Scan {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        /// Write the full table as CSV to this path.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Lower and upper bounds on the minimum negative-entry count.
    Bounds {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        w: u32,
        /// Partition file adding a user-partition upper bound.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Build one of the explicit equitable partitions of J(n,3).
    BuildPartition {
        #[arg(long, value_enum)]
        kind: PartitionKind,
        #[arg(long)]
        r: u32,
        /// Write the partition file here instead of inlining assignments.
        #[arg(long)]
        out: Option<String>,
    },
    /// Verify a partition file as equitable and print its quotient matrix.
    VerifyPartition {
        #[arg(long)]
        file: String,
    },
    /// Search for the minimum number of negative entries of a zero-free
    /// eigenvector.
    SearchNegatives(SearchArgs),
}

#[derive(Args)]
struct MinSupportArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    w: u32,
    /// Cross-check against the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    /// Oracle grid radius (default max(4, w)).
    #[arg(long)]
    radius: Option<u32>,
}

#[derive(Args)]
#[command(group(
    clap::ArgGroup::new("mode").required(true).args(["exhaustive", "random"])
))]
struct SearchArgs {
    #[arg(long)]
    i: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    w: u32,
    /// Exhaustive size-ascending scan (exact result up to --s-max).
    #[arg(long, requires = "s_max")]
    exhaustive: bool,
    #[arg(long)]
    s_max: Option<usize>,
    /// Seeded randomized descent (upper bound only).
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 1000)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the witness JSON to this path.
    #[arg(long)]
    witness_out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PartitionKind {
    Even,
    Odd,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.threads;
    let run = || match run_command(cli.command) {
        Ok(envelope) => {
            println!("{envelope}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    };
    match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(run),
            Err(e) => {
                eprintln!("error: cannot build thread pool: {e}");
                ExitCode::from(1)
            }
        },
        None => run(),
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Parse(_) => 1,
        _ => 2,
    }
}

fn envelope(command: &str, params: Value, provenance: &[&str], result: Value) -> Value {
    json!({
        "command": command,
        "params": params,
        "provenance": provenance,
        "result": result,
    })
}

fn run_command(cmd: Command) -> Result<Value, Error> {
    match cmd {
        Command::Eberlein { k, i, w, n } => {
            let v = eberlein(k, i, w, n)?;
            Ok(envelope(
                "eberlein",
                json!({"k": k, "i": i, "w": w, "n": n}),
                &["eberlein-polynomial"],
                json!({"value": v.to_string()}),
            ))
        }
        Command::Eigenvalue { i, n, w } => {
            let v = eigenvalue(i, n, w)?;
            Ok(envelope(
                "eigenvalue",
                json!({"i": i, "n": n, "w": w}),
                &["eigenvalue-formula"],
                json!({"value": v.to_string()}),
            ))
        }
        Command::MinSupport(args) => run_min_support(args),
        Command::Scan { n_min, n_max, csv } => run_scan(n_min, n_max, csv),
        Command::Bounds { i, n, w, partition } => run_bounds(i, n, w, partition),
        Command::BuildPartition { kind, r, out } => run_build_partition(kind, r, out),
        Command::VerifyPartition { file } => run_verify_partition(&file),
        Command::SearchNegatives(args) => run_search(args),
    }
}

fn attaining_json(classes: &[AttainingClass]) -> Value {
    Value::Array(
        classes
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

fn certificate_json(cert: &MinSupportCertificate) -> Value {
    json!({
        "n": cert.n,
        "w": cert.w,
        "value": cert.value.to_string(),
        "attained_by": attaining_json(&cert.attained_by),
        "pair_branch": cert.pair_branch.to_string(),
        "twovalued_k": cert.twovalued_branch.as_ref().map(|(k, _)| *k),
        "twovalued_value": cert.twovalued_branch.as_ref().map(|(_, v)| v.to_string()),
    })
}

fn run_min_support(args: MinSupportArgs) -> Result<Value, Error> {
    let cert = min_support_certificate(args.n, args.w)?;
    let mut result = certificate_json(&cert);
    let mut provenance = vec!["closed-form"];
    if args.oracle {
        let radius = args.radius.unwrap_or(4.max(args.w));
        let value = oracle_min_support(args.n, args.w, radius)?;
        provenance.push("brute-force-oracle");
        result["oracle"] = json!({
            "radius": radius,
            "value": value.to_string(),
            "matches": value == cert.value,
        });
    }
    Ok(envelope(
        "min-support",
        json!({"n": args.n, "w": args.w}),
        &provenance,
        result,
    ))
}

fn scan_row_json(row: &jel::minsupport::ScanRow) -> Value {
    json!({
        "n": row.n,
        "w": row.w,
        "value": row.value.to_string(),
        "winner": attaining_json(&row.winner),
        "pair_branch": row.pair_branch.to_string(),
        "twovalued_k": row.twovalued.as_ref().map(|(k, _)| *k),
        "twovalued_value": row.twovalued.as_ref().map(|(_, v)| v.to_string()),
    })
}

fn write_scan_csv(report: &ScanReport, path: &str) -> Result<(), Error> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(
        out,
        "n,w,value,winner,pair_branch,twovalued_k,twovalued_value"
    )?;
    for row in &report.rows {
        let winner = row
            .winner
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("|");
        let (tk, tv) = match &row.twovalued {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => (String::new(), String::new()),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.n, row.w, row.value, winner, row.pair_branch, tk, tv
        )?;
    }
    Ok(())
}

/// Rows are inlined in the JSON only below this count; the CSV export is the
/// machine-readable route for large scans.
const SCAN_INLINE_ROWS: usize = 500;

fn run_scan(n_min: u32, n_max: u32, csv: Option<String>) -> Result<Value, Error> {
    let report = conjecture_scan(n_min, n_max)?;
    if let Some(path) = &csv {
        write_scan_csv(&report, path)?;
    }
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|&(n, w)| json!({"n": n, "w": w}))
        .collect();
    let mut result = json!({
        "row_count": report.rows.len(),
        "violations": violations,
        "csv": csv,
    });
    if report.rows.len() <= SCAN_INLINE_ROWS {
        result["rows"] = Value::Array(report.rows.iter().map(scan_row_json).collect());
    }
    Ok(envelope(
        "scan",
        json!({"n_min": n_min, "n_max": n_max}),
        &["closed-form"],
        result,
    ))
}

/// A zero-free lambda eigenvector of the quotient, if one exists: each basis
/// column is tried, then the sum of all columns.
fn zero_free_quotient_eigvec(q: &QuotientMatrix, lambda: i64) -> Result<Vec<Rat>, Error> {
    let mut m = RatMatrix::from_int_rows(q.rows())?;
    for j in 0..q.size() {
        let v = m.at(j, j) - rat(lambda);
        *m.at_mut(j, j) = v;
    }
    let ns = nullspace(&m);
    if ns.ncols() == 0 {
        return Err(Error::NotEigenvector(format!(
            "quotient has no eigenvector for lambda = {lambda}"
        )));
    }
    let mut candidates: Vec<Vec<Rat>> = (0..ns.ncols()).map(|c| ns.col(c)).collect();
    let sum: Vec<Rat> = (0..q.size())
        .map(|j| candidates.iter().map(|c| c[j].clone()).sum())
        .collect();
    candidates.push(sum);
    let zero = rat(0);
    for u in candidates {
        if !u.contains(&zero) && verify_quotient_eigvec(q, &u, lambda)? {
            return Ok(u);
        }
    }
    Err(Error::ZeroEntry(
        "no zero-free quotient eigenvector found for the requested eigenvalue".into(),
    ))
}

fn run_bounds(i: u32, n: u32, w: u32, partition: Option<String>) -> Result<Value, Error> {
    let mut report = bounds_report(i, n, w)?;
    if let Some(path) = &partition {
        let file = File::open(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
        let p = read_partition(&mut BufReader::new(file))?;
        let q = verify_equitable(&p)?;
        let lambda = eigenvalue(i, n, w)?;
        let u = zero_free_quotient_eigvec(&q, lambda)?;
        report.add_user_partition(&p, &u)?;
    }
    fn bound_list<T: ToString>(bounds: &[(T, jel::bounds::BoundProvenance)]) -> Value {
        Value::Array(
            bounds
                .iter()
                .map(|(v, p)| json!({"value": v.to_string(), "provenance": p.to_string()}))
                .collect(),
        )
    }
    let provenance: Vec<String> = report
        .lower_bounds
        .iter()
        .map(|(_, p)| p.to_string())
        .chain(report.upper_bounds.iter().map(|(_, p)| p.to_string()))
        .collect();
    let provenance_refs: Vec<&str> = provenance.iter().map(String::as_str).collect();
    let result = json!({
        "i": report.i,
        "n": report.n,
        "w": report.w,
        "lower_bounds": bound_list(&report.lower_bounds),
        "upper_bounds": bound_list(&report.upper_bounds),
        "best_lower": report.best_lower.as_ref().map(ToString::to_string),
        "best_upper": report.best_upper.as_ref().map(ToString::to_string),
        "exact": report.exact.as_ref().map(ToString::to_string),
    });
    Ok(envelope(
        "bounds",
        json!({"i": i, "n": n, "w": w, "partition": partition}),
        &provenance_refs,
        result,
    ))
}

fn partition_json(p: &VertexPartition, q: &QuotientMatrix) -> Value {
    json!({
        "n": p.params().n,
        "w": p.params().w,
        "r": p.num_parts(),
        "part_sizes": p.part_sizes(),
        "quotient": q.rows(),
    })
}

fn run_build_partition(kind: PartitionKind, r: u32, out: Option<String>) -> Result<Value, Error> {
    let (p, label) = match kind {
        PartitionKind::Even => (build_even_partition(r)?, "even-partition-construction"),
        PartitionKind::Odd => (build_odd_partition(r)?, "odd-partition-construction"),
    };
    let q = verify_equitable(&p)?;
    // Attach the distinguished lambda_2 eigenvector for each construction.
    let eigvec: Vec<Rat> = match kind {
        PartitionKind::Even => even_quotient_eigenvector(&q, r)?,
        PartitionKind::Odd => odd_quotient_eigenvector(r),
    };
    let mut result = partition_json(&p, &q);
    result["lambda2_eigenvector"] = Value::Array(
        eigvec
            .iter()
            .map(|v| Value::String(format!("{}/{}", v.numer(), v.denom())))
            .collect(),
    );
    match &out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_partition(&p, &mut file)?;
            result["out"] = json!(path);
        }
        None => {
            result["assignments"] = Value::Array(
                p.assignments()
                    .iter()
                    .enumerate()
                    .map(|(rank, &part)| json!([rank, part + 1]))
                    .collect(),
            );
        }
    }
    Ok(envelope(
        "build-partition",
        json!({"kind": match kind { PartitionKind::Even => "even", PartitionKind::Odd => "odd" }, "r": r}),
        &[label],
        result,
    ))
}

fn run_verify_partition(path: &str) -> Result<Value, Error> {
    let file = File::open(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let p = read_partition(&mut BufReader::new(file))?;
    let result = match verify_equitable(&p) {
        Ok(q) => {
            let mut v = partition_json(&p, &q);
            v["equitable"] = json!(true);
            v
        }
        Err(Error::NotEquitable { vertex, counts }) => json!({
            "equitable": false,
            "witness": {"vertex": vertex, "counts": counts},
            "n": p.params().n,
            "w": p.params().w,
            "r": p.num_parts(),
        }),
        Err(e) => return Err(e),
    };
    Ok(envelope(
        "verify-partition",
        json!({"file": path}),
        &["quotient-verification"],
        result,
    ))
}

fn search_result_json(r: &SearchResult, i: u32) -> Result<Value, Error> {
    let value = match &r.value {
        SearchValue::Exact(s) => json!({"exact": s}),
        SearchValue::GreaterThan(s) => json!({"greater_than": s}),
        SearchValue::UpperBound(s) => json!({"upper_bound": s}),
    };
    let witness = match &r.witness {
        Some(v) => export_witness_json(v, i)?,
        None => Value::Null,
    };
    Ok(json!({
        "value": value,
        "explored": r.explored,
        "method": match r.method {
            SearchMethod::Exhaustive => "exhaustive",
            SearchMethod::Randomized => "randomized",
        },
        "witness": witness,
    }))
}

fn run_search(args: SearchArgs) -> Result<Value, Error> {
    let params = JohnsonParams::new(args.n, args.w)?;
    let (result, label, params_json) = if args.exhaustive {
        let s_max = args.s_max.expect("clap enforces s_max with --exhaustive");
        let r = min_negatives_exhaustive(args.i, params, s_max)?;
        (
            r,
            "exhaustive-sign-search",
            json!({"i": args.i, "n": args.n, "w": args.w, "mode": "exhaustive", "s_max": s_max}),
        )
    } else {
        let r = random_upper_search(args.i, params, args.iters, args.seed)?;
        (
            r,
            "randomized-descent",
            json!({
                "i": args.i, "n": args.n, "w": args.w, "mode": "random",
                "iters": args.iters, "seed": args.seed,
            }),
        )
    };
    let result_json = search_result_json(&result, args.i)?;
    if let Some(path) = &args.witness_out {
        if let Some(v) = &result.witness {
            let mut file = BufWriter::new(File::create(path)?);
            writeln!(file, "{}", export_witness_json(v, args.i)?)?;
        } else {
            eprintln!("note: no witness to export; {path} not written");
        }
    }
    Ok(envelope(
        "search-negatives",
        params_json,
        &[label],
        result_json,
    ))
}
