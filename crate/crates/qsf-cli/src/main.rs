//! `qsf`: evaluate q-special functions and run the identity suite.

mod eval;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use qsf::check::{CheckResult, Status};
use qsf::formal::{partition_counts, rr_series, Variant};
use qsf::idsuite::{plan, Job, SuiteEntry};
use qsf::macdonald::{
    constant_term, constant_term_rhs, gustafson_aw_check, gustafson_integral, gustafson_product, gustafson_quadrature,
    macdonald_p, macdonald_property_checks, parse_rat, Partition,
};
use qsf::qcore::set_max_terms;
use qsf::{re, QBase, QError};

#[derive(Parser)]
#[command(name = "qsf", version, about = "q-special functions and their identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a function: `qsf eval qgamma --z 1 --q 0.5`.
    Eval {
        /// Function name; `--list` shows them all.
        func: Option<String>,
        #[arg(long)]
        list: bool,
        /// Named parameters, `--name value`.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// The identity-check registry.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
    /// Count partitions of N.
    Partitions {
        #[arg(long)]
        n: usize,
        /// all, distinct, odd, max:K, gap2, gap2min2, mod5-14, mod5-23.
        #[arg(long, default_value = "all")]
        variant: String,
        /// Print counts for every k <= N.
        #[arg(long)]
        table: bool,
    },
    /// Rogers-Ramanujan coefficients of both sides.
    Rr {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        order: usize,
    },
    /// Macdonald polynomial in the monomial basis, exact.
    Macdonald(MacArgs),
    /// Constant term of the A_R Macdonald product.
    Ct {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        k: usize,
    },
    /// Gustafson's integral against its product formula.
    Gustafson(GustafsonArgs),
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Run the registry and report.
    Run {
        /// Category name or id prefix.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Points per sampled case.
        #[arg(long)]
        points: Option<usize>,
        /// Write the JSON report here; without it the report goes to stdout.
        #[arg(long)]
        json: Option<std::path::PathBuf>,
        /// With --json, print every result rather than only non-passes.
        #[arg(long)]
        verbose: bool,
    },
    /// List registry ids.
    List,
}

#[derive(Args)]
struct MacArgs {
    /// Comma separated parts, e.g. 2,1.
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: String,
    #[arg(long)]
    t: String,
    /// Run the property checks instead of printing the polynomial.
    #[arg(long)]
    check: bool,
    /// Second partition for the pairwise checks; defaults to lambda.
    #[arg(long)]
    mu: Option<String>,
}

#[derive(Args)]
struct GustafsonArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    n: u8,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, default_value_t = 0.4, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, default_value_t = -0.3, allow_hyphen_values = true)]
    c: f64,
    #[arg(long, default_value_t = 0.2, allow_hyphen_values = true)]
    d: f64,
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value_t = 0.6)]
    q: f64,
    /// Points per dimension, a power of two.
    #[arg(long, default_value_t = 256)]
    grid: usize,
}

/// Exit status 2: bad usage or a domain error.
struct Usage(String);

impl From<QError> for Usage {
    fn from(e: QError) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("QSF_MAX_TERMS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => set_max_terms(n),
            _ => {
                eprintln!("qsf: QSF_MAX_TERMS must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Eval { func, list, params } => run_eval(func, list, &params),
        Cmd::Suite { cmd } => run_suite(cmd),
        Cmd::Partitions { n, variant, table } => run_partitions(n, &variant, table),
        Cmd::Rr { which, order } => run_rr(which, order),
        Cmd::Macdonald(a) => run_macdonald(&a),
        Cmd::Ct { rank, k } => run_ct(rank, k),
        Cmd::Gustafson(a) => run_gustafson(&a),
    };
    match out {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("qsf: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run_eval(func: Option<String>, list: bool, params: &[String]) -> Outcome {
    if list {
        for (name, args) in eval::FUNCTIONS {
            println!("{name:<18} {args}");
        }
        return Ok(true);
    }
    let func = func.ok_or_else(|| Usage("eval needs a function name; try --list".into()))?;
    let v = eval::eval(&func, params).map_err(|e| Usage(e.to_string()))?;
    println!("{}", eval::format_scalar(v));
    Ok(true)
}

fn status_line(r: &CheckResult) -> String {
    format!("{:<4} {:<28} rel_err {:.3e} tol {:.1e}  {}", r.status.as_str(), r.id, r.rel_err, r.tol, r.note)
}

/// Runs the jobs in parallel; `collect` keeps plan order.
fn execute(jobs: &[Job]) -> Vec<SuiteEntry> {
    jobs.par_iter().map(Job::run).collect::<Vec<_>>().into_iter().flatten().collect()
}

fn run_suite(cmd: SuiteCmd) -> Outcome {
    let (filter, seed, points, json, verbose) = match cmd {
        SuiteCmd::List => {
            for c in qsf::idsuite::registry() {
                println!("{:<28} {:<14} {}", c.id, c.category.as_str(), c.paper_eq);
            }
            return Ok(true);
        }
        SuiteCmd::Run { filter, seed, points, json, verbose } => (filter, seed, points, json, verbose),
    };
    if points == Some(0) {
        return Err(Usage("--points must be positive".into()));
    }
    let jobs = plan(filter.as_deref(), seed, points);
    if jobs.is_empty() {
        return Err(Usage(format!("filter {:?} selects no case", filter.unwrap_or_default())));
    }
    let start = Instant::now();
    let entries = execute(&jobs);
    let (pass, fail, skip) = qsf::idsuite::summary(&entries);
    let text = report::render(&report::report(seed, &entries));
    match &json {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?;
            for e in &entries {
                if verbose || e.result.status != Status::Pass {
                    println!("{}", status_line(&e.result));
                }
            }
            println!("pass {pass} fail {fail} skip {skip}");
        }
        None => print!("{text}"),
    }
    // wall time is kept out of the report so that reruns are byte-identical
    eprintln!("qsf: {} results in {:.2}s", entries.len(), start.elapsed().as_secs_f64());
    Ok(fail == 0)
}

fn parse_variant(s: &str) -> Result<Variant, Usage> {
    Ok(match s {
        "all" => Variant::All,
        "distinct" => Variant::Distinct,
        "odd" => Variant::Odd,
        "gap2" => Variant::Gap2,
        "gap2min2" => Variant::Gap2Min2,
        "mod5-14" => Variant::Mod5_14,
        "mod5-23" => Variant::Mod5_23,
        _ => match s.strip_prefix("max:").map(str::parse) {
            Some(Ok(k)) => Variant::MaxPart(k),
            _ => return Err(Usage(format!("unknown partition variant {s:?}"))),
        },
    })
}

fn run_partitions(n: usize, variant: &str, table: bool) -> Outcome {
    let v = parse_variant(variant)?;
    if table {
        for k in 0..=n {
            println!("{k} {}", partition_counts(k, v));
        }
    } else {
        println!("{}", partition_counts(n, v));
    }
    Ok(true)
}

fn run_rr(which: u8, order: usize) -> Outcome {
    let (sum, product) = rr_series(which, order)?;
    let line = |f: &qsf::formal::Fps| f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    println!("sum     {}", line(&sum));
    println!("product {}", line(&product));
    let equal = sum == product;
    println!("{} through q^{order}", if equal { "equal" } else { "DIFFER" });
    Ok(equal)
}

fn parse_partition(s: &str) -> Result<Partition, Usage> {
    let parts = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Usage(format!("not a partition: {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(parts)?)
}

fn run_macdonald(a: &MacArgs) -> Outcome {
    let lambda = parse_partition(&a.lambda)?;
    let (q, t) = (parse_rat(&a.q)?, parse_rat(&a.t)?);
    if a.check {
        let mu = match &a.mu {
            Some(m) => parse_partition(m)?,
            None => lambda.clone(),
        };
        let results = macdonald_property_checks(&lambda, &mu, a.n, &q, &t)?;
        for r in &results {
            println!("{}", status_line(r));
        }
        return Ok(results.iter().all(|r| r.status != Status::Fail));
    }
    let p = macdonald_p(&lambda, a.n, &q, &t)?;
    println!("P_{lambda}(x_1..x_{}; q = {q}, t = {t})", a.n);
    for (mu, c) in p.terms() {
        println!("  m_{mu}  {c}");
    }
    Ok(true)
}

fn run_ct(rank: usize, k: usize) -> Outcome {
    let lhs = constant_term(rank, k)?;
    let rhs = constant_term_rhs(rank, k);
    let line = |p: &qsf::formal::QPoly| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    println!("constant term {}", line(&lhs));
    println!("product       {}", line(&rhs));
    let equal = lhs == rhs;
    println!("{}", if equal { "equal" } else { "DIFFER" });
    Ok(equal)
}

fn run_gustafson(a: &GustafsonArgs) -> Outcome {
    let n = a.n as usize;
    let abcd = [a.a, a.b, a.c, a.d].map(re);
    let q = QBase::from(a.q);
    let t = re(a.t);
    let lhs = gustafson_quadrature(n, &abcd, t, q, a.grid)?;
    let rhs = gustafson_product(n, &abcd, t, q)?;
    println!("quadrature {}", eval::format_scalar(lhs));
    println!("product    {}", eval::format_scalar(rhs));
    let mut checks = vec![gustafson_integral(n, abcd, t, q, a.grid)?];
    if n == 1 {
        checks.push(gustafson_aw_check(abcd, q, a.grid)?);
    }
    for r in &checks {
        println!("{}", status_line(r));
    }
    Ok(checks.iter().all(CheckResult::passed))
}
