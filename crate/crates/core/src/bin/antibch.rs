use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use antibch::bch::build_code;
use antibch::cosets::{self, CosetReport};
use antibch::distance::{certify, Budget};
use antibch::esp;
use antibch::verify::{run_suite, Suite};
use antibch::Error;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "antibch", version, about = "Antiprimitive BCH codes of length q^m + 1")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "ANTIBCH_THREADS")]
    threads: Option<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(flatten)]
    budgets: Budgets,
}

#[derive(Args)]
struct Budgets {
    /// Projective codewords for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = Budget::default().codewords, value_parser = clap::value_parser!(u64).range(1..))]
    codeword_budget: u64,
    /// Support-search work units.
    #[arg(long, global = true, default_value_t = Budget::default().support_units, value_parser = clap::value_parser!(u64).range(1..))]
    support_budget: u64,
    /// Subsets for block, ESP and Zetterberg enumerations.
    #[arg(long, global = true, default_value_t = Budget::default().subsets, value_parser = clap::value_parser!(u64).range(1..))]
    subset_budget: u64,
    #[arg(long, global = true, default_value_t = Budget::default().isd_iterations)]
    isd_iterations: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct CodeParams {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    delta: u64,
    #[arg(long, default_value_t = 0)]
    b: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Coset leaders modulo q^m + 1, checked against the closed-form criterion.
    Cosets {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
    },
    /// Build a code and print its descriptor.
    Code(CodeParams),
    /// Certify the minimum distance of a code.
    Distance(CodeParams),
    /// Run the golden suite and/or the seeded property suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Blocks of sigma_(k, k-l) = 0 on the unit circle of GF(q^2).
    Esp {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Low-weight counts of the Zetterberg code of length p^m + 1.
    Zetterberg {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        wmax: usize,
    },
}

#[derive(Serialize)]
struct CosetsOutput<'a> {
    #[serde(flatten)]
    report: &'a CosetReport,
    /// Whether the closed-form criterion matches brute force on every residue.
    closed_form_agrees: Option<bool>,
}

#[derive(Serialize)]
struct ZetterbergOutput {
    p: u64,
    m: u32,
    n: u64,
    counts: Vec<u64>,
}

enum Outcome {
    Ok,
    VerifyFailed,
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

/// Flattens JSON into (dotted path, scalar) rows.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(k), x, rows);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let text: Vec<String> = items.iter().map(scalar).collect();
            rows.push((prefix.to_string(), text.join(" ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), x, rows);
            }
        }
        _ => rows.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(value: &Value, format: Format) -> Result<Vec<u8>, Error> {
    let io = |e: std::io::Error| Error::OutOfRange(e.to_string());
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::OutOfRange(e.to_string()))?;
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", value, &mut rows);
            let width = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
            let mut out = Vec::new();
            for (k, v) in rows {
                writeln!(out, "{k:<width$}  {v}").map_err(io)?;
            }
            Ok(out)
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", value, &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).map_err(|e| Error::OutOfRange(e.to_string()))?;
            for (k, v) in rows {
                w.write_record([k, v]).map_err(|e| Error::OutOfRange(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Error::OutOfRange(e.to_string()))
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn run(cli: &Cli) -> Result<(Vec<u8>, Outcome), Error> {
    let budget = Budget {
        codewords: cli.budgets.codeword_budget,
        support_units: cli.budgets.support_budget,
        subsets: cli.budgets.subset_budget,
        isd_iterations: cli.budgets.isd_iterations,
        seed: cli.seed,
    };
    let plain = |v: Value| render(&v, cli.format).map(|b| (b, Outcome::Ok));
    match &cli.command {
        Command::Cosets { q, m } => {
            let report = cosets::leaders_brute_force(*q, *m, budget.codewords)?;
            let agrees = if report.n <= 1 << 18 {
                let mut ok = true;
                for a in 0..report.n {
                    ok &= cosets::is_leader_closed_form(*q, *m, a)?.is_leader == report.is_leader(a);
                }
                Some(ok)
            } else {
                None
            };
            let out = CosetsOutput {
                report: &report,
                closed_form_agrees: agrees,
            };
            let (bytes, _) = plain(to_value(&out))?;
            Ok((bytes, if agrees == Some(false) { Outcome::VerifyFailed } else { Outcome::Ok }))
        }
        Command::Code(p) => {
            let code = build_code(p.q, p.m, p.delta, p.b)?;
            plain(to_value(&code.descriptor()))
        }
        Command::Distance(p) => {
            let code = build_code(p.q, p.m, p.delta, p.b)?;
            plain(to_value(&certify(&code, &budget)))
        }
        Command::Verify { suite } => {
            let report = run_suite(*suite, cli.seed, &budget)?;
            let bytes = if cli.format == Format::Table {
                let mut out = Vec::new();
                for c in &report.cases {
                    let _ = writeln!(out, "{:<20} {:<16} {}  {}", c.status.to_string(), c.group, c.name, c.detail);
                }
                let _ = writeln!(out, "{} cases, {} failed", report.cases.len(), report.failures);
                out
            } else {
                render(&to_value(&report), cli.format)?
            };
            Ok((bytes, if report.passed() { Outcome::Ok } else { Outcome::VerifyFailed }))
        }
        Command::Esp { q, k, l } => {
            let blocks = esp::block_set(*q, *k, *l, budget.subsets as u128)?;
            if cli.format == Format::Csv {
                let mut out = Vec::new();
                blocks.write_csv(&mut out)?;
                return Ok((out, Outcome::Ok));
            }
            let mut v = to_value(&blocks.count());
            if cli.format == Format::Table {
                v["blocks"] = to_value(&blocks.blocks.iter().map(|b| {
                    b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
                }).collect::<Vec<_>>());
            }
            plain(v)
        }
        Command::Zetterberg { p, m, wmax } => {
            let counts = esp::zetterberg_low_weight(*p, *m, *wmax, budget.subsets as u128)?;
            let out = ZetterbergOutput {
                p: *p,
                m: *m,
                n: p.pow(*m) + 1,
                counts: counts.iter().map(|&c| u64::try_from(c).unwrap_or(u64::MAX)).collect(),
            };
            plain(to_value(&out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let (bytes, outcome) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_for(&e));
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match outcome {
        Outcome::Ok => ExitCode::SUCCESS,
        Outcome::VerifyFailed => ExitCode::from(EXIT_VERIFY_FAILED),
    }
}
