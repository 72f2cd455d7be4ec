//! The `zecap` command line.
//!
//! Every subcommand writes its payload (JSON, CSV or a code file) to stdout
//! or to `--out`, and diagnostics to stderr. Exit status: 0 success,
//! 2 invalid arguments, 3 verification or precondition failure, 4 size cap
//! or timeout.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::capacity::{bounds_csv, bounds_table, capacity, lambda_root, omega_root, CapacityValue};
use crate::channel::ChannelParams;
use crate::codesearch::{first_conflict, optimal_code_with, rate, Code, SearchOptions};
use crate::confusability::build_graph_capped;
use crate::constructions::{
    forbidden_run_code_capped, pairwise_block_code, CountFamily, CountTable,
};
use crate::error::Error;
use crate::limits::Limits;
use crate::numfmt::{round_sig, sig12, SIG_DIGITS};
use crate::simulate::zero_error_trial;

/// Version of every JSON payload layout.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_LIMIT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "zecap",
    version,
    about = "Zero-error capacity workbench for the semantic memory channel"
)]
pub struct Cli {
    /// Worker threads for graph construction, verification and trials.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form capacity (exact value or bounds) of M_{k1,k2}.
    Capacity {
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
    },
    /// CSV of the lambda and omega characteristic roots.
    Roots {
        #[arg(long, default_value_t = 2)]
        from: usize,
        #[arg(long, default_value_t = 12)]
        to: usize,
    },
    /// Confusability graph as an adjacency list.
    Graph {
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact optimal zero-error code at block length n.
    Search {
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long)]
        n: usize,
        /// Witness code file (default: code-n<n>-k<k1>-<k2>.txt).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Search budget in seconds.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
    },
    /// Write one of the explicit code families as a code file.
    Construct {
        #[command(subcommand)]
        family: ConstructFamily,
    },
    /// Exact family counts as CSV `n,count,rate_bits`.
    Count {
        #[command(subcommand)]
        family: CountKind,
    },
    /// Check that a code file is zero-error.
    Verify {
        #[arg(long)]
        code: PathBuf,
        /// Override the channel named in the file header.
        #[arg(long)]
        k1: Option<usize>,
        #[arg(long)]
        k2: Option<usize>,
    },
    /// Seeded Monte-Carlo transmission and decoding of a code file.
    Simulate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        k1: Option<usize>,
        #[arg(long)]
        k2: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run even when the code is not zero-error.
        #[arg(long)]
        force: bool,
    },
    /// CSV of lower/upper capacity bounds for K2 > K1 >= 3.
    BoundsTable {
        #[arg(long, default_value_t = 3)]
        from: usize,
        #[arg(long, default_value_t = 12)]
        to: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructFamily {
    /// Words made of 00/11 blocks.
    Pairwise {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k1: usize,
        #[arg(long, default_value_t = 1)]
        k2: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Words whose runs are all shorter than L.
    ForbiddenRun {
        #[arg(long)]
        n: usize,
        #[arg(long = "L")]
        max_run: usize,
        /// Header channel (default k1=1).
        #[arg(long)]
        k1: Option<usize>,
        /// Header channel (default k2=L+1).
        #[arg(long)]
        k2: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CountKind {
    /// Words with all runs shorter than L.
    ForbiddenRun {
        #[arg(long = "L")]
        max_run: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Words never breaking a run of length k2-1.
    NoRunBreak {
        #[arg(long)]
        k2: usize,
        #[arg(long)]
        n_max: usize,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(status: i32, stderr: String) -> Self {
        Outcome {
            status,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Exit status for a library error.
pub fn exit_status(err: &Error) -> i32 {
    match err {
        Error::CapExceeded { .. } => EXIT_LIMIT,
        Error::NotContained { .. } | Error::Confusable(..) => EXIT_VERIFY,
        Error::InvalidArgument(_)
        | Error::LengthMismatch { .. }
        | Error::IndexOutOfRange { .. }
        | Error::Parse { .. }
        | Error::Io(_) => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let limits = Limits::from_env();
    let exec = || execute(cli.command, &limits);
    let result = match cli.threads {
        Some(0) => return Outcome::fail(EXIT_USAGE, "error: --threads must be positive\n".into()),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
        },
        None => exec(),
    };
    match result {
        Ok(out) => out,
        Err(e) => Outcome::fail(exit_status(&e), format!("error: {e}\n")),
    }
}

fn num(x: f64) -> Value {
    json!(round_sig(x, SIG_DIGITS))
}

fn to_json(v: Value) -> String {
    let mut s = serde_json::to_string(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn params(k1: usize, k2: usize) -> crate::error::Result<ChannelParams> {
    ChannelParams::new(k1, k2)
}

fn write_or_return(out: Option<&Path>, text: String) -> crate::error::Result<Option<String>> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

fn load_code(
    path: &Path,
    k1: Option<usize>,
    k2: Option<usize>,
) -> crate::error::Result<(ChannelParams, Code)> {
    let (header, code) = Code::read_from(BufReader::new(File::open(path)?))?;
    let chosen = params(k1.unwrap_or(header.k1()), k2.unwrap_or(header.k2()))?;
    Ok((chosen, code))
}

fn execute(command: Command, limits: &Limits) -> crate::error::Result<Outcome> {
    match command {
        Command::Capacity { k1, k2 } => {
            let c = capacity(k1, k2)?;
            let mut obj = json!({
                "schema_version": SCHEMA_VERSION,
                "k1": k1,
                "k2": k2,
                "provenance": c.case.id(),
            });
            match c.value {
                CapacityValue::Exact(v) => {
                    obj["kind"] = json!("exact");
                    obj["value"] = num(v);
                }
                CapacityValue::Bounds { lower, upper } => {
                    obj["kind"] = json!("bounds");
                    obj["lower"] = num(lower);
                    obj["upper"] = num(upper);
                }
            }
            Ok(Outcome::ok(to_json(obj)))
        }
        Command::Roots { from, to } => {
            if from < 2 || from > to {
                return Err(Error::InvalidArgument(format!(
                    "roots needs 2 <= from <= to, got {from}..{to}"
                )));
            }
            let mut csv = String::from("k,lambda,log2_lambda,omega,log2_omega\n");
            for k in from..=to {
                let lambda = lambda_root(k)?;
                let (omega, log_omega) = match omega_root(k) {
                    Ok(w) => (sig12(w), sig12(w.log2())),
                    Err(_) => (String::new(), String::new()),
                };
                csv.push_str(&format!(
                    "{k},{},{},{omega},{log_omega}\n",
                    sig12(lambda),
                    sig12(lambda.log2())
                ));
            }
            Ok(Outcome::ok(csv))
        }
        Command::Graph { k1, k2, n, out } => {
            let g = build_graph_capped(params(k1, k2)?, n, limits.graph_cap)?;
            let text = g.to_adjacency_list();
            match write_or_return(out.as_deref(), text)? {
                Some(text) => Ok(Outcome::ok(text)),
                None => Ok(Outcome::ok(to_json(json!({
                    "schema_version": SCHEMA_VERSION,
                    "k1": k1,
                    "k2": k2,
                    "n": n,
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "file": out.map(|p| p.display().to_string()),
                })))),
            }
        }
        Command::Search {
            k1,
            k2,
            n,
            out,
            timeout,
        } => {
            if !(timeout.is_finite() && timeout > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "timeout must be positive, got {timeout}"
                )));
            }
            let p = params(k1, k2)?;
            let g = build_graph_capped(p, n, limits.graph_cap)?;
            let opts = SearchOptions {
                timeout: Some(Duration::from_secs_f64(timeout)),
            };
            let result = optimal_code_with(&g, &opts);
            let path = out.unwrap_or_else(|| PathBuf::from(format!("code-n{n}-k{k1}-{k2}.txt")));
            std::fs::write(&path, result.witness.to_file_string(p))?;
            let payload = to_json(json!({
                "schema_version": SCHEMA_VERSION,
                "k1": k1,
                "k2": k2,
                "n": n,
                "size": result.size,
                "rate": num(rate(n, result.size)),
                "optimal": result.optimal,
                "witness_file": path.display().to_string(),
            }));
            if result.optimal {
                Ok(Outcome::ok(payload))
            } else {
                Ok(Outcome {
                    status: EXIT_LIMIT,
                    stdout: payload,
                    stderr: "error: search timed out; reported size is a lower bound\n".into(),
                })
            }
        }
        Command::Construct { family } => {
            let (p, code, out) = match family {
                ConstructFamily::Pairwise { n, k1, k2, out } => {
                    if n == 0 {
                        return Err(Error::InvalidArgument("n must be positive".into()));
                    }
                    if n > 2 * limits.enumeration_cap {
                        return Err(Error::CapExceeded {
                            what: "pairwise code length",
                            requested: n,
                            cap: 2 * limits.enumeration_cap,
                        });
                    }
                    (params(k1, k2)?, pairwise_block_code(n), out)
                }
                ConstructFamily::ForbiddenRun {
                    n,
                    max_run,
                    k1,
                    k2,
                    out,
                } => {
                    let code = forbidden_run_code_capped(n, max_run, limits.enumeration_cap)?;
                    (
                        params(k1.unwrap_or(1), k2.unwrap_or(max_run + 1))?,
                        code,
                        out,
                    )
                }
            };
            let text = code.to_file_string(p);
            match write_or_return(out.as_deref(), text)? {
                Some(text) => Ok(Outcome::ok(text)),
                None => Ok(Outcome::ok(to_json(json!({
                    "schema_version": SCHEMA_VERSION,
                    "n": code.block_len(),
                    "size": code.len(),
                    "file": out.map(|p| p.display().to_string()),
                })))),
            }
        }
        Command::Count { family } => {
            let (family, n_max) = match family {
                CountKind::ForbiddenRun { max_run, n_max } => {
                    (CountFamily::ForbiddenRun { max_run }, n_max)
                }
                CountKind::NoRunBreak { k2, n_max } => (CountFamily::NoRunBreak { k2 }, n_max),
            };
            Ok(Outcome::ok(CountTable::build(family, n_max)?.to_csv()))
        }
        Command::Verify { code, k1, k2 } => {
            let (p, code) = load_code(&code, k1, k2)?;
            let conflict = first_conflict(p, &code);
            let payload = to_json(json!({
                "schema_version": SCHEMA_VERSION,
                "k1": p.k1(),
                "k2": p.k2(),
                "n": code.block_len(),
                "size": code.len(),
                "valid": conflict.is_none(),
                "conflict": conflict.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]),
            }));
            Ok(match conflict {
                None => Outcome::ok(payload),
                Some((a, b)) => Outcome {
                    status: EXIT_VERIFY,
                    stdout: payload,
                    stderr: format!(
                        "error: {}\n",
                        Error::Confusable(a.to_string(), b.to_string())
                    ),
                },
            })
        }
        Command::Simulate {
            code,
            k1,
            k2,
            trials,
            seed,
            force,
        } => {
            let (p, code) = load_code(&code, k1, k2)?;
            let report = zero_error_trial(p, &code, trials, seed, force)?;
            let mut obj = serde_json::to_value(&report).expect("report serializes");
            obj["schema_version"] = json!(SCHEMA_VERSION);
            obj["k1"] = json!(p.k1());
            obj["k2"] = json!(p.k2());
            Ok(Outcome::ok(to_json(obj)))
        }
        Command::BoundsTable { from, to } => Ok(Outcome::ok(bounds_csv(&bounds_table(from, to)?))),
    }
}
