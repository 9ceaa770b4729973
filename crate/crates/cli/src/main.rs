use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use umn::checks::{check_proposition1, check_theorem4, check_theorem5};
use umn::dot::render_dot;
use umn::generators::{generate_jlc, JlcConfig};
use umn::graph::NodeId;
use umn::rates::Model;
use umn::sim::{decode_check, run_generation, Mode, SimConfig, DEFAULT_Q};
use umn::{broadcast_transform, capacity, diversity, lambda_capacity, parse_network, rate, serialize_network, UntrustedNetwork};

/// Rate enumeration is refused above this budget on large untrusted sets.
const GUARD_W: usize = 3;
const GUARD_U: usize = 20;

#[derive(Parser)]
#[command(name = "umn", version, about = "Analyze multicast networks with untrusted relays")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Capacity, Lambda, diversity and per-sink connectivity as JSON.
    Analyze { file: PathBuf },
    /// Write the broadcast transform of a network.
    Transform {
        file: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
    /// Worst-case rate against at most `w` adversaries.
    Rates {
        file: PathBuf,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        w: usize,
        /// Enumerate even when the budget guard would refuse.
        #[arg(long)]
        force: bool,
    },
    /// Check a structural claim; exits 0 iff it holds.
    Check {
        file: PathBuf,
        #[arg(long)]
        theorem: Claim,
        #[arg(long)]
        w: Option<usize>,
    },
    /// Grow a JLC network from a link pool.
    Generate {
        #[arg(long, required = true)]
        jlc: bool,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        joins: usize,
        #[arg(long)]
        diverse: bool,
        #[arg(long)]
        seed: u64,
        #[arg(short)]
        o: PathBuf,
    },
    /// Simulate one coded generation; prints the trace as JSON.
    Simulate {
        file: PathBuf,
        /// Comma-separated adversarial nodes (may be empty).
        #[arg(long, default_value = "")]
        adversary: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        nsrc: usize,
        #[arg(long, default_value_t = DEFAULT_Q)]
        q: u64,
        #[arg(long)]
        seed: u64,
        /// Also write the per-sink CSV summary here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Render the network as Graphviz DOT.
    Dot {
        file: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Oa,
    Ss,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Raw,
    Gateway,
    Transformed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    #[value(name = "4")]
    Theorem4,
    #[value(name = "5")]
    Theorem5,
    #[value(name = "prop1")]
    Prop1,
}

enum Failure {
    /// Bad input or a library error: exit 1.
    Invalid(String),
    /// The rates guard declined: exit 2.
    Refused(String),
    /// `check` ran but the claim did not hold: exit 1, report already printed.
    ClaimFailed,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn load(path: &Path) -> Result<UntrustedNetwork, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    parse_network(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &impl serde::Serialize) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("reports serialize")));
}

fn analyze(n: &UntrustedNetwork) -> Value {
    let k = n.sink_edge_connectivity();
    let l = n.sink_internal_connectivity();
    let sinks: BTreeMap<&NodeId, Value> = k
        .iter()
        .map(|(t, kv)| (t, json!({ "K": kv, "lambda": l[t] })))
        .collect();
    json!({
        "capacity": capacity(n),
        "lambda": lambda_capacity(n),
        "diversity": diversity(n).ok(),
        "sinks": sinks,
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file } => print_json(&analyze(&load(&file)?)),
        Command::Transform { file, o } => {
            let beta = broadcast_transform(&load(&file)?)?;
            write(&o, &serialize_network(&beta))?;
        }
        Command::Rates { file, model, w, force } => {
            let n = load(&file)?;
            if w > GUARD_W && n.untrusted().len() > GUARD_U && !force {
                return Err(Failure::Refused(format!(
                    "w = {w} over {} untrusted nodes needs an exhaustive enumeration; pass --force to run it",
                    n.untrusted().len()
                )));
            }
            let model = match model {
                ModelArg::Oa => Model::Omniscient,
                ModelArg::Ss => Model::SharedSecret,
            };
            let report = rate(&n, model, w);
            if report.clamped {
                eprintln!("warning: w = {w} exceeds |U| = {}; clamped", report.budget_w);
            }
            print_json(&report);
        }
        Command::Check { file, theorem, w } => {
            let n = load(&file)?;
            let holds = match theorem {
                Claim::Theorem4 => {
                    let r = check_theorem4(&n)?;
                    print_json(&r);
                    r.equal
                }
                Claim::Theorem5 => {
                    let r = check_theorem5(&n)?;
                    print_json(&r);
                    r.holds
                }
                Claim::Prop1 => {
                    let w = w.ok_or_else(|| Failure::Invalid("--theorem prop1 needs --w".into()))?;
                    let r = check_proposition1(&n, w)?;
                    print_json(&r);
                    r.holds
                }
            };
            if !holds {
                return Err(Failure::ClaimFailed);
            }
        }
        Command::Generate { jlc: _, k, d, joins, diverse, seed, o } => {
            let cfg = JlcConfig { k, d, n_joins: joins, d_diverse_mode: diverse, seed };
            let out = generate_jlc(&cfg)?;
            write(&o, &serialize_network(&out.network()?))?;
            emit(&out.trace.to_log());
        }
        Command::Simulate { file, adversary, mode, nsrc, q, seed, csv } => {
            let network = load(&file)?;
            let adversary = adversary
                .split(',')
                .map(str::trim)
                .filter(|a| !a.is_empty())
                .map(NodeId::new)
                .collect::<Result<_, _>>()?;
            let mode = match mode {
                ModeArg::Raw => Mode::Raw,
                ModeArg::Gateway => Mode::GatewayEnforced,
                ModeArg::Transformed => Mode::Transformed,
            };
            let cfg = SimConfig { network, adversary, n_src: nsrc, q, mode, seed };
            let trace = run_generation(&cfg)?;
            for w in &trace.warnings {
                eprintln!("warning: {w}");
            }
            let decoded = decode_check(&trace, &cfg);
            print_json(&json!({ "trace": trace, "decoded": decoded }));
            if let Some(path) = csv {
                write(&path, &trace.to_csv())?;
            }
        }
        Command::Dot { file, o } => write(&o, &render_dot(&load(&file)?))?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::ClaimFailed) => ExitCode::from(1),
    }
}
