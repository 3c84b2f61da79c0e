use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use artinacyl::cert::{self, CheckStatus};
use artinacyl::classify::{center_report, classify, decide_from_report};
use artinacyl::graph::{join_decompose, shape_flags, to_dot, GraphView};
use artinacyl::shadow::{build_shadow, shadow_laws};
use artinacyl::wpd::{build_gamma, GammaPlan};
use artinacyl::{DefiningGraph, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

const SHADOW_CAP: usize = 100_000;

#[derive(Parser, Debug)]
#[command(name = "artinacyl", version, about = "Acylindrical hyperbolicity of Artin groups from their defining graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Join decomposition, classification, verdict and center facts.
    Analyze(Common),
    /// Classification report only.
    Classify(Common),
    /// The WPD candidate γ with all intermediate tables.
    Gamma(Common),
    /// Hyperplane schedule and checks for γ.
    Certify {
        #[command(flatten)]
        common: Common,
        /// Use a stored plan instead of rebuilding it.
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Re-verify a stored certificate.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Coset cube complex over the Coxeter quotient and its law checks.
    Shadow(Common),
    /// DOT rendering of the defining graph or a derived graph.
    Export {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = View::Defining)]
        view: View,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Graph document; `--input` takes precedence.
    input_pos: Option<PathBuf>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Enumeration cap (also read from ARTINACYL_CAP).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
    /// Ball radius for the shadow; the whole group when omitted.
    #[arg(long)]
    radius: Option<usize>,
    /// Restrict the shadow to the reduced subcomplex.
    #[arg(long)]
    reduced: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum View {
    Defining,
    Complement,
    Coxeter,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Graph(_) | Error::Malformed(_) => 2,
            Error::Hypothesis(_) => 3,
            Error::ResourceLimit { .. } | Error::InfiniteParabolic { .. } | Error::Numerical(_) => 4,
        };
        let message = match e {
            Error::Hypothesis(m) => m,
            other => other.to_string(),
        };
        Failure::new(code, message)
    }
}

struct Output {
    body: String,
    failed: bool,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn envelope(command: &str, input_hash: &str, result: Value) -> Value {
    json!({
        "tool": "artinacyl",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input_sha256": input_hash,
        "result": result,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn dot_header(input_hash: &str) -> String {
    format!("// artinacyl {} input sha256 {input_hash}\n", env!("CARGO_PKG_VERSION"))
}

fn read(path: &PathBuf, what: &str) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::new(2, format!("cannot read {what} {}: {e}", path.display())))
}

fn load(common: &Common) -> Result<(DefiningGraph, String), Failure> {
    let path = common
        .input
        .as_ref()
        .or(common.input_pos.as_ref())
        .ok_or_else(|| Failure::new(1, "no input graph given"))?;
    let bytes = read(path, "input")?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::new(2, "input is not UTF-8"))?;
    let g = DefiningGraph::from_json(&text).map_err(|e| Failure::from(Error::from(e)))?;
    Ok((g, sha256_hex(&bytes)))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &PathBuf, what: &str) -> Result<T, Failure> {
    let bytes = read(path, what)?;
    serde_json::from_slice(&bytes).map_err(|e| Failure::new(2, format!("{what} {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(Output, Option<PathBuf>), Failure> {
    let common = match &cli.command {
        Command::Analyze(c) | Command::Classify(c) | Command::Gamma(c) | Command::Shadow(c) => c,
        Command::Certify { common, .. } | Command::Export { common, .. } => common,
    };
    if let Some(cap) = common.cap {
        std::env::set_var(artinacyl::coxeter::CAP_ENV, cap.to_string());
    }
    let (g, hash) = load(common)?;
    let output = common.output.clone();
    let json_out = |command: &str, result: Value, failed: bool| Output {
        body: pretty(&envelope(command, &hash, result)),
        failed,
    };
    let out = match &cli.command {
        Command::Analyze(_) => {
            let report = classify(&g);
            let verdict = decide_from_report(&report);
            let center = match center_report(&g) {
                Ok(c) => json!(c),
                Err(Error::Hypothesis(why)) => json!({ "not_applicable": why }),
                Err(e) => return Err(e.into()),
            };
            json_out(
                "analyze",
                json!({
                    "graph": g.to_json(),
                    "join_decomposition": join_decompose(&g).named(&g),
                    "shape": shape_flags(&g),
                    "classification": report,
                    "verdict": verdict,
                    "center": center,
                }),
                false,
            )
        }
        Command::Classify(_) => json_out("classify", json!(classify(&g)), false),
        Command::Gamma(_) => json_out("gamma", build_gamma(&g)?.to_json(), false),
        Command::Certify { plan, cert: stored, .. } => {
            let plan: GammaPlan = match plan {
                Some(p) => parse_json(p, "plan")?,
                None => build_gamma(&g)?,
            };
            let certificate = match stored {
                Some(p) => cert::reverify(&g, &plan, &parse_json(p, "certificate")?)?,
                None => cert::certify(&g, &plan)?,
            };
            let failed = certificate.overall == CheckStatus::Fail;
            json_out("certify", json!(certificate), failed)
        }
        Command::Shadow(c) => {
            let d = join_decompose(&g);
            let cap = c.cap.map_or(SHADOW_CAP, |x| x as usize);
            let ambient = build_shadow(&g, &d, false, cap, c.radius)?;
            let reduced = build_shadow(&g, &d, true, cap, c.radius)?;
            let checks = shadow_laws(&g, &d, &ambient, &reduced)?;
            let failed = checks.iter().any(|r| r.status == CheckStatus::Fail);
            let shown = if c.reduced { &reduced } else { &ambient };
            if c.format == Some(Format::Dot) {
                Output { body: dot_header(&hash) + &shown.to_dot(), failed }
            } else {
                json_out("shadow", json!({ "complex": shown.to_json(), "checks": checks }), failed)
            }
        }
        Command::Export { view, common } => {
            let view = match view {
                View::Defining => GraphView::Defining,
                View::Complement => GraphView::Complement,
                View::Coxeter => GraphView::Coxeter,
            };
            if common.format == Some(Format::Json) {
                let (complement, coxeter) = artinacyl::derived_graphs(&g);
                json_out(
                    "export",
                    json!({ "graph": g.to_json(), "complement": complement, "coxeter": coxeter }),
                    false,
                )
            } else {
                Output { body: dot_header(&hash) + &to_dot(&g, view), failed: false }
            }
        }
    };
    Ok((out, output))
}

fn fail(f: &Failure) -> ExitCode {
    let line = f.message.replace('\n', " ");
    eprintln!("ERR:{}:{line}", f.code);
    ExitCode::from(f.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("usage error").trim_start_matches("error: ").to_owned();
            return fail(&Failure::new(1, first));
        }
    };
    let (out, path) = match run(cli) {
        Ok(x) => x,
        Err(f) => return fail(&f),
    };
    let written = match &path {
        Some(p) => fs::write(p, &out.body).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => io::stdout().write_all(out.body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        return fail(&Failure::new(2, e));
    }
    if out.failed {
        return fail(&Failure::new(5, "certificate check failed"));
    }
    ExitCode::SUCCESS
}
