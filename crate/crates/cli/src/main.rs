//! `chss`: reports for plethysms, secant-variety ideals and explicit
//! multilinear checks.

mod construction;
mod decompose;
mod manifest;
mod secant;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use chss::decompose::{Settings, DEFAULT_CAP};
use chss::weyman::Catalog;
use chss::Exec;

use manifest::RunManifest;

#[derive(Debug, Parser)]
#[command(name = "chss", version, about = "Exact Lie-theoretic computations for secant varieties")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every pseudorandom stream.
    #[arg(long, global = true, env = "CHSS_SEED", default_value_t = 7)]
    seed: u64,
    /// Number of random trials for sampling checks.
    #[arg(long, global = true, env = "CHSS_TRIALS", default_value_t = 20)]
    trials: usize,
    /// Cap on distinct weights held for one module (and on oracle enumerations).
    #[arg(long, global = true, env = "CHSS_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Run every loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Record wall time in the manifest (reports are then no longer byte-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose a construction into irreducibles, e.g. `sym 3 wedge 3 gl 7`.
    Decompose {
        #[arg(required = true, num_args = 1..)]
        construction: Vec<String>,
    },
    /// Minimal generators of a catalog case's ideal.
    SecantIdeal {
        /// Case name or alias; `all` runs the whole catalog.
        case: String,
        /// Parameter for family names such as PAxG2n.
        #[arg(long)]
        n: Option<usize>,
        /// Highest degree to report (defaults to the catalog value).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Also run the Koszul exactness and surjectivity checks per degree.
        #[arg(long)]
        check: bool,
        /// Catalog file replacing the built-in one.
        #[arg(long)]
        case_file: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        suite: verify::Suite,
        /// Dimensions of A and B for segre-blocks.
        #[arg(long, num_args = 2, value_names = ["A", "B"], default_values_t = [3, 3])]
        dims: Vec<usize>,
        /// For rho-maps: also test ideal containment of D2, D3, D4 in D1.
        #[arg(long)]
        containment: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Decompose { .. } => "decompose",
            Command::SecantIdeal { .. } => "secant-ideal",
            Command::Verify { .. } => "verify",
        }
    }
}

trait Report: Serialize {
    fn text(&self) -> String;
    fn passed(&self) -> bool;
}

impl Report for decompose::DecomposeReport {
    fn text(&self) -> String {
        self.to_text()
    }
    fn passed(&self) -> bool {
        true
    }
}

impl Report for secant::SecantReport {
    fn text(&self) -> String {
        self.to_text()
    }
    fn passed(&self) -> bool {
        self.passed
    }
}

impl Report for verify::VerifyReport {
    fn text(&self) -> String {
        self.to_text()
    }
    fn passed(&self) -> bool {
        self.passed
    }
}

fn emit<R: Report>(report: &R, json: bool) -> Result<bool> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print!("{}", report.text());
    }
    Ok(report.passed())
}

fn execute(cli: Cli, args: Vec<String>) -> Result<bool> {
    let start = Instant::now();
    let g = &cli.global;
    let exec = if g.sequential { Exec::Sequential } else { Exec::Parallel }.effective();
    let settings = Settings { cap: g.cap, exec };
    let catalog = match &cli.command {
        Command::SecantIdeal { case_file: Some(p), .. } => {
            Catalog::from_path(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => Catalog::builtin(),
    };
    let mut manifest = RunManifest {
        tool: "chss".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cli.command.name().into(),
        args,
        catalog_version: catalog.version.clone(),
        seed: g.seed,
        trials: g.trials,
        cap: g.cap,
        exec: format!("{exec:?}").to_lowercase(),
        wall_time_ms: None,
    };
    let stamp = |m: &mut RunManifest| {
        if g.timing {
            m.wall_time_ms = Some(start.elapsed().as_millis());
        }
    };
    match &cli.command {
        Command::Decompose { construction } => {
            let req = construction::parse(construction)?;
            let mut r = decompose::run(manifest, &req, settings).map_err(cap_advice)?;
            stamp(&mut r.manifest);
            emit(&r, g.json)
        }
        Command::SecantIdeal { case, n, max_degree, check, .. } => {
            let configs = secant::resolve(&catalog, case, *n)?;
            manifest.catalog_version = catalog.version.clone();
            let mut r = secant::run(manifest, &configs, *max_degree, *check, settings).map_err(cap_advice)?;
            stamp(&mut r.manifest);
            emit(&r, g.json)
        }
        Command::Verify { suite, dims, containment } => {
            let params = verify::Params {
                seed: g.seed,
                trials: g.trials,
                cap: g.cap,
                exec,
                dims: (dims[0], dims[1]),
                containment: *containment,
            };
            let mut r = verify::run(manifest, *suite, params)?;
            stamp(&mut r.manifest);
            emit(&r, g.json)
        }
    }
}

fn cap_advice(e: anyhow::Error) -> anyhow::Error {
    match e.downcast_ref::<chss::Error>() {
        Some(chss::Error::CapExceeded { .. }) => e.context("raise the limit with --cap or CHSS_CAP"),
        _ => e,
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match execute(cli, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
