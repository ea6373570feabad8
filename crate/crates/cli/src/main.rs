use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ttg_cli::{parse_model, run, Command, Options, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_PASS};
use ttg_core::order::catalog::DEFAULT_SEED;
use ttg_core::{Exec, Limits};

/// Spectra, classification and support data of finite lattice models.
#[derive(Parser)]
#[command(name = "ttg", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// The spectrum of the model's submodule lattice with its topology
    Spectrum(Common),
    /// Supports, classification and prime decompositions of every element
    Classify(Common),
    /// Admissibility and sheaf checks of the model's datum
    CheckDatum(Common),
    /// The map to the base and its fibers
    Fiber(Common),
    /// Universal maps into every enumerated support datum
    UniversalMap(Common),
    /// Submodules and primes of a Severi-Brauer model
    SbEnumerate(Common),
}

#[derive(Args)]
struct Common {
    /// Model file, text or JSON; `-` reads standard input
    file: PathBuf,

    /// Emit JSON
    #[arg(long)]
    json: bool,

    /// Emit a Graphviz digraph
    #[arg(long, conflicts_with = "json")]
    dot: bool,

    /// Seed for `random:` models
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Largest poset whose down-sets are enumerated [default: $TTG_MAX_POINTS or 24]
    #[arg(long)]
    max_points: Option<usize>,
}

fn read(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, args) = match cli.command {
        Cmd::Spectrum(a) => (Command::Spectrum, a),
        Cmd::Classify(a) => (Command::Classify, a),
        Cmd::CheckDatum(a) => (Command::CheckDatum, a),
        Cmd::Fiber(a) => (Command::Fiber, a),
        Cmd::UniversalMap(a) => (Command::UniversalMap, a),
        Cmd::SbEnumerate(a) => (Command::SbEnumerate, a),
    };
    let fail = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(EXIT_INPUT_ERROR as u8)
    };
    let src = match read(&args.file) {
        Ok(s) => s,
        Err(e) => return fail(format!("{}: {e}", args.file.display())),
    };
    let model = match parse_model(&src, args.seed) {
        Ok(m) => m,
        Err(e) => return fail(format!("{}: {e}", args.file.display())),
    };
    let mut limits = Limits::from_env();
    if let Some(n) = args.max_points {
        limits.max_points = n;
    }
    let opts = Options {
        limits,
        exec: Exec::default(),
    };
    let outcome = match run(cmd, &model, &opts) {
        Ok(o) => o,
        Err(e) => return fail(e.to_string()),
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&outcome.json).expect("reports serialize")
        );
    } else if args.dot {
        print!("{}", outcome.dot);
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(if outcome.pass {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    } as u8)
}
