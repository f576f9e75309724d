//! `toro`: build toroidal modules, check their relations and characters.
//!
//! Exit status: 0 success, 1 invalid input, 2 ill-defined action, 3 mismatch.

mod commands;
mod error;
mod modules;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Compare, Output, Pair, RenderArgs, RenderType};
use error::{CliError, INVALID};
use modules::{ColorArgs, ModuleArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Ascii,
}

#[derive(Parser, Debug)]
#[command(name = "toro", version, about = "Build toroidal modules and check relations and characters exactly")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Ascii, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the defining relations on all basis vectors up to a degree.
    Relations {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Modes `|N| <= W` compared in the `[E_i, F_i]` cross-check.
        #[arg(long, default_value_t = 3)]
        mode_window: i32,
    },
    /// Graded dimensions, optionally compared with a closed form.
    Character {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, value_enum)]
        compare: Option<Compare>,
    },
    /// Classify a tensor product of two vector or two Fock modules.
    Resonance {
        #[arg(long, value_enum, default_value_t = Pair::Vector)]
        pair: Pair,
        #[command(flatten)]
        color: ColorArgs,
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[arg(long)]
        ratio: String,
        /// Index window of the brute-force scan for vector pairs.
        #[arg(long, default_value_t = 4)]
        window: i64,
        /// Also check the relations on the Fock submodule up to this degree.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Color counts and `|CC_i| - |CV_i|` of a partition.
    Colorless {
        #[arg(long, default_value = "")]
        parts: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Minimal partitions, or the root data of one family member.
    Orbit {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        nu: Option<String>,
    },
    /// Colored Young diagram or plane partition.
    Render {
        #[arg(long = "type", value_enum, default_value_t = RenderType::Young)]
        kind: RenderType,
        #[command(flatten)]
        color: ColorArgs,
        #[arg(long, default_value = "")]
        parts: String,
        #[arg(long, default_value = "")]
        alpha: String,
        #[arg(long, default_value = "")]
        beta: String,
        #[arg(long, default_value = "")]
        gamma: String,
        /// Layers `λ^(1)/λ^(2)/…`; the lowest configuration when omitted.
        #[arg(long)]
        layers: Option<String>,
        /// Height at which infinite legs are cut.
        #[arg(long, default_value_t = 4)]
        cut: i64,
    },
    /// The level `∏_i K_i^{-1}`.
    Level {
        #[command(flatten)]
        module: ModuleArgs,
    },
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.cmd {
        Cmd::Relations { module, max_degree, mode_window } => commands::relations(module, *max_degree, *mode_window),
        Cmd::Character { module, max_degree, compare } => commands::character(module, *max_degree, *compare),
        Cmd::Resonance { pair, color, l, ratio, window, max_degree } => {
            commands::resonance(*pair, color, *l, ratio, *window, *max_degree)
        }
        Cmd::Colorless { parts, n } => commands::colorless(parts, *n),
        Cmd::Orbit { n, nu } => commands::orbit(*n, nu.as_deref()),
        Cmd::Render { kind, color, parts, alpha, beta, gamma, layers, cut } => commands::render(RenderArgs {
            kind: *kind,
            color,
            parts,
            alpha,
            beta,
            gamma,
            layers: layers.as_deref(),
            cut: *cut,
        }),
        Cmd::Level { module } => commands::level(module),
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("TORO_THREADS") else {
        return Ok(());
    };
    let t: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::invalid("BadThreads", format!("TORO_THREADS={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(t)
        .build_global()
        .map_err(|e| CliError::invalid("BadThreads", e.to_string()))
}

fn fail(e: &CliError) -> ExitCode {
    let s = serde_json::to_string(e).expect("serializable error");
    let _ = writeln!(std::io::stderr(), "{s}");
    ExitCode::from(e.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            return fail(&CliError { status: INVALID, error: "Usage".into(), message: msg.trim_end().into() });
        }
    };
    if let Err(e) = init_threads() {
        return fail(&e);
    }
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable output") + "\n",
                Format::Tsv => out.tsv,
                Format::Ascii => out.ascii,
            };
            let mut so = std::io::stdout().lock();
            let _ = so.write_all(text.as_bytes());
            let _ = so.flush();
            ExitCode::from(out.status)
        }
        Err(e) => fail(&e),
    }
}
