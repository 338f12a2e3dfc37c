mod commands;
mod dot;
mod input;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use saw_core::SawError;

use commands::{Body, Command, Options};

#[derive(Parser, Debug)]
#[command(name = "saw", version, about = "Triangulation quivers and weighted surface algebras")]
struct Cli {
    /// Seed for randomized isomorphism searches
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest flattened bimodule term the periodicity check will build
    #[arg(long, global = true, env = "SAW_MAX_DIM", default_value_t = saw_core::bimodule::DEFAULT_MAX_DIM)]
    max_dim: usize,
    /// Compact single-line JSON
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON (the default)
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args, Debug)]
struct InputArg {
    /// Input document; "-" reads stdin
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the triangulation quiver axioms
    Validate(InputArg),
    /// List g-orbits with weights and parameters, and f-orbits
    Orbits(InputArg),
    /// List border loops and their values
    Border(InputArg),
    /// Check the tetrahedral characterizations and report its parameters
    Tetrahedral(InputArg),
    /// Build the triangulation quiver of a surface
    FromSurface(InputArg),
    /// Rebuild a surface triangulation from a quiver
    ToSurface(InputArg),
    /// Build the algebra and check its relations
    Build(InputArg),
    /// Dimensions of the algebra and its indecomposable projectives
    Dims(InputArg),
    /// Cartan matrix and determinant
    Cartan(InputArg),
    /// Symmetrizing form checks
    Form(InputArg),
    /// Explicit projective resolution of one simple module
    ResolveSimple {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        vertex: String,
    },
    /// Period four for every simple module
    VerifySimplePeriodicity(InputArg),
    /// Periodic bimodule resolution of the algebra
    #[command(alias = "verify-periodicity")]
    VerifyBimodulePeriodicity(InputArg),
    /// Period four for the uniserial modules of a tetrahedral algebra
    UniserialCheck(InputArg),
    /// Bipartite walk of an arrow for the string algebra
    Walks {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        arrow: String,
    },
    /// Growth classification with evidence
    Classify(InputArg),
    /// Graphviz rendering of the quiver
    Dot {
        #[command(flatten)]
        input: InputArg,
        /// Color arrows by f-orbit
        #[arg(long)]
        highlight: bool,
    },
}

fn read_input(path: &PathBuf) -> Result<String, SawError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| SawError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| SawError::Input(format!("{}: {e}", path.display())))
    }
}

// A closed pipe downstream is not an error worth a panic.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn exit_code(e: &SawError) -> u8 {
    match e {
        SawError::Invariant(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = Options {
        seed: cli.seed,
        max_dim: cli.max_dim,
        ..Options::default()
    };
    let (cmd, path) = match cli.command {
        Cmd::Validate(i) => (Command::Validate, i.input),
        Cmd::Orbits(i) => (Command::Orbits, i.input),
        Cmd::Border(i) => (Command::Border, i.input),
        Cmd::Tetrahedral(i) => (Command::Tetrahedral, i.input),
        Cmd::FromSurface(i) => (Command::FromSurface, i.input),
        Cmd::ToSurface(i) => (Command::ToSurface, i.input),
        Cmd::Build(i) => (Command::Build, i.input),
        Cmd::Dims(i) => (Command::Dims, i.input),
        Cmd::Cartan(i) => (Command::Cartan, i.input),
        Cmd::Form(i) => (Command::Form, i.input),
        Cmd::ResolveSimple { input, vertex } => {
            opts.vertex = Some(vertex);
            (Command::ResolveSimple, input.input)
        }
        Cmd::VerifySimplePeriodicity(i) => (Command::VerifySimplePeriodicity, i.input),
        Cmd::VerifyBimodulePeriodicity(i) => (Command::VerifyBimodulePeriodicity, i.input),
        Cmd::UniserialCheck(i) => (Command::UniserialCheck, i.input),
        Cmd::Walks { input, arrow } => {
            opts.arrow = Some(arrow);
            (Command::Walks, input.input)
        }
        Cmd::Classify(i) => (Command::Classify, i.input),
        Cmd::Dot { input, highlight } => {
            opts.highlight = highlight;
            (Command::Dot, input.input)
        }
    };

    let result = read_input(&path)
        .and_then(|text| input::parse_input(&text))
        .and_then(|doc| commands::run(cmd, &doc, &opts));
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    match &outcome.body {
        Body::Json(v) => {
            let text = if cli.json {
                serde_json::to_string(v)
            } else {
                serde_json::to_string_pretty(v)
            }
            .expect("reports serialize");
            emit(&format!("{text}\n"));
        }
        Body::Text(t) => emit(t),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
