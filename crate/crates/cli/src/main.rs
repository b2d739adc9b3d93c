use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use circmatch::cli::{run, run_on_text, Command, Format, Outcome, RunConfig, EXIT_INPUT};
use circmatch::matcher::Method;
use clap::{Parser, Subcommand, ValueEnum};

/// Perfect matchings in bipartite planar graphs.
#[derive(Parser)]
#[command(name = "circmatch", version)]
struct Args {
    #[command(subcommand)]
    command: Sub,
    #[arg(long, value_enum, default_value_t = MethodArg::Grid, global = true)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Json, global = true)]
    format: FormatArg,
    /// Vertex limit for brute-force oracles (also CIRCMATCH_MAX_ORACLE).
    #[arg(long, global = true)]
    max_oracle_size: Option<usize>,
    /// Suppress diagnostics on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Sub {
    /// Find a perfect matching.
    Match { input: PathBuf },
    /// Perfect matching of minimum input weight.
    Minweight { input: PathBuf },
    /// Whether the perfect matching is unique.
    Upm { input: PathBuf },
    /// Count perfect matchings.
    Count { input: PathBuf },
    /// Print the isolating weighting.
    Weight { input: PathBuf },
    /// Print the grid embedding.
    Embed { input: PathBuf },
    /// Parity of the number of perfect matchings of a spine-ordered outerplanar graph.
    OpParity { input: PathBuf },
    /// Unique perfect matching test for a spine-ordered outerplanar graph.
    OpUpm { input: PathBuf },
    /// Check the pipeline against brute-force oracles.
    Verify { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Grid,
    Direct,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (command, input) = match args.command {
        Sub::Match { input } => (Command::Match, input),
        Sub::Minweight { input } => (Command::MinWeight, input),
        Sub::Upm { input } => (Command::Upm, input),
        Sub::Count { input } => (Command::Count, input),
        Sub::Weight { input } => (Command::Weight, input),
        Sub::Embed { input } => (Command::Embed, input),
        Sub::OpParity { input } => (Command::OpParity, input),
        Sub::OpUpm { input } => (Command::OpUpm, input),
        Sub::Verify { input } => (Command::Verify, input),
    };
    let config = RunConfig {
        command,
        input,
        method: match args.method {
            MethodArg::Grid => Method::Grid,
            MethodArg::Direct => Method::Direct,
        },
        format: match args.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
        max_oracle_size: args.max_oracle_size,
        quiet: args.quiet,
    };
    let outcome = if config.input.as_os_str() == "-" {
        let mut text = String::new();
        match std::io::stdin().read_to_string(&mut text) {
            Ok(_) => run_on_text(&config, &text),
            Err(e) => Outcome {
                status: EXIT_INPUT,
                stdout: String::new(),
                stderr: if config.quiet { String::new() } else { format!("cannot read stdin: {e}\n") },
            },
        }
    } else {
        run(&config)
    };
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status as u8)
}
