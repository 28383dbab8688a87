use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hdeg_cli::{exit, parse_instance, render_instance, run_command, CliError, Command, RunOptions};
use hdeg_core::examples::{build_example, ExampleName};
use hdeg_core::theorems::TheoremId;
use hdeg_core::Settings;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "hdeg", version, about = "Hilbert coefficients, homological degrees and torsions of graded modules")]
struct Cli {
    /// Largest S-pair degree excess before giving up.
    #[arg(long, global = true, default_value_t = Settings::default().degree_cap)]
    degree_cap: i64,
    /// Extra length-table points checked after a polynomial fit.
    #[arg(long, global = true, default_value_t = Settings::default().fit_extra)]
    fit_extra: usize,
    /// Number of powers examined in superficiality checks.
    #[arg(long, global = true, default_value_t = Settings::default().window)]
    window: usize,
    /// Random recombinations tried by generator searches.
    #[arg(long, global = true, default_value_t = Settings::default().trials)]
    trials: usize,
    #[arg(long, global = true, default_value_t = Settings::default().seed)]
    seed: u64,
    /// Directory of the Gröbner basis cache.
    #[arg(long, global = true, env = "HDEG_CACHE_DIR")]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Hilbert coefficients e^0..e^d of M with respect to Q.
    Coeffs { file: PathBuf },
    /// hdeg_Q(M) with its tree of deficiency modules.
    Hdeg { file: PathBuf },
    /// The homological torsion T^i_Q(M).
    Torsion {
        file: PathBuf,
        #[arg(long)]
        i: usize,
    },
    /// Whether the generators of Q form a d-sequence, with a search for
    /// generators that do.
    Dseq { file: PathBuf },
    /// Unmixedness and the unmixed component.
    Unmixed { file: PathBuf },
    /// Checks one of the inequalities or equivalences on the instance.
    Check {
        file: PathBuf,
        /// prop31, thm33, thm41 or thm42.
        #[arg(long)]
        theorem: String,
    },
    /// Prints the problem file of a worked example.
    Example {
        /// idealization_37, intersection_38 or mixed_47.
        name: String,
        /// Family parameters (ℓ, then m for intersection_38).
        params: Vec<usize>,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let settings = Settings {
        degree_cap: cli.degree_cap,
        fit_extra: cli.fit_extra,
        window: cli.window,
        trials: cli.trials,
        seed: cli.seed,
        ..Settings::default()
    };
    let opts = RunOptions { settings, cache_dir: cli.cache.clone() };
    let (file, cmd) = match cli.command {
        Cmd::Example { name, params } => {
            let name: ExampleName = name.parse().map_err(|e: hdeg_core::Error| CliError::Usage(e.to_string()))?;
            let inst = build_example(name, &params).map_err(|e| CliError::Usage(e.to_string()))?;
            print!("# {}\n{}", inst.label, render_instance(&inst.module, &inst.params));
            return Ok(exit::OK);
        }
        Cmd::Coeffs { file } => (file, Command::Coeffs),
        Cmd::Hdeg { file } => (file, Command::Hdeg),
        Cmd::Torsion { file, i } => (file, Command::Torsion { i }),
        Cmd::Dseq { file } => (file, Command::Dseq),
        Cmd::Unmixed { file } => (file, Command::Unmixed),
        Cmd::Check { file, theorem } => {
            let theorem: TheoremId = theorem.parse().map_err(|e: hdeg_core::Error| CliError::Usage(e.to_string()))?;
            (file, Command::Check { theorem })
        }
    };
    let text = std::fs::read_to_string(&file)
        .map_err(|e| CliError::Io { path: file.display().to_string(), source: e })?;
    let inst = parse_instance(&text)?;
    let report = run_command(cmd, &inst, &opts)?;
    match cli.format {
        Format::Json => println!("{}", report.render_json()),
        Format::Text => print!("{}", report.render_text()),
    }
    Ok(report.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
