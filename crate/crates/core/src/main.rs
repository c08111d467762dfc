use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use genmat::cli::{self, CheckTask, CliError, InstanceFile, Options, Report};
use genmat::genmat::Variant;

/// Generic exchange for Noether normalizations, minimal reductions and
/// complete reductions, verified with Gröbner bases over F_p.
#[derive(Parser)]
#[command(name = "genmat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Prime modulus; overrides the instance file and GENMAT_PRIME.
    #[arg(long, global = true)]
    prime: Option<u64>,

    /// Seed for randomized commands (generated and printed when absent).
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a property of the instance in FILE (`-` reads stdin).
    Check {
        /// nn, hsop, reduction, minimal-reduction, complete-reduction-ring or
        /// complete-reduction-ideals.
        task: CheckTask,
        file: PathBuf,
        /// Largest N tried in I^{N+1} = J I^N.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Replace one basis element by a generic element of the target.
    Exchange {
        /// Instance file (`-` reads stdin).
        file: PathBuf,
        /// Element to remove (columns as `a;b`); defaults to the first.
        #[arg(long)]
        remove: Option<String>,
        /// Target basis elements, replacing the file's target.
        #[arg(long = "from", num_args = 1..)]
        from: Vec<String>,
        /// Also measure the success rate over this many random draws.
        #[arg(long)]
        trials: Option<usize>,
        /// Sampling variant for complete reductions.
        #[arg(long)]
        variant: Option<Variant>,
        /// Candidates drawn before giving up (exit code 4).
        #[arg(long)]
        max_tries: Option<usize>,
        /// Largest N tried in I^{N+1} = J I^N when the oracle needs it.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Reproduce the quadric example end to end.
    Demo {
        /// Random draws for the success-rate measurement.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

fn read_instance(path: &PathBuf) -> Result<InstanceFile, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    };
    InstanceFile::from_json(&text)
}

fn run(args: &Cli) -> Result<Report, CliError> {
    let mut opts = Options {
        prime: args.prime,
        seed: args.seed,
        ..Options::default()
    };
    match &args.command {
        Command::Check { task, file, n_max } => {
            opts.n_max = *n_max;
            cli::run_check(*task, &read_instance(file)?, &opts)
        }
        Command::Exchange {
            file,
            remove,
            from,
            trials,
            variant,
            max_tries,
            n_max,
        } => {
            opts.remove = remove.clone();
            opts.from = from.clone();
            opts.trials = *trials;
            opts.variant = *variant;
            opts.max_tries = *max_tries;
            opts.n_max = *n_max;
            cli::run_exchange(&read_instance(file)?, &opts)
        }
        Command::Demo { trials } => {
            opts.trials = Some(*trials);
            cli::run_demo(&opts)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let code = match run(&args) {
        Ok(report) => {
            if args.json {
                emit(&(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"));
            } else {
                emit(&report.render());
            }
            report.exit_code()
        }
        Err(e) => {
            if args.json {
                emit(&(serde_json::to_string_pretty(&e.to_json()).expect("error serializes") + "\n"));
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
