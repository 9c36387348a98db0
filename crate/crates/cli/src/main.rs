use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use efrac_core::alpha::LiftRule;
use efrac_cli::commands::{self, CommandOutput};
use efrac_cli::config::{parse_bytes, ConfigOverrides, OutputFormat, RunConfig};
use efrac_cli::modulus::parse_modulus;
use efrac_cli::Result;

#[derive(Parser, Debug)]
#[command(name = "efrac", version, about = "Egyptian-fraction sum sets: exact counts and certified growth bounds")]
struct Cli {
    /// Worker threads for per-divisor work (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Memory budget, e.g. 8G or 512M.
    #[arg(long, global = true, value_parser = parse_bytes)]
    memory_budget: Option<u64>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Guaranteed fractional bits for every logarithm (>= 64).
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Lift {
    /// largest divisor of M' not exceeding a_i
    #[default]
    Below,
    /// largest divisor of M' dividing a_i
    Divisor,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// #E_N for N = 1..max-n.
    Enumerate {
        #[arg(long)]
        max_n: u64,
    },
    /// Full-divisor bound for one modulus with exact chain counts.
    ChainBound {
        #[arg(long)]
        modulus: String,
    },
    /// Mixed bound: exact counts on divisors of M', estimates elsewhere.
    MixedBound {
        #[arg(long)]
        modulus: String,
        #[arg(long)]
        exact_modulus: String,
        #[arg(long, value_enum, default_value_t = Lift::Below)]
        lift: Lift,
    },
    /// log #E_N / N and log #E_N / (N / log N) for N = 1..max-n.
    FigureData {
        #[arg(long)]
        max_n: u64,
    },
    /// Certified members of U up to --max, exhaustive below --cap.
    USet {
        #[arg(long, alias = "max-n")]
        max: u64,
        #[arg(long, default_value_t = 0)]
        cap: u64,
        /// y for the recursive count bound (needs --recursive-x).
        #[arg(long, requires = "recursive_x")]
        recursive_y: Option<u64>,
        #[arg(long, requires = "recursive_y")]
        recursive_x: Option<u64>,
    },
    /// Natural density of the valuation profile of a modulus.
    Density {
        #[arg(long)]
        modulus: String,
        /// Also count members up to x.
        #[arg(long)]
        x: Option<u64>,
    },
    /// d_m and g_m for m = 1..max-m.
    GmTable {
        #[arg(long, default_value_t = 24)]
        max_m: u64,
    },
}

fn run(cli: Cli) -> Result<CommandOutput> {
    let overrides = ConfigOverrides {
        memory_budget_bytes: cli.memory_budget,
        cache_dir: cli.cache_dir,
        log_precision_bits: cli.precision,
        output_format: cli.format.map(|f| match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }),
        workers: cli.workers,
    };
    let cfg = RunConfig::from_env(&overrides)?;
    match cli.command {
        Command::Enumerate { max_n } => commands::cmd_enumerate(&cfg, max_n),
        Command::ChainBound { modulus } => commands::cmd_chain_bound(&cfg, &parse_modulus(&modulus)?),
        Command::MixedBound {
            modulus,
            exact_modulus,
            lift,
        } => {
            let rule = match lift {
                Lift::Below => LiftRule::LargestBelow,
                Lift::Divisor => LiftRule::LargestDivisor,
            };
            commands::cmd_mixed_bound(
                &cfg,
                &parse_modulus(&modulus)?,
                &parse_modulus(&exact_modulus)?,
                rule,
            )
        }
        Command::FigureData { max_n } => commands::cmd_figure_data(&cfg, max_n),
        Command::USet {
            max,
            cap,
            recursive_y,
            recursive_x,
        } => commands::cmd_u_set(&cfg, max, cap, recursive_y.zip(recursive_x)),
        Command::Density { modulus, x } => commands::cmd_density(&cfg, &parse_modulus(&modulus)?, x),
        Command::GmTable { max_m } => commands::cmd_gm_table(&cfg, max_m),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if let Some(summary) = out.summary {
                eprintln!("{summary}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("efrac: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

