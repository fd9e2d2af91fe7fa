//! `jbhash` command-line tool: bucket lookups, trajectory scans, consumption
//! experiments, statistical checks, golden vectors and a small benchmark.
//!
//! Exit status is 0 on success, 1 when a check fails and 2 on usage or I/O
//! errors.

mod commands;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jbhash::{Algorithm, BucketCount};

use parse::{parse_algorithm, parse_algorithm_list, parse_bucket_count, parse_n_list, parse_n_spec, parse_u64};

#[derive(Debug, Parser)]
#[command(name = "jbhash", version, about = "Consistent hashing with JumpBackHash")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Map one key to a bucket.
    Map {
        #[arg(long, value_parser = parse_algorithm)]
        algo: Algorithm,
        /// Decimal or 0x-hex.
        #[arg(long, value_parser = parse_u64)]
        key: u64,
        #[arg(long, value_parser = parse_bucket_count)]
        n: BucketCount,
        /// Also print the number of generator words consumed.
        #[arg(long)]
        count: bool,
    },
    /// Print every bucket count up to n-max at which the key moves.
    Scan {
        #[arg(long, value_parser = parse_algorithm)]
        algo: Algorithm,
        #[arg(long, value_parser = parse_u64)]
        key: u64,
        #[arg(long, value_parser = parse_bucket_count)]
        n_max: BucketCount,
    },
    /// Measure generator consumption and compare it with the closed form.
    Consumption {
        #[arg(long, value_parser = parse_algorithm)]
        algo: Algorithm,
        /// `list:<n,...>` or `geom:<n0>:<factor>`.
        #[arg(long, value_parser = parse_n_spec)]
        n_spec: NList,
        /// Keys per bucket count.
        #[arg(long, default_value_t = 1_000_000)]
        keys: u64,
        #[arg(long, value_parser = parse_u64, default_value = "0")]
        seed: u64,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count monotonicity violations over random keys.
    CheckMonotonicity {
        #[arg(long, value_parser = parse_algorithm)]
        algo: Algorithm,
        #[arg(long, default_value_t = 1000)]
        runs: u64,
        #[arg(long, value_parser = parse_bucket_count, default_value = "10000")]
        n_max: BucketCount,
        #[arg(long, value_parser = parse_u64, default_value = "0")]
        seed: u64,
    },
    /// Goodness-of-fit sweep over bucket counts.
    CheckUniformity(UniformityArgs),
    /// Write or verify the golden-vector file.
    Golden(GoldenArgs),
    /// Time lookups and report mean generator consumption as CSV.
    Bench {
        /// Comma separated algorithm names.
        #[arg(long, value_parser = parse_algorithm_list,
              default_value = "modulo,random,jumphash,jumpbackhash,jumpbackhash-packed")]
        algos: AlgoList,
        /// Comma separated counts or ranges; defaults to 2^i, 2^i+1 and
        /// quarter points up to 10^6.
        #[arg(long, value_parser = parse_n_list)]
        n_list: Option<NList>,
        #[arg(long, default_value_t = 1_000_000)]
        keys: u64,
        #[arg(long, value_parser = parse_u64, default_value = "0")]
        seed: u64,
    },
}

// clap needs distinct names to treat a Vec as a single parsed value
type NList = Vec<BucketCount>;
type AlgoList = Vec<Algorithm>;

#[derive(Debug, Args)]
pub struct UniformityArgs {
    #[arg(long, value_parser = parse_algorithm)]
    pub algo: Algorithm,
    /// Comma separated counts or ranges such as `2..100`.
    #[arg(long, value_parser = parse_n_list, default_value = "2..100")]
    pub n_list: NList,
    #[arg(long, default_value_t = 100_000)]
    pub keys: u64,
    #[arg(long, default_value_t = 0.001)]
    pub alpha: f64,
    /// Largest tolerated fraction of rejected bucket counts.
    #[arg(long, default_value_t = 0.02)]
    pub max_rejection: f64,
    #[arg(long, value_parser = parse_u64, default_value = "0")]
    pub seed: u64,
    /// Print one line per bucket count.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GoldenArgs {
    #[arg(long, value_name = "PATH")]
    pub write: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub verify: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    let result = match cli.command {
        Command::Map { algo, key, n, count } => commands::map(algo, key, n, count),
        Command::Scan { algo, key, n_max } => commands::scan(algo, key, n_max),
        Command::Consumption { algo, n_spec, keys, seed, out } => {
            commands::consumption(algo, &n_spec, keys, seed, out.as_deref())
        }
        Command::CheckMonotonicity { algo, runs, n_max, seed } => {
            commands::check_monotonicity(algo, runs, n_max, seed)
        }
        Command::CheckUniformity(args) => commands::check_uniformity(&args),
        Command::Golden(args) => commands::golden(&args),
        Command::Bench { algos, n_list, keys, seed } => {
            let n_list = n_list.unwrap_or_else(parse::default_bench_n_list);
            commands::bench(&algos, &n_list, keys, seed)
        }
    };
    match result {
        Ok(commands::Status::Pass) => ExitCode::SUCCESS,
        Ok(commands::Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
