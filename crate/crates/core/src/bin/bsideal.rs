use std::path::PathBuf;
use std::process::ExitCode;

use bsideal::groebner::Budget;
use bsideal::io::cache::Cache;
use bsideal::io::job::{render, run_job, Command, JobSpec};
use bsideal::oracle::AnsatzBounds;
use bsideal::zeta::ResolutionData;
use bsideal::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bsideal", version, about = "Bernstein-Sato ideals, monodromy support loci and zeta polar candidates")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// b-function of a single polynomial
    Bfun(Common),
    /// Generators of Ann(f_1^s1 ... f_r^sr)
    Ann(Common),
    /// B_F^m with its locus and structure report
    Tuple(Common),
    /// Search for an operator proving b in B_F^m
    Verify(Common),
    /// b-function from the operator ansatz alone
    OracleBfun(Common),
    /// Exp of the zero locus, optionally restricted to a diagonal
    ExpLocus(Common),
    /// Candidate poles from resolution data, checked against B_F
    Zeta(Common),
    /// Run the reference corpus
    Suite(Common),
}

#[derive(Args)]
struct Common {
    /// A polynomial; repeat for a tuple
    #[arg(short = 'F', long = "poly", short_alias = 'f')]
    f: Vec<String>,
    /// Multi-index, comma separated
    #[arg(short, long, value_delimiter = ',')]
    m: Option<Vec<u32>>,
    /// Candidate in s (or s1, s2, ...) for `verify`
    #[arg(short, long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Weights for the diagonal specialization
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u32>>,
    /// Resolution data as JSON
    #[arg(long)]
    resolution: Option<PathBuf>,
    #[arg(long)]
    max_pairs: Option<usize>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    max_s_degree: Option<u32>,
    /// Ansatz bound on the order in d
    #[arg(long)]
    max_order: Option<u32>,
    /// Ansatz bound on the x-degree of coefficients
    #[arg(long)]
    max_x_degree: Option<u32>,
    /// Ansatz bound on the s-degree of coefficients
    #[arg(long)]
    ansatz_s_degree: Option<u32>,
    #[arg(long)]
    max_unknowns: Option<usize>,
    /// Half-width of the shift search in the structure check
    #[arg(long = "box", default_value_t = 10)]
    box_size: i64,
    /// Write the document here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Cache directory (also BSIDEAL_CACHE_DIR)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

impl Common {
    fn into_spec(self, command: Command) -> Result<(JobSpec, Option<PathBuf>), Error> {
        let mut budget = Budget::default();
        budget.max_pairs = self.max_pairs.unwrap_or(budget.max_pairs);
        budget.max_degree = self.max_degree.unwrap_or(budget.max_degree);
        budget.max_s_degree = self.max_s_degree.unwrap_or(budget.max_s_degree);
        let mut bounds = AnsatzBounds::default();
        bounds.max_order = self.max_order.unwrap_or(bounds.max_order);
        bounds.max_x_degree = self.max_x_degree.unwrap_or(bounds.max_x_degree);
        bounds.max_s_degree = self.ansatz_s_degree.unwrap_or(bounds.max_s_degree);
        bounds.max_unknowns = self.max_unknowns.unwrap_or(bounds.max_unknowns);
        let resolution = match &self.resolution {
            Some(p) => Some(ResolutionData::from_json(&std::fs::read_to_string(p)?)?),
            None => None,
        };
        let cache_dir = if self.no_cache || command == Command::Suite {
            None
        } else {
            self.cache_dir.or_else(|| std::env::var_os(bsideal::io::cache::CACHE_DIR_ENV).map(PathBuf::from))
        };
        let spec = JobSpec {
            command,
            f: self.f,
            m: self.m,
            b: self.b,
            weights: self.weights,
            resolution,
            budget,
            bounds,
            box_size: self.box_size,
            output: self.output,
            use_cache: cache_dir.is_some(),
        };
        Ok((spec, cache_dir))
    }
}

fn execute(cmd: Cmd) -> Result<String, Error> {
    let (command, common) = match cmd {
        Cmd::Bfun(c) => (Command::Bfun, c),
        Cmd::Ann(c) => (Command::Ann, c),
        Cmd::Tuple(c) => (Command::Tuple, c),
        Cmd::Verify(c) => (Command::Verify, c),
        Cmd::OracleBfun(c) => (Command::OracleBfun, c),
        Cmd::ExpLocus(c) => (Command::ExpLocus, c),
        Cmd::Zeta(c) => (Command::Zeta, c),
        Cmd::Suite(c) => (Command::Suite, c),
    };
    let (spec, cache_dir) = common.into_spec(command)?;
    let text = match cache_dir {
        Some(dir) => Cache::new(dir).run(&spec)?.0,
        None => render(&run_job(&spec)?),
    };
    match &spec.output {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(text)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match execute(cli.command) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 2 } else { 1 })
        }
    }
}
