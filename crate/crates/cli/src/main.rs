use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nahilb_cli::{run, ClassSpec, CliError, Command, Config, Flags, JobSpec, MAX_POINTS_ENV};
use nahilb_localization::{Method, Space};

/// Equivariant integrals over nested Hilbert schemes of points.
#[derive(Parser)]
#[command(name = "nahilb", version)]
struct Cli {
    /// JSON file with defaults for n, dims and the size guards.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// List the torus-fixed nested partitions.
    Enumerate(Common),
    /// Admissibility, nil-fil and Porteous flags for every fixed point.
    Classify(Common),
    /// The localization contribution of every fixed point.
    Contribution(Common),
    /// Integrate a tautological class.
    Integrate(Common),
    /// Integrate with two methods and compare the answers.
    Compare(Common),
    /// Run the acceptance checks.
    Verify {
        /// Criteria to run, e.g. `--criteria 1,2,5`; all when omitted.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u32>,
    },
    /// Run a JSON job specification read from a file, or from stdin with `-`.
    Job { file: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Nhilb,
    Nilfil,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Localization,
    Residue,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: Option<usize>,
    /// Layer sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "nhilb")]
    space: SpaceArg,
    #[arg(long, value_enum, default_value = "localization")]
    method: MethodArg,
    /// Class in the text syntax, for example `c2^dual^3`.
    #[arg(long, default_value = "1")]
    class: String,
    /// Rank of the auxiliary bundle.
    #[arg(long, default_value_t = 0)]
    q: usize,
    /// Restrict to the Calabi-Yau torus.
    #[arg(long)]
    cy: bool,
    /// Also print the value as an expanded polynomial when it is one.
    #[arg(long)]
    expand: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample points for the fallback comparison.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Attach classification flags to enumerated chains.
    #[arg(long)]
    classify: bool,
}

impl Common {
    fn into_job(self, command: Command) -> JobSpec {
        JobSpec {
            command,
            n: self.n,
            dims: self.dims,
            space: match self.space {
                SpaceArg::Nhilb => Space::Nhilb,
                SpaceArg::Nilfil => Space::Nilfil,
            },
            method: match self.method {
                MethodArg::Localization => Method::Localization,
                MethodArg::Residue => Method::Residue,
            },
            class: ClassSpec::Text(self.class),
            q: self.q,
            flags: Flags {
                cy: self.cy,
                expand: self.expand,
                seed: self.seed,
                classify: self.classify,
                samples: self.samples,
                criteria: Vec::new(),
            },
        }
    }
}

fn read_job(file: &str) -> Result<JobSpec, CliError> {
    let text = if file == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(file)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn execute(cli: Cli) -> Result<(serde_json::Value, i32), CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let env = std::env::var(MAX_POINTS_ENV).ok();
    let limits = config.limits(env.as_deref())?;
    let job = match cli.command {
        Sub::Enumerate(c) => c.into_job(Command::Enumerate),
        Sub::Classify(c) => c.into_job(Command::Classify),
        Sub::Contribution(c) => c.into_job(Command::Contribution),
        Sub::Integrate(c) => c.into_job(Command::Integrate),
        Sub::Compare(c) => c.into_job(Command::Compare),
        Sub::Verify { criteria } => {
            let mut job = JobSpec::new(Command::Verify);
            job.flags.criteria = criteria;
            job
        }
        Sub::Job { file } => read_job(&file)?,
    };
    let outcome = run(&job, &config, &limits)?;
    Ok((outcome.document, outcome.exit_code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (document, code) = match execute(cli) {
        Ok(done) => done,
        Err(e) => (serde_json::json!({ "error": e.to_string() }), 1),
    };
    println!("{}", serde_json::to_string_pretty(&document).expect("JSON values always serialize"));
    ExitCode::from(code as u8)
}
