use clap::{Args, Parser, Subcommand, ValueEnum};
use qpv::cli::{is_usage_error, run_build, run_info, run_verify, CaseSpec, Suite};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qpv", version, about = "Quantum polynomial algebras and de Rham complexes of commutative parabolic type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print root data, the 𝔭⁻ roots, (H0,H0) and the W^S length profile.
    Info(CaseArgs),
    /// Write the presentation bundle as JSON.
    Build {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Run verification suites and emit a JSON report.
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Also write the report to this path.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Args)]
struct CaseArgs {
    #[arg(short = 't', long = "type")]
    series: char,
    #[arg(short, long)]
    rank: usize,
    #[arg(short = 'n', long = "node")]
    node: usize,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    max_degree: u32,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    samples: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quadratic,
    Calculus,
    Bgg,
    All,
}

impl CaseArgs {
    fn spec(&self) -> CaseSpec {
        CaseSpec {
            series: self.series.to_ascii_uppercase(),
            rank: self.rank,
            l0: self.node,
            max_total_degree: self.max_degree as usize,
            mode: match self.mode {
                ModeArg::Exact => "exact".into(),
                ModeArg::Sampled => "sampled".into(),
            },
            sample_count: self.samples as usize,
            seed: self.seed,
        }
    }
}

fn fail(e: qpv::error::QpvError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Info(args) => match run_info(&args.spec()) {
            Ok(s) => {
                print!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Build { case, out } => {
            let spec = case.spec();
            if let Err(e) = spec.validate() {
                return fail(e);
            }
            match run_build(&spec, &out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
        Command::Verify { case, suite, out } => {
            let name = match suite {
                SuiteArg::Quadratic => "quadratic",
                SuiteArg::Calculus => "calculus",
                SuiteArg::Bgg => "bgg",
                SuiteArg::All => "all",
            };
            let suites = Suite::parse(name).expect("known suite");
            match run_verify(&case.spec(), &suites) {
                Ok(report) => {
                    let json = report.to_json();
                    println!("{json}");
                    if let Some(path) = out {
                        if let Err(e) = std::fs::write(&path, &json) {
                            eprintln!("error: {}: {e}", path.display());
                            return ExitCode::from(1);
                        }
                    }
                    if report.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail(e),
            }
        }
    }
}
