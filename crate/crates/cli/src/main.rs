//! `qcat`: coefficient tables, moments, normality diagnostics and shape scans
//! for q-Catalan polynomials, as CSV or JSON.

mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcatalan::GecoParams;

use commands::{GeneralArgs, GeneralSource, NormalityArgs};
use output::{Envelope, Format};

const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "qcat", version, about = "Exact q-Catalan coefficient and distribution tools")]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Family name: catalan, catalan2 or mcatalan.
    #[arg(long, default_value = "catalan")]
    family: String,

    /// Parameter m of the mcatalan family.
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Args, Debug)]
struct RangeArgs {
    /// Single size (same as --from N --to N).
    #[arg(long, conflicts_with_all = ["from", "to"])]
    n: Option<u32>,

    #[arg(long, requires = "to")]
    from: Option<u32>,

    #[arg(long, requires = "from")]
    to: Option<u32>,
}

impl RangeArgs {
    fn bounds(&self) -> Result<(u32, u32), String> {
        let (from, to) = match (self.n, self.from, self.to) {
            (Some(n), _, _) => (n, n),
            (None, Some(a), Some(b)) => (a, b),
            _ => return Err("give --n N or --from A --to B".into()),
        };
        if from > to {
            return Err(format!("empty range {from}..{to}"));
        }
        Ok((from, to))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of the family polynomial at one size.
    Coeffs {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: u32,
    },
    /// Exact mean and variance against the closed forms.
    Moments {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// KS distance, exact vs normal MGF, series terms and density rows.
    Normality {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: u32,
        /// Largest |t| on the MGF grid.
        #[arg(long, default_value_t = 2.0)]
        t_max: f64,
        /// Spacing of the MGF grid.
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        /// Number of series terms.
        #[arg(long, short = 'k', default_value_t = qcatalan::limitlaw::DEFAULT_TRUNCATION)]
        k: usize,
        /// Omit the standardized density rows.
        #[arg(long)]
        no_density: bool,
    },
    /// Interior unimodality and log-concavity scan.
    Shape {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Quotient of q-number products from explicit exponents or a preset.
    General {
        /// Numerator exponents, comma separated.
        #[arg(long, value_delimiter = ',', requires = "b", conflicts_with = "preset")]
        a: Option<Vec<u32>>,
        /// Denominator exponents, comma separated.
        #[arg(long, value_delimiter = ',', requires = "a")]
        b: Option<Vec<u32>>,
        /// Named preset: catalan, catalan2 or mcatalan.
        #[arg(long, requires = "n")]
        preset: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        /// Largest k in the ratio checks.
        #[arg(long, default_value_t = 10)]
        k_max: u32,
        #[arg(long, requires_all = ["beta", "gamma"])]
        alpha: Option<f64>,
        #[arg(long, requires = "alpha", allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, requires = "alpha", allow_hyphen_values = true)]
        gamma: Option<f64>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<qcatalan::Error> for Failure {
    fn from(e: qcatalan::Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn family(args: &FamilyArgs) -> Result<Box<dyn qcatalan::Family>, Failure> {
    Ok(commands::family(&args.family, args.m)?)
}

fn run(command: Command) -> Result<Envelope, Failure> {
    let env = match command {
        Command::Coeffs { family: f, n } => commands::coeffs(family(&f)?.as_ref(), n)?,
        Command::Moments { family: f, range } => {
            let (from, to) = range.bounds().map_err(Failure::Usage)?;
            commands::moments(family(&f)?.as_ref(), from, to)?
        }
        Command::Normality {
            family: f,
            n,
            t_max,
            step,
            k,
            no_density,
        } => {
            let args = NormalityArgs {
                n,
                t_max,
                step,
                truncation: k,
                density: !no_density,
            };
            commands::normality(family(&f)?.as_ref(), &args)?
        }
        Command::Shape { family: f, range } => {
            let (from, to) = range.bounds().map_err(Failure::Usage)?;
            commands::shape(family(&f)?.as_ref(), from, to)?
        }
        Command::General {
            a,
            b,
            preset,
            n,
            m,
            k_max,
            alpha,
            beta,
            gamma,
        } => {
            let source = match (a, b, preset, n) {
                (Some(a), Some(b), None, _) => GeneralSource::Custom { a, b },
                (None, None, Some(name), Some(n)) => GeneralSource::Preset { name, n, m },
                _ => return Err(Failure::Usage("give --a and --b, or --preset and --n".into())),
            };
            let params = match (alpha, beta, gamma) {
                (Some(a), Some(b), Some(g)) => Some(GecoParams::new(a, b, g)?),
                _ => None,
            };
            commands::general(&GeneralArgs {
                source,
                k_max,
                params,
            })?
        }
    };
    Ok(env)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("QCAT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("QCAT_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli.command));
    match result {
        Ok(env) => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            match env.write(cli.format, &mut lock).and_then(|()| lock.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("qcat: write failed: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("qcat: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("qcat: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
