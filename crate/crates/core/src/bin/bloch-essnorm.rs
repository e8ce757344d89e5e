use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bloch_essnorm::bloch::{little_bloch_profile, seminorm};
use bloch_essnorm::config::{Estimator, ExperimentConfig, Format};
use bloch_essnorm::essnorm::{default_levels, EssNormOptions};
use bloch_essnorm::experiment::{cross_check, default_suite, run_experiment, verify_lemma1};
use bloch_essnorm::grammar::parse_function;
use bloch_essnorm::report::{Report, ReportRow};
use bloch_essnorm::{AlphaWeight, Error, Result, SamplingScheme, SymbolSpec};

/// Harmonic Bloch norms and essential norms of composition operators.
#[derive(Parser)]
#[command(name = "bloch-essnorm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: Output,
    #[command(flatten)]
    sampling: Sampling,
}

#[derive(Args)]
struct Output {
    /// Report format.
    #[arg(long, global = true, default_value = "csv", value_parser = parse_format)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Sampling {
    /// Number of dyadic shells sampled.
    #[arg(long, global = true, default_value_t = 40)]
    radial_levels: u32,
    /// Angles on the first shell.
    #[arg(long, global = true, default_value_t = 64)]
    angular_base: usize,
    #[arg(long, global = true, default_value_t = 3)]
    refinement_rounds: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

impl Sampling {
    fn scheme(&self) -> SamplingScheme {
        SamplingScheme {
            radial_levels: self.radial_levels,
            angular_base: self.angular_base,
            refinement_rounds: self.refinement_rounds,
            seed: self.seed,
            ..SamplingScheme::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Bloch norm and seminorm of a harmonic function.
    Norm {
        function: String,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },
    /// E1, E2 and E3 estimates of the essential norm.
    Essnorm {
        symbol: String,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', default_value = "E1,E2,E3")]
        estimators: Vec<String>,
        #[arg(long = "ladder-N", alias = "ladder-n", default_value_t = 2048)]
        ladder_n: u32,
    },
    /// Boundedness indicators of the composition operator.
    Bounded {
        symbol: String,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long = "ladder-N", alias = "ladder-n", default_value_t = 2048)]
        ladder_n: u32,
    },
    /// Checks the radial profile closed forms against a numerical oracle.
    VerifyLemma1 {
        #[arg(long, default_value_t = 200)]
        n_max: u64,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,3")]
        alphas: Vec<f64>,
    },
    /// Runs the estimator agreement suite.
    CrossCheck {
        #[arg(long, default_value = "default")]
        suite: String,
        #[arg(long = "ladder-N", alias = "ladder-n", default_value_t = 2048)]
        ladder_n: u32,
    },
    /// Lower bound, E1 and approximation upper bound for one symbol.
    Sandwich {
        symbol: String,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 16)]
        n: u32,
        #[arg(long = "ladder-N", alias = "ladder-n", default_value_t = 2048)]
        ladder_n: u32,
    },
    /// Runs an experiment described by a config file.
    Run { config: PathBuf },
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Outcome {
    Done,
    ChecksFailed,
}

fn experiment(symbol: &str, alpha: f64, estimators: Vec<Estimator>, ladder_n: u32, scheme: SamplingScheme) -> Result<ExperimentConfig> {
    Ok(ExperimentConfig {
        symbols: vec![symbol.parse::<SymbolSpec>()?],
        alphas: vec![alpha],
        estimators,
        scheme,
        ladder_n,
        ..ExperimentConfig::default()
    })
}

fn norm_report(text: &str, alpha: f64, scheme: &SamplingScheme) -> Result<Report> {
    let f = parse_function(text)?;
    let w = AlphaWeight::new(alpha)?;
    let semi = seminorm(&f, w, scheme)?;
    let lb = little_bloch_profile(&f, w, scheme.radial_levels.clamp(3, 52))?;
    let id = text.trim().to_string();
    let mut r = Report::new(vec![
        ("function".into(), id.clone()),
        ("radial_levels".into(), scheme.radial_levels.to_string()),
        ("angular_base".into(), scheme.angular_base.to_string()),
    ]);
    let f0 = f.value_at_origin().norm();
    r.push(ReportRow::new(&id, alpha, "norm", 0.0, f0 + semi.value, &[]))?;
    r.push(ReportRow::new(&id, alpha, "seminorm", semi.witness.modulus(), semi.value, &[]))?;
    for m in &semi.shell_profile {
        r.push(ReportRow::new(&id, alpha, "seminorm/trace", m.radius, m.value, &[]))?;
    }
    let verdict = if lb.verdict { "little-bloch" } else { "not-little-bloch" };
    let last = lb.shell_maxima.last().copied().unwrap_or((0.0, 0.0));
    r.push(ReportRow::new(&id, alpha, "little_bloch", last.0, last.1, &[verdict]))?;
    Ok(r)
}

fn execute(cli: &Cli) -> Result<(Report, Outcome)> {
    let scheme = cli.sampling.scheme();
    scheme.validate()?;
    match &cli.command {
        Command::Norm { function, alpha } => Ok((norm_report(function, *alpha, &scheme)?, Outcome::Done)),
        Command::Essnorm { symbol, alpha, estimators, ladder_n } => {
            let est = estimators.iter().map(|s| s.parse()).collect::<Result<Vec<Estimator>>>()?;
            let cfg = experiment(symbol, *alpha, est, *ladder_n, scheme)?;
            Ok((run_experiment(&cfg)?, Outcome::Done))
        }
        Command::Bounded { symbol, alpha, ladder_n } => {
            let est = vec![Estimator::BoundedSup, Estimator::PowerBoundedness];
            let cfg = experiment(symbol, *alpha, est, *ladder_n, scheme)?;
            Ok((run_experiment(&cfg)?, Outcome::Done))
        }
        Command::Sandwich { symbol, alpha, n, ladder_n } => {
            let mut cfg = experiment(symbol, *alpha, vec![Estimator::Sandwich], *ladder_n, scheme)?;
            cfg.approximant_n = *n;
            Ok((run_experiment(&cfg)?, Outcome::Done))
        }
        Command::VerifyLemma1 { n_max, alphas } => {
            let t = verify_lemma1(*n_max, alphas)?;
            let outcome = if t.pass { Outcome::Done } else { Outcome::ChecksFailed };
            Ok((t.report()?, outcome))
        }
        Command::CrossCheck { suite, ladder_n } => {
            if suite != "default" {
                return Err(Error::Config { line: 0, message: format!("unknown suite '{suite}'") });
            }
            let opts = EssNormOptions { scheme, s_levels: default_levels(20), boundary_shells: 40, ladder_n: *ladder_n };
            let c = cross_check(&default_suite(), &opts)?;
            let outcome = if c.pass { Outcome::Done } else { Outcome::ChecksFailed };
            Ok((c.report(&opts)?, outcome))
        }
        Command::Run { config } => {
            let text = std::fs::read_to_string(config)?;
            let cfg = ExperimentConfig::parse(&text)?;
            let report = run_experiment(&cfg)?;
            report.write(cfg.format, cfg.output_path.as_deref())?;
            Ok((report, Outcome::Done))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|(report, outcome)| {
        if !matches!(cli.command, Command::Run { .. }) {
            report.write(cli.out.format, cli.out.output.as_deref())?;
        }
        Ok(outcome)
    });
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => {
            eprintln!("bloch-essnorm: acceptance checks failed");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("bloch-essnorm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
