//! `prhr`: proportional reversed hazards tests, simulations and diagnostics.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use prhr::samples::write_loglog_csv;
use prhr::sim::{run, DEFAULT_ALPHAS, DEFAULT_REPS};
use prhr::{
    parse_two_samples, run_test, Alternative, ColumnSpec, ElRule, Sample, Scenario, SimConfig,
    SimTable, TestOptions,
};

#[derive(Parser)]
#[command(
    name = "prhr",
    version,
    about = "Two-sample tests of the proportional reversed hazards model"
)]
struct Cli {
    /// Seed for the simulation streams.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the normal, JEL and AJEL tests on a two-sample CSV; prints JSON.
    Test(TestArgs),
    /// Monte Carlo rejection rates over a parameter and size grid; prints TSV.
    Simulate(SimulateArgs),
    /// log(-log ECDF) plot data for both groups; prints CSV.
    Loglog(InputArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input CSV with a header row; `-` or absent reads stdin.
    #[arg(value_name = "FILE")]
    input: Option<PathBuf>,
    /// Column holding the baseline sample X.
    #[arg(long, requires = "y_col", conflicts_with_all = ["group_col", "value_col", "baseline"])]
    x_col: Option<String>,
    /// Column holding the comparison sample Y.
    #[arg(long, requires = "x_col")]
    y_col: Option<String>,
    /// Column holding group labels (long layout).
    #[arg(long, requires_all = ["value_col", "baseline"])]
    group_col: Option<String>,
    /// Column holding the observations (long layout).
    #[arg(long, requires = "group_col")]
    value_col: Option<String>,
    /// Group label of the baseline sample X (long layout).
    #[arg(long, requires = "group_col")]
    baseline: Option<String>,
}

#[derive(Args)]
struct TestArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = AlternativeArg::Increasing)]
    alternative: AlternativeArg,
    /// Significance level for the reported decisions.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Fixed resilience parameter for the normal test (estimated by default).
    #[arg(long)]
    theta: Option<f64>,
    /// Decision rule for JEL and AJEL.
    #[arg(long, value_enum, default_value_t = ElRuleArg::SignGated)]
    el_rule: ElRuleArg,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    scenario: ScenarioArg,
    /// GED resilience values for `null-ged`.
    #[arg(long, value_delimiter = ',')]
    theta: Vec<f64>,
    /// Baseline Fréchet shapes for `frechet`.
    #[arg(long, value_delimiter = ',')]
    alpha2: Vec<f64>,
    /// Gumbel scales for `gumbel`.
    #[arg(long, value_delimiter = ',')]
    gamma: Vec<f64>,
    /// Baseline sample sizes, paired with `--n` by position.
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    /// Comparison sample sizes, paired with `--m` by position.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_REPS)]
    reps: usize,
    /// Significance levels to tabulate.
    #[arg(long, value_delimiter = ',')]
    alphas: Vec<f64>,
    /// Decision rule for JEL and AJEL.
    #[arg(long, value_enum, default_value_t = ElRuleArg::ChiSquare)]
    el_rule: ElRuleArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlternativeArg {
    Increasing,
    Decreasing,
}

impl From<AlternativeArg> for Alternative {
    fn from(a: AlternativeArg) -> Self {
        match a {
            AlternativeArg::Increasing => Alternative::Increasing,
            AlternativeArg::Decreasing => Alternative::Decreasing,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ElRuleArg {
    SignGated,
    ChiSquare,
}

impl From<ElRuleArg> for ElRule {
    fn from(r: ElRuleArg) -> Self {
        match r {
            ElRuleArg::SignGated => ElRule::SignGated,
            ElRuleArg::ChiSquare => ElRule::ChiSquare,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    NullGed,
    Frechet,
    Gumbel,
}

impl InputArgs {
    fn column_spec(&self) -> Result<ColumnSpec> {
        match (&self.x_col, &self.y_col, &self.group_col, &self.value_col, &self.baseline) {
            (Some(x), Some(y), None, None, None) => Ok(ColumnSpec::TwoColumns {
                x: x.clone(),
                y: y.clone(),
            }),
            (None, None, Some(group), Some(value), Some(baseline)) => Ok(ColumnSpec::Grouped {
                group: group.clone(),
                value: value.clone(),
                baseline: baseline.clone(),
            }),
            _ => bail!(
                "select columns with --x-col and --y-col, or --group-col, --value-col and --baseline"
            ),
        }
    }

    fn read(&self) -> Result<(Sample, Sample)> {
        let spec = self.column_spec()?;
        let source: Box<dyn Read> = match &self.input {
            Some(path) if path.as_os_str() != "-" => Box::new(
                File::open(path).with_context(|| format!("cannot open {}", path.display()))?,
            ),
            _ => Box::new(io::stdin().lock()),
        };
        let (x, y) = parse_two_samples(source, &spec)?;
        for s in [&x, &y] {
            let k = s.negative_count();
            if k > 0 {
                eprintln!(
                    "warning: group {:?} has {k} negative observation(s); the model is usually applied to lifetimes",
                    s.label()
                );
            }
        }
        Ok((x, y))
    }
}

fn cmd_test(args: &TestArgs, out: &mut dyn Write) -> Result<()> {
    let (x, y) = args.input.read()?;
    let opts = TestOptions {
        alternative: args.alternative.into(),
        alpha: args.alpha,
        theta: args.theta,
        el_rule: args.el_rule.into(),
    };
    let report = run_test(&x, &y, &opts)?;
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_simulate(args: &SimulateArgs, seed: u64, out: &mut dyn Write) -> Result<()> {
    let (params, make, flag): (&[f64], fn(f64) -> Scenario, &str) = match args.scenario {
        ScenarioArg::NullGed => (&args.theta, Scenario::null_ged, "--theta"),
        ScenarioArg::Frechet => (&args.alpha2, Scenario::frechet, "--alpha2"),
        ScenarioArg::Gumbel => (&args.gamma, Scenario::gumbel, "--gamma"),
    };
    if params.is_empty() {
        bail!("this scenario needs at least one value for {flag}");
    }
    if args.m.len() != args.n.len() {
        bail!(
            "--m and --n must list the same number of sizes ({} vs {})",
            args.m.len(),
            args.n.len()
        );
    }
    let alphas = if args.alphas.is_empty() {
        DEFAULT_ALPHAS.to_vec()
    } else {
        args.alphas.clone()
    };

    // Validate the whole grid before spending time on any cell.
    let mut configs = Vec::new();
    for &param in params {
        for (&m, &n) in args.m.iter().zip(&args.n) {
            let config = SimConfig {
                alphas: alphas.clone(),
                el_rule: args.el_rule.into(),
                ..SimConfig::new(make(param), m, n, args.reps, seed)
            };
            config.validate()?;
            configs.push(config);
        }
    }
    let mut table = SimTable::default();
    for config in &configs {
        table.extend(run(config)?);
    }
    table.write_tsv(out)?;
    Ok(())
}

fn cmd_loglog(args: &InputArgs, out: &mut dyn Write) -> Result<()> {
    let (x, y) = args.read()?;
    write_loglog_csv(&[x.loglog_series(), y.loglog_series()], out)?;
    Ok(())
}

fn execute(cli: &Cli) -> Result<()> {
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match &cli.command {
        Command::Test(args) => cmd_test(args, &mut out)?,
        Command::Simulate(args) => cmd_simulate(args, cli.seed, &mut out)?,
        Command::Loglog(args) => cmd_loglog(args, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let numerical = err
                .downcast_ref::<prhr::Error>()
                .is_some_and(prhr::Error::is_numerical);
            ExitCode::from(if numerical { 3 } else { 2 })
        }
    }
}
