use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use super::config::{load_config, Config, ScalingInput};
use crate::cp_walk::{exact_annealed_law, exact_no_return_probability, exact_return_probability};
use crate::error::{Error, Result};
use crate::mc_harness::{expected_exponent, run_experiment, scaling_fit, ExperimentResult, ScalingFit, Statistic};
use crate::rwrs::{exact_no_return_z, exact_rwrs_law, RwrsModel};
use crate::stable_core::LatticeLaw;

#[derive(Parser, Debug)]
#[command(name = "rangewalk", version, about = "Range of oriented-lattice walks and random walks in random scenery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a Monte Carlo experiment and write CSV/JSON results.
    Run(RunArgs),
    /// Print exact small-horizon values.
    Exact {
        #[command(subcommand)]
        which: ExactCmd,
    },
    /// Fit log-log slopes of experiment means (or of given points).
    Scaling(RunArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Master seed (overrides experiment.master_seed).
    #[arg(long)]
    seed: Option<u64>,
    /// Dotted-path override, e.g. experiment.model.p=0.3.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

impl RunArgs {
    fn overrides(&self) -> Vec<String> {
        let mut o = self.set.clone();
        if let Some(s) = self.seed {
            o.push(format!("experiment.master_seed={s}"));
        }
        if let Some(dir) = &self.out {
            o.push(format!("output.dir={}", Value::String(dir.display().to_string())));
        }
        if let Some(t) = self.threads {
            o.push(format!("threads={t}"));
        }
        o
    }
}

#[derive(Subcommand, Debug)]
enum ExactCmd {
    /// Annealed law of M_n.
    CpLaw {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: usize,
    },
    /// P(M_j != 0 for 1 <= j <= L).
    CpEscape {
        #[arg(long)]
        p: f64,
        #[arg(long = "horizon", short = 'L')]
        horizon: usize,
    },
    /// P(M_n = 0).
    CpReturn {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: usize,
    },
    /// Law of Z_n.
    RwrsLaw {
        #[arg(long, default_value = "simple_symmetric")]
        walk: String,
        #[arg(long, default_value = "rademacher")]
        scenery: String,
        #[arg(long)]
        n: usize,
    },
    /// P(Z_j != 0 for 1 <= j <= L).
    RwrsEscape {
        #[arg(long, default_value = "simple_symmetric")]
        walk: String,
        #[arg(long, default_value = "rademacher")]
        scenery: String,
        #[arg(long = "horizon", short = 'L')]
        horizon: usize,
    },
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap { .. } | Error::HorizonTooLarge { .. } => 3,
        Error::Config(_)
        | Error::InvalidParameter(_)
        | Error::InvalidExperiment(_)
        | Error::InfiniteSupport(_) => 2,
        _ => 1,
    }
}

/// Entry point shared by the binary and tests.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Run(args) => cmd_run(&args, err),
        Command::Exact { which } => cmd_exact(&which, out),
        Command::Scaling(args) => cmd_scaling(&args, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "rangewalk: {e}");
            exit_code(&e)
        }
    }
}

fn parse_config<T: serde::de::DeserializeOwned>(doc: Value) -> Result<T> {
    serde_json::from_value(doc).map_err(|e| Error::Config(e.to_string()))
}

fn fmt_num(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct SummaryRow {
    n: u64,
    statistic: Statistic,
    mean: f64,
    variance: Option<f64>,
    ci_half: Option<f64>,
    trials: u64,
}

fn summary_rows(result: &ExperimentResult) -> Vec<SummaryRow> {
    result
        .rows
        .iter()
        .map(|r| {
            let s = r.stats.summary(result.confidence);
            SummaryRow {
                n: r.n,
                statistic: r.statistic,
                mean: s.mean,
                variance: s.variance,
                ci_half: s.ci_half,
                trials: s.count,
            }
        })
        .collect()
}

fn cmd_run(args: &RunArgs, err: &mut dyn Write) -> Result<()> {
    let config: Config = parse_config(load_config(&args.config, &args.overrides())?)?;
    let result = run_experiment(&config.experiment, config.threads)?;

    fs::create_dir_all(&config.output.dir)?;
    let csv_path = config.output.dir.join(&config.output.csv);
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(["n", "statistic", "mean", "ci_half", "trials"])?;
    for row in summary_rows(&result) {
        w.write_record([
            row.n.to_string(),
            row.statistic.name().to_string(),
            row.mean.to_string(),
            fmt_num(row.ci_half),
            row.trials.to_string(),
        ])?;
    }
    w.flush()?;

    let summary = json!({
        "config": config,
        "master_seed": config.experiment.master_seed,
        "confidence": result.confidence,
        "results": summary_rows(&result),
    });
    let summary_path = config.output.dir.join(&config.output.summary);
    fs::write(&summary_path, serde_json::to_string_pretty(&summary)? + "\n")?;
    writeln!(
        err,
        "rangewalk: {} trials done; wrote {} and {}",
        config.experiment.trials,
        csv_path.display(),
        summary_path.display()
    )?;
    Ok(())
}

/// Fixed-point rendering with 15 significant digits.
fn fmt_prob(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let decimals = (14 - v.abs().log10().floor() as i64).max(0) as usize;
    format!("{v:.decimals$}")
}

/// `name`, `name:param`, `pareto_tail:index:c`, or a JSON object.
fn parse_law(text: &str) -> Result<LatticeLaw> {
    let law = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("law `{text}`: {e}")))?
    } else {
        let parts: Vec<&str> = text.split(':').collect();
        let num = |i: usize| -> Result<f64> {
            parts
                .get(i)
                .ok_or_else(|| Error::Config(format!("law `{text}` is missing a parameter")))?
                .parse()
                .map_err(|_| Error::Config(format!("law `{text}` has a bad parameter")))
        };
        match parts[0] {
            "rademacher" => LatticeLaw::Rademacher,
            "simple_symmetric" | "simple" => LatticeLaw::SimpleSymmetric,
            "ternary" => LatticeLaw::Ternary { p0: num(1)? },
            "lazy_vertical" => LatticeLaw::LazyVertical { p: num(1)? },
            "pareto_tail" => LatticeLaw::ParetoTail {
                index: num(1)?,
                tail_constant: num(2)?,
            },
            other => return Err(Error::Config(format!("unknown law `{other}`"))),
        }
    };
    law.validate()?;
    Ok(law)
}

fn cmd_exact(which: &ExactCmd, out: &mut dyn Write) -> Result<()> {
    match which {
        ExactCmd::CpLaw { p, n } => {
            writeln!(out, "x\ty\tprobability")?;
            for ((x, y), w) in exact_annealed_law(*p, *n)? {
                writeln!(out, "{x}\t{y}\t{}", fmt_prob(w))?;
            }
        }
        ExactCmd::CpEscape { p, horizon } => {
            writeln!(out, "{}", fmt_prob(exact_no_return_probability(*p, *horizon)?))?;
        }
        ExactCmd::CpReturn { p, n } => {
            writeln!(out, "{}", fmt_prob(exact_return_probability(*p, *n)?))?;
        }
        ExactCmd::RwrsLaw { walk, scenery, n } => {
            let model = RwrsModel::new(parse_law(walk)?, parse_law(scenery)?)?;
            writeln!(out, "z\tprobability")?;
            for (z, w) in exact_rwrs_law(&model, *n)? {
                writeln!(out, "{z}\t{}", fmt_prob(w))?;
            }
        }
        ExactCmd::RwrsEscape { walk, scenery, horizon } => {
            let model = RwrsModel::new(parse_law(walk)?, parse_law(scenery)?)?;
            writeln!(out, "{}", fmt_prob(exact_no_return_z(&model, *horizon)?))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct FitReport {
    statistic: Option<Statistic>,
    slope: f64,
    intercept: f64,
    residual_norm: f64,
    slope_ci_half: Option<f64>,
    confidence: f64,
    expected_exponent: Option<f64>,
    points: Vec<(f64, f64)>,
}

fn fit_report(statistic: Option<Statistic>, points: Vec<(f64, f64)>, confidence: f64, expected: Option<f64>) -> Result<FitReport> {
    let fit: ScalingFit = scaling_fit(&points)?;
    Ok(FitReport {
        statistic,
        slope: fit.slope,
        intercept: fit.intercept,
        residual_norm: fit.residual_norm,
        slope_ci_half: fit.slope_ci_half(confidence),
        confidence,
        expected_exponent: expected,
        points,
    })
}

fn cmd_scaling(args: &RunArgs, out: &mut dyn Write) -> Result<()> {
    let input: ScalingInput = parse_config(load_config(&args.config, &args.overrides())?)?;
    let report = match input {
        ScalingInput::Points {
            points,
            expected_exponent,
        } => json!({ "fits": [fit_report(None, points, 0.99, expected_exponent)?] }),
        ScalingInput::Experiment(config) => {
            let spec = &config.experiment;
            let result = run_experiment(spec, config.threads)?;
            let fits = spec
                .outputs
                .iter()
                .map(|&s| {
                    let points = result
                        .series(s)
                        .into_iter()
                        .map(|(n, summary)| (n as f64, summary.mean))
                        .collect();
                    fit_report(Some(s), points, spec.confidence, expected_exponent(&spec.model, s))
                })
                .collect::<Result<Vec<_>>>()?;
            json!({ "config": config, "master_seed": spec.master_seed, "fits": fits })
        }
    };
    let text = serde_json::to_string_pretty(&report)? + "\n";
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("scaling.json"), &text)?;
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}
