//! The `cro` command line: experiments, benchmark catalogue and distribution
//! audit tables.
//!
//! Exit codes are 0 on success, 1 on runtime failure and 2 on usage or
//! configuration errors. Parameter flags mirror the configuration keys and win
//! over a `--config` file, which in turn wins over the category preset.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Args, Parser, Subcommand};

use crate::benchmarks::{parse_function_list, suite, FunctionId};
use crate::config::ConfigFile;
use crate::error::{Error, Result};
use crate::experiment::{
    category_average_ranks, default_parallelism, export_category_ranks, export_summary,
    parse_variant, parse_variant_list, run_plan, summarize, variant_tag, write_category_ranks,
    write_summary, ExperimentPlan,
};
use crate::perturbation::{self, sample, Distribution, PerturbationSpec};
use crate::rng::RandomSource;

const DEFAULT_RUNS: u32 = 100;
const DEFAULT_SEED: u64 = 0;
const DEFAULT_OUT_DIR: &str = "results";

#[derive(Debug, Parser)]
#[command(
    name = "cro",
    version,
    about = "Real-coded chemical reaction optimisation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Repeated runs of one variant on one function.
    Run(RunArgs),
    /// Every requested variant on every requested function, resumable.
    Suite(SuiteArgs),
    /// Draw perturbation factors, one per line.
    Sample(SampleArgs),
    /// Tabulate a density as `x,density` CSV.
    Pdf(PdfArgs),
    /// Benchmark suite queries.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Print the suite catalogue as CSV.
    List,
}

/// Flags shared by `run` and `suite`. Values are kept as text and parsed by
/// the configuration reader so both sources obey the same rules.
#[derive(Debug, Args)]
struct ExperimentArgs {
    /// `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    runs: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    pop_size: Option<String>,
    #[arg(long)]
    step_size: Option<String>,
    #[arg(long)]
    en_buff: Option<String>,
    #[arg(long)]
    ini_ke: Option<String>,
    #[arg(long)]
    coll_rate: Option<String>,
    #[arg(long)]
    loss_rate: Option<String>,
    #[arg(long)]
    dec_thres: Option<String>,
    #[arg(long)]
    syn_thres: Option<String>,
    #[arg(long)]
    fe_limit: Option<String>,
    /// Worker threads; defaults to the number of available cores.
    #[arg(long)]
    parallelism: Option<String>,
    /// Destination directory for CSV output [default: results].
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Write 0 for wall_ms so repeated runs produce identical files.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Target function, e.g. f1.
    #[arg(long)]
    function: Option<String>,
    /// gaussian, cauchy, exponential or rayleigh-modified (or a CRO_X tag).
    #[arg(long)]
    distribution: Option<String>,
    #[command(flatten)]
    common: ExperimentArgs,
}

#[derive(Debug, Args)]
struct SuiteArgs {
    /// Function selection such as `f1..f7`, `f1,f9` or `all` [default: all].
    #[arg(long)]
    functions: Option<String>,
    /// Comma-separated distributions or `all` [default: all].
    #[arg(long)]
    distributions: Option<String>,
    #[command(flatten)]
    common: ExperimentArgs,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    distribution: String,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PdfArgs {
    /// gaussian, cauchy, exponential, rayleigh or rayleigh-modified.
    #[arg(long)]
    distribution: String,
    /// Gaussian mean.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    /// Gaussian, Rayleigh and modified Rayleigh variance parameter.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    sigma2: f64,
    /// Cauchy location.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x0: f64,
    /// Cauchy scale, or exponential rate.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    to: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 1001)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = stdout.write_all(text.as_bytes());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        2
                    } else {
                        0
                    }
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(a, stdout, stderr),
        Command::Suite(a) => cmd_suite(a, stdout, stderr),
        Command::Sample(a) => cmd_sample(a, stdout),
        Command::Pdf(a) => cmd_pdf(a, stdout),
        Command::Bench(BenchCommand::List) => cmd_bench_list(stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

/// Flags over config file.
fn resolve(common: &ExperimentArgs, selection: [(&str, Option<&String>); 2]) -> Result<ConfigFile> {
    let file = match &common.config {
        Some(path) => ConfigFile::load(path).map_err(|e| match e {
            Error::Io { .. } => Error::Config(e.to_string()),
            other => other,
        })?,
        None => ConfigFile::default(),
    };
    let mut flags = ConfigFile::default();
    let pairs = [
        ("runs", &common.runs),
        ("seed", &common.seed),
        ("pop_size", &common.pop_size),
        ("step_size", &common.step_size),
        ("en_buff", &common.en_buff),
        ("ini_ke", &common.ini_ke),
        ("coll_rate", &common.coll_rate),
        ("loss_rate", &common.loss_rate),
        ("dec_thres", &common.dec_thres),
        ("syn_thres", &common.syn_thres),
        ("fe_limit", &common.fe_limit),
        ("parallelism", &common.parallelism),
    ];
    for (key, value) in pairs {
        if let Some(v) = value {
            flags
                .set(key, v)
                .map_err(|e| Error::Argument(format!("--{}: {e}", key.replace('_', "-"))))?;
        }
    }
    for (key, value) in selection {
        if let Some(v) = value {
            flags.set(key, v)?;
        }
    }
    flags.out_dir = common.out_dir.clone();
    Ok(flags.over(file))
}

fn plan_from(
    cfg: &ConfigFile,
    variants: Vec<Distribution>,
    functions: Vec<FunctionId>,
    record_timing: bool,
) -> ExperimentPlan {
    let mut plan = ExperimentPlan::new(
        variants,
        functions,
        cfg.runs.unwrap_or(DEFAULT_RUNS),
        cfg.seed.unwrap_or(DEFAULT_SEED),
    );
    plan.overrides = cfg.params.clone();
    plan.parallelism = cfg.parallelism.unwrap_or_else(default_parallelism);
    plan.record_timing = record_timing;
    plan
}

fn out_dir(cfg: &ConfigFile) -> Result<PathBuf> {
    let dir = cfg
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    Ok(dir)
}

fn cmd_run(a: RunArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let cfg = resolve(
        &a.common,
        [
            ("function", a.function.as_ref()),
            ("distribution", a.distribution.as_ref()),
        ],
    )?;
    let function: FunctionId = cfg
        .function
        .as_deref()
        .ok_or_else(|| Error::Argument("no function given (--function or config key)".into()))?
        .parse()?;
    let variant = parse_variant(cfg.distribution.as_deref().ok_or_else(|| {
        Error::Argument("no distribution given (--distribution or config key)".into())
    })?)?;
    let plan = plan_from(&cfg, vec![variant], vec![function], !a.common.no_timing);
    plan.validate()?;
    let dir = out_dir(&cfg)?;
    let tag = variant_tag(variant);
    let runs_path = dir.join(format!("run_{function}_{tag}.csv"));
    let summary_path = dir.join(format!("summary_{function}_{tag}.csv"));

    let records = run_plan(&plan, Some(&runs_path))?;
    let rows = summarize(&records, &plan.scope())?;
    export_summary(&summary_path, &rows)?;
    write_summary(&mut *stdout, &rows).map_err(|e| Error::csv("<stdout>", e))?;
    let _ = writeln!(
        stderr,
        "wrote {} and {}",
        runs_path.display(),
        summary_path.display()
    );
    Ok(())
}

fn cmd_suite(a: SuiteArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let cfg = resolve(
        &a.common,
        [
            ("function", a.functions.as_ref()),
            ("distribution", a.distributions.as_ref()),
        ],
    )?;
    let functions = match cfg.function.as_deref() {
        Some(s) => parse_function_list(s)?,
        None => FunctionId::all().collect(),
    };
    let variants = match cfg.distribution.as_deref() {
        Some(s) => parse_variant_list(s)?,
        None => Distribution::ALL.to_vec(),
    };
    let plan = plan_from(&cfg, variants, functions, !a.common.no_timing);
    plan.validate()?;
    let dir = out_dir(&cfg)?;
    let runs_path = dir.join("runs.csv");
    let summary_path = dir.join("summary.csv");
    let ranks_path = dir.join("category_ranks.csv");

    let records = run_plan(&plan, Some(&runs_path))?;
    let rows = summarize(&records, &plan.scope())?;
    let ranks = category_average_ranks(&rows);
    export_summary(&summary_path, &rows)?;
    export_category_ranks(&ranks_path, &ranks)?;
    write_category_ranks(&mut *stdout, &ranks).map_err(|e| Error::csv("<stdout>", e))?;
    let _ = writeln!(
        stderr,
        "wrote {} records to {}; summaries in {} and {}",
        records.len(),
        runs_path.display(),
        summary_path.display(),
        ranks_path.display()
    );
    Ok(())
}

/// Standard output or a freshly created file.
fn sink<'a>(out: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Error::io(path, e))?,
        )),
        None => Box::new(BufWriter::new(stdout)),
    })
}

fn io_target(out: &Option<PathBuf>) -> &Path {
    out.as_deref().unwrap_or(Path::new("<stdout>"))
}

fn cmd_sample(a: SampleArgs, stdout: &mut dyn Write) -> Result<()> {
    if a.n == 0 {
        return Err(Error::Argument("--n must be at least 1".into()));
    }
    let kind: Distribution = a.distribution.parse()?;
    let spec = PerturbationSpec::new(kind, a.scale)?;
    let mut rng = RandomSource::new(a.seed);
    let target = io_target(&a.out).to_path_buf();
    let mut w = sink(&a.out, stdout)?;
    let mut emit = |w: &mut dyn Write| -> io::Result<()> {
        for _ in 0..a.n {
            writeln!(w, "{}", sample(&spec, &mut rng))?;
        }
        w.flush()
    };
    emit(&mut *w).map_err(|e| Error::io(target, e))
}

type Density = Box<dyn Fn(f64) -> Result<f64>>;

fn density(a: &PdfArgs) -> Result<Density> {
    let (mu, sigma2, x0, gamma) = (a.mu, a.sigma2, a.x0, a.gamma);
    Ok(match a.distribution.trim().to_ascii_lowercase().as_str() {
        "gaussian" | "normal" => Box::new(move |x| perturbation::pdf_gaussian(x, mu, sigma2)),
        "cauchy" => Box::new(move |x| perturbation::pdf_cauchy(x, x0, gamma)),
        "exponential" | "exponential-mirrored" => {
            Box::new(move |x| perturbation::pdf_exponential_mirrored(x, gamma))
        }
        "rayleigh" => Box::new(move |x| perturbation::pdf_rayleigh(x, sigma2)),
        "rayleigh-modified" | "modified-rayleigh" => {
            Box::new(move |x| perturbation::pdf_modified_rayleigh(x, sigma2))
        }
        other => return Err(Error::Argument(format!("unknown distribution: {other}"))),
    })
}

fn cmd_pdf(a: PdfArgs, stdout: &mut dyn Write) -> Result<()> {
    if a.steps < 2 {
        return Err(Error::Argument("--steps must be at least 2".into()));
    }
    if !(a.from.is_finite() && a.to.is_finite() && a.from < a.to) {
        return Err(Error::Argument(
            "--from must be finite and below --to".into(),
        ));
    }
    let f = density(&a)?;
    // validates the parameters before anything is written
    f(a.from)?;
    let h = (a.to - a.from) / (a.steps - 1) as f64;
    let target = io_target(&a.out).to_path_buf();
    let mut w = sink(&a.out, stdout)?;
    let mut emit = || -> Result<()> {
        writeln!(w, "x,density").map_err(|e| Error::io(&target, e))?;
        for i in 0..a.steps {
            let x = if i + 1 == a.steps {
                a.to
            } else {
                a.from + i as f64 * h
            };
            writeln!(w, "{},{}", x, f(x)?).map_err(|e| Error::io(&target, e))?;
        }
        w.flush().map_err(|e| Error::io(&target, e))
    };
    emit()
}

fn join_bounds(v: &[f64]) -> String {
    if v.iter().all(|b| *b == v[0]) {
        v[0].to_string()
    } else {
        v.iter().map(f64::to_string).collect::<Vec<_>>().join(";")
    }
}

fn cmd_bench_list(stdout: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(stdout);
    let put = |w: &mut csv::Writer<&mut dyn Write>, rec: &[String]| {
        w.write_record(rec).map_err(|e| Error::csv("<stdout>", e))
    };
    put(
        &mut w,
        &[
            "id",
            "name",
            "dim",
            "lower",
            "upper",
            "category",
            "fe_limit",
            "known_min",
        ]
        .map(String::from),
    )?;
    for f in suite() {
        put(
            &mut w,
            &[
                f.id.to_string(),
                f.name.to_string(),
                f.dim.to_string(),
                join_bounds(&f.lower),
                join_bounds(&f.upper),
                f.category.to_string(),
                f.fe_limit().to_string(),
                f.known_min.to_string(),
            ],
        )?;
    }
    w.flush().map_err(|e| Error::io("<stdout>", e))
}
