//! Experiment protocol: variants × functions × seeded runs, with resumable
//! persistence, summary statistics and competition ranking.
//!
//! Output formats (all CSV, comma separated, one header line):
//!
//! * run records: `function,variant,run,seed,best,fe_used,wall_ms`
//! * summaries: `function,variant,mean,std,best,rank`
//! * category report: `category,variant,avg_rank`
//!
//! Real values are written in scientific notation with 17 significant digits,
//! which round-trips every `f64` exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use crate::benchmarks::{function, Category, FunctionId};
use crate::engine::{EngineState, Parameters};
use crate::error::{Error, Result};
use crate::perturbation::{Distribution, PerturbationSpec};
use crate::rng::derive_seed;

pub const RUN_HEADER: [&str; 7] = [
    "function", "variant", "run", "seed", "best", "fe_used", "wall_ms",
];
pub const SUMMARY_HEADER: [&str; 6] = ["function", "variant", "mean", "std", "best", "rank"];
pub const CATEGORY_HEADER: [&str; 3] = ["category", "variant", "avg_rank"];

/// Table tag of the CRO variant that perturbs with `d`.
pub fn variant_tag(d: Distribution) -> &'static str {
    match d {
        Distribution::Gaussian => "CRO_G",
        Distribution::Cauchy => "CRO_C",
        Distribution::ExponentialMirrored => "CRO_E",
        Distribution::ModifiedRayleigh => "CRO_R",
    }
}

/// Accepts either a table tag (`CRO_G`) or a distribution name.
pub fn parse_variant(s: &str) -> Result<Distribution> {
    let t = s.trim();
    match t.to_ascii_uppercase().as_str() {
        "CRO_G" => Ok(Distribution::Gaussian),
        "CRO_C" => Ok(Distribution::Cauchy),
        "CRO_E" => Ok(Distribution::ExponentialMirrored),
        "CRO_R" => Ok(Distribution::ModifiedRayleigh),
        _ => t.parse(),
    }
}

/// Comma-separated variants, or `all`.
pub fn parse_variant_list(s: &str) -> Result<Vec<Distribution>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part.eq_ignore_ascii_case("all") {
            out.extend(Distribution::ALL);
        } else {
            out.push(parse_variant(part)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Argument("empty distribution list".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Optional replacements for preset values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParameterOverrides {
    pub pop_size: Option<usize>,
    pub step_size: Option<f64>,
    pub en_buff: Option<f64>,
    pub ini_ke: Option<f64>,
    pub coll_rate: Option<f64>,
    pub loss_rate: Option<f64>,
    pub dec_thres: Option<u64>,
    pub syn_thres: Option<f64>,
    pub fe_limit: Option<u64>,
}

impl ParameterOverrides {
    pub fn apply(&self, params: &mut Parameters, fe_limit: &mut u64) {
        macro_rules! set {
            ($($field:ident),*) => {$(
                if let Some(v) = self.$field { params.$field = v; }
            )*};
        }
        set!(pop_size, step_size, en_buff, ini_ke, coll_rate, loss_rate, dec_thres, syn_thres);
        if let Some(v) = self.fe_limit {
            *fe_limit = v;
        }
    }

    /// `self` wins wherever both are set.
    pub fn or(&self, fallback: &ParameterOverrides) -> ParameterOverrides {
        ParameterOverrides {
            pop_size: self.pop_size.or(fallback.pop_size),
            step_size: self.step_size.or(fallback.step_size),
            en_buff: self.en_buff.or(fallback.en_buff),
            ini_ke: self.ini_ke.or(fallback.ini_ke),
            coll_rate: self.coll_rate.or(fallback.coll_rate),
            loss_rate: self.loss_rate.or(fallback.loss_rate),
            dec_thres: self.dec_thres.or(fallback.dec_thres),
            syn_thres: self.syn_thres.or(fallback.syn_thres),
            fe_limit: self.fe_limit.or(fallback.fe_limit),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub variants: Vec<Distribution>,
    pub functions: Vec<FunctionId>,
    pub runs: u32,
    pub master_seed: u64,
    /// Applied to every function.
    pub overrides: ParameterOverrides,
    /// Applied on top of `overrides` for individual functions.
    pub function_overrides: BTreeMap<FunctionId, ParameterOverrides>,
    pub parallelism: usize,
    /// Record wall-clock time per run; when off, `wall_ms` is written as 0 so
    /// that record files are byte-for-byte reproducible.
    pub record_timing: bool,
}

impl ExperimentPlan {
    /// Every variant on every function, 100 runs each.
    pub fn full(master_seed: u64) -> Self {
        Self {
            variants: Distribution::ALL.to_vec(),
            functions: FunctionId::all().collect(),
            runs: 100,
            master_seed,
            overrides: ParameterOverrides::default(),
            function_overrides: BTreeMap::new(),
            parallelism: default_parallelism(),
            record_timing: true,
        }
    }

    pub fn new(
        variants: Vec<Distribution>,
        functions: Vec<FunctionId>,
        runs: u32,
        master_seed: u64,
    ) -> Self {
        Self {
            variants,
            functions,
            runs,
            ..Self::full(master_seed)
        }
    }

    pub fn scope(&self) -> Scope {
        Scope {
            variants: self.variants.clone(),
            functions: self.functions.clone(),
            runs: self.runs,
        }
    }

    /// Parameters and budget for one function.
    pub fn settings(&self, id: FunctionId) -> (Parameters, u64) {
        let mut params = Parameters::for_function(id);
        let mut fe_limit = id.fe_limit();
        self.overrides.apply(&mut params, &mut fe_limit);
        if let Some(o) = self.function_overrides.get(&id) {
            o.apply(&mut params, &mut fe_limit);
        }
        (params, fe_limit)
    }

    pub fn validate(&self) -> Result<()> {
        if self.variants.is_empty() || self.functions.is_empty() {
            return Err(Error::Config("plan has no variants or no functions".into()));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        for id in &self.functions {
            let (params, fe_limit) = self.settings(*id);
            params.validate()?;
            PerturbationSpec::new(Distribution::Gaussian, params.step_size)?;
            if fe_limit < params.pop_size as u64 {
                return Err(Error::Config(format!(
                    "{id}: fe_limit {fe_limit} is smaller than pop_size {}",
                    params.pop_size
                )));
            }
        }
        Ok(())
    }

    /// Every cell in canonical order (function, variant, run).
    pub fn cells(&self) -> Vec<Cell> {
        let mut out =
            Vec::with_capacity(self.functions.len() * self.variants.len() * self.runs as usize);
        for f in &self.functions {
            for v in &self.variants {
                for run in 0..self.runs {
                    out.push(Cell {
                        function: *f,
                        variant: *v,
                        run,
                        seed: derive_seed(self.master_seed, variant_tag(*v), f.number(), run),
                    });
                }
            }
        }
        out
    }
}

pub fn default_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// One (function, variant, run) unit of work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub function: FunctionId,
    pub variant: Distribution,
    pub run: u32,
    pub seed: u64,
}

impl Cell {
    fn key(&self) -> (FunctionId, Distribution, u32) {
        (self.function, self.variant, self.run)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub function: FunctionId,
    pub variant: Distribution,
    pub run: u32,
    pub seed: u64,
    pub best: f64,
    pub fe_used: u64,
    pub wall_ms: f64,
}

impl RunRecord {
    fn key(&self) -> (FunctionId, Distribution, u32) {
        (self.function, self.variant, self.run)
    }

    fn to_fields(&self) -> [String; 7] {
        [
            self.function.to_string(),
            variant_tag(self.variant).to_string(),
            self.run.to_string(),
            self.seed.to_string(),
            format_real(self.best),
            self.fe_used.to_string(),
            self.wall_ms.to_string(),
        ]
    }

    fn from_fields(rec: &csv::StringRecord) -> Result<Self> {
        if rec.len() != RUN_HEADER.len() {
            return Err(Error::Argument(format!(
                "run record has {} fields",
                rec.len()
            )));
        }
        let num = |i: usize| -> Result<&str> { Ok(rec.get(i).unwrap_or_default().trim()) };
        let bad = |what: &str, v: &str| Error::Argument(format!("invalid {what} '{v}'"));
        Ok(Self {
            function: num(0)?.parse()?,
            variant: parse_variant(num(1)?)?,
            run: num(2)?.parse().map_err(|_| bad("run", num(2).unwrap()))?,
            seed: num(3)?.parse().map_err(|_| bad("seed", num(3).unwrap()))?,
            best: parse_real(num(4)?)?,
            fe_used: num(5)?
                .parse()
                .map_err(|_| bad("fe_used", num(5).unwrap()))?,
            wall_ms: parse_real(num(6)?)?,
        })
    }
}

fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_real(s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::Argument(format!("invalid number '{s}'")))
}

/// Executes a single cell.
pub fn run_cell(plan: &ExperimentPlan, cell: &Cell) -> Result<RunRecord> {
    let (params, fe_limit) = plan.settings(cell.function);
    let spec = PerturbationSpec::new(cell.variant, params.step_size)?;
    let start = Instant::now();
    let mut state = EngineState::initialize(params, function(cell.function), spec, cell.seed)?;
    let best = state.run(fe_limit);
    // microsecond resolution keeps the CSV column short
    let wall_ms = if plan.record_timing {
        (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
    } else {
        0.0
    };
    Ok(RunRecord {
        function: cell.function,
        variant: cell.variant,
        run: cell.run,
        seed: cell.seed,
        best: best.value,
        fe_used: best.fe_used,
        wall_ms,
    })
}

/// Runs every cell of `plan`.
///
/// With a `store` path, each finished record is appended to that file as soon
/// as it is available, cells already present in the file are skipped, and on
/// completion the file is rewritten in canonical order. The returned records
/// are always in canonical order.
pub fn run_plan(plan: &ExperimentPlan, store: Option<&Path>) -> Result<Vec<RunRecord>> {
    plan.validate()?;
    let cells = plan.cells();
    let mut done: BTreeMap<(FunctionId, Distribution, u32), RunRecord> = BTreeMap::new();
    if let Some(path) = store {
        if path.exists() {
            let wanted: BTreeMap<_, _> = cells.iter().map(|c| (c.key(), c.seed)).collect();
            for rec in read_records_lenient(path)? {
                match wanted.get(&rec.key()) {
                    Some(seed) if *seed == rec.seed => {
                        done.insert(rec.key(), rec);
                    }
                    Some(_) => {
                        return Err(Error::Config(format!(
                            "{} holds {} {} run {} with a different seed; use another output directory",
                            path.display(),
                            rec.function,
                            variant_tag(rec.variant),
                            rec.run
                        )))
                    }
                    None => {
                        return Err(Error::Config(format!(
                            "{} holds records outside this plan ({} {} run {}); use another output directory",
                            path.display(),
                            rec.function,
                            variant_tag(rec.variant),
                            rec.run
                        )))
                    }
                }
            }
        }
    }

    let pending: Vec<Cell> = cells
        .iter()
        .filter(|c| !done.contains_key(&c.key()))
        .copied()
        .collect();
    if !pending.is_empty() {
        let writer = match store {
            Some(path) => Some(Mutex::new(open_append(path, &done)?)),
            None => None,
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(plan.parallelism.max(1))
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
        let fresh: Vec<RunRecord> = pool.install(|| {
            pending
                .par_iter()
                .map(|cell| {
                    let rec = run_cell(plan, cell)?;
                    if let (Some(w), Some(path)) = (&writer, store) {
                        let mut w = w.lock().expect("record writer poisoned");
                        w.write_record(rec.to_fields())
                            .map_err(|e| Error::csv(path, e))?;
                        w.flush().map_err(|e| Error::io(path, e))?;
                    }
                    Ok(rec)
                })
                .collect::<Result<Vec<_>>>()
        })?;
        for rec in fresh {
            done.insert(rec.key(), rec);
        }
    }

    let records: Vec<RunRecord> = done.into_values().collect();
    if let Some(path) = store {
        write_records_atomic(path, &records)?;
    }
    Ok(records)
}

/// Appending writer; truncated trailing lines from an interrupted run are
/// dropped by rewriting the file first.
fn open_append(
    path: &Path,
    done: &BTreeMap<(FunctionId, Distribution, u32), RunRecord>,
) -> Result<csv::Writer<File>> {
    let existing: Vec<RunRecord> = done.values().cloned().collect();
    write_records_atomic(path, &existing)?;
    let file = OpenOptions::new()
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    Ok(csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(file))
}

fn write_records_atomic(path: &Path, records: &[RunRecord]) -> Result<()> {
    let tmp = tmp_path(path);
    {
        let file = File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        write_records(file, records).map_err(|e| Error::csv(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

/// Writes run records with their header.
pub fn write_records<W: Write>(out: W, records: &[RunRecord]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RUN_HEADER)?;
    for r in records {
        w.write_record(r.to_fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_records(path: &Path, records: &[RunRecord]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_records(file, records).map_err(|e| Error::csv(path, e))
}

pub fn read_records<R: io::Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_reader(input);
    check_header(
        r.headers().map_err(|e| Error::Argument(e.to_string()))?,
        &RUN_HEADER,
    )?;
    r.records()
        .map(|rec| RunRecord::from_fields(&rec.map_err(|e| Error::Argument(e.to_string()))?))
        .collect()
}

pub fn import_records(path: &Path) -> Result<Vec<RunRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_records(file).map_err(|e| match e {
        Error::Argument(m) => Error::Argument(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Reads a possibly interrupted record file: every complete line is kept, an
/// unparsable final line is ignored.
fn read_records_lenient(path: &Path) -> Result<Vec<RunRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let lines: Vec<String> = BufReader::new(file)
        .lines()
        .collect::<io::Result<_>>()
        .map_err(|e| Error::io(path, e))?;
    let Some((header, body)) = lines.split_first() else {
        return Ok(Vec::new());
    };
    if header.trim() != RUN_HEADER.join(",") {
        return Err(Error::Config(format!(
            "{} is not a run-record file",
            path.display()
        )));
    }
    let mut out = Vec::with_capacity(body.len());
    for (i, line) in body.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec = csv::StringRecord::from(line.split(',').collect::<Vec<_>>());
        match RunRecord::from_fields(&rec) {
            Ok(r) => out.push(r),
            Err(_) if i + 1 == body.len() => {}
            Err(e) => {
                return Err(Error::Config(format!(
                    "{}: line {}: {e}",
                    path.display(),
                    i + 2
                )))
            }
        }
    }
    Ok(out)
}

fn check_header(found: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    if found.iter().map(str::trim).eq(expected.iter().copied()) {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "unexpected header '{}', expected '{}'",
            found.iter().collect::<Vec<_>>().join(","),
            expected.join(",")
        )))
    }
}

/// Which cells a summary must cover.
#[derive(Debug, Clone, PartialEq)]
pub struct Scope {
    pub variants: Vec<Distribution>,
    pub functions: Vec<FunctionId>,
    pub runs: u32,
}

impl Scope {
    /// The smallest scope containing every record: all functions and variants
    /// seen, and runs up to the largest run index.
    pub fn covering(records: &[RunRecord]) -> Self {
        let variants: BTreeSet<_> = records.iter().map(|r| r.variant).collect();
        let functions: BTreeSet<_> = records.iter().map(|r| r.function).collect();
        let runs = records.iter().map(|r| r.run + 1).max().unwrap_or(0);
        Self {
            variants: variants.into_iter().collect(),
            functions: functions.into_iter().collect(),
            runs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub function: FunctionId,
    pub variant: Distribution,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub best: f64,
    pub rank: u32,
}

/// Mean, population standard deviation and minimum of `values`.
///
/// Values are summed in sorted order, so the result does not depend on the
/// order they arrive in.
pub fn statistics(values: &[f64]) -> (f64, f64, f64) {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt(), v[0])
}

/// Per-(function, variant) statistics with competition ranks on the mean.
pub fn summarize(records: &[RunRecord], scope: &Scope) -> Result<Vec<SummaryRow>> {
    let mut cells: BTreeMap<(FunctionId, Distribution), BTreeMap<u32, f64>> = BTreeMap::new();
    for r in records {
        if r.run >= scope.runs
            || !scope.variants.contains(&r.variant)
            || !scope.functions.contains(&r.function)
        {
            continue;
        }
        let runs = cells.entry((r.function, r.variant)).or_default();
        if runs.insert(r.run, r.best).is_some() {
            return Err(Error::Argument(format!(
                "duplicate record for {} {} run {}",
                r.function,
                variant_tag(r.variant),
                r.run
            )));
        }
    }
    let mut gaps = Vec::new();
    for f in &scope.functions {
        for v in &scope.variants {
            let have = cells.get(&(*f, *v)).map_or(0, BTreeMap::len);
            if have != scope.runs as usize {
                gaps.push(format!(
                    "{f}/{} ({have} of {} runs)",
                    variant_tag(*v),
                    scope.runs
                ));
            }
        }
    }
    if !gaps.is_empty() {
        return Err(Error::Incomplete(gaps));
    }

    let mut rows = Vec::new();
    for f in &scope.functions {
        let mut block: Vec<SummaryRow> = scope
            .variants
            .iter()
            .map(|v| {
                let values: Vec<f64> = cells[&(*f, *v)].values().copied().collect();
                let (mean, std, best) = statistics(&values);
                SummaryRow {
                    function: *f,
                    variant: *v,
                    mean,
                    std,
                    best,
                    rank: 0,
                }
            })
            .collect();
        let means: Vec<f64> = block.iter().map(|r| r.mean).collect();
        for (row, rank) in block.iter_mut().zip(rank_variants(&means)) {
            row.rank = rank;
        }
        rows.extend(block);
    }
    Ok(rows)
}

/// Competition ranking ("1224"): lower is better, ties share the lowest rank
/// and the following ranks are skipped.
pub fn rank_variants(means: &[f64]) -> Vec<u32> {
    means
        .iter()
        .map(|m| 1 + means.iter().filter(|o| o.total_cmp(m).is_lt()).count() as u32)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategoryRank {
    pub category: Category,
    pub variant: Distribution,
    pub avg_rank: f64,
}

/// Arithmetic mean of each variant's ranks over the functions of each category
/// present in `rows`.
pub fn category_average_ranks(rows: &[SummaryRow]) -> Vec<CategoryRank> {
    let mut acc: BTreeMap<(Category, Distribution), (u32, u32)> = BTreeMap::new();
    for r in rows {
        let e = acc.entry((r.function.category(), r.variant)).or_default();
        e.0 += r.rank;
        e.1 += 1;
    }
    acc.into_iter()
        .map(|((category, variant), (sum, n))| CategoryRank {
            category,
            variant,
            avg_rank: sum as f64 / n as f64,
        })
        .collect()
}

pub fn write_summary<W: Write>(out: W, rows: &[SummaryRow]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for r in rows {
        w.write_record([
            r.function.to_string(),
            variant_tag(r.variant).to_string(),
            format_real(r.mean),
            format_real(r.std),
            format_real(r.best),
            r.rank.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_summary(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_summary(file, rows).map_err(|e| Error::csv(path, e))
}

pub fn read_summary<R: io::Read>(input: R) -> Result<Vec<SummaryRow>> {
    let mut r = csv::Reader::from_reader(input);
    check_header(
        r.headers().map_err(|e| Error::Argument(e.to_string()))?,
        &SUMMARY_HEADER,
    )?;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| Error::Argument(e.to_string()))?;
        let field = |i: usize| rec.get(i).unwrap_or_default().trim();
        out.push(SummaryRow {
            function: field(0).parse()?,
            variant: parse_variant(field(1))?,
            mean: parse_real(field(2))?,
            std: parse_real(field(3))?,
            best: parse_real(field(4))?,
            rank: field(5)
                .parse()
                .map_err(|_| Error::Argument(format!("invalid rank '{}'", field(5))))?,
        });
    }
    Ok(out)
}

pub fn write_category_ranks<W: Write>(out: W, ranks: &[CategoryRank]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CATEGORY_HEADER)?;
    for r in ranks {
        w.write_record([
            r.category.to_string(),
            variant_tag(r.variant).to_string(),
            r.avg_rank.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_category_ranks(path: &Path, ranks: &[CategoryRank]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_category_ranks(file, ranks).map_err(|e| Error::csv(path, e))
}

pub fn read_category_ranks<R: io::Read>(input: R) -> Result<Vec<CategoryRank>> {
    let mut r = csv::Reader::from_reader(input);
    check_header(
        r.headers().map_err(|e| Error::Argument(e.to_string()))?,
        &CATEGORY_HEADER,
    )?;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| Error::Argument(e.to_string()))?;
        let field = |i: usize| rec.get(i).unwrap_or_default().trim();
        out.push(CategoryRank {
            category: field(0).parse()?,
            variant: parse_variant(field(1))?,
            avg_rank: parse_real(field(2))?,
        });
    }
    Ok(out)
}
