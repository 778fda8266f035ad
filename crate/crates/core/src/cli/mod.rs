//! `annihil` command-line front end.
//!
//! Exit codes: 0 success, 2 input error, 3 inconsistent detection,
//! 4 numerical failure.

pub mod io;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::detection::{detect, Classification, DetectionConfig, DetectionError, DetectionMode, DetectionReport};
use crate::expspace::{FrequencyVector, Window};
use crate::operators::{reduced_chain_for_symmetric_set, Axis, IntegerStep, OperatorError};
use crate::oracle::{random_instance, RandomSpec};
use crate::subdivision::{auto_refine, refine_rounds, SubdivisionError};
use io::{complex_pair, frequency_pair, parse_frequency, to_json_line, GridFile, SequenceFile, SumFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "annihil", version, about = "Annihilation operators, frequency detection and exponential-reproducing refinement")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample an exponential sum file on a grid window.
    Sample(SampleArgs),
    /// Detect the frequency of grid data.
    Detect(DetectArgs),
    /// Apply the reduced three-factor annihilator to grid data.
    Annihilate(AnnihilateArgs),
    /// Refine 1-D data with the exponential-reproducing four-point scheme.
    Refine(RefineArgs),
    /// Generate a seeded random test instance.
    Instance(InstanceArgs),
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    pub sumfile: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub level: u32,
    #[arg(long, num_args = 2, value_names = ["I", "J"], allow_negative_numbers = true, default_values_t = [0i64, 0])]
    pub origin: Vec<i64>,
    #[arg(long)]
    pub width: usize,
    #[arg(long)]
    pub height: usize,
    /// Write real numbers, dropping imaginary parts below 1e-12·‖S‖∞.
    #[arg(long)]
    pub real: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Single,
    Robust,
}

#[derive(Debug, Args)]
pub struct Tolerances {
    #[arg(long, default_value_t = 1e-10)]
    pub tol_den: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol_im: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol_res: f64,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    pub gridfile: PathBuf,
    /// Base point; defaults to origin + (1, 1).
    #[arg(long, num_args = 2, value_names = ["I", "J"], allow_negative_numbers = true)]
    pub alpha: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value_t = ModeArg::Single)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    X,
    Y,
}

#[derive(Debug, Args)]
pub struct AnnihilateArgs {
    pub gridfile: PathBuf,
    /// Frequency components, e.g. `0.8 0.3` or `0.39i 0.39i`.
    #[arg(long, num_args = 2, value_names = ["G1", "G2"], allow_hyphen_values = true)]
    pub gamma: Vec<String>,
    #[arg(long, num_args = 2, value_names = ["DX", "DY"], allow_negative_numbers = true)]
    pub extra_step: Vec<i64>,
    #[arg(long, value_enum)]
    pub axis: AxisArg,
    /// Where to write the residual grid.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    pub datafile: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub rounds: usize,
    /// Detect the frequency from the data (the default).
    #[arg(long, conflicts_with = "gamma")]
    pub auto: bool,
    /// Use a known frequency instead, e.g. `0.5` or `0.5i`.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub level: u32,
    #[arg(long)]
    pub sum_out: Option<PathBuf>,
    #[arg(long)]
    pub grid_out: Option<PathBuf>,
}

/// Error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Failure { code: EXIT_NUMERICAL, message: message.into() }
    }
}

impl From<OperatorError> for Failure {
    fn from(e: OperatorError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<DetectionError> for Failure {
    fn from(e: DetectionError) -> Self {
        match e {
            DetectionError::OutOfWindow(..) | DetectionError::Operator(_) => Failure::input(e.to_string()),
            DetectionError::DenominatorZero { .. } | DetectionError::InvalidCosh(_) => Failure::numerical(e.to_string()),
        }
    }
}

impl From<SubdivisionError> for Failure {
    fn from(e: SubdivisionError) -> Self {
        match e {
            SubdivisionError::TooShort(_) | SubdivisionError::LevelMismatch { .. } => Failure::input(e.to_string()),
            SubdivisionError::Detection(d) => d.into(),
            _ => Failure::numerical(e.to_string()),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn config(tol: &Tolerances, mode: DetectionMode) -> DetectionConfig {
    DetectionConfig { tol_den: tol.tol_den, tol_im: tol.tol_im, tol_res: tol.tol_res, mode }
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Sample(a) => cmd_sample(a),
        Command::Detect(a) => cmd_detect(a),
        Command::Annihilate(a) => cmd_annihilate(a),
        Command::Refine(a) => cmd_refine(a).map(|(data, note)| {
            let _ = err.write_all(note.as_bytes());
            (data, EXIT_OK)
        }),
        Command::Instance(a) => cmd_instance(a),
    };
    match result {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let _ = write!(err, "{e}");
            if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn cmd_sample(a: &SampleArgs) -> Result<(String, i32), Failure> {
    let sum = read_json::<SumFile>(&a.sumfile)?.to_sum();
    let window = Window::new([a.origin[0], a.origin[1]], a.width, a.height).map_err(|e| Failure::input(e.to_string()))?;
    let samples = sum.sample(a.level, window);
    let mut file = GridFile::from_samples(&samples);
    if a.real {
        let tol = 1e-12 * samples.max_norm();
        if let Some(v) = samples.values().iter().find(|v| v.im.abs() > tol) {
            return Err(Failure::numerical(format!("sample {v} is not real")));
        }
        file.values = samples.values().iter().map(|v| io::Value::Real(v.re)).collect();
    }
    Ok((to_json_line(&file), EXIT_OK))
}

#[derive(Debug, Serialize)]
pub struct EstimateJson {
    pub axis: &'static str,
    pub cosh: [f64; 2],
    pub base: [i64; 2],
    pub step: [i64; 2],
    pub denominator: f64,
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub classification: &'static str,
    pub gamma: Option<[[f64; 2]; 2]>,
    pub level: u32,
    pub alpha: [i64; 2],
    pub estimates: Vec<EstimateJson>,
    pub constant_axes: Vec<&'static str>,
    pub residual: f64,
    pub note: Option<String>,
}

fn axis_name(a: Axis) -> &'static str {
    match a {
        Axis::X => "x",
        Axis::Y => "y",
    }
}

pub fn report_json(r: &DetectionReport, level: u32, alpha: [i64; 2]) -> ReportJson {
    let (classification, gamma) = match r.classification {
        Classification::Constant => ("Constant", Some(frequency_pair(FrequencyVector::ZERO))),
        Classification::Frequency(g) => ("Frequency", Some(frequency_pair(g))),
        Classification::Inconsistent => ("Inconsistent", None),
    };
    ReportJson {
        classification,
        gamma,
        level,
        alpha,
        estimates: r
            .estimates
            .iter()
            .map(|e| EstimateJson {
                axis: axis_name(e.axis),
                cosh: complex_pair(e.value),
                base: e.base,
                step: e.step_used.vector(),
                denominator: e.denominator_magnitude,
            })
            .collect(),
        constant_axes: r.constant_axes.iter().map(|&a| axis_name(a)).collect(),
        residual: r.residual,
        note: r.note.clone(),
    }
}

pub fn cmd_detect(a: &DetectArgs) -> Result<(String, i32), Failure> {
    let samples = read_json::<GridFile>(&a.gridfile)?.into_samples().map_err(Failure::input)?;
    let alpha = match &a.alpha {
        Some(v) => [v[0], v[1]],
        None => [samples.origin()[0] + 1, samples.origin()[1] + 1],
    };
    let mode = match a.mode {
        ModeArg::Single => DetectionMode::Single,
        ModeArg::Robust => DetectionMode::Robust,
    };
    let report = detect(&samples, alpha, &config(&a.tol, mode))?;
    let code = match report.classification {
        Classification::Inconsistent => EXIT_INCONSISTENT,
        _ => EXIT_OK,
    };
    Ok((to_json_line(&report_json(&report, samples.level(), alpha)), code))
}

#[derive(Debug, Serialize)]
struct AnnihilateJson {
    gamma: [[f64; 2]; 2],
    axis: &'static str,
    extra_step: [i64; 2],
    residual: f64,
    footprint: usize,
    output: Option<String>,
}

pub fn cmd_annihilate(a: &AnnihilateArgs) -> Result<(String, i32), Failure> {
    let samples = read_json::<GridFile>(&a.gridfile)?.into_samples().map_err(Failure::input)?;
    let g1 = parse_frequency(&a.gamma[0]).map_err(Failure::input)?;
    let g2 = parse_frequency(&a.gamma[1]).map_err(Failure::input)?;
    let gamma = FrequencyVector::new(g1, g2);
    let extra = IntegerStep::new(a.extra_step[0], a.extra_step[1])?;
    let axis = match a.axis {
        AxisArg::X => Axis::X,
        AxisArg::Y => Axis::Y,
    };
    let chain = reduced_chain_for_symmetric_set(gamma, axis, extra);
    let residual = chain.grid_residual(&samples)?;
    if let Some(path) = &a.output {
        write_file(path, &to_json_line(&GridFile::from_samples(&chain.apply_grid(&samples)?)))?;
    }
    let report = AnnihilateJson {
        gamma: frequency_pair(gamma),
        axis: axis_name(axis),
        extra_step: extra.vector(),
        residual,
        footprint: chain.footprint()?.len(),
        output: a.output.as_ref().map(|p| p.display().to_string()),
    };
    Ok((to_json_line(&report), EXIT_OK))
}

#[derive(Debug, Serialize)]
struct GammaNote {
    gamma: [f64; 2],
    detected: bool,
}

/// Returns the refined data file and a note for standard error.
pub fn cmd_refine(a: &RefineArgs) -> Result<(String, String), Failure> {
    let data = read_json::<SequenceFile>(&a.datafile)?.into_sequence();
    let (result, detected) = match &a.gamma {
        Some(g) => (refine_rounds(&data, parse_frequency(g).map_err(Failure::input)?, a.rounds)?, false),
        None => (auto_refine(&data, a.rounds, &config(&a.tol, DetectionMode::Single))?, true),
    };
    let note = to_json_line(&GammaNote { gamma: complex_pair(result.gamma.value()), detected });
    Ok((to_json_line(&SequenceFile::from_sequence(&result.data)), note))
}

#[derive(Debug, Serialize)]
struct InstanceJson {
    seed: u64,
    gamma: [[f64; 2]; 2],
    sum: SumFile,
    grid: GridFile,
}

pub fn cmd_instance(a: &InstanceArgs) -> Result<(String, i32), Failure> {
    let spec = RandomSpec { level: a.level, ..RandomSpec::new(a.seed) };
    let inst = random_instance(&spec);
    let sum = SumFile::from_sum(&inst.sum);
    let grid = GridFile::from_samples(&inst.samples);
    if let Some(p) = &a.sum_out {
        write_file(p, &to_json_line(&sum))?;
    }
    if let Some(p) = &a.grid_out {
        write_file(p, &to_json_line(&grid))?;
    }
    let doc = InstanceJson { seed: a.seed, gamma: frequency_pair(inst.gamma), sum, grid };
    Ok((to_json_line(&doc), EXIT_OK))
}
