//! Config-driven command-line front end.
//!
//! Every run is determined by a structured TOML config file plus
//! command-line flag overrides (flags win). Reports are written to the
//! output directory with all floats at 17 significant digits, so repeated
//! runs with the same config and seed produce byte-identical files.
//!
//! Exit codes partition outcomes: 0 = pass/success, 1 = verified failure,
//! 2 = invalid input (usage or config error).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;

use crate::exceptional::{IntervalSet, RadialArcs};
use crate::product::{eval_b, eval_logderiv};
use crate::verify::{
    self, angle_grid, epsilon_probe, radius_ladder, verify_circular, verify_radial,
    verify_density, GrowthReport, SampleDetail, SweepCase, SweepMode, SweepRow,
    DEFAULT_ANGLE_FILL, DEFAULT_EPSILON,
};
use crate::weights::{Weight, WeightFunction};
use crate::zeros::{blaschke_sum, AngleRule, Convergence, ZeroSequence};
use crate::{Error, Result};

/// Verification outcome of a run; usage errors are reported separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "blaschke",
    version,
    about = "Blaschke products, log-derivative growth, and exceptional sets"
)]
pub struct Cli {
    /// TOML config file; command-line flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory for report files (default: current directory).
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads for sample evaluation (default 1; results are
    /// identical for any worker count).
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,
    /// Seed for randomized angle rules.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct WeightArgs {
    /// Weight power: h(t) = t^alpha, 0 < alpha <= 1.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Iterated-log exponents of the weight, comma-separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub log_exponents: Option<Vec<f64>>,
}

#[derive(Debug, Default, Args)]
pub struct SequenceArgs {
    /// Geometric family: zeros at radius 1 - c^n.
    #[arg(long)]
    pub c: Option<f64>,
    /// Power-law family: zeros at radius 1 - (n+1)^{-p}.
    #[arg(long)]
    pub p: Option<f64>,
    /// Number of zeros to generate.
    #[arg(long)]
    pub count: Option<usize>,
    /// Angle rule: golden | equidistributed | random | constant.
    #[arg(long)]
    pub angles: Option<String>,
    /// Angle (radians) for the constant rule.
    #[arg(long, allow_hyphen_values = true)]
    pub zero_angle: Option<f64>,
    /// Read the sequence from a zeros text file instead of generating.
    #[arg(long, value_name = "PATH")]
    pub zeros: Option<PathBuf>,
}

#[derive(Debug, Default, Args)]
pub struct LadderArgs {
    /// First rung of the radius ladder 1 - 2^{-k}.
    #[arg(long)]
    pub k_min: Option<u32>,
    /// Last rung of the radius ladder.
    #[arg(long)]
    pub k_max: Option<u32>,
    /// Equispaced fill angles added to the zero angles.
    #[arg(long)]
    pub angle_fill: Option<usize>,
    /// Slack added to the predicted exponent.
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a zero sequence and write it to zeros.txt.
    Gen {
        #[command(flatten)]
        seq: SequenceArgs,
    },
    /// Sum h(1 - r_n) and decide the weighted convergence condition.
    Check {
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        seq: SequenceArgs,
    },
    /// Evaluate B(z) at one point.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true)]
        im: f64,
        #[command(flatten)]
        seq: SequenceArgs,
    },
    /// Evaluate B'(z)/B(z) at one point.
    Logderiv {
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true)]
        im: f64,
        #[command(flatten)]
        seq: SequenceArgs,
    },
    /// Build the circular exceptional set and report its measures.
    ExsetCircular {
        #[arg(long)]
        beta: Option<f64>,
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        seq: SequenceArgs,
    },
    /// Build the radial arc family and report its tail measure.
    ExsetRadial {
        #[arg(long)]
        aperture: Option<f64>,
        #[command(flatten)]
        seq: SequenceArgs,
    },
    /// Verify the circular growth estimate off the exceptional set.
    VerifyCircular {
        #[arg(long)]
        beta: Option<f64>,
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        ladder: LadderArgs,
    },
    /// Verify the radial growth estimate along one ray.
    VerifyRadial {
        #[arg(long)]
        aperture: Option<f64>,
        /// Ray direction (radians); must avoid the tail of the arc family.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        /// First arc of the tail the ray must avoid (1-based).
        #[arg(long)]
        n_start: Option<usize>,
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        ladder: LadderArgs,
    },
    /// Verify the sharper two-parameter estimate under the density condition.
    VerifyDensity {
        #[arg(long)]
        beta: Option<f64>,
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        ladder: LadderArgs,
    },
    /// Run a parameter grid of circular verifications plus an epsilon probe.
    Sweep {
        #[arg(long)]
        beta: Option<f64>,
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        ladder: LadderArgs,
    },
}

// ---------------------------------------------------------------------------
// Config file
// ---------------------------------------------------------------------------

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub weight: WeightSection,
    pub sequence: SequenceSection,
    pub run: RunSection,
    pub sweep: SweepSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeightSection {
    pub alpha: Option<f64>,
    pub log_exponents: Option<Vec<f64>>,
    pub almost_constant: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SequenceSection {
    /// geometric | power-law | file
    pub kind: Option<String>,
    pub c: Option<f64>,
    pub p: Option<f64>,
    pub count: Option<usize>,
    pub angles: Option<String>,
    pub zero_angle: Option<f64>,
    pub file: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub beta: Option<f64>,
    pub aperture: Option<f64>,
    pub epsilon: Option<f64>,
    pub k_min: Option<u32>,
    pub k_max: Option<u32>,
    pub angle_fill: Option<usize>,
    pub theta: Option<f64>,
    pub n_start: Option<usize>,
    pub workers: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    /// Geometric ratios of the sweep grid.
    pub ratios: Option<Vec<f64>>,
    /// Weight powers of the sweep grid.
    pub alphas: Option<Vec<f64>>,
    /// Set exponents of the sweep grid.
    pub betas: Option<Vec<f64>>,
    pub count: Option<usize>,
    /// Shrinking slack ladder for the epsilon probe row.
    pub epsilon_ladder: Option<Vec<f64>>,
}

fn load_config(path: &Path) -> Result<FileConfig> {
    let text = fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Resolution: flag > config file > default
// ---------------------------------------------------------------------------

fn resolve_weight(args: &WeightArgs, file: &WeightSection) -> Result<WeightFunction> {
    let alpha = args.alpha.or(file.alpha).unwrap_or(0.5);
    let log_exponents = args
        .log_exponents
        .clone()
        .or_else(|| file.log_exponents.clone())
        .unwrap_or_default();
    let k = file.almost_constant.unwrap_or(1.0);
    WeightFunction::with_almost_constant(alpha, log_exponents, k)
}

fn parse_angle_rule(name: &str, zero_angle: Option<f64>, seed: u64) -> Result<AngleRule> {
    match name {
        "golden" => Ok(AngleRule::GoldenRotation),
        "equidistributed" => Ok(AngleRule::Equidistributed),
        "random" => Ok(AngleRule::Random { seed }),
        "constant" => Ok(AngleRule::Constant(zero_angle.unwrap_or(0.0))),
        other => Err(Error::Config(format!(
            "unknown angle rule {other:?} (expected golden, equidistributed, random, or constant)"
        ))),
    }
}

fn resolve_sequence(args: &SequenceArgs, file: &SequenceSection, seed: u64) -> Result<ZeroSequence> {
    if args.c.is_some() && args.p.is_some() {
        return Err(Error::Config(
            "--c and --p are mutually exclusive (geometric vs power-law family)".into(),
        ));
    }
    #[derive(PartialEq)]
    enum Kind {
        Geometric,
        PowerLaw,
        File,
    }
    let kind = if args.zeros.is_some() {
        Kind::File
    } else if args.c.is_some() {
        Kind::Geometric
    } else if args.p.is_some() {
        Kind::PowerLaw
    } else {
        match file.kind.as_deref() {
            Some("geometric") => Kind::Geometric,
            Some("power-law") => Kind::PowerLaw,
            Some("file") => Kind::File,
            Some(other) => {
                return Err(Error::Config(format!(
                    "unknown sequence kind {other:?} (expected geometric, power-law, or file)"
                )))
            }
            None => {
                if file.file.is_some() {
                    Kind::File
                } else if file.p.is_some() && file.c.is_none() {
                    Kind::PowerLaw
                } else {
                    Kind::Geometric
                }
            }
        }
    };
    if kind == Kind::File {
        let path = args
            .zeros
            .as_ref()
            .or(file.file.as_ref())
            .ok_or_else(|| Error::Config("sequence.file: no zeros file path given".into()))?;
        return ZeroSequence::ingest(path);
    }
    let count = args.count.or(file.count).unwrap_or(25);
    let rule = parse_angle_rule(
        args.angles.as_deref().or(file.angles.as_deref()).unwrap_or("golden"),
        args.zero_angle.or(file.zero_angle),
        seed,
    )?;
    match kind {
        Kind::Geometric => ZeroSequence::gen_geometric(args.c.or(file.c).unwrap_or(0.5), count, rule),
        Kind::PowerLaw => ZeroSequence::gen_power_law(args.p.or(file.p).unwrap_or(2.0), count, rule),
        Kind::File => unreachable!(),
    }
}

struct LadderPlan {
    radii: Vec<f64>,
    angle_fill: usize,
    epsilon: f64,
}

fn resolve_ladder(args: &LadderArgs, run: &RunSection) -> Result<LadderPlan> {
    let k_min = args.k_min.or(run.k_min).unwrap_or(4);
    let k_max = args.k_max.or(run.k_max).unwrap_or(16);
    Ok(LadderPlan {
        radii: radius_ladder(k_min, k_max)?,
        angle_fill: args.angle_fill.or(run.angle_fill).unwrap_or(DEFAULT_ANGLE_FILL),
        epsilon: args.epsilon.or(run.epsilon).unwrap_or(DEFAULT_EPSILON),
    })
}

// ---------------------------------------------------------------------------
// Report rendering (all floats at 17 significant digits)
// ---------------------------------------------------------------------------

fn sig(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_sig(x: Option<f64>) -> String {
    x.map(sig).unwrap_or_else(|| "-".into())
}

fn render_growth_report(
    title: &str,
    h: &WeightFunction,
    beta: Option<f64>,
    report: &GrowthReport,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {title}\n"));
    out.push_str(&format!("# weight {}\n", h.describe()));
    if let Some(b) = beta {
        out.push_str(&format!("# beta {}\n", sig(b)));
    }
    out.push_str(&format!("# fitted_slope {}\n", sig(report.fitted_slope)));
    out.push_str(&format!("# fit_residual {}\n", sig(report.fit_residual)));
    out.push_str(&format!(
        "# predicted_exponent {}\n",
        sig(report.predicted_exponent)
    ));
    out.push_str(&format!("# epsilon_margin {}\n", sig(report.epsilon_margin)));
    out.push_str(&format!("# margin {}\n", sig(report.margin())));
    out.push_str(&format!(
        "# applicable {} slope_ok {} trend_ok {}\n",
        report.applicable, report.slope_ok, report.trend_ok
    ));
    out.push_str(&format!(
        "# verdict {}\n",
        if report.pass() { "pass" } else { "fail" }
    ));
    for note in &report.notes {
        out.push_str(&format!("# note: {note}\n"));
    }
    let radial = matches!(
        report.samples.first().map(|s| &s.detail),
        Some(SampleDetail::RadialSplit { .. })
    );
    if radial {
        out.push_str(
            "# columns: r measured normalized deep_sum shallow_sum head_sum \
             deep_bound shallow_bound partition_error\n",
        );
    } else {
        out.push_str(
            "# columns: r measured normalized nudges delta near_count \
             far_sum near_sum far_bound near_bound partition_error\n",
        );
    }
    for s in &report.samples {
        match s.detail {
            SampleDetail::Split {
                far_sum,
                near_sum,
                far_bound,
                near_bound,
                delta,
                near_count,
                partition_error,
            } => out.push_str(&format!(
                "{} {} {} {} {} {} {} {} {} {} {}\n",
                sig(s.r),
                sig(s.measured),
                sig(s.normalized),
                s.nudges,
                sig(delta),
                near_count,
                sig(far_sum),
                sig(near_sum),
                sig(far_bound),
                sig(near_bound),
                sig(partition_error),
            )),
            SampleDetail::RadialSplit {
                deep_sum,
                shallow_sum,
                head_sum,
                deep_bound,
                shallow_bound,
                partition_error,
            } => out.push_str(&format!(
                "{} {} {} {} {} {} {} {} {}\n",
                sig(s.r),
                sig(s.measured),
                sig(s.normalized),
                sig(deep_sum),
                sig(shallow_sum),
                sig(head_sum),
                sig(deep_bound),
                sig(shallow_bound),
                sig(partition_error),
            )),
            SampleDetail::None => out.push_str(&format!(
                "{} {} {}\n",
                sig(s.r),
                sig(s.measured),
                sig(s.normalized)
            )),
        }
    }
    out
}

fn render_summary(report: &GrowthReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("fitted_slope = {}\n", sig(report.fitted_slope)));
    out.push_str(&format!("fit_residual = {}\n", sig(report.fit_residual)));
    out.push_str(&format!(
        "predicted_exponent = {}\n",
        sig(report.predicted_exponent)
    ));
    out.push_str(&format!("epsilon_margin = {}\n", sig(report.epsilon_margin)));
    out.push_str(&format!("margin = {}\n", sig(report.margin())));
    out.push_str(&format!("applicable = {}\n", report.applicable));
    out.push_str(&format!("slope_ok = {}\n", report.slope_ok));
    out.push_str(&format!("trend_ok = {}\n", report.trend_ok));
    out.push_str(&format!("samples = {}\n", report.samples.len()));
    out.push_str(&format!(
        "verdict = \"{}\"\n",
        if report.pass() { "pass" } else { "fail" }
    ));
    out
}

fn write_report_pair(
    out_dir: &Path,
    stem: &str,
    title: &str,
    h: &WeightFunction,
    beta: Option<f64>,
    report: &GrowthReport,
) -> Result<(PathBuf, PathBuf)> {
    let report_path = out_dir.join(format!("report_{stem}.txt"));
    fs::write(&report_path, render_growth_report(title, h, beta, report))?;
    let summary_path = out_dir.join(format!("summary_{stem}.txt"));
    fs::write(&summary_path, render_summary(report))?;
    Ok((report_path, summary_path))
}

fn sweep_row_line(row: &SweepRow) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        row.label,
        row.weight,
        sig(row.beta),
        opt_sig(row.fitted_slope),
        opt_sig(row.predicted),
        opt_sig(row.margin),
        row.verdict
    )
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

/// Parse `args` and run; returns the process exit code (0 pass, 1 verified
/// failure, 2 invalid input).
pub fn run_code<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version surface through clap's error path with exit
            // code 0; genuine usage errors carry code 2.
            let code = u8::try_from(e.exit_code()).unwrap_or(2);
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// [`run_code`] wrapped for `fn main`.
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    ExitCode::from(run_code(args))
}

/// Execute a parsed invocation. Returns the verification outcome; every
/// invalid-input path is an `Err`.
pub fn execute(cli: Cli) -> Result<Outcome> {
    let file_cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None => FileConfig::default(),
    };
    let workers = cli.workers.or(file_cfg.run.workers).unwrap_or(1);
    if workers == 0 {
        return Err(Error::Config("workers must be >= 1".into()));
    }
    // Best effort: the global pool can only be sized once per process;
    // results do not depend on the worker count (ordered reductions).
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global();
    let seed = cli.seed.or(file_cfg.run.seed).unwrap_or(0);
    let out_dir = cli
        .out
        .clone()
        .or_else(|| file_cfg.run.out.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&out_dir)?;

    match &cli.command {
        Command::Gen { seq } => {
            let sequence = resolve_sequence(seq, &file_cfg.sequence, seed)?;
            let path = out_dir.join("zeros.txt");
            sequence.export(&path)?;
            println!("wrote {} zeros to {}", sequence.len(), path.display());
            Ok(Outcome::Pass)
        }
        Command::Check { weight, seq } => {
            let h = resolve_weight(weight, &file_cfg.weight)?;
            let sequence = resolve_sequence(seq, &file_cfg.sequence, seed)?;
            let report = blaschke_sum(&sequence, &h)?;
            let mut out = String::new();
            out.push_str(&format!("weight = \"{}\"\n", h.describe()));
            out.push_str(&format!("partial_sum = {}\n", sig(report.partial_sum)));
            out.push_str(&format!("terms = {}\n", report.terms));
            out.push_str(&format!("extended_terms = {}\n", report.extended_terms));
            out.push_str(&format!("tail_bound = {}\n", opt_sig(report.tail_bound)));
            out.push_str(&format!("verdict = \"{}\"\n", report.verdict));
            fs::write(out_dir.join("check.txt"), out)?;
            println!(
                "sum h(1-r_n) = {} over {} zeros: {}",
                sig(report.partial_sum),
                report.terms,
                report.verdict
            );
            Ok(if report.verdict == Convergence::Divergent {
                Outcome::Fail
            } else {
                Outcome::Pass
            })
        }
        Command::Eval { re, im, seq } => {
            let sequence = resolve_sequence(seq, &file_cfg.sequence, seed)?;
            let eval = eval_b(&sequence, Complex64::new(*re, *im))?;
            println!(
                "B(z) = {} + {} i  (|B| = {}, tail bound {}, {} factors)",
                sig(eval.value.re),
                sig(eval.value.im),
                sig(eval.value.norm()),
                opt_sig(eval.tail_bound),
                eval.terms_used
            );
            Ok(Outcome::Pass)
        }
        Command::Logderiv { re, im, seq } => {
            let sequence = resolve_sequence(seq, &file_cfg.sequence, seed)?;
            let eval = eval_logderiv(&sequence, Complex64::new(*re, *im))?;
            println!(
                "B'/B(z) = {} + {} i  (|B'/B| = {}, tail bound {}, {} terms)",
                sig(eval.value.re),
                sig(eval.value.im),
                sig(eval.value.norm()),
                opt_sig(eval.tail_bound),
                eval.terms_used
            );
            Ok(Outcome::Pass)
        }
        Command::ExsetCircular { beta, weight, seq } => {
            let h = resolve_weight(weight, &file_cfg.weight)?;
            let sequence = resolve_sequence(seq, &file_cfg.sequence, seed)?;
            let beta = beta.or(file_cfg.run.beta).unwrap_or(1.0);
            let set = IntervalSet::build_circular(&sequence, &h, beta)?;
            let path = out_dir.join("exset_circular.txt");
            fs::write(&path, set.to_text())?;
            println!(
                "{} intervals ({} zeros, {} dropped), measure {}, weighted measure {}",
                set.len(),
                set.raw_count(),
                set.dropped(),
                sig(set.total_measure()),
                sig(set.weighted_measure(beta)?)
            );
            println!("wrote {}", path.display());
            Ok(Outcome::Pass)
        }
        Command::ExsetRadial { aperture, seq } => {
            let sequence = resolve_sequence(seq, &file_cfg.sequence, seed)?;
            let aperture = aperture.or(file_cfg.run.aperture).unwrap_or(2.0);
            let arcs = RadialArcs::build(&sequence, aperture)?;
            let path = out_dir.join("exset_radial.txt");
            fs::write(&path, arcs.to_text())?;
            let tail = arcs.tail_measure(1)?;
            println!(
                "{} arcs, projection constant {}, full measure {} (crude bound {})",
                arcs.len(),
                sig(arcs.projection_constant()),
                sig(tail.measure),
                sig(tail.crude_bound)
            );
            println!("wrote {}", path.display());
            Ok(Outcome::Pass)
        }
        Command::VerifyCircular {
            beta,
            weight,
            seq,
            ladder,
        } => {
            let h = resolve_weight(weight, &file_cfg.weight)?;
            let sequence = resolve_sequence(seq, &file_cfg.sequence, seed)?;
            let beta = beta.or(file_cfg.run.beta).unwrap_or(1.0);
            let plan = resolve_ladder(ladder, &file_cfg.run)?;
            let angles = angle_grid(&sequence, plan.angle_fill);
            let report = verify_circular(&sequence, &h, beta, &plan.radii, &angles, plan.epsilon)?;
            let (report_path, _) =
                write_report_pair(&out_dir, "circular", "circular growth report", &h, Some(beta), &report)?;
            print_growth_outcome("circular", &report, &report_path);
            Ok(if report.pass() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::VerifyRadial {
            aperture,
            theta,
            n_start,
            weight,
            seq,
            ladder,
        } => {
            let h = resolve_weight(weight, &file_cfg.weight)?;
            let sequence = resolve_sequence(seq, &file_cfg.sequence, seed)?;
            let aperture = aperture.or(file_cfg.run.aperture).unwrap_or(2.0);
            let theta = theta.or(file_cfg.run.theta).unwrap_or(0.0);
            let n_start = n_start.or(file_cfg.run.n_start).unwrap_or(1);
            let plan = resolve_ladder(ladder, &file_cfg.run)?;
            let report = verify_radial(
                &sequence, &h, theta, n_start, &plan.radii, aperture, plan.epsilon,
            )?;
            let (report_path, _) =
                write_report_pair(&out_dir, "radial", "radial growth report", &h, None, &report)?;
            print_growth_outcome("radial", &report, &report_path);
            Ok(if report.pass() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::VerifyDensity {
            beta,
            weight,
            seq,
            ladder,
        } => {
            let h = resolve_weight(weight, &file_cfg.weight)?;
            let sequence = resolve_sequence(seq, &file_cfg.sequence, seed)?;
            let beta = beta.or(file_cfg.run.beta).unwrap_or(1.0);
            let plan = resolve_ladder(ladder, &file_cfg.run)?;
            let angles = angle_grid(&sequence, plan.angle_fill);
            let report = verify_density(&sequence, &h, beta, &plan.radii, &angles, plan.epsilon)?;
            let (report_path, _) = write_report_pair(
                &out_dir,
                "density",
                "two-parameter growth report",
                &h,
                Some(beta),
                &report,
            )?;
            print_growth_outcome("two-parameter", &report, &report_path);
            Ok(if report.pass() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Sweep {
            beta,
            weight,
            seq,
            ladder,
        } => {
            let sw = &file_cfg.sweep;
            let ratios = match seq.c {
                Some(c) => vec![c],
                None => sw.ratios.clone().unwrap_or_else(|| vec![0.5]),
            };
            let alphas = match weight.alpha {
                Some(a) => vec![a],
                None => sw.alphas.clone().unwrap_or_else(|| vec![0.5]),
            };
            let betas = match beta {
                Some(b) => vec![*b],
                None => sw.betas.clone().unwrap_or_else(|| vec![1.0]),
            };
            if ratios.is_empty() || alphas.is_empty() || betas.is_empty() {
                return Err(Error::Config(
                    "sweep grid axes (ratios, alphas, betas) must be non-empty".into(),
                ));
            }
            let count = seq.count.or(sw.count).unwrap_or(20);
            let rule = parse_angle_rule(
                seq.angles
                    .as_deref()
                    .or(file_cfg.sequence.angles.as_deref())
                    .unwrap_or("golden"),
                seq.zero_angle.or(file_cfg.sequence.zero_angle),
                seed,
            )?;
            let log_exponents = weight
                .log_exponents
                .clone()
                .or_else(|| file_cfg.weight.log_exponents.clone())
                .unwrap_or_default();
            let plan = resolve_ladder(ladder, &file_cfg.run)?;
            let mut cases = Vec::new();
            for &c in &ratios {
                for &a in &alphas {
                    for &b in &betas {
                        cases.push(SweepCase {
                            label: format!("geometric-{c}-alpha-{a}-beta-{b}"),
                            seq: ZeroSequence::gen_geometric(c, count, rule)?,
                            weight: WeightFunction::new(a, log_exponents.clone())?,
                            beta: b,
                            mode: SweepMode::Circular,
                        });
                    }
                }
            }
            let rows = verify::sweep(&cases, &plan.radii, plan.angle_fill, plan.epsilon);
            // Epsilon probe on the first family of the grid: geometric
            // sequences are interpolating (1 - r_{n+1} = c (1 - r_n)), the
            // shrinking-slack question's natural habitat. The probe reports
            // the observed margin structure; no claim is attached.
            let eps_ladder = sw
                .epsilon_ladder
                .clone()
                .unwrap_or_else(|| vec![0.5, 0.4, 0.3, 0.2, 0.1]);
            let probe_row = match epsilon_probe(
                &cases[0].seq,
                &cases[0].weight,
                cases[0].beta,
                &plan.radii,
                plan.angle_fill,
                &eps_ladder,
            ) {
                Ok(probe) => SweepRow {
                    label: format!("epsilon-probe-{}", cases[0].label),
                    weight: cases[0].weight.describe(),
                    beta: cases[0].beta,
                    fitted_slope: Some(probe.fitted_slope),
                    predicted: Some(probe.predicted_exponent),
                    margin: probe.smallest_passing,
                    verdict: match probe.smallest_passing {
                        Some(e) => format!("probe: smallest passing epsilon {}", sig(e)),
                        None => "probe: no ladder epsilon passes".into(),
                    },
                },
                Err(e) => SweepRow {
                    label: format!("epsilon-probe-{}", cases[0].label),
                    weight: cases[0].weight.describe(),
                    beta: cases[0].beta,
                    fitted_slope: None,
                    predicted: None,
                    margin: None,
                    verdict: format!("error: {e}"),
                },
            };
            let mut out =
                String::from("label\tweight\tbeta\tfitted_slope\tpredicted\tmargin\tverdict\n");
            for row in &rows {
                out.push_str(&sweep_row_line(row));
            }
            out.push_str(&sweep_row_line(&probe_row));
            let path = out_dir.join("sweep.tsv");
            fs::write(&path, out)?;
            let passed = rows.iter().filter(|r| r.verdict == "pass").count();
            println!(
                "sweep: {passed}/{} rows pass; probe: {}; wrote {}",
                rows.len(),
                probe_row.verdict,
                path.display()
            );
            Ok(if passed == rows.len() {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
    }
}

fn print_growth_outcome(kind: &str, report: &GrowthReport, path: &Path) {
    println!(
        "{kind}: fitted slope {} vs predicted {} + epsilon {} -> {} (margin {}); wrote {}",
        sig(report.fitted_slope),
        sig(report.predicted_exponent),
        sig(report.epsilon_margin),
        if report.pass() { "pass" } else { "fail" },
        sig(report.margin()),
        path.display()
    );
}
