//! Growth-estimate verification: samples the disc while avoiding the
//! exceptional sets, measures `|B'/B|`, fits the growth exponent, and checks
//! the decay/boundedness trends the estimates predict.
//!
//! - Circular check: `M(r) = max_theta |B'/B|(r e^{i theta})` at radii off
//!   the circular exceptional set; `M(r) (1-r)^beta h(1-r)^2` must decay.
//! - Radial check: along a fixed ray off the tail of the arc family;
//!   `|B'/B|(r e^{i theta}) (1-r) h(1-r)` must decay, and the three-way
//!   split at `R = (1+r)/2` reconstructs the series with certified bounds.
//! - Sharper two-parameter check: with the density condition and the
//!   variance-scaled split radius, `M(r) (1-r)^{(1+beta)/2} h(1-r)^{3/2}`
//!   must stay bounded (not necessarily decay).

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::exceptional::{IntervalSet, RadialArcs};
use crate::product::{
    eval_logderiv, eval_logderiv_split, logderiv_terms, density_delta, SplitEvaluation,
};
use crate::sum::{sum_complex_descending, NeumaierSum};
use crate::weights::{Weight, WeightFunction};
use crate::zeros::{density_condition_check, ZeroSequence};
use crate::{Error, Result};

/// Default slack added to the predicted exponent before comparing the fit.
pub const DEFAULT_EPSILON: f64 = 0.5;
/// Default number of equispaced fill angles added to the zero angles.
pub const DEFAULT_ANGLE_FILL: usize = 512;

/// Per-sample diagnostic attached to a growth measurement.
#[derive(Clone, Debug)]
pub enum SampleDetail {
    None,
    /// Near/far split of the series at radius gap `delta` (circular and
    /// two-parameter checks). Sums are absolute values; bounds use the
    /// run-level empirical constants.
    Split {
        far_sum: f64,
        near_sum: f64,
        far_bound: f64,
        near_bound: f64,
        delta: f64,
        near_count: usize,
        /// `|far + near - direct| / |direct|`.
        partition_error: f64,
    },
    /// Three-way split along a ray at `R = (1+r)/2`: deep tail zeros
    /// (`r_n >= R`, index >= N), shallow tail zeros (`r_n < R`, index >= N),
    /// and the finite head (index < N).
    RadialSplit {
        deep_sum: f64,
        shallow_sum: f64,
        head_sum: f64,
        deep_bound: f64,
        shallow_bound: f64,
        /// `|S1 + S2 + S3 - direct| / |direct|`.
        partition_error: f64,
    },
}

/// One measured radius.
#[derive(Clone, Debug)]
pub struct GrowthSample {
    /// Radius actually evaluated (after any exceptional-set nudge).
    pub r: f64,
    /// `max |B'/B|` over the angle grid (circular), or the single ray value.
    pub measured: f64,
    /// `measured` times the normalization of the estimate under test.
    pub normalized: f64,
    /// Nudge steps of size `(1-r)/64` taken to leave the exceptional set.
    pub nudges: usize,
    /// True when any weight evaluation fell back to the boundary extension.
    pub weight_extended: bool,
    pub detail: SampleDetail,
}

/// Full result of one verification run.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    /// Sorted by radius, every radius off the relevant exceptional set.
    pub samples: Vec<GrowthSample>,
    /// Least-squares slope of `log M` against `log 1/(1-r)`.
    pub fitted_slope: f64,
    /// Root-mean-square residual of that fit.
    pub fit_residual: f64,
    /// The estimate's rate: `beta + 2 alpha` (circular), `1 + alpha`
    /// (radial), `(1+beta)/2 + 1.5 alpha` (two-parameter).
    pub predicted_exponent: f64,
    /// Slack added to the predicted exponent.
    pub epsilon_margin: f64,
    /// `fitted_slope <= predicted_exponent + epsilon_margin`.
    pub slope_ok: bool,
    /// The decay (or boundedness) trend of the normalized values.
    pub trend_ok: bool,
    /// False when a precondition (e.g. the density condition) failed; the
    /// run still reports its measurements.
    pub applicable: bool,
    pub notes: Vec<String>,
}

impl GrowthReport {
    /// Overall verdict.
    pub fn pass(&self) -> bool {
        self.applicable && self.slope_ok && self.trend_ok
    }

    /// Slack left under the allowed exponent: `predicted + epsilon - fitted`.
    pub fn margin(&self) -> f64 {
        self.predicted_exponent + self.epsilon_margin - self.fitted_slope
    }
}

/// Geometric radius ladder `r_k = 1 - 2^{-k}`, `k = k_min ..= k_max`.
pub fn radius_ladder(k_min: u32, k_max: u32) -> Result<Vec<f64>> {
    if k_min > k_max {
        return Err(Error::EmptyLadder { k_min, k_max });
    }
    Ok((k_min..=k_max)
        .map(|k| 1.0 - 0.5f64.powi(k as i32))
        .collect())
}

/// Angle grid: every zero angle, plus `fill` equispaced angles. The zero
/// angles are where `|B'/B|` peaks, so they are always sampled exactly.
pub fn angle_grid(seq: &ZeroSequence, fill: usize) -> Vec<f64> {
    let mut grid: Vec<f64> = seq.zeros().iter().map(|&(_, theta)| theta).collect();
    grid.extend((0..fill).map(|i| TAU * i as f64 / fill as f64));
    grid
}

/// Ordinary least squares of `log M` against `log 1/(1-r)`.
/// Returns `(slope, rms_residual)`.
pub fn fit_exponent(samples: &[(f64, f64)]) -> Result<(f64, f64)> {
    if samples.len() < 4 {
        return Err(Error::InsufficientSamples {
            need: 4,
            got: samples.len(),
        });
    }
    let mut xs = Vec::with_capacity(samples.len());
    let mut ys = Vec::with_capacity(samples.len());
    for &(r, m) in samples {
        if !(r < 1.0) {
            return Err(Error::RadiusRange { r, line: None });
        }
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::NonPositiveSample);
        }
        xs.push((1.0 / (1.0 - r)).ln());
        ys.push(m.ln());
    }
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - xbar) * (x - xbar);
        sxy += (x - xbar) * (y - ybar);
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateFit);
    }
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let mut sq = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        let d = y - (intercept + slope * x);
        sq += d * d;
    }
    Ok((slope, (sq / n).sqrt()))
}

/// Machine-checkable surrogate for "tends to zero": the values are
/// nonincreasing over the last half of the ladder (tiny relative slack for
/// rounding) and the final value is at most half the initial one.
pub fn decays_to_zero(values: &[f64]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let tail = &values[n / 2..];
    let monotone = tail
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + 1e-12));
    monotone && values[n - 1] <= 0.5 * values[0]
}

/// Machine-checkable surrogate for "stays bounded": the maximum over the
/// last half of the ladder is at most twice the (upper) median of the first
/// half.
pub fn stays_bounded(values: &[f64]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let mut first: Vec<f64> = values[..n / 2].to_vec();
    first.sort_by(f64::total_cmp);
    let median = first[first.len() / 2];
    let max_tail = values[n / 2..]
        .iter()
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    max_tail <= 2.0 * median
}

#[derive(Clone, Copy)]
enum TrendRule {
    Decay,
    Bounded,
}

fn trend_holds(rule: TrendRule, values: &[f64]) -> bool {
    match rule {
        TrendRule::Decay => decays_to_zero(values),
        TrendRule::Bounded => stays_bounded(values),
    }
}

/// First radius of the form `r + j (1-r)/64`, `j <= 32`, outside the set.
fn nudge_off(set: &IntervalSet, r: f64) -> Result<(f64, usize)> {
    for j in 0..=32usize {
        let candidate = r + j as f64 * (1.0 - r) / 64.0;
        if !set.contains(candidate) {
            return Ok((candidate, j));
        }
    }
    Err(Error::ExceptionalSaturated(r))
}

/// Raw per-radius measurement before run-level constants are fixed.
struct SplitSampleRaw {
    r: f64,
    nudges: usize,
    measured: f64,
    h_z: f64,
    pow_z: f64,
    extended: bool,
    clamped: bool,
    partition_error: f64,
    split: SplitEvaluation,
}

fn split_sample<F>(
    seq: &ZeroSequence,
    h: &WeightFunction,
    beta: f64,
    e_set: &IntervalSet,
    angles: &[f64],
    r: f64,
    delta_rule: &F,
) -> Result<SplitSampleRaw>
where
    F: Fn(f64) -> Result<(f64, bool)> + Sync,
{
    let (r_used, nudges) = nudge_off(e_set, r)?;
    let mut best_v = -1.0f64;
    let mut best_theta = angles[0];
    for &theta in angles {
        let v = eval_logderiv(seq, Complex64::from_polar(r_used, theta))?
            .value
            .norm();
        if v > best_v {
            best_v = v;
            best_theta = theta;
        }
    }
    let gap = 1.0 - r_used;
    let (h_z, ext) = h.eval_or_boundary(gap)?;
    let z_best = Complex64::from_polar(r_used, best_theta);
    // The split evaluation checks delta against the reconstructed |z|,
    // which can land an ulp off the polar radius; deriving delta from that
    // same norm keeps the boundary case `delta = (1-|z|)/2` exactly legal.
    let (delta, clamped) = delta_rule(z_best.norm())?;
    let split = eval_logderiv_split(seq, z_best, delta, h, beta)?;
    let direct = eval_logderiv(seq, z_best)?.value;
    let partition_error =
        (split.total() - direct).norm() / direct.norm().max(f64::MIN_POSITIVE);
    Ok(SplitSampleRaw {
        r: r_used,
        nudges,
        measured: best_v,
        h_z,
        pow_z: gap.powf(beta),
        extended: ext || split.weight_extended,
        clamped,
        partition_error,
        split,
    })
}

fn assemble_split_report(
    mut raws: Vec<SplitSampleRaw>,
    normalize: impl Fn(&SplitSampleRaw) -> f64,
    predicted: f64,
    epsilon: f64,
    trend: TrendRule,
    applicable: bool,
    mut notes: Vec<String>,
) -> Result<GrowthReport> {
    raws.sort_by(|a, b| a.r.total_cmp(&b.r));
    // Empirical constants are fixed once per run: the far constant is
    // sample-independent by construction, the near constant is the run
    // maximum of the per-sample transfer factors.
    let run_far = raws.first().map(|s| s.split.far_constant).unwrap_or(0.0);
    let run_near = raws
        .iter()
        .map(|s| s.split.near_constant)
        .fold(0.0, f64::max);
    notes.push(format!(
        "empirical constants (fixed across samples): far {run_far:.16e}, near {run_near:.16e}"
    ));
    let total_nudges: usize = raws.iter().map(|s| s.nudges).sum();
    if total_nudges > 0 {
        notes.push(format!("exceptional-set nudge steps: {total_nudges}"));
    }
    if raws.iter().any(|s| s.extended) {
        notes.push("weight extended by its boundary value at some samples".into());
    }
    if raws.iter().any(|s| s.clamped) {
        notes.push("split delta clamped to (1-r)/2 at some samples".into());
    }
    let samples: Vec<GrowthSample> = raws
        .iter()
        .map(|raw| {
            let near_bound = if raw.split.near_count == 0 {
                0.0
            } else {
                run_near * raw.split.near_count as f64 / (raw.pow_z * raw.h_z)
            };
            GrowthSample {
                r: raw.r,
                measured: raw.measured,
                normalized: normalize(raw),
                nudges: raw.nudges,
                weight_extended: raw.extended,
                detail: SampleDetail::Split {
                    far_sum: raw.split.far_sum.norm(),
                    near_sum: raw.split.near_sum.norm(),
                    far_bound: raw.split.far_bound,
                    near_bound,
                    delta: raw.split.delta,
                    near_count: raw.split.near_count,
                    partition_error: raw.partition_error,
                },
            }
        })
        .collect();
    let pairs: Vec<(f64, f64)> = samples.iter().map(|s| (s.r, s.measured)).collect();
    let (fitted_slope, fit_residual) = fit_exponent(&pairs)?;
    let values: Vec<f64> = samples.iter().map(|s| s.normalized).collect();
    Ok(GrowthReport {
        trend_ok: trend_holds(trend, &values),
        slope_ok: fitted_slope <= predicted + epsilon,
        samples,
        fitted_slope,
        fit_residual,
        predicted_exponent: predicted,
        epsilon_margin: epsilon,
        applicable,
        notes,
    })
}

/// Circular growth check: `M(r) (1-r)^beta h(1-r)^2` must decay along the
/// ladder of radii off the circular exceptional set.
///
/// `radii` should increase toward 1 (e.g. [`radius_ladder`]); any radius
/// inside the exceptional set is nudged outward by steps of `(1-r)/64` (at
/// most 32, else the run fails loudly). `angles` should include the zero
/// angles plus equispaced fill (see [`angle_grid`]).
pub fn verify_circular(
    seq: &ZeroSequence,
    h: &WeightFunction,
    beta: f64,
    radii: &[f64],
    angles: &[f64],
    epsilon: f64,
) -> Result<GrowthReport> {
    if !(beta >= 1.0) {
        return Err(Error::BetaRange(beta));
    }
    if angles.is_empty() {
        return Err(Error::Config("angle grid is empty".into()));
    }
    let e_set = IntervalSet::build_circular(seq, h, beta)?;
    let delta_rule = |abs_z: f64| -> Result<(f64, bool)> { Ok(((1.0 - abs_z) / 2.0, false)) };
    let raws: Vec<SplitSampleRaw> = radii
        .par_iter()
        .map(|&r| split_sample(seq, h, beta, &e_set, angles, r, &delta_rule))
        .collect::<Result<_>>()?;
    let notes = vec![format!(
        "exceptional set: {} intervals ({} zeros, {} dropped)",
        e_set.len(),
        e_set.raw_count(),
        e_set.dropped()
    )];
    assemble_split_report(
        raws,
        |raw| raw.measured * raw.pow_z * raw.h_z * raw.h_z,
        beta + 2.0 * h.alpha(),
        epsilon,
        TrendRule::Decay,
        true,
        notes,
    )
}

/// Sharper two-parameter check under the zero-density condition: with the
/// split radius `delta = (1-r)^{(1+beta)/2} h(1-r)^{1/2}`, the quantity
/// `M(r) (1-r)^{(1+beta)/2} h(1-r)^{3/2}` must stay bounded.
///
/// When the density condition cannot be evaluated, or some requested radius
/// has an inadmissible split radius, the report is marked inapplicable but
/// still carries its measurements.
pub fn verify_density(
    seq: &ZeroSequence,
    h: &WeightFunction,
    beta: f64,
    radii: &[f64],
    angles: &[f64],
    epsilon: f64,
) -> Result<GrowthReport> {
    if !(beta >= 1.0) {
        return Err(Error::BetaRange(beta));
    }
    if angles.is_empty() {
        return Err(Error::Config("angle grid is empty".into()));
    }
    let e_set = IntervalSet::build_circular(seq, h, beta)?;
    let mut notes = Vec::new();
    let mut applicable = true;
    let mut windows = Vec::with_capacity(radii.len());
    let mut unusable = 0usize;
    for &r in radii {
        let d = density_delta(h, beta, r)?;
        if d.usable {
            windows.push((r, d.delta));
        } else {
            unusable += 1;
        }
    }
    if unusable > 0 {
        applicable = false;
        notes.push(format!(
            "{unusable} radii have split delta above (1-r)/2; the sharper estimate does not apply there"
        ));
    }
    let density = density_condition_check(seq, &windows)?;
    match density.max_ratio {
        Some(c) => notes.push(format!(
            "empirical density constant {c:.16e} over {} windows ({} skipped)",
            windows.len(),
            density.skipped
        )),
        None => {
            applicable = false;
            notes.push("density condition could not be evaluated (no usable windows)".into());
        }
    }
    let delta_rule = |abs_z: f64| -> Result<(f64, bool)> {
        let d = density_delta(h, beta, abs_z)?;
        let cap = (1.0 - abs_z) / 2.0;
        if d.delta <= cap {
            Ok((d.delta, false))
        } else {
            Ok((cap, true))
        }
    };
    let raws: Vec<SplitSampleRaw> = radii
        .par_iter()
        .map(|&r| split_sample(seq, h, beta, &e_set, angles, r, &delta_rule))
        .collect::<Result<_>>()?;
    let exp_r = (1.0 + beta) / 2.0;
    assemble_split_report(
        raws,
        |raw| raw.measured * (1.0 - raw.r).powf(exp_r) * raw.h_z.powf(1.5),
        exp_r + 1.5 * h.alpha(),
        epsilon,
        TrendRule::Bounded,
        applicable,
        notes,
    )
}

fn radial_sample(
    seq: &ZeroSequence,
    h: &WeightFunction,
    theta: f64,
    n_start: usize,
    aperture: f64,
    k_const: f64,
    r: f64,
) -> Result<GrowthSample> {
    if !(0.0 < r && r < 1.0) {
        return Err(Error::RadiusRange { r, line: None });
    }
    let z = Complex64::from_polar(r, theta);
    let terms = logderiv_terms(seq, z)?;
    let direct = sum_complex_descending(&terms);
    let r_split = 0.5 * (1.0 + r);
    let mut deep = Vec::new();
    let mut shallow = Vec::new();
    let mut head = Vec::new();
    let mut deep_h = NeumaierSum::new();
    let mut extended = false;
    for (idx, (&term, &(rn, _))) in terms.iter().zip(seq.zeros()).enumerate() {
        if idx + 1 < n_start {
            head.push(term);
        } else if rn >= r_split {
            let (hv, ext) = h.eval_or_boundary(1.0 - rn)?;
            extended |= ext;
            deep_h.add(hv);
            deep.push(term);
        } else {
            shallow.push(term);
        }
    }
    let (h_r, ext_r) = h.eval_or_boundary(1.0 - r)?;
    extended |= ext_r;
    let s1 = sum_complex_descending(&deep);
    let s2 = sum_complex_descending(&shallow);
    let s3 = sum_complex_descending(&head);
    let measured = direct.norm();
    let partition_error =
        ((s1 + s2 + s3) - direct).norm() / measured.max(f64::MIN_POSITIVE);
    Ok(GrowthSample {
        r,
        measured,
        normalized: measured * (1.0 - r) * h_r,
        nudges: 0,
        weight_extended: extended,
        detail: SampleDetail::RadialSplit {
            deep_sum: s1.norm(),
            shallow_sum: s2.norm(),
            head_sum: s3.norm(),
            deep_bound: 2.0 * aperture * k_const * deep_h.total() / ((1.0 - r) * h_r),
            shallow_bound: 2.0 * aperture * shallow.len() as f64 / (1.0 - r),
            partition_error,
        },
    })
}

/// Radial growth check along the ray at angle `theta`, which must avoid the
/// tail `{arc #n_start, ...}` of the aperture projection: `|B'/B| (1-r)
/// h(1-r)` must decay, and the three partial sums split at `R = (1+r)/2`
/// must reconstruct the series and respect their bounds.
pub fn verify_radial(
    seq: &ZeroSequence,
    h: &WeightFunction,
    theta: f64,
    n_start: usize,
    radii: &[f64],
    aperture: f64,
    epsilon: f64,
) -> Result<GrowthReport> {
    if n_start == 0 || n_start > seq.len() {
        return Err(Error::TailIndex {
            n: n_start,
            len: seq.len(),
        });
    }
    let arcs = RadialArcs::build(seq, aperture)?;
    if arcs.membership_from(theta, n_start) {
        return Err(Error::ThetaInArcTail(theta));
    }
    let k_const = h.almost_constant();
    let mut samples: Vec<GrowthSample> = radii
        .par_iter()
        .map(|&r| radial_sample(seq, h, theta, n_start, aperture, k_const, r))
        .collect::<Result<_>>()?;
    samples.sort_by(|a, b| a.r.total_cmp(&b.r));
    let degenerate = arcs.arcs().iter().filter(|a| a.degenerate).count();
    let mut notes = vec![format!(
        "arc family: {} arcs, projection constant {:.16e}",
        arcs.len(),
        arcs.projection_constant()
    )];
    if degenerate > 0 {
        notes.push(format!("{degenerate} degenerate arcs (aperture * radius < 1)"));
    }
    let pairs: Vec<(f64, f64)> = samples.iter().map(|s| (s.r, s.measured)).collect();
    let (fitted_slope, fit_residual) = fit_exponent(&pairs)?;
    let values: Vec<f64> = samples.iter().map(|s| s.normalized).collect();
    let predicted = 1.0 + h.alpha();
    Ok(GrowthReport {
        trend_ok: trend_holds(TrendRule::Decay, &values),
        slope_ok: fitted_slope <= predicted + epsilon,
        samples,
        fitted_slope,
        fit_residual,
        predicted_exponent: predicted,
        epsilon_margin: epsilon,
        applicable: true,
        notes,
    })
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// How a sweep row is verified.
#[derive(Clone, Debug)]
pub enum SweepMode {
    Circular,
    Radial {
        theta: f64,
        n_start: usize,
        aperture: f64,
    },
}

/// One sweep combination.
#[derive(Clone, Debug)]
pub struct SweepCase {
    pub label: String,
    pub seq: ZeroSequence,
    pub weight: WeightFunction,
    pub beta: f64,
    pub mode: SweepMode,
}

/// One sweep outcome; numeric fields are `None` when the row errored.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub label: String,
    pub weight: String,
    pub beta: f64,
    pub fitted_slope: Option<f64>,
    pub predicted: Option<f64>,
    pub margin: Option<f64>,
    pub verdict: String,
}

fn run_case(
    case: &SweepCase,
    radii: &[f64],
    angle_fill: usize,
    epsilon: f64,
) -> Result<GrowthReport> {
    match case.mode {
        SweepMode::Circular => {
            let angles = angle_grid(&case.seq, angle_fill);
            verify_circular(&case.seq, &case.weight, case.beta, radii, &angles, epsilon)
        }
        SweepMode::Radial {
            theta,
            n_start,
            aperture,
        } => verify_radial(
            &case.seq,
            &case.weight,
            theta,
            n_start,
            radii,
            aperture,
            epsilon,
        ),
    }
}

/// Run every case, recording per-row failures instead of aborting.
pub fn sweep(cases: &[SweepCase], radii: &[f64], angle_fill: usize, epsilon: f64) -> Vec<SweepRow> {
    cases
        .iter()
        .map(|case| match run_case(case, radii, angle_fill, epsilon) {
            Ok(report) => SweepRow {
                label: case.label.clone(),
                weight: case.weight.describe(),
                beta: case.beta,
                fitted_slope: Some(report.fitted_slope),
                predicted: Some(report.predicted_exponent),
                margin: Some(report.margin()),
                verdict: if report.pass() { "pass" } else { "fail" }.into(),
            },
            Err(e) => SweepRow {
                label: case.label.clone(),
                weight: case.weight.describe(),
                beta: case.beta,
                fitted_slope: None,
                predicted: None,
                margin: None,
                verdict: format!("error: {e}"),
            },
        })
        .collect()
}

/// Slack probe: one circular run, then the smallest epsilon in the ladder
/// that would still pass. No claim attached — the probe only reports the
/// observed margin structure.
#[derive(Clone, Debug)]
pub struct EpsilonProbe {
    pub fitted_slope: f64,
    pub predicted_exponent: f64,
    pub trend_ok: bool,
    pub ladder: Vec<f64>,
    pub smallest_passing: Option<f64>,
}

pub fn epsilon_probe(
    seq: &ZeroSequence,
    h: &WeightFunction,
    beta: f64,
    radii: &[f64],
    angle_fill: usize,
    epsilons: &[f64],
) -> Result<EpsilonProbe> {
    let angles = angle_grid(seq, angle_fill);
    let base = epsilons.first().copied().unwrap_or(DEFAULT_EPSILON);
    let report = verify_circular(seq, h, beta, radii, &angles, base)?;
    let smallest_passing = epsilons
        .iter()
        .copied()
        .filter(|&e| report.trend_ok && report.fitted_slope <= report.predicted_exponent + e)
        .fold(None, |acc: Option<f64>, e| {
            Some(acc.map_or(e, |a: f64| a.min(e)))
        });
    Ok(EpsilonProbe {
        fitted_slope: report.fitted_slope,
        predicted_exponent: report.predicted_exponent,
        trend_ok: report.trend_ok,
        ladder: epsilons.to_vec(),
        smallest_passing,
    })
}
