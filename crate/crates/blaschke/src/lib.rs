//! Blaschke products in the unit disc: zero-sequence generators, weighted
//! Blaschke conditions, the logarithmic-derivative series, circular and
//! radial exceptional sets, and growth-rate verification harnesses.
//!
//! The crate is organized around five layers:
//!
//! - [`weights`] — admissible weight functions `h` (power times iterated-log
//!   factors, or tabulated data) with monotonicity certificates.
//! - [`zeros`] — zero sequences, generators, the counting function `n(t)`,
//!   and convergence diagnostics for `sum h(1 - |z_n|)`.
//! - [`product`] — evaluation of `B(z)` and `B'(z)/B(z)` with certified
//!   truncation tails and the near/far series split.
//! - [`exceptional`] — the circular exceptional set `E` of radius intervals
//!   and the radial arc system with limsup-tail queries.
//! - [`verify`] — sampling harnesses that fit growth exponents and check the
//!   predicted rates off the exceptional sets.
//!
//! The `blaschke` binary exposes all of it behind a config-driven CLI; see
//! [`cli`].

pub mod cli;
pub mod exceptional;
pub mod product;
pub mod sum;
pub mod verify;
pub mod weights;
pub mod zeros;

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors across all modules: construction, domain, parsing, and harness
/// preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alpha must lie in (0, 1], got {0}")]
    AlphaRange(f64),
    #[error("with alpha = 1 the first nonzero log exponent must be positive, got {0}")]
    LeadingLogExponent(f64),
    #[error("almost-monotone constant must be >= 1, got {0}")]
    AlmostConstantRange(f64),
    #[error("log exponent stack too deep: the weight domain collapses below f64 range")]
    DomainCollapse,
    #[error("weight exponents must be finite")]
    NonFiniteExponent,
    #[error("t = {t} outside the weight domain (0, {cutoff})")]
    WeightDomain { t: f64, cutoff: f64 },
    #[error("transfer ratio needs s <= t, got s = {s}, t = {t}")]
    TransferOrder { s: f64, t: f64 },
    #[error("admissibility grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),
    #[error("tabulated weight needs at least 2 strictly increasing abscissae in (0, 1) and positive values")]
    BadTable,

    #[error("geometric ratio must lie in (0, 1), got {0}")]
    GeometricRatio(f64),
    #[error("power-law exponent must be positive, got {0}")]
    PowerLawExponent(f64),
    #[error("zero count must be at least 1")]
    EmptyCount,
    #[error("zero sequence is empty")]
    EmptySequence,
    #[error("radius must lie in [0, 1), got {r}{}", at_line(*.line))]
    RadiusRange { r: f64, line: Option<usize> },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("density sample needs 0 < delta < min(r, 1 - r), got r = {r}, delta = {delta}")]
    DensityWindow { r: f64, delta: f64 },

    #[error("evaluation point must satisfy |z| < 1, got |z| = {0}")]
    OutsideDisc(f64),
    #[error("sequence contains a zero at the origin; the normalized factor |z_n|/z_n is undefined there")]
    OriginZero,
    #[error("z coincides with zero #{index} (distance {dist:e} below the pole guard)")]
    PoleAt { index: usize, dist: f64 },
    #[error("delta must lie in (0, (1 - |z|)/2], got delta = {delta} with |z| = {abs_z}")]
    DeltaRange { delta: f64, abs_z: f64 },

    #[error("beta must be >= 1, got {0}")]
    BetaRange(f64),
    #[error("aperture must be > 1, got {0}")]
    ApertureRange(f64),
    #[error("interval reaches t = 1: the weighted measure diverges")]
    DegenerateInterval,
    #[error("tail start {n} exceeds the number of arcs {len}")]
    TailIndex { n: usize, len: usize },

    #[error("exponent fit needs at least {need} samples, got {got}")]
    InsufficientSamples { need: usize, got: usize },
    #[error("exponent fit needs strictly positive measurements")]
    NonPositiveSample,
    #[error("exponent fit needs at least two distinct radii")]
    DegenerateFit,
    #[error("no non-exceptional radius within the factor-2 gap window above r = {0}")]
    ExceptionalSaturated(f64),
    #[error("theta = {0} lies in the radial arc tail; pick a direction off the exceptional set")]
    ThetaInArcTail(f64),
    #[error("radius ladder k range is empty or reversed: {k_min}..={k_max}")]
    EmptyLadder { k_min: u32, k_max: u32 },

    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn at_line(line: Option<usize>) -> String {
    match line {
        Some(n) => format!(" (line {n})"),
        None => String::new(),
    }
}
