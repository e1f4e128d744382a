//! Zero sequences in the unit disc: generators, text-file round-trip, the
//! counting function `n(t)`, and convergence diagnostics for the weighted
//! condition `sum h(1 - r_n) < infinity`.
//!
//! Sequences are finite truncations; when the sequence comes from a known
//! generator the tag travels with it so downstream code can certify analytic
//! tail bounds for the omitted zeros.

use std::fmt;
use std::f64::consts::TAU;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sum::NeumaierSum;
use crate::weights::{Weight, WeightFunction};
use crate::{Error, Result};

/// Fractional part of the golden ratio, used by the golden-rotation rule.
pub const GOLDEN_FRAC: f64 = 0.618_033_988_749_894_9;

/// How angles are assigned to generated radii. Radial statements depend only
/// on the radii; the angle rules exist to stress the arc geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AngleRule {
    /// Every zero on the same ray.
    Constant(f64),
    /// `theta_n = 2 pi (n-1) / count`.
    Equidistributed,
    /// `theta_n = 2 pi frac(n * golden)` — maximally spread, never periodic.
    GoldenRotation,
    /// Uniform angles from a seeded ChaCha stream; reproducible per seed.
    Random { seed: u64 },
}

impl AngleRule {
    fn assign(&self, count: usize) -> Vec<f64> {
        match *self {
            AngleRule::Constant(theta) => vec![normalize_angle(theta); count],
            AngleRule::Equidistributed => (0..count)
                .map(|i| TAU * i as f64 / count as f64)
                .collect(),
            AngleRule::GoldenRotation => (1..=count)
                .map(|n| TAU * (n as f64 * GOLDEN_FRAC).fract())
                .collect(),
            AngleRule::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count).map(|_| rng.gen::<f64>() * TAU).collect()
            }
        }
    }
}

/// Analytic family behind a generated sequence; enables tail bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Generator {
    /// `1 - r_n = c^n` — boundary approach at a fixed geometric rate.
    Geometric { c: f64 },
    /// `1 - r_n = (n+1)^{-p}` — polynomial boundary approach. The index
    /// starts at 2 because `n = 1` would place a zero at the origin, where
    /// the normalized Blaschke factor is undefined.
    PowerLaw { p: f64 },
}

/// A finite, validated sequence of zeros `z_n = r_n e^{i theta_n}`.
#[derive(Clone, Debug)]
pub struct ZeroSequence {
    zeros: Vec<(f64, f64)>,
    sorted_radii: Vec<f64>,
    /// `sorted_index[i]` is the position in `zeros` of `sorted_radii[i]`.
    sorted_index: Vec<usize>,
    generator: Option<Generator>,
}

impl ZeroSequence {
    /// Build from explicit `(r, theta)` pairs. Radii must lie in `[0, 1)`;
    /// angles are normalized to `[0, 2 pi)`.
    pub fn from_zeros(zeros: Vec<(f64, f64)>) -> Result<Self> {
        Self::with_generator(zeros, None)
    }

    fn with_generator(mut zeros: Vec<(f64, f64)>, generator: Option<Generator>) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (r, theta) in &mut zeros {
            if !(*r >= 0.0 && *r < 1.0) || !r.is_finite() {
                return Err(Error::RadiusRange { r: *r, line: None });
            }
            *theta = normalize_angle(*theta);
        }
        let mut order: Vec<usize> = (0..zeros.len()).collect();
        order.sort_by(|&a, &b| zeros[a].0.total_cmp(&zeros[b].0));
        let sorted_radii = order.iter().map(|&i| zeros[i].0).collect();
        Ok(Self {
            zeros,
            sorted_radii,
            sorted_index: order,
            generator,
        })
    }

    /// Geometric family `1 - r_n = c^n`, `n = 1..=count`.
    pub fn gen_geometric(c: f64, count: usize, angles: AngleRule) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::GeometricRatio(c));
        }
        if count == 0 {
            return Err(Error::EmptyCount);
        }
        let thetas = angles.assign(count);
        let zeros = (1..=count)
            .map(|n| (1.0 - c.powi(n as i32), thetas[n - 1]))
            .collect();
        Self::with_generator(zeros, Some(Generator::Geometric { c }))
    }

    /// Power-law family `1 - r_n = (n+1)^{-p}`, `n = 1..=count`.
    pub fn gen_power_law(p: f64, count: usize, angles: AngleRule) -> Result<Self> {
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::PowerLawExponent(p));
        }
        if count == 0 {
            return Err(Error::EmptyCount);
        }
        let thetas = angles.assign(count);
        let zeros = (1..=count)
            .map(|n| (1.0 - ((n + 1) as f64).powf(-p), thetas[n - 1]))
            .collect();
        Self::with_generator(zeros, Some(Generator::PowerLaw { p }))
    }

    /// Read a sequence from a text file: one `r theta` pair per line, `#`
    /// comments and blank lines allowed.
    pub fn ingest(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_text(&text)
    }

    /// Parse the zero-file format from a string.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut zeros = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut parts = content.split_whitespace();
            let (r_tok, theta_tok) = match (parts.next(), parts.next(), parts.next()) {
                (Some(r), Some(t), None) => (r, t),
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected `r theta`, got {content:?}"),
                    })
                }
            };
            let r: f64 = r_tok.parse().map_err(|e| Error::Parse {
                line,
                msg: format!("bad radius {r_tok:?}: {e}"),
            })?;
            let theta: f64 = theta_tok.parse().map_err(|e| Error::Parse {
                line,
                msg: format!("bad angle {theta_tok:?}: {e}"),
            })?;
            if !(r >= 0.0 && r < 1.0) || !r.is_finite() {
                return Err(Error::RadiusRange { r, line: Some(line) });
            }
            if !theta.is_finite() {
                return Err(Error::Parse {
                    line,
                    msg: format!("angle must be finite, got {theta_tok}"),
                });
            }
            zeros.push((r, theta));
        }
        Self::from_zeros(zeros)
    }

    /// Render in the zero-file format: 17 significant digits so ingest
    /// recovers every bit.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# zeros: count={}\n", self.zeros.len()));
        out.push_str("# format: r theta (radians)\n");
        for (r, theta) in &self.zeros {
            out.push_str(&format!("{r:.16e} {theta:.16e}\n"));
        }
        out
    }

    /// Write the sequence to a file in the zero-file format.
    pub fn export(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.export_text())?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// `(r_n, theta_n)` in original order.
    pub fn zeros(&self) -> &[(f64, f64)] {
        &self.zeros
    }

    pub fn generator(&self) -> Option<Generator> {
        self.generator
    }

    /// The zeros as complex numbers, original order.
    pub fn complex_zeros(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.zeros
            .iter()
            .map(|&(r, theta)| Complex64::from_polar(r, theta))
    }

    /// Number of zeros sitting exactly at the origin (valid input, but the
    /// normalized Blaschke factor is undefined there; product evaluation
    /// rejects such sequences).
    pub fn origin_zeros(&self) -> usize {
        self.sorted_radii.iter().take_while(|r| **r == 0.0).count()
    }

    /// Radii in nondecreasing order.
    pub fn sorted_radii(&self) -> &[f64] {
        &self.sorted_radii
    }

    /// Original index of the zero at `sorted_radii[i]`.
    pub fn sorted_index(&self) -> &[usize] {
        &self.sorted_index
    }

    /// The counting function `n(t)`: number of zeros with `r_n <= t`.
    pub fn counting_fn(&self, t: f64) -> usize {
        self.sorted_radii.partition_point(|&r| r <= t)
    }

    /// Number of zeros with `r_n < t` (strict variant, used by radial
    /// splits where the threshold itself belongs to the other side).
    pub fn counting_fn_strict(&self, t: f64) -> usize {
        self.sorted_radii.partition_point(|&r| r < t)
    }

    /// First `n` zeros as a sequence, keeping the generator tag (a prefix
    /// of a generated family still follows the family law).
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySequence);
        }
        let n = n.min(self.zeros.len());
        Self::with_generator(self.zeros[..n].to_vec(), self.generator)
    }
}

fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can return TAU itself when theta is a tiny negative number.
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Convergence verdict for `sum h(1 - r_n)` over the full (infinite) family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convergence {
    Convergent,
    Divergent,
    /// No generator tag (or no decision rule for the weight): the partial
    /// sum alone cannot decide.
    Inconclusive,
}

impl fmt::Display for Convergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convergence::Convergent => "convergent",
            Convergence::Divergent => "divergent",
            Convergence::Inconclusive => "inconclusive",
        })
    }
}

/// Result of [`blaschke_sum`].
#[derive(Clone, Debug)]
pub struct SumReport {
    /// Compensated partial sum of `h(1 - r_n)` over the stored zeros.
    pub partial_sum: f64,
    /// Number of terms summed.
    pub terms: usize,
    /// Terms where `1 - r_n` fell at or beyond the weight's domain cutoff
    /// and `h` was extended by its boundary value.
    pub extended_terms: usize,
    /// Analytic bound on the omitted tail, when the generator family and
    /// weight admit one (geometric family with a pure power weight).
    pub tail_bound: Option<f64>,
    /// Convergence of the full series, decided from the generator tag and
    /// the weight's exponents.
    pub verdict: Convergence,
}

/// Sum `h(1 - r_n)` over the sequence with compensated accumulation, decide
/// convergence of the full family series, and bound the tail when possible.
pub fn blaschke_sum(seq: &ZeroSequence, h: &WeightFunction) -> Result<SumReport> {
    let mut acc = NeumaierSum::new();
    let mut extended_terms = 0usize;
    for &(r, _) in seq.zeros() {
        let (value, extended) = h.eval_or_boundary(1.0 - r)?;
        if extended {
            extended_terms += 1;
        }
        acc.add(value);
    }
    let verdict = series_verdict(seq.generator(), h);
    let tail_bound = analytic_tail(seq, h);
    Ok(SumReport {
        partial_sum: acc.total(),
        terms: seq.len(),
        extended_terms,
        tail_bound,
        verdict,
    })
}

/// Convergence of `sum h(1 - r_n)` over the infinite family.
///
/// Geometric: `h(c^n) <= c^{alpha n} * poly(n)` and the term ratio tends to
/// `c^alpha < 1`, so the series converges for every prototype weight.
///
/// Power law: `h((n+1)^{-p})` behaves like `n^{-p alpha}` times iterated-log
/// factors, so the series is decided by the classical iterated-log
/// comparison: `p alpha > 1` converges, `p alpha < 1` diverges, and on the
/// boundary the first log exponent different from -1 decides (below -1
/// converges, above diverges; exhausting the list diverges).
fn series_verdict(generator: Option<Generator>, h: &WeightFunction) -> Convergence {
    match generator {
        None => Convergence::Inconclusive,
        Some(Generator::Geometric { .. }) => Convergence::Convergent,
        Some(Generator::PowerLaw { p }) => {
            let q = p * h.alpha();
            if (q - 1.0).abs() > 1e-12 {
                return if q > 1.0 {
                    Convergence::Convergent
                } else {
                    Convergence::Divergent
                };
            }
            for &e in h.log_exponents() {
                if (e + 1.0).abs() <= 1e-12 {
                    continue;
                }
                return if e < -1.0 {
                    Convergence::Convergent
                } else {
                    Convergence::Divergent
                };
            }
            Convergence::Divergent
        }
    }
}

/// Exact tail bound for the geometric family with a pure power weight:
/// `sum_{n > N} (c^n)^alpha = c^{alpha(N+1)} / (1 - c^alpha)`.
fn analytic_tail(seq: &ZeroSequence, h: &WeightFunction) -> Option<f64> {
    match seq.generator()? {
        Generator::Geometric { c } if h.log_exponents().iter().all(|e| *e == 0.0) => {
            let ca = c.powf(h.alpha());
            Some(ca.powi(seq.len() as i32) * ca / (1.0 - ca))
        }
        _ => None,
    }
}

/// The counting function sampled on a grid, with the decay products
/// `n(t) * h(1 - t)` that the weighted condition forces to vanish.
#[derive(Clone, Debug)]
pub struct CountingProfile {
    pub thresholds: Vec<f64>,
    pub counts: Vec<usize>,
    pub decay_products: Vec<f64>,
}

impl CountingProfile {
    /// Decay verdict: every product in the last quartile of the grid sits
    /// strictly below the first quartile's minimum, and the last quartile
    /// itself is nonincreasing (up to floating-point slack).
    pub fn decaying(&self) -> bool {
        let n = self.decay_products.len();
        if n < 8 {
            return false;
        }
        let q = n / 4;
        let first_min = self.decay_products[..q]
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let last = &self.decay_products[n - q..];
        last.iter().all(|&v| v < first_min)
            && last.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12))
    }
}

/// Sample `n(t)` and `n(t) * h(1 - t)` on `grid`. Every threshold must
/// satisfy `0 < 1 - t < domain cutoff` so `h` is evaluated strictly inside
/// its domain.
pub fn counting_decay_profile(
    seq: &ZeroSequence,
    h: &dyn Weight,
    grid: &[f64],
) -> Result<CountingProfile> {
    let mut thresholds = Vec::with_capacity(grid.len());
    let mut counts = Vec::with_capacity(grid.len());
    let mut decay_products = Vec::with_capacity(grid.len());
    for &t in grid {
        let count = seq.counting_fn(t);
        let weight = h.eval(1.0 - t)?;
        thresholds.push(t);
        counts.push(count);
        decay_products.push(count as f64 * weight);
    }
    Ok(CountingProfile {
        thresholds,
        counts,
        decay_products,
    })
}

/// A default threshold ladder `t_k = 1 - 2^{-k}` clipped to the weight's
/// domain, deep enough to expose the decay trend.
pub fn geometric_threshold_grid(h: &dyn Weight, k_max: u32) -> Vec<f64> {
    (1..=k_max)
        .map(|k| 1.0 - 0.5f64.powi(k as i32))
        .filter(|&t| 1.0 - t < h.domain_cutoff() && t > 0.0)
        .collect()
}

/// Result of [`density_condition_check`]: the windowed-count ratios
/// `(n(r+d) - n(r-d)) * (1-r) / (d * n(r))` whose supremum plays the
/// empirical constant in the zero-density condition.
#[derive(Clone, Debug)]
pub struct DensityReport {
    /// Max over evaluated samples; `None` when every sample was skipped.
    pub max_ratio: Option<f64>,
    /// Per-sample ratio; `None` marks a skipped sample (`n(r) = 0`).
    pub ratios: Vec<Option<f64>>,
    /// Number of skipped samples.
    pub skipped: usize,
}

/// Evaluate the density-condition ratio on each `(r, delta)` window.
/// Windows must satisfy `0 < delta < min(r, 1-r)`; samples with `n(r) = 0`
/// are skipped and flagged rather than failing the run.
pub fn density_condition_check(seq: &ZeroSequence, samples: &[(f64, f64)]) -> Result<DensityReport> {
    let mut ratios = Vec::with_capacity(samples.len());
    let mut max_ratio: Option<f64> = None;
    let mut skipped = 0usize;
    for &(r, delta) in samples {
        if !(delta > 0.0 && delta < r.min(1.0 - r)) {
            return Err(Error::DensityWindow { r, delta });
        }
        let at_r = seq.counting_fn(r);
        if at_r == 0 {
            ratios.push(None);
            skipped += 1;
            continue;
        }
        let window = seq.counting_fn(r + delta) - seq.counting_fn(r - delta);
        let ratio = window as f64 * (1.0 - r) / (delta * at_r as f64);
        max_ratio = Some(max_ratio.map_or(ratio, |m| m.max(ratio)));
        ratios.push(Some(ratio));
    }
    Ok(DensityReport {
        max_ratio,
        ratios,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_radii_match_closed_form() {
        let seq = ZeroSequence::gen_geometric(0.5, 3, AngleRule::Constant(0.0)).unwrap();
        let radii: Vec<f64> = seq.zeros().iter().map(|z| z.0).collect();
        assert_eq!(radii, vec![0.5, 0.75, 0.875]);
        let single = ZeroSequence::gen_geometric(0.9, 1, AngleRule::Constant(0.0)).unwrap();
        assert!((single.zeros()[0].0 - 0.1).abs() < 1e-15);
    }

    #[test]
    fn power_law_radii_skip_the_origin() {
        // n = 1 would give 1 - 1^{-p} = 0; the family starts at n = 2.
        let seq = ZeroSequence::gen_power_law(2.0, 3, AngleRule::Constant(0.0)).unwrap();
        let radii: Vec<f64> = seq.zeros().iter().map(|z| z.0).collect();
        let expect = [0.75, 1.0 - 1.0 / 9.0, 0.9375];
        for (got, want) in radii.iter().zip(expect) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
        assert_eq!(seq.origin_zeros(), 0);
    }

    #[test]
    fn generator_guards() {
        assert!(matches!(
            ZeroSequence::gen_geometric(1.0, 3, AngleRule::Equidistributed),
            Err(Error::GeometricRatio(_))
        ));
        assert!(matches!(
            ZeroSequence::gen_geometric(0.5, 0, AngleRule::Equidistributed),
            Err(Error::EmptyCount)
        ));
        assert!(matches!(
            ZeroSequence::gen_power_law(-1.0, 3, AngleRule::Equidistributed),
            Err(Error::PowerLawExponent(_))
        ));
    }

    #[test]
    fn angle_rules_are_deterministic_and_normalized() {
        let eq = ZeroSequence::gen_geometric(0.5, 4, AngleRule::Equidistributed).unwrap();
        let angles: Vec<f64> = eq.zeros().iter().map(|z| z.1).collect();
        assert_eq!(angles, vec![0.0, TAU / 4.0, TAU / 2.0, 3.0 * TAU / 4.0]);

        let golden = ZeroSequence::gen_geometric(0.5, 3, AngleRule::GoldenRotation).unwrap();
        for (n, z) in golden.zeros().iter().enumerate() {
            let expect = TAU * ((n as f64 + 1.0) * GOLDEN_FRAC).fract();
            assert!((z.1 - expect).abs() < 1e-15);
        }

        let a = ZeroSequence::gen_geometric(0.5, 5, AngleRule::Random { seed: 7 }).unwrap();
        let b = ZeroSequence::gen_geometric(0.5, 5, AngleRule::Random { seed: 7 }).unwrap();
        assert_eq!(a.zeros(), b.zeros());
        let c = ZeroSequence::gen_geometric(0.5, 5, AngleRule::Random { seed: 8 }).unwrap();
        assert_ne!(a.zeros(), c.zeros());
        for z in a.zeros() {
            assert!(z.1 >= 0.0 && z.1 < TAU);
        }
    }

    #[test]
    fn ingest_single_zero() {
        let seq = ZeroSequence::parse_text("0.5 0.0\n").unwrap();
        assert_eq!(seq.zeros(), &[(0.5, 0.0)]);
    }

    #[test]
    fn ingest_rejects_boundary_radius_with_line_number() {
        let err = ZeroSequence::parse_text("0.5 0.0\n1.0 0.3\n").unwrap_err();
        match err {
            Error::RadiusRange { r, line } => {
                assert_eq!(r, 1.0);
                assert_eq!(line, Some(2));
            }
            other => panic!("expected radius error, got {other}"),
        }
    }

    #[test]
    fn ingest_reports_malformed_lines() {
        let err = ZeroSequence::parse_text("# fine\n0.5\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn export_ingest_round_trip_is_bit_exact() {
        // The ratio must be close enough to 1 that a thousand rungs stay
        // below 1.0 in double precision (1 - c^n rounds to 1 once
        // c^n < 2^-54).
        let seq =
            ZeroSequence::gen_geometric(0.97, 1000, AngleRule::Random { seed: 42 }).unwrap();
        let text = seq.export_text();
        let back = ZeroSequence::parse_text(&text).unwrap();
        assert_eq!(seq.zeros(), back.zeros());
        // And a second round trip is a fixed point of the format.
        assert_eq!(text, back.export_text());
    }

    #[test]
    fn counting_fn_examples_and_brute_force() {
        let seq = ZeroSequence::gen_geometric(0.5, 3, AngleRule::Constant(0.0)).unwrap();
        assert_eq!(seq.counting_fn(0.8), 2);
        assert_eq!(seq.counting_fn(0.1), 0);
        assert_eq!(seq.counting_fn(0.875), 3); // weak inequality r_n <= t

        let big = ZeroSequence::gen_power_law(1.3, 1000, AngleRule::GoldenRotation).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let t: f64 = rng.gen();
            let linear = big.zeros().iter().filter(|z| z.0 <= t).count();
            assert_eq!(big.counting_fn(t), linear);
        }
    }

    #[test]
    fn counting_fn_is_nondecreasing_on_sorted_thresholds() {
        let seq = ZeroSequence::gen_power_law(2.0, 200, AngleRule::Equidistributed).unwrap();
        let mut prev = 0usize;
        for k in 1..=60 {
            let t = k as f64 / 61.0;
            let n = seq.counting_fn(t);
            assert!(n >= prev);
            prev = n;
        }
        assert!(prev <= seq.len());
    }

    #[test]
    fn blaschke_sum_geometric_closed_form() {
        let seq = ZeroSequence::gen_geometric(0.5, 3, AngleRule::Constant(0.0)).unwrap();
        let h = WeightFunction::new(1.0, vec![]).unwrap();
        let report = blaschke_sum(&seq, &h).unwrap();
        // 1 - r_1 = 0.5 sits exactly at the cutoff, so that term uses the
        // boundary extension: the sum is 0.875 up to the extension nudge.
        assert!((report.partial_sum - 0.875).abs() < 1e-8);
        assert_eq!(report.extended_terms, 1);
        assert_eq!(report.terms, 3);
        assert_eq!(report.verdict, Convergence::Convergent);
        let tail = report.tail_bound.unwrap();
        assert!((tail - 0.125).abs() < 1e-15);
        assert!(report.partial_sum + tail < 1.0 + 1e-9);
    }

    #[test]
    fn blaschke_sum_single_zero_sqrt_weight() {
        let seq = ZeroSequence::from_zeros(vec![(0.5, 0.0)]).unwrap();
        let h = WeightFunction::new(0.5, vec![]).unwrap();
        let report = blaschke_sum(&seq, &h).unwrap();
        assert!((report.partial_sum - 0.5f64.sqrt()).abs() < 1e-8);
        assert_eq!(report.verdict, Convergence::Inconclusive);
    }

    #[test]
    fn blaschke_sum_matches_geometric_closed_form_tightly() {
        // Deeper zeros stay strictly inside the weight domain: compare the
        // compensated sum of h(c^n) = c^{n alpha} against the closed-form
        // geometric partial sum.
        let c: f64 = 0.5;
        let alpha = 0.5;
        let seq = ZeroSequence::gen_geometric(c, 40, AngleRule::GoldenRotation).unwrap();
        let h = WeightFunction::new(alpha, vec![]).unwrap();
        let report = blaschke_sum(&seq, &h).unwrap();
        let ca = c.powf(alpha);
        let exact_rest: f64 = (2..=40).map(|n| ca.powi(n)).sum();
        let first = h.boundary_value().unwrap(); // n = 1 term is extended
        let expected = first + exact_rest;
        assert!((report.partial_sum - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn power_law_sum_verdicts_follow_the_exponent() {
        let h1 = WeightFunction::new(1.0, vec![]).unwrap();
        let p2 = ZeroSequence::gen_power_law(2.0, 10_000, AngleRule::Constant(0.0)).unwrap();
        let report = blaschke_sum(&p2, &h1).unwrap();
        assert_eq!(report.verdict, Convergence::Convergent);
        // sum (n+1)^{-2} over n=1..N stays below pi^2/6 - 1.
        assert!(report.partial_sum < std::f64::consts::PI.powi(2) / 6.0 - 1.0 + 1e-9);

        let p1 = ZeroSequence::gen_power_law(1.0, 10_000, AngleRule::Constant(0.0)).unwrap();
        let report = blaschke_sum(&p1, &h1).unwrap();
        assert_eq!(report.verdict, Convergence::Divergent);
        // Harmonic growth: partial sums behave like ln N.
        let half = blaschke_sum(&p1.truncated(5000).unwrap(), &h1).unwrap();
        let growth = report.partial_sum - half.partial_sum;
        assert!((growth - 2f64.ln()).abs() < 0.01, "growth {growth}");
    }

    #[test]
    fn power_law_boundary_verdicts_use_log_exponents() {
        // p * alpha = 1 exactly: the first log exponent away from -1 decides.
        let p2 = ZeroSequence::gen_power_law(2.0, 100, AngleRule::Constant(0.0)).unwrap();
        let diverging = WeightFunction::new(0.5, vec![1.0]).unwrap();
        assert_eq!(
            blaschke_sum(&p2, &diverging).unwrap().verdict,
            Convergence::Divergent
        );
        let converging = WeightFunction::new(0.5, vec![-2.0]).unwrap();
        assert_eq!(
            blaschke_sum(&p2, &converging).unwrap().verdict,
            Convergence::Convergent
        );
        let borderline_conv = WeightFunction::new(0.5, vec![-1.0, -1.5]).unwrap();
        assert_eq!(
            blaschke_sum(&p2, &borderline_conv).unwrap().verdict,
            Convergence::Convergent
        );
        let all_minus_one = WeightFunction::new(0.5, vec![-1.0, -1.0]).unwrap();
        assert_eq!(
            blaschke_sum(&p2, &all_minus_one).unwrap().verdict,
            Convergence::Divergent
        );
    }

    #[test]
    fn convergent_power_law_sum_is_truncation_stable() {
        // p = 2, h = t: p alpha = 2 > 1; doubling the truncation moves the
        // partial sum by less than 1e-3.
        let h = WeightFunction::new(1.0, vec![]).unwrap();
        let long = ZeroSequence::gen_power_law(2.0, 2000, AngleRule::Constant(0.0)).unwrap();
        let short = long.truncated(1000).unwrap();
        let a = blaschke_sum(&short, &h).unwrap().partial_sum;
        let b = blaschke_sum(&long, &h).unwrap().partial_sum;
        assert_eq!(
            blaschke_sum(&long, &h).unwrap().verdict,
            Convergence::Convergent
        );
        assert!(b > a);
        assert!(b - a < 1e-3, "truncation gap {}", b - a);
    }

    #[test]
    fn counting_profile_geometric_closed_form() {
        // n(1 - 2^{-k}) = k and h(2^{-k}) = 2^{-k/2}: the products k 2^{-k/2}
        // fall toward zero and the profile reports decay.
        let seq = ZeroSequence::gen_geometric(0.5, 30, AngleRule::GoldenRotation).unwrap();
        let h = WeightFunction::new(0.5, vec![]).unwrap();
        let grid: Vec<f64> = (2..=24).map(|k| 1.0 - 0.5f64.powi(k)).collect();
        let profile = counting_decay_profile(&seq, &h, &grid).unwrap();
        for (i, &t) in profile.thresholds.iter().enumerate() {
            let k = i + 2;
            assert_eq!(profile.counts[i], k.min(30));
            let expect = k.min(30) as f64 * (1.0 - t).sqrt();
            assert!((profile.decay_products[i] - expect).abs() <= 1e-12 * expect);
        }
        assert!(profile.decaying());
    }

    #[test]
    fn counting_profile_single_zero_decays() {
        let seq = ZeroSequence::from_zeros(vec![(0.5, 1.0)]).unwrap();
        let h = WeightFunction::new(0.5, vec![]).unwrap();
        let grid: Vec<f64> = (2..=20).map(|k| 1.0 - 0.5f64.powi(k)).collect();
        let profile = counting_decay_profile(&seq, &h, &grid).unwrap();
        assert!(profile.counts.iter().all(|&c| c == 1));
        assert!(profile.decaying());
    }

    #[test]
    fn counting_profile_power_law_slope() {
        // p = 2, h = t: n(t) ~ (1-t)^{-1/2}, so the decay product behaves
        // like (1-t)^{1/2}; fit the log-log slope and expect 1/2.
        let seq = ZeroSequence::gen_power_law(2.0, 100_000, AngleRule::Constant(0.0)).unwrap();
        let h = WeightFunction::new(1.0, vec![]).unwrap();
        let grid: Vec<f64> = (4..=14).map(|k| 1.0 - 0.5f64.powi(k)).collect();
        let profile = counting_decay_profile(&seq, &h, &grid).unwrap();
        // least-squares slope of log(product) against log(1/(1-t))
        let xs: Vec<f64> = grid.iter().map(|&t| (1.0 / (1.0 - t)).ln()).collect();
        let ys: Vec<f64> = profile.decay_products.iter().map(|p| p.ln()).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let slope: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (x - mx) * (y - my))
            .sum::<f64>()
            / xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
        assert!((slope - (-0.5)).abs() < 0.1, "slope {slope}");
        assert!(profile.decaying());
    }

    #[test]
    fn density_check_single_zero() {
        let seq = ZeroSequence::from_zeros(vec![(0.5, 0.0)]).unwrap();
        let report = density_condition_check(&seq, &[(0.55, 0.1)]).unwrap();
        // window (0.45, 0.65) holds the zero; ratio = 1 * 0.45 / (0.1 * 1)
        let got = report.max_ratio.unwrap();
        assert!((got - 4.5).abs() < 1e-12);
        assert_eq!(report.skipped, 0);
    }

    #[test]
    fn density_check_geometric_windows_are_bounded() {
        let seq = ZeroSequence::gen_geometric(0.5, 25, AngleRule::GoldenRotation).unwrap();
        let samples: Vec<(f64, f64)> = (2..=20)
            .map(|k| {
                let r = 1.0 - 0.5f64.powi(k);
                (r, (1.0 - r) / 2.0)
            })
            .collect();
        let report = density_condition_check(&seq, &samples).unwrap();
        // Exhaustive window count: each (r +- (1-r)/2) window holds at most
        // 2 geometric zeros, so the ratio stays at or below 2 * 2 / k.
        for (i, ratio) in report.ratios.iter().enumerate() {
            let (r, delta) = samples[i];
            let window = seq
                .zeros()
                .iter()
                .filter(|z| z.0 > r - delta && z.0 <= r + delta)
                .count();
            assert!(window <= 2, "window {window} at k={}", i + 2);
            assert!(ratio.is_some());
        }
        assert!(report.max_ratio.unwrap() <= 4.0 + 1e-12);
    }

    #[test]
    fn density_check_skips_empty_counts_and_rejects_bad_windows() {
        let seq = ZeroSequence::from_zeros(vec![(0.9, 0.0)]).unwrap();
        let report = density_condition_check(&seq, &[(0.5, 0.1), (0.95, 0.01)]).unwrap();
        assert_eq!(report.skipped, 1);
        assert_eq!(report.ratios[0], None);
        assert!(report.ratios[1].is_some());
        assert!(matches!(
            density_condition_check(&seq, &[(0.5, 0.6)]),
            Err(Error::DensityWindow { .. })
        ));
    }

    #[test]
    fn truncation_keeps_generator_and_order() {
        let seq = ZeroSequence::gen_geometric(0.5, 10, AngleRule::GoldenRotation).unwrap();
        let head = seq.truncated(4).unwrap();
        assert_eq!(head.len(), 4);
        assert_eq!(head.zeros(), &seq.zeros()[..4]);
        assert_eq!(head.generator(), seq.generator());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn counting_is_monotone(
                radii in prop::collection::vec(0.0f64..1.0, 1..200),
                t1 in 0.0f64..1.0,
                t2 in 0.0f64..1.0,
            ) {
                let zeros: Vec<(f64, f64)> = radii.iter().map(|&r| (r, 0.0)).collect();
                let seq = ZeroSequence::from_zeros(zeros).unwrap();
                let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
                prop_assert!(seq.counting_fn(lo) <= seq.counting_fn(hi));
                prop_assert!(seq.counting_fn(hi) <= seq.len());
            }

            #[test]
            fn round_trip_identity(
                radii in prop::collection::vec(0.0f64..1.0, 1..50),
                thetas in prop::collection::vec(-10.0f64..10.0, 50),
            ) {
                let zeros: Vec<(f64, f64)> = radii
                    .iter()
                    .zip(&thetas)
                    .map(|(&r, &t)| (r, t))
                    .collect();
                let seq = ZeroSequence::from_zeros(zeros).unwrap();
                let back = ZeroSequence::parse_text(&seq.export_text()).unwrap();
                prop_assert_eq!(seq.zeros(), back.zeros());
            }
        }
    }
}
