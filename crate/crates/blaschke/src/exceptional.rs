//! Exceptional sets: the circular family of radius intervals outside of
//! which the logarithmic derivative obeys the weighted growth bound, and the
//! radial family of boundary arcs swept out by aperture regions around the
//! zeros.
//!
//! Circular sets live on the radius line: around each zero radius `r_n` sits
//! the open interval of half-width `(1 - r_n)^beta h(1 - r_n)`. Their
//! weighted size is measured by `integral dt / (1 - t)^beta`, which has a
//! closed form per interval.
//!
//! Radial sets live on the angle circle: each zero `z_n` projects the
//! aperture region `{ z : 1 - |z| > C |z - z_n| }` onto the set of ray
//! directions that meet it — an arc centered on `arg z_n`. Arc half-widths
//! come from a bisection over the angle against an exact ray/region
//! intersection test.

use std::f64::consts::{PI, TAU};

use crate::sum::NeumaierSum;
use crate::weights::Weight;
use crate::zeros::{ZeroSequence, GOLDEN_FRAC};
use crate::{Error, Result};

/// Angular bisection stops when the bracket is this narrow.
pub const ARC_ANGLE_TOL: f64 = 1e-10;
/// Golden-section minimization along a ray stops at this bracket width.
pub const RAY_MIN_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Circular exceptional sets
// ---------------------------------------------------------------------------

/// A finite union of disjoint open radius intervals inside (0, 1), sorted in
/// increasing order. Intervals that merely touch are kept separate (their
/// shared endpoint belongs to neither, matching the open-interval union).
#[derive(Clone, Debug)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
    beta: f64,
    raw_count: usize,
    dropped: usize,
    extended_terms: usize,
}

impl IntervalSet {
    /// Build the circular exceptional set of a zero sequence for weight `h`
    /// and exponent `beta >= 1`.
    ///
    /// Each zero radius `r_n` contributes the open interval of half-width
    /// `(1 - r_n)^beta h(1 - r_n)`. Intervals poking out of (0, 1) on either
    /// side are dropped (and counted): on the left they would cover radius 0
    /// where the estimates are vacuous, on the right they would reach the
    /// boundary and give the set infinite weighted measure.
    pub fn build_circular(seq: &ZeroSequence, h: &dyn Weight, beta: f64) -> Result<Self> {
        if !(beta >= 1.0) {
            return Err(Error::BetaRange(beta));
        }
        let mut raw = Vec::with_capacity(seq.len());
        let mut dropped = 0usize;
        let mut extended_terms = 0usize;
        for &(r, _) in seq.zeros() {
            let gap = 1.0 - r;
            let (hv, extended) = h.eval_or_boundary(gap)?;
            if extended {
                extended_terms += 1;
            }
            let half = gap.powf(beta) * hv;
            let (a, b) = (r - half, r + half);
            if a <= 0.0 || b >= 1.0 {
                dropped += 1;
                continue;
            }
            raw.push((a, b));
        }
        raw.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut intervals: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (a, b) in raw {
            match intervals.last_mut() {
                // Strict overlap merges; touching endpoints stay separate.
                Some(last) if a < last.1 => last.1 = last.1.max(b),
                _ => intervals.push((a, b)),
            }
        }
        Ok(Self {
            intervals,
            beta,
            raw_count: seq.len(),
            dropped,
            extended_terms,
        })
    }

    /// Assemble a set from explicit intervals (already built elsewhere or
    /// read back from a report). Requires `0 < a < b < 1` per interval,
    /// sorted with no strict overlaps.
    pub fn from_parts(intervals: Vec<(f64, f64)>, beta: f64) -> Result<Self> {
        if !(beta >= 1.0) {
            return Err(Error::BetaRange(beta));
        }
        for (i, &(a, b)) in intervals.iter().enumerate() {
            if !(0.0 < a && a < b && b < 1.0) {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("interval ({a}, {b}) is not inside (0, 1) or is reversed"),
                });
            }
            if i > 0 && intervals[i - 1].1 > a {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "intervals overlap or are unsorted".into(),
                });
            }
        }
        let raw_count = intervals.len();
        Ok(Self {
            intervals,
            beta,
            raw_count,
            dropped: 0,
            extended_terms: 0,
        })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Zeros the construction started from.
    pub fn raw_count(&self) -> usize {
        self.raw_count
    }

    /// Intervals discarded for poking out of (0, 1).
    pub fn dropped(&self) -> usize {
        self.dropped
    }

    /// Weight evaluations that fell back to the boundary extension.
    pub fn extended_terms(&self) -> usize {
        self.extended_terms
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Membership in the open union.
    pub fn contains(&self, t: f64) -> bool {
        let idx = self.intervals.partition_point(|&(a, _)| a < t);
        idx > 0 && self.intervals[idx - 1].1 > t
    }

    /// Plain Lebesgue length of the union.
    pub fn total_measure(&self) -> f64 {
        let mut s = NeumaierSum::new();
        for &(a, b) in &self.intervals {
            s.add(b - a);
        }
        s.total()
    }

    /// `integral_E dt / (1 - t)^beta` via the per-interval closed form
    /// `log((1-a)/(1-b))` for `beta = 1` and
    /// `((1-b)^{1-beta} - (1-a)^{1-beta}) / (beta - 1)` otherwise.
    ///
    /// The exponent is a parameter so a set built at one `beta` can be
    /// measured against any other weight exponent.
    pub fn weighted_measure(&self, beta: f64) -> Result<f64> {
        if !(beta >= 1.0) {
            return Err(Error::BetaRange(beta));
        }
        let mut s = NeumaierSum::new();
        for &(a, b) in &self.intervals {
            if b >= 1.0 {
                return Err(Error::DegenerateInterval);
            }
            let piece = if beta == 1.0 {
                ((1.0 - a) / (1.0 - b)).ln()
            } else {
                ((1.0 - b).powf(1.0 - beta) - (1.0 - a).powf(1.0 - beta)) / (beta - 1.0)
            };
            s.add(piece);
        }
        Ok(s.total())
    }

    /// Text form: a commented header plus one `a b` pair per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# circular exceptional set\n");
        out.push_str(&format!("# beta {:.16e}\n", self.beta));
        out.push_str(&format!(
            "# intervals {} raw {} dropped {}\n",
            self.intervals.len(),
            self.raw_count,
            self.dropped
        ));
        for &(a, b) in &self.intervals {
            out.push_str(&format!("{a:.16e} {b:.16e}\n"));
        }
        out
    }

    /// Parse the [`to_text`](Self::to_text) form. Only the `# beta` header
    /// is required; other comments are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut beta = None;
        let mut intervals = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                let mut words = comment.split_whitespace();
                if words.next() == Some("beta") {
                    let v = words.next().ok_or_else(|| Error::Parse {
                        line,
                        msg: "beta header without a value".into(),
                    })?;
                    beta = Some(v.parse::<f64>().map_err(|e| Error::Parse {
                        line,
                        msg: format!("bad beta value {v:?}: {e}"),
                    })?);
                }
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected 2 fields (a, b), found {}", fields.len()),
                });
            }
            let a = fields[0].parse::<f64>().map_err(|e| Error::Parse {
                line,
                msg: format!("bad interval start {:?}: {e}", fields[0]),
            })?;
            let b = fields[1].parse::<f64>().map_err(|e| Error::Parse {
                line,
                msg: format!("bad interval end {:?}: {e}", fields[1]),
            })?;
            intervals.push((a, b));
        }
        let beta = beta.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "missing `# beta <value>` header".into(),
        })?;
        Self::from_parts(intervals, beta)
    }
}

// ---------------------------------------------------------------------------
// Radial exceptional sets
// ---------------------------------------------------------------------------

/// One boundary arc: directions within `half_width` of `center` (angular
/// distance, strict) hit the aperture region of the zero at `radius`.
/// Shallow zeros with `aperture * radius < 1` wrap the whole circle; they
/// are flagged `degenerate` and given half-width pi.
#[derive(Clone, Copy, Debug)]
pub struct Arc {
    pub center: f64,
    pub half_width: f64,
    pub radius: f64,
    pub degenerate: bool,
}

/// The arcs of a full zero sequence at a fixed aperture `C > 1`, ordered as
/// the zeros are.
#[derive(Clone, Debug)]
pub struct RadialArcs {
    arcs: Vec<Arc>,
    aperture: f64,
    projection_constant: f64,
}

/// Signed clearance of the ray at relative angle `phi` from the aperture
/// region of a zero at radius `r_zero`: the minimum over `r in [0, 1]` of
/// `C |r e^{i phi} - r_zero| + r - 1`. Negative iff the ray meets the open
/// region. Convex in `r` (a norm of an affine function plus a linear term),
/// so golden-section search finds the global minimum.
fn ray_clearance(aperture: f64, r_zero: f64, phi: f64) -> f64 {
    // |r e^{i phi} - r_zero|^2 in the cancellation-free half-angle form:
    // the textbook expansion r^2 + r_zero^2 - 2 r r_zero cos(phi) loses all
    // significance once the ray point is within ~1e-8 of a deep zero, which
    // inflates the bisected half-widths of the deepest arcs.
    let half_sin = (0.5 * phi).sin();
    let cross = 4.0 * r_zero * half_sin * half_sin;
    let g = |r: f64| {
        let d2 = (r - r_zero) * (r - r_zero) + r * cross;
        aperture * d2.sqrt() + r - 1.0
    };
    golden_min(0.0, 1.0, RAY_MIN_TOL, g)
}

/// Golden-section minimization of a convex function on [a, b].
fn golden_min<F: Fn(f64) -> f64>(mut a: f64, mut b: f64, tol: f64, f: F) -> f64 {
    let mut c = b - GOLDEN_FRAC * (b - a);
    let mut d = a + GOLDEN_FRAC * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN_FRAC * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN_FRAC * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd).min(f(0.5 * (a + b)))
}

impl RadialArcs {
    /// Project every zero's aperture region onto the boundary circle.
    ///
    /// The half-width of each arc is located by bisection on the relative
    /// angle: the ray straight through the zero always meets the region, and
    /// the hit predicate is monotone in the angular offset.
    pub fn build(seq: &ZeroSequence, aperture: f64) -> Result<Self> {
        if !(aperture > 1.0) || !aperture.is_finite() {
            return Err(Error::ApertureRange(aperture));
        }
        let mut arcs = Vec::with_capacity(seq.len());
        for &(r, theta) in seq.zeros() {
            let (half_width, degenerate) = if ray_clearance(aperture, r, PI) < 0.0 {
                (PI, true)
            } else {
                let mut lo = 0.0f64;
                let mut hi = PI;
                while hi - lo > ARC_ANGLE_TOL {
                    let mid = 0.5 * (lo + hi);
                    if ray_clearance(aperture, r, mid) < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                (0.5 * (lo + hi), false)
            };
            arcs.push(Arc {
                center: theta,
                half_width,
                radius: r,
                degenerate,
            });
        }
        Ok(Self {
            aperture,
            projection_constant: projection_constant(&arcs),
            arcs,
        })
    }

    /// Assemble from explicit arcs (e.g. read back from a report).
    pub fn from_parts(arcs: Vec<Arc>, aperture: f64) -> Result<Self> {
        if !(aperture > 1.0) || !aperture.is_finite() {
            return Err(Error::ApertureRange(aperture));
        }
        for (i, arc) in arcs.iter().enumerate() {
            let ok = arc.half_width > 0.0
                && arc.half_width <= PI
                && (0.0..1.0).contains(&arc.radius)
                && arc.center.is_finite();
            if !ok {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!(
                        "arc (center {}, half-width {}, radius {}) out of range",
                        arc.center, arc.half_width, arc.radius
                    ),
                });
            }
        }
        Ok(Self {
            aperture,
            projection_constant: projection_constant(&arcs),
            arcs,
        })
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn aperture(&self) -> f64 {
        self.aperture
    }

    /// The observed supremum of `2 w_n / (1 - r_n)` over the family — the
    /// constant tying arc widths to zero gaps. Finite for every finite
    /// family; meaningful as a uniform constant only when no arc is
    /// degenerate.
    pub fn projection_constant(&self) -> f64 {
        self.projection_constant
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// True when the direction `theta` lies inside any arc (strict angular
    /// distance; degenerate arcs cover everything).
    pub fn membership(&self, theta: f64) -> bool {
        self.membership_from(theta, 1)
    }

    /// Membership restricted to the tail `{ arcs #n_start, #n_start+1, ... }`
    /// (1-based, clamped to the family).
    pub fn membership_from(&self, theta: f64, n_start: usize) -> bool {
        let start = n_start.max(1) - 1;
        self.arcs[start.min(self.arcs.len())..].iter().any(|arc| {
            arc.degenerate || angular_distance(theta, arc.center) < arc.half_width
        })
    }

    /// Lebesgue measure of the union of tail arcs `k >= n_start` (1-based),
    /// together with the crude bound `sum 2 w_k`. The measure saturates at
    /// the full circle.
    pub fn tail_measure(&self, n_start: usize) -> Result<TailMeasure> {
        if n_start == 0 || n_start > self.arcs.len() {
            return Err(Error::TailIndex {
                n: n_start,
                len: self.arcs.len(),
            });
        }
        let tail = &self.arcs[n_start - 1..];
        let mut crude = NeumaierSum::new();
        for arc in tail {
            crude.add(2.0 * arc.half_width);
        }
        let crude_bound = crude.total();
        if tail.iter().any(|a| a.degenerate || a.half_width >= PI) {
            return Ok(TailMeasure {
                measure: TAU,
                crude_bound,
            });
        }
        // Normalize each arc to [0, 2 pi), splitting those that wrap. Each
        // piece carries its own correctly-rounded length: recovering it
        // later as a difference of two absolute positions near 2 pi wastes
        // about one ulp(2 pi) per arc, which is enough to push the measure
        // of a disjoint tail a few ulps above the crude bound.
        let mut pieces: Vec<(f64, f64, f64)> = Vec::with_capacity(tail.len() + 4);
        for arc in tail {
            let lo = (arc.center - arc.half_width).rem_euclid(TAU);
            let hi = lo + 2.0 * arc.half_width;
            if hi <= TAU {
                pieces.push((lo, hi, 2.0 * arc.half_width));
            } else {
                pieces.push((lo, TAU, TAU - lo));
                pieces.push((0.0, hi - TAU, hi - TAU));
            }
        }
        pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut total = NeumaierSum::new();
        // A run's exact length survives while it consists of one piece (or
        // wholly contains later ones); once a piece extends the run, the
        // length falls back to the endpoint difference.
        let mut cur: Option<(f64, f64, Option<f64>)> = None;
        for (a, b, len) in pieces {
            match cur {
                Some((ca, cb, exact)) if a <= cb => {
                    cur = Some((ca, cb.max(b), if b <= cb { exact } else { None }));
                }
                Some((ca, cb, exact)) => {
                    total.add(exact.unwrap_or(cb - ca));
                    cur = Some((a, b, Some(len)));
                }
                None => cur = Some((a, b, Some(len))),
            }
        }
        if let Some((ca, cb, exact)) = cur {
            total.add(exact.unwrap_or(cb - ca));
        }
        Ok(TailMeasure {
            measure: total.total().min(TAU),
            crude_bound,
        })
    }

    /// Text form: a commented header plus `center half_width radius` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# radial arc family\n");
        out.push_str(&format!("# aperture {:.16e}\n", self.aperture));
        out.push_str(&format!("# arcs {}\n", self.arcs.len()));
        for arc in &self.arcs {
            out.push_str(&format!(
                "{:.16e} {:.16e} {:.16e}\n",
                arc.center, arc.half_width, arc.radius
            ));
        }
        out
    }

    /// Parse the [`to_text`](Self::to_text) form; arcs with half-width pi
    /// (or larger) come back flagged degenerate.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut aperture = None;
        let mut arcs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                let mut words = comment.split_whitespace();
                if words.next() == Some("aperture") {
                    let v = words.next().ok_or_else(|| Error::Parse {
                        line,
                        msg: "aperture header without a value".into(),
                    })?;
                    aperture = Some(v.parse::<f64>().map_err(|e| Error::Parse {
                        line,
                        msg: format!("bad aperture value {v:?}: {e}"),
                    })?);
                }
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line,
                    msg: format!(
                        "expected 3 fields (center, half_width, radius), found {}",
                        fields.len()
                    ),
                });
            }
            let mut nums = [0.0f64; 3];
            for (slot, field) in nums.iter_mut().zip(&fields) {
                *slot = field.parse::<f64>().map_err(|e| Error::Parse {
                    line,
                    msg: format!("bad number {field:?}: {e}"),
                })?;
            }
            arcs.push(Arc {
                center: nums[0],
                half_width: nums[1],
                radius: nums[2],
                degenerate: nums[1] >= PI,
            });
        }
        let aperture = aperture.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "missing `# aperture <value>` header".into(),
        })?;
        Self::from_parts(arcs, aperture)
    }
}

/// Union measure of tail arcs with its crude per-arc bound.
#[derive(Clone, Copy, Debug)]
pub struct TailMeasure {
    pub measure: f64,
    pub crude_bound: f64,
}

fn projection_constant(arcs: &[Arc]) -> f64 {
    arcs.iter()
        .map(|a| 2.0 * a.half_width / (1.0 - a.radius))
        .fold(0.0, f64::max)
}

/// Distance on the angle circle, in [0, pi].
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}
