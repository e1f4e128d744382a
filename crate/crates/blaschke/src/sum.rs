//! Compensated accumulation for long, slowly converging series.
//!
//! All series sums in this crate (Blaschke conditions, logarithmic-derivative
//! terms, tail bounds) go through [`NeumaierSum`] so that results are
//! independent of chunking and safe against cancellation. Complex series are
//! accumulated component-wise after sorting terms by descending magnitude.

use num_complex::Complex64;

/// Neumaier's improved Kahan–Babuska summation.
///
/// Tracks a running compensation term that also covers the case where the
/// next addend is larger than the running sum, which plain Kahan summation
/// mishandles.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for NeumaierSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Compensated sum of a real slice in its given order.
pub fn sum_f64(terms: &[f64]) -> f64 {
    let mut acc = NeumaierSum::new();
    acc.extend(terms.iter().copied());
    acc.total()
}

/// Compensated sum of complex terms, accumulated largest-magnitude first.
///
/// Sorting is done on a scratch copy; ties keep their original order so the
/// result is a pure function of the multiset of terms.
pub fn sum_complex_descending(terms: &[Complex64]) -> Complex64 {
    let mut scratch: Vec<Complex64> = terms.to_vec();
    scratch.sort_by(|a, b| b.norm_sqr().total_cmp(&a.norm_sqr()));
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for t in &scratch {
        re.add(t.re);
        im.add(t.im);
    }
    Complex64::new(re.total(), im.total())
}
