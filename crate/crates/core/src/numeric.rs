//! Small floating-point helpers shared by the other modules.

/// Compensated (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// `ln sum_i exp(x_i)` with the maximum shifted out. Returns `-inf` for an
/// empty slice or when every entry is `-inf`.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let acc: NeumaierSum = xs.iter().map(|x| (x - max).exp()).collect();
    max + acc.value().ln()
}

/// `ln cosh r` without overflow for large `r`.
pub fn ln_cosh(r: f64) -> f64 {
    let a = r.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `ln tanh r` for `r > 0`, accurate when `tanh r` is close to one.
pub fn ln_tanh(r: f64) -> f64 {
    let e = (-2.0 * r).exp();
    (-2.0 * e / (1.0 + e)).ln_1p()
}
