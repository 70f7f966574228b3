//! Truncated Schmidt-ladder coefficients for the two-mode squeezed vacuum and
//! its k-photon-subtracted descendants.
//!
//! Every state handled by this crate has the form
//!
//! ```text
//! |psi> = sum_n c_n e^{i n theta} |n + k, n>
//! ```
//!
//! with real nonnegative magnitudes `c_n`. The squeezed vacuum is `k = 0` with
//! `c_n = tanh^n r / cosh r`; removing `k` photons from mode b gives
//! `c_n = tanh^n r * sqrt(C(n + k, k)) / cosh^{k+1} r`.
//!
//! Coefficients are generated in log space and the series is extended until an
//! analytic geometric bound on the discarded tail drops below the requested
//! tolerance.

use crate::error::{Error, Result};
use crate::numeric::{ln_cosh, ln_tanh, log_sum_exp, NeumaierSum};
use num_complex::Complex64;

/// Largest squeeze magnitude accepted by the generators.
pub const R_MAX: f64 = 5.0;
/// Largest number of subtracted photons accepted by [`subtracted_coefficients`].
pub const K_MAX: usize = 8;
/// Hard cap on the number of stored coefficients.
pub const N_HARD_CAP: usize = 2_000_000;

const BLOCK: usize = 1024;

/// Squeeze magnitude `r` and phase `theta` of `xi = r e^{i theta}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    r: f64,
    theta: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::Range(format!(
                "squeeze magnitude r = {r} must be finite and >= 0"
            )));
        }
        if r > R_MAX {
            return Err(Error::Range(format!(
                "squeeze magnitude r = {r} exceeds R_MAX = {R_MAX}"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::Range(format!("phase theta = {theta} must be finite")));
        }
        Ok(Self { r, theta })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `|kappa| = tanh r`, always in `[0, 1)`.
    pub fn kappa_mag(&self) -> f64 {
        self.r.tanh()
    }

    /// `kappa = tanh r e^{i theta}`.
    pub fn kappa(&self) -> Complex64 {
        Complex64::from_polar(self.kappa_mag(), self.theta)
    }
}

/// A pure two-mode state `sum_n c_n e^{i n theta} |n + k, n>`.
///
/// Immutable after construction. Magnitudes are stored both linearly and as
/// natural logs so that sums can be formed without overflow.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtLadderState {
    offset: usize,
    mags: Vec<f64>,
    log_mags: Vec<f64>,
    theta: f64,
    tail_bound: f64,
    params: Option<SqueezeParams>,
}

impl SchmidtLadderState {
    /// Builds a finite ladder state from explicit magnitudes. The result carries
    /// no squeeze parameters and a zero tail bound.
    pub fn from_mags(offset: usize, mags: Vec<f64>, theta: f64) -> Result<Self> {
        if mags.is_empty() {
            return Err(Error::Range("ladder state needs at least one coefficient".into()));
        }
        if let Some(bad) = mags.iter().find(|c| !c.is_finite() || **c < 0.0) {
            return Err(Error::Range(format!("ladder magnitude {bad} must be finite and >= 0")));
        }
        if !theta.is_finite() {
            return Err(Error::Range(format!("phase theta = {theta} must be finite")));
        }
        let log_mags = mags.iter().map(|c| c.ln()).collect();
        Ok(Self {
            offset,
            mags,
            log_mags,
            theta,
            tail_bound: 0.0,
            params: None,
        })
    }

    pub(crate) fn from_log_mags(
        offset: usize,
        log_mags: Vec<f64>,
        theta: f64,
        tail_bound: f64,
        params: Option<SqueezeParams>,
    ) -> Self {
        Self {
            offset,
            mags: log_mags.iter().map(|l| l.exp()).collect(),
            log_mags,
            theta,
            tail_bound,
            params,
        }
    }

    /// Photon-number difference between mode a and mode b.
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn mags(&self) -> &[f64] {
        &self.mags
    }

    /// Natural logs of the magnitudes (`-inf` for exact zeros).
    pub fn log_mags(&self) -> &[f64] {
        &self.log_mags
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Upper bound on the sum of the discarded magnitudes `sum_{n > N} c_n`.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn params(&self) -> Option<SqueezeParams> {
        self.params
    }

    pub fn len(&self) -> usize {
        self.mags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mags.is_empty()
    }

    /// `sum_n c_n^2` over the stored prefix.
    pub fn norm_sqr(&self) -> f64 {
        let mut acc = NeumaierSum::default();
        for c in &self.mags {
            acc.add(c * c);
        }
        acc.value()
    }

    /// Complex amplitude `c_n e^{i n theta}` of `|n + k, n>`.
    pub fn amplitude(&self, n: usize) -> Complex64 {
        match self.mags.get(n) {
            Some(&c) => Complex64::from_polar(c, n as f64 * self.theta),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Keeps the first `len` coefficients and rescales them to unit norm.
    ///
    /// The result is an exact finite state (zero tail bound) that keeps the
    /// squeeze parameters of the parent, so ratio measures stay defined.
    pub fn renormalized_prefix(&self, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::Range("prefix length must be positive".into()));
        }
        let len = len.min(self.mags.len());
        let mut prefix = self.log_mags[..len].to_vec();
        let doubled: Vec<f64> = prefix.iter().map(|l| 2.0 * l).collect();
        let half_log_norm = 0.5 * log_sum_exp(&doubled);
        for l in &mut prefix {
            *l -= half_log_norm;
        }
        Ok(Self {
            offset: self.offset,
            mags: prefix.iter().map(|l| l.exp()).collect(),
            log_mags: prefix,
            theta: self.theta,
            tail_bound: 0.0,
            params: self.params,
        })
    }
}

/// Log of the coefficient sum together with the relative tail contribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSum {
    /// `ln sum_n c_n` over the stored prefix.
    pub log_sum: f64,
    /// `tail_bound / sum_n c_n`.
    pub tail_rel: f64,
}

/// Squeezed vacuum: `c_n = tanh^n r / cosh r`, truncated so the tail sum is
/// below `tol`.
pub fn tmsv_coefficients(params: SqueezeParams, tol: f64) -> Result<SchmidtLadderState> {
    ladder(0, params, tol)
}

/// Ideal `k`-photon subtraction from mode b, `b^k |xi>` normalized:
/// `c_n = tanh^n r * sqrt(C(n + k, k)) / cosh^{k+1} r` on `|n + k, n>`.
pub fn subtracted_coefficients(k: usize, params: SqueezeParams, tol: f64) -> Result<SchmidtLadderState> {
    if k == 0 || k > K_MAX {
        return Err(Error::Range(format!("photon count k = {k} must be in 1..={K_MAX}")));
    }
    ladder(k, params, tol)
}

/// Shared generator without the `K_MAX` gate; used by the heralding module,
/// which needs larger detector outcomes.
pub(crate) fn ladder(k: usize, params: SqueezeParams, tol: f64) -> Result<SchmidtLadderState> {
    check_tol(tol)?;
    let r = params.r();
    let log_c0 = -((k + 1) as f64) * ln_cosh(r);
    let (log_mags, tail_bound) = ladder_log_mags(k, r.tanh(), ln_tanh(r), log_c0, tol)?;
    Ok(SchmidtLadderState::from_log_mags(
        k,
        log_mags,
        params.theta(),
        tail_bound,
        Some(params),
    ))
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(Error::Range(format!("tolerance {tol} must lie in (0, 1)")))
    }
}

/// Log magnitudes `ln c_n = ln c_0 + n ln t + 0.5 ln C(n + k, k)` extended
/// until `c_N q / (1 - q) < tol` with `q = t sqrt((N + k + 1) / (N + 1))`.
///
/// Successive ratios `c_{n+1}/c_n` decrease in `n`, so `c_N q^j` bounds
/// `c_{N+j}` once `q < 1`, and the geometric series bounds the tail.
pub(crate) fn ladder_log_mags(k: usize, t: f64, log_t: f64, log_c0: f64, tol: f64) -> Result<(Vec<f64>, f64)> {
    if t == 0.0 {
        return Ok((vec![log_c0], 0.0));
    }
    let kf = k as f64;
    let mut log_mags = Vec::with_capacity(BLOCK);
    // ln C(n + k, k) = sum_{j=1}^{n} ln(1 + k/j)
    let mut log_binom = NeumaierSum::default();
    let mut n = 0usize;
    loop {
        if n > 0 && k > 0 {
            log_binom.add((kf / n as f64).ln_1p());
        }
        let log_c = log_c0 + n as f64 * log_t + 0.5 * log_binom.value();
        log_mags.push(log_c);

        let nf = n as f64;
        let q = t * ((nf + kf + 1.0) / (nf + 1.0)).sqrt();
        if q < 1.0 {
            let tail = (log_c + q.ln() - (-q).ln_1p()).exp();
            if tail < tol {
                return Ok((log_mags, tail));
            }
        }
        n += 1;
        if n >= N_HARD_CAP {
            return Err(Error::OverflowGuard { cap: N_HARD_CAP, tol });
        }
        if log_mags.len() == log_mags.capacity() {
            log_mags.reserve(BLOCK);
        }
    }
}

/// `ln sum_n c_n` by max-shifted exponentials.
pub fn log_sum_coefficients(state: &SchmidtLadderState) -> LogSum {
    let log_sum = log_sum_exp(state.log_mags());
    LogSum {
        log_sum,
        tail_rel: state.tail_bound() * (-log_sum).exp(),
    }
}
