//! Photon subtraction by a beam splitter and a photon-number-resolving
//! detector on the reflected port.
//!
//! Mode b meets vacuum on a beam splitter, `b -> t b + rho v`. Splitting
//! `|n>_b |0>_v` and projecting the ancilla onto `|k>` maps the squeezed
//! vacuum to
//!
//! ```text
//! d_m = c^{tmsv}_{m+k} sqrt(C(m + k, k)) t^m rho^k    on |m + k, m>,
//! ```
//!
//! which is an ideal `k`-photon-subtracted ladder with `tanh r` replaced by
//! `tanh r * t`. The heralding probability is the thermal photon-number
//! distribution of the reflected light, `P(k) = nbar^k / (1 + nbar)^{k+1}`
//! with `nbar = rho^2 sinh^2 r`.

use crate::error::{Error, Result};
use crate::fock::{check_tol, ladder, ladder_log_mags, SchmidtLadderState, SqueezeParams, R_MAX};
use crate::numeric::{ln_cosh, NeumaierSum};
use num_complex::Complex64;

/// Largest detector outcome accepted by [`herald_subtract`].
pub const HERALD_K_MAX: usize = 32;

/// Real transmission and reflection amplitudes of a lossless beam splitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterSpec {
    t_amp: f64,
    rho_amp: f64,
}

impl BeamSplitterSpec {
    pub fn new(t_amp: f64, rho_amp: f64) -> Result<Self> {
        if !(t_amp > 0.0 && t_amp <= 1.0) || !(0.0..1.0).contains(&rho_amp) {
            return Err(Error::Range(format!(
                "beam splitter needs t in (0, 1] and rho in [0, 1), got t = {t_amp}, rho = {rho_amp}"
            )));
        }
        if (t_amp * t_amp + rho_amp * rho_amp - 1.0).abs() > 1e-12 {
            return Err(Error::Range(format!(
                "t^2 + rho^2 = {} is not 1",
                t_amp * t_amp + rho_amp * rho_amp
            )));
        }
        Ok(Self { t_amp, rho_amp })
    }

    /// Beam splitter with power reflectance `rho2 = rho^2`.
    pub fn from_reflectance(rho2: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&rho2) {
            return Err(Error::Range(format!("reflectance {rho2} must lie in [0, 1)")));
        }
        Ok(Self {
            t_amp: (1.0 - rho2).sqrt(),
            rho_amp: rho2.sqrt(),
        })
    }

    pub fn t_amp(&self) -> f64 {
        self.t_amp
    }

    pub fn rho_amp(&self) -> f64 {
        self.rho_amp
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeraldOutcome {
    /// Normalized conditional state on `|m + k, m>`.
    pub state: SchmidtLadderState,
    pub probability: f64,
    pub k_detected: usize,
    /// Fidelity of `state` with the ideal `b^k |xi>` state.
    pub fidelity_ideal: f64,
}

/// Conditional state and probability for detecting `k` photons in the
/// reflected port.
pub fn herald_subtract(params: SqueezeParams, bs: BeamSplitterSpec, k: usize, tol: f64) -> Result<HeraldOutcome> {
    if k > HERALD_K_MAX {
        return Err(Error::Range(format!("detector outcome k = {k} exceeds {HERALD_K_MAX}")));
    }
    if params.r() > R_MAX {
        return Err(Error::Range(format!(
            "squeeze magnitude {} exceeds R_MAX = {R_MAX}",
            params.r()
        )));
    }
    check_tol(tol)?;
    let r = params.r();
    let nbar = bs.rho_amp() * bs.rho_amp() * r.sinh() * r.sinh();
    let log_prob = if k == 0 {
        -nbar.ln_1p()
    } else {
        k as f64 * nbar.ln() - (k + 1) as f64 * nbar.ln_1p()
    };
    // exp(-690) ~ 1e-300
    if !(log_prob > -690.0) {
        return Err(Error::DegenerateHerald(log_prob.exp()));
    }

    // effective ladder ratio tau = tanh r * t; 1 - tau^2 = (1 + nbar) / cosh^2 r
    let tau = r.tanh() * bs.t_amp();
    let log_tau = tau.ln();
    let log_one_minus_tau2 = nbar.ln_1p() - 2.0 * ln_cosh(r);
    let log_c0 = 0.5 * (k + 1) as f64 * log_one_minus_tau2;
    let (log_mags, tail) = ladder_log_mags(k, tau, log_tau, log_c0, tol)?;
    let state = SchmidtLadderState::from_log_mags(k, log_mags, params.theta(), tail, Some(params));

    let ideal = ladder(k, params, tol)?;
    Ok(HeraldOutcome {
        probability: log_prob.exp() * state.norm_sqr(),
        fidelity_ideal: fidelity(&state, &ideal),
        state,
        k_detected: k,
    })
}

/// `|<s1|s2>|^2` for two ladder states; zero across different offsets.
///
/// Both states share the phase convention `e^{i n theta}`, so the overlap of
/// states with the same `theta` reduces to `(sum_n c_n d_n)^2`.
pub fn fidelity(s1: &SchmidtLadderState, s2: &SchmidtLadderState) -> f64 {
    if s1.offset() != s2.offset() {
        return 0.0;
    }
    if s1.theta() == s2.theta() {
        let real: NeumaierSum = s1.mags().iter().zip(s2.mags()).map(|(a, b)| a * b).collect();
        return (real.value() * real.value()).clamp(0.0, 1.0);
    }
    let overlap: Complex64 = (0..s1.len().min(s2.len()))
        .map(|n| s1.amplitude(n).conj() * s2.amplitude(n))
        .sum();
    overlap.norm_sqr().clamp(0.0, 1.0)
}
