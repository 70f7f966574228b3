//! Negativity and log-negativity of Schmidt-ladder states.
//!
//! Two independent routes are provided. The closed form uses the fact that for
//! a pure state `sum_n c_n |n + k, n>` the partial transpose splits into
//! `1 x 1` blocks `c_n^2` and `2 x 2` blocks with eigenvalues `+-c_m c_n`, so
//!
//! ```text
//! 1 + 2N = (sum_n c_n)^2,    log-negativity = 2 log2(sum_n c_n).
//! ```
//!
//! The oracle route builds the full density matrix on a truncated Fock basis,
//! transposes mode b, and diagonalizes it with cyclic Jacobi.

use crate::dense::{densify, DenseTwoModeState};
use crate::error::{Error, Result};
use crate::fock::{log_sum_coefficients, SchmidtLadderState};
use crate::jacobi::{symmetric_eigenvalues, JacobiOptions};
use std::f64::consts::LN_2;

/// Largest `dim_a * dim_b` accepted by the dense oracle (a 64 x 64 truncation).
pub const D_MAX: usize = 4096;
/// Eigenvalues in `(-NEG_EIG_FLOOR, 0)` are treated as zero.
pub const NEG_EIG_FLOOR: f64 = 1e-10;

/// Output of the dense partial-transpose oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct PtSpectrum {
    pub negativity: f64,
    /// Full spectrum of the partially transposed density matrix, ascending.
    pub spectrum: Vec<f64>,
}

impl PtSpectrum {
    pub fn log_negativity(&self) -> f64 {
        (2.0 * self.negativity).ln_1p() / LN_2
    }
}

/// One distinct eigenvalue of the analytic partial-transpose spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub value: f64,
    pub multiplicity: usize,
}

/// Entanglement figures for one ladder state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    /// `sum_n c_n` over the stored prefix.
    pub sum_c: f64,
    pub negativity: f64,
    /// Base-2 log-negativity.
    pub log_negativity: f64,
    /// `(sum_n c_n e^{-r})^2`; `None` when the state has no squeeze parameters.
    pub ratio_eq16: Option<f64>,
    /// Log-negativity divided by that of the squeezed vacuum, `2r / ln 2`.
    /// `None` at `r = 0` or without squeeze parameters.
    pub ratio_of_logs: Option<f64>,
    pub tail_rel: f64,
}

/// The two entanglement ratios against the squeezed vacuum of the same `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementRatio {
    pub ratio_eq16: f64,
    pub ratio_of_logs: Option<f64>,
}

/// Negativity by brute force: `|psi><psi|`, transpose mode b, Jacobi.
///
/// Real amplitudes are diagonalized directly. Complex ones go through the real
/// symmetric embedding `[[A, -B], [B, A]]` of `A + iB`, whose spectrum is that
/// of the Hermitian matrix with every eigenvalue doubled.
pub fn pt_negativity_oracle(dense: &DenseTwoModeState) -> Result<PtSpectrum> {
    let (da, db) = (dense.dim_a(), dense.dim_b());
    let size = da * db;
    if size > D_MAX {
        return Err(Error::Size { size, max: D_MAX });
    }
    let idx = |m: usize, n: usize| m * db + n;
    // rho^PT[(m, n), (m', n')] = rho[(m, n'), (m', n)] = psi[m, n'] conj(psi[m', n])
    let element = |m: usize, n: usize, mp: usize, np: usize| dense.amp(m, np) * dense.amp(mp, n).conj();

    let spectrum = if dense.is_real() {
        let mut a = vec![0.0; size * size];
        for m in 0..da {
            for n in 0..db {
                for mp in 0..da {
                    for np in 0..db {
                        a[idx(m, n) * size + idx(mp, np)] = element(m, n, mp, np).re;
                    }
                }
            }
        }
        symmetric_eigenvalues(&mut a, size, JacobiOptions::default())?
    } else {
        let n2 = 2 * size;
        let mut a = vec![0.0; n2 * n2];
        for m in 0..da {
            for n in 0..db {
                for mp in 0..da {
                    for np in 0..db {
                        let z = element(m, n, mp, np);
                        let (i, j) = (idx(m, n), idx(mp, np));
                        a[i * n2 + j] = z.re;
                        a[(i + size) * n2 + j + size] = z.re;
                        a[i * n2 + j + size] = -z.im;
                        a[(i + size) * n2 + j] = z.im;
                    }
                }
            }
        }
        let doubled = symmetric_eigenvalues(&mut a, n2, JacobiOptions::default())?;
        doubled.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
    };

    let negativity = spectrum.iter().filter(|&&l| l <= -NEG_EIG_FLOOR).map(|l| -l).sum();
    Ok(PtSpectrum { negativity, spectrum })
}

/// Dense oracle for a ladder state with its phase set to zero. The partial
/// transpose spectrum does not depend on `theta` (a local unitary), so the
/// real path is used.
pub fn ladder_pt_oracle(state: &SchmidtLadderState, dim: usize) -> Result<PtSpectrum> {
    let real = SchmidtLadderState::from_mags(state.offset(), state.mags().to_vec(), 0.0)?;
    pt_negativity_oracle(&densify(&real, dim)?)
}

/// Analytic partial-transpose spectrum: `c_n^2` for every rung and `+-c_m c_n`
/// for every pair `m < n`, ascending with exact duplicates merged. Zeros from
/// the rest of the Fock space are not listed; see [`expand_spectrum`].
///
/// The output has `O(len^2)` entries.
pub fn pt_spectrum_structural(state: &SchmidtLadderState) -> Vec<SpectrumEntry> {
    let c = state.mags();
    let mut values = Vec::with_capacity(c.len() * c.len());
    for (m, cm) in c.iter().enumerate() {
        values.push(cm * cm);
        for cn in &c[m + 1..] {
            values.push(cm * cn);
            values.push(-cm * cn);
        }
    }
    values.sort_by(f64::total_cmp);
    let mut out: Vec<SpectrumEntry> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some(last) if last.value == v => last.multiplicity += 1,
            _ => out.push(SpectrumEntry {
                value: v,
                multiplicity: 1,
            }),
        }
    }
    out
}

/// Flattens a structural spectrum and pads it with zeros to `len` entries,
/// ascending, for elementwise comparison with a dense spectrum.
pub fn expand_spectrum(entries: &[SpectrumEntry], len: usize) -> Vec<f64> {
    let mut out: Vec<f64> = entries
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity))
        .collect();
    if out.len() < len {
        out.resize(len, 0.0);
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Closed-form log-negativity `2 log2(sum_n c_n)` with the ratios attached.
pub fn log_negativity_closed(state: &SchmidtLadderState) -> EntanglementReport {
    let ls = log_sum_coefficients(state);
    let ratio = entanglement_ratio(state).ok();
    EntanglementReport {
        sum_c: ls.log_sum.exp(),
        negativity: 0.5 * (2.0 * ls.log_sum).exp_m1(),
        log_negativity: 2.0 * ls.log_sum / LN_2,
        ratio_eq16: ratio.map(|r| r.ratio_eq16),
        ratio_of_logs: ratio.and_then(|r| r.ratio_of_logs),
        tail_rel: ls.tail_rel,
    }
}

/// `(sum_n c_n e^{-r})^2` and `log2 (sum c)^2 / log2 e^{2r}`.
///
/// The first is the ratio of `1 + 2N` between the state and the squeezed
/// vacuum; the second is the ratio of the log-negativities themselves and is
/// undefined at `r = 0`.
pub fn entanglement_ratio(state: &SchmidtLadderState) -> Result<EntanglementRatio> {
    let r = state.params().ok_or(Error::MissingSqueeze)?.r();
    let log_sum = log_sum_coefficients(state).log_sum;
    Ok(EntanglementRatio {
        ratio_eq16: (2.0 * (log_sum - r)).exp(),
        ratio_of_logs: (r > 0.0).then(|| log_sum / r),
    })
}
