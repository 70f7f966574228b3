//! Explicit two-mode Fock amplitudes, used as the brute-force reference for the
//! ladder-state formulas.

use crate::error::{Error, Result};
use crate::fock::SchmidtLadderState;
use num_complex::Complex64;

/// Amplitudes `<m, n | psi>` for `m < dim_a`, `n < dim_b`, stored row-major
/// with the mode-a index outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTwoModeState {
    dim_a: usize,
    dim_b: usize,
    amps: Vec<Complex64>,
}

impl DenseTwoModeState {
    pub fn new(dim_a: usize, dim_b: usize, amps: Vec<Complex64>) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::Range("mode dimensions must be positive".into()));
        }
        if amps.len() != dim_a * dim_b {
            return Err(Error::Range(format!(
                "expected {} amplitudes for a {dim_a}x{dim_b} truncation, got {}",
                dim_a * dim_b,
                amps.len()
            )));
        }
        Ok(Self { dim_a, dim_b, amps })
    }

    /// Product Fock state `|m, n>`.
    pub fn fock(dim_a: usize, dim_b: usize, m: usize, n: usize) -> Result<Self> {
        let mut s = Self::new(dim_a, dim_b, vec![Complex64::new(0.0, 0.0); dim_a * dim_b])?;
        if m >= dim_a || n >= dim_b {
            return Err(Error::Dimension {
                dim: dim_a.min(dim_b),
                needed: m.max(n) + 1,
            });
        }
        s.amps[m * dim_b + n] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, m: usize, n: usize) -> Complex64 {
        self.amps[m * self.dim_b + n]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(mut self) -> Self {
        let norm = self.norm();
        if norm > 0.0 {
            for z in &mut self.amps {
                *z /= norm;
            }
        }
        self
    }

    /// `<self | other>`; both states must share the same truncation.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!((self.dim_a, self.dim_b), (other.dim_a, other.dim_b));
        self.amps.iter().zip(&other.amps).map(|(x, y)| x.conj() * y).sum()
    }

    pub fn is_real(&self) -> bool {
        self.amps.iter().all(|z| z.im == 0.0)
    }

    /// Applies the mode-b annihilation operator within the truncation.
    pub fn annihilate_b(&self) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for m in 0..self.dim_a {
            for n in 0..self.dim_b - 1 {
                out[m * self.dim_b + n] = self.amp(m, n + 1) * ((n + 1) as f64).sqrt();
            }
        }
        Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            amps: out,
        }
    }
}

/// Places `c_n e^{i n theta}` at `(n + k, n)` on a `dim x dim` truncation and
/// rescales to unit norm.
pub fn densify(state: &SchmidtLadderState, dim: usize) -> Result<DenseTwoModeState> {
    let needed = state.len() + state.offset();
    if dim < needed {
        return Err(Error::Dimension { dim, needed });
    }
    let k = state.offset();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim * dim];
    for n in 0..state.len() {
        amps[(n + k) * dim + n] = state.amplitude(n);
    }
    Ok(DenseTwoModeState::new(dim, dim, amps)?.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{subtracted_coefficients, tmsv_coefficients, SqueezeParams};

    #[test]
    fn one_photon_product_state() {
        let s = SchmidtLadderState::from_mags(1, vec![1.0], 0.0).unwrap();
        let d = densify(&s, 3).unwrap();
        for m in 0..3 {
            for n in 0..3 {
                let want = if (m, n) == (1, 0) { 1.0 } else { 0.0 };
                assert_eq!(d.amp(m, n), Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn densified_tmsv_is_normalized() {
        let s = tmsv_coefficients(SqueezeParams::new(0.5, 0.3).unwrap(), 1e-9).unwrap();
        let d = densify(&s, 30).unwrap();
        assert!((d.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn too_small_dimension() {
        let s = subtracted_coefficients(2, SqueezeParams::new(0.5, 0.0).unwrap(), 1e-12).unwrap();
        let err = densify(&s, 5).unwrap_err();
        assert!(matches!(err, Error::Dimension { dim: 5, .. }));
    }

    #[test]
    fn two_subtractions_match_operator_oracle() {
        let p = SqueezeParams::new(0.3, 0.7).unwrap();
        let dim = 25;
        let tmsv = tmsv_coefficients(p, 1e-12).unwrap();
        let oracle = densify(&tmsv, dim).unwrap().annihilate_b().annihilate_b().normalized();
        // b^2 on the truncated vacuum keeps exactly len - 2 ladder rungs
        let ladder = subtracted_coefficients(2, p, 1e-12)
            .unwrap()
            .renormalized_prefix(tmsv.len() - 2)
            .unwrap();
        let d = densify(&ladder, dim).unwrap();
        // b^2 |xi> carries the extra global phase e^{2 i theta}.
        let phase = Complex64::from_polar(1.0, 2.0 * p.theta());
        for (x, y) in d.amps().iter().zip(oracle.amps()) {
            assert!((x * phase - y).norm() < 1e-10);
        }
    }
}
