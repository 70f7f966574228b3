//! Entanglement and quadrature-space vortex structure of photon-subtracted
//! two-mode squeezed vacuum states.
//!
//! * [`fock`]: truncated Schmidt-ladder coefficients `c_n` with tail bounds.
//! * [`entanglement`]: closed-form and dense partial-transpose negativity.
//! * [`quadrature`]: position-space wavefunctions and phase winding.
//! * [`heralding`]: beam-splitter conditioning on a photon-number detector.

// `!(x > 0.0)` rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dense;
pub mod entanglement;
mod error;
pub mod fock;
pub mod heralding;
pub mod jacobi;
mod numeric;
pub mod quadrature;

pub use dense::{densify, DenseTwoModeState};
pub use entanglement::{
    entanglement_ratio, log_negativity_closed, pt_negativity_oracle, pt_spectrum_structural, EntanglementRatio,
    EntanglementReport, PtSpectrum, SpectrumEntry,
};
pub use error::{Error, Result};
pub use fock::{
    log_sum_coefficients, subtracted_coefficients, tmsv_coefficients, LogSum, SchmidtLadderState, SqueezeParams,
};
pub use heralding::{fidelity, herald_subtract, BeamSplitterSpec, HeraldOutcome};
pub use quadrature::{
    oscillator_eigenfunction, wavefunction_k1_closed, wavefunction_series, winding_number, Axis, GridLoop,
    QuadratureField,
};
