use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("adaptive truncation exceeded {cap} coefficients before reaching tolerance {tol:e}")]
    OverflowGuard { cap: usize, tol: f64 },

    #[error("dimension {dim} too small: state needs {needed} levels per mode")]
    Dimension { dim: usize, needed: usize },

    #[error("dense problem size {size} exceeds the limit of {max}")]
    Size { size: usize, max: usize },

    #[error("Jacobi eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },

    #[error("closed-form kernel is singular: |1 - kappa^2| = {0:e}")]
    Singularity(f64),

    #[error("phase step of {step:.4} rad at loop sample {index} is too large; refine the grid")]
    PhaseStep { index: usize, step: f64 },

    #[error(
        "field magnitude {magnitude:e} at loop sample {index} is below the phase floor; move the loop off the zero"
    )]
    Magnitude { index: usize, magnitude: f64 },

    #[error("heralding probability {0:e} is degenerate")]
    DegenerateHerald(f64),

    #[error("state carries no squeeze parameters")]
    MissingSqueeze,
}

pub type Result<T> = std::result::Result<T, Error>;
