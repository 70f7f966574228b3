//! Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices.

use crate::error::{Error, Result};

/// Stopping rule for [`symmetric_eigenvalues`].
#[derive(Debug, Clone, Copy)]
pub struct JacobiOptions {
    pub max_sweeps: usize,
    /// Absolute threshold on the off-diagonal Frobenius norm.
    pub off_tol: f64,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        Self {
            max_sweeps: 30,
            off_tol: 1e-12,
        }
    }
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            let v = a[p * n + q];
            s += v * v;
        }
    }
    (2.0 * s).sqrt()
}

/// Eigenvalues of the symmetric `n x n` row-major matrix `a`, sorted
/// ascending. `a` is overwritten. Entries that are exactly zero are skipped,
/// so block-diagonal inputs cost one rotation per nonzero pair.
pub fn symmetric_eigenvalues(a: &mut [f64], n: usize, opts: JacobiOptions) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n, "matrix buffer does not match dimension");
    let mut sweep = 0;
    loop {
        let off = off_norm(a, n);
        if off < opts.off_tol {
            break;
        }
        if sweep == opts.max_sweeps {
            return Err(Error::Convergence {
                sweeps: sweep,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                rotate(a, n, p, q);
            }
        }
        sweep += 1;
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Annihilates `a[p][q]` with a plane rotation (Numerical Recipes form).
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let h = aqq - app;
    let t = if h.abs() + apq.abs() * 1e18 == h.abs() {
        apq / h
    } else {
        let theta = 0.5 * h / apq;
        let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let g = a[r * n + p];
        let h = a[r * n + q];
        if g == 0.0 && h == 0.0 {
            continue;
        }
        let new_rp = g - s * (h + g * tau);
        let new_rq = h + s * (g - h * tau);
        a[r * n + p] = new_rp;
        a[p * n + r] = new_rp;
        a[r * n + q] = new_rq;
        a[q * n + r] = new_rq;
    }
}
