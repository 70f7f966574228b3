//! Position-quadrature wavefunctions `Psi(x_a, x_b)` of ladder states and the
//! phase winding of their zeros.
//!
//! Quadratures follow `a = (x_a + i y_a) / sqrt(2)`, so the Fock states map to
//! the oscillator eigenfunctions `psi_m(x) = pi^{-1/4} (2^m m!)^{-1/2} H_m(x)
//! e^{-x^2/2}`.
//!
//! Winding convention: the loop is traversed counterclockwise in the
//! `(x_a, x_b)` plane with `x_a` horizontal, and a positive winding number
//! means `arg Psi` increases along the loop. With this convention the
//! single-photon state at `theta = pi/2` has winding `-1`, since its
//! prefactor is `x_a - i tanh(r) x_b`.

use crate::error::{Error, Result};
use crate::fock::{SchmidtLadderState, SqueezeParams};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Highest oscillator level evaluated.
pub const M_MAX: usize = 400;
/// Grids must stay inside `[-GRID_LIMIT, GRID_LIMIT]`.
pub const GRID_LIMIT: f64 = 8.0;
/// Loop samples below this magnitude have no usable phase.
pub const MAG_FLOOR: f64 = 1e-12;
/// Largest wrapped phase step accepted between neighbouring loop samples.
pub const PHASE_STEP_LIMIT: f64 = 0.9 * PI;

/// Uniform grid `min, min + h, ..., max` with `points >= 2` samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    min: f64,
    max: f64,
    points: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min >= max {
            return Err(Error::Range(format!("axis needs finite min < max, got [{min}, {max}]")));
        }
        if min < -GRID_LIMIT || max > GRID_LIMIT {
            return Err(Error::Range(format!(
                "axis [{min}, {max}] leaves [-{GRID_LIMIT}, {GRID_LIMIT}]"
            )));
        }
        if points < 2 {
            return Err(Error::Range(format!("axis needs at least 2 points, got {points}")));
        }
        Ok(Self { min, max, points })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }

    pub fn value(&self, i: usize) -> f64 {
        self.min + (self.max - self.min) * i as f64 / (self.points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }

    /// Index of the sample nearest to `x`, if it lies on the axis.
    pub fn nearest(&self, x: f64) -> Option<usize> {
        let pos = ((x - self.min) / self.step()).round();
        (pos >= 0.0 && pos < self.points as f64).then_some(pos as usize)
    }
}

/// Complex samples of `Psi` on an `xa x xb` grid, row-major with `x_a`
/// outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureField {
    xa: Axis,
    xb: Axis,
    values: Vec<Complex64>,
    meta: String,
}

impl QuadratureField {
    pub fn xa(&self) -> &Axis {
        &self.xa
    }

    pub fn xb(&self) -> &Axis {
        &self.xb
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Short description of the generating state.
    pub fn meta(&self) -> &str {
        &self.meta
    }

    pub fn at(&self, ia: usize, ib: usize) -> Complex64 {
        self.values[ia * self.xb.points + ib]
    }

    /// Riemann sum of `|Psi|^2 dx_a dx_b`.
    pub fn mass(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.xa.step() * self.xb.step()
    }

    /// Least-squares constant `z` minimizing `|self - z * reference|` together
    /// with `max |self - z * reference| / max |self|`.
    pub fn fit_constant(&self, reference: &QuadratureField) -> (Complex64, f64) {
        assert_eq!(self.values.len(), reference.values.len(), "grids differ");
        let num: Complex64 = reference
            .values
            .iter()
            .zip(&self.values)
            .map(|(r, s)| r.conj() * s)
            .sum();
        let den: f64 = reference.values.iter().map(|r| r.norm_sqr()).sum();
        let z = num / den;
        let scale = self.values.iter().map(|s| s.norm()).fold(0.0, f64::max);
        let dev = reference
            .values
            .iter()
            .zip(&self.values)
            .map(|(r, s)| (s - z * r).norm())
            .fold(0.0, f64::max);
        (z, dev / scale)
    }
}

/// `psi_m(x)` by the normalized upward recurrence.
pub fn oscillator_eigenfunction(m: usize, x: f64) -> Result<f64> {
    if m > M_MAX {
        return Err(Error::Range(format!("oscillator level {m} exceeds M_MAX = {M_MAX}")));
    }
    Ok(*oscillator_levels(m, x).last().expect("at least one level"))
}

/// `[psi_0(x), ..., psi_m(x)]`.
fn oscillator_levels(m: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    let psi0 = PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(psi0);
    if m == 0 {
        return out;
    }
    out.push(2f64.sqrt() * x * psi0);
    for j in 1..m {
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * out[j] - (jf / (jf + 1.0)).sqrt() * out[j - 1];
        out.push(next);
    }
    debug_assert!(out.iter().all(|v| v.abs() <= 0.8));
    out
}

/// Table `t[m][i] = psi_m(axis_i)` for `m <= max_level`.
fn level_table(max_level: usize, axis: &Axis) -> Vec<Vec<f64>> {
    let per_point: Vec<Vec<f64>> = axis
        .values()
        .into_iter()
        .map(|x| oscillator_levels(max_level, x))
        .collect();
    (0..=max_level)
        .map(|m| per_point.iter().map(|levels| levels[m]).collect())
        .collect()
}

/// `Psi(x_a, x_b) = sum_n c_n e^{i n theta} psi_{n+k}(x_a) psi_n(x_b)`.
pub fn wavefunction_series(state: &SchmidtLadderState, xa: Axis, xb: Axis) -> Result<QuadratureField> {
    let k = state.offset();
    if state.len() + k > M_MAX {
        return Err(Error::Range(format!(
            "state needs oscillator level {} but M_MAX = {M_MAX}; loosen the tolerance or lower r",
            state.len() + k - 1
        )));
    }
    let top = state.len() - 1;
    let ta = level_table(top + k, &xa);
    let tb = level_table(top, &xb);
    let nb = xb.points();
    let mut values = vec![Complex64::new(0.0, 0.0); xa.points() * nb];
    for n in 0..state.len() {
        let amp = state.amplitude(n);
        let (row_a, row_b) = (&ta[n + k], &tb[n]);
        for (ia, pa) in row_a.iter().enumerate() {
            let coef = amp * pa;
            for (v, pb) in values[ia * nb..(ia + 1) * nb].iter_mut().zip(row_b) {
                *v += coef * pb;
            }
        }
    }
    let meta = match state.params() {
        Some(p) => format!("series k={k} r={} theta={} terms={}", p.r(), p.theta(), state.len()),
        None => format!("series k={k} theta={} terms={}", state.theta(), state.len()),
    };
    Ok(QuadratureField { xa, xb, values, meta })
}

/// Closed-form single-photon-subtracted wavefunction
///
/// ```text
/// Psi = sqrt(2) e^{i theta} (x_a - kappa x_b) / ((1 - kappa^2)^{3/2} sqrt(pi) cosh^2 r)
///       * exp[(2 x_a x_b kappa - (x_a^2 + x_b^2) kappa^2) / (1 - kappa^2) - (x_a^2 + x_b^2) / 2]
/// ```
///
/// with `kappa = tanh r e^{i theta}`.
pub fn wavefunction_k1_closed(params: SqueezeParams, xa: Axis, xb: Axis) -> Result<QuadratureField> {
    let kappa = params.kappa();
    let one_minus = Complex64::new(1.0, 0.0) - kappa * kappa;
    if one_minus.norm() < 1e-12 {
        return Err(Error::Singularity(one_minus.norm()));
    }
    let cosh = params.r().cosh();
    let prefactor =
        Complex64::from_polar(2f64.sqrt(), params.theta()) / (one_minus.powf(1.5) * PI.sqrt() * cosh * cosh);
    let xs_b = xb.values();
    let mut values = Vec::with_capacity(xa.points() * xb.points());
    for x_a in xa.values() {
        for &x_b in &xs_b {
            let r2 = x_a * x_a + x_b * x_b;
            let exponent = (2.0 * x_a * x_b * kappa - r2 * kappa * kappa) / one_minus - 0.5 * r2;
            values.push(prefactor * (x_a - kappa * x_b) * exponent.exp());
        }
    }
    let meta = format!("closed k=1 r={} theta={}", params.r(), params.theta());
    Ok(QuadratureField { xa, xb, values, meta })
}

/// Axis-aligned rectangle of grid indices `[ia0, ia1] x [ib0, ib1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridLoop {
    pub ia0: usize,
    pub ia1: usize,
    pub ib0: usize,
    pub ib1: usize,
}

impl GridLoop {
    /// Square of half-width `h` around the origin, snapped to the grid.
    pub fn centered(field: &QuadratureField, h: f64) -> Result<Self> {
        Self::around(field, 0.0, 0.0, h)
    }

    /// Square of half-width `h` around `(x_a, x_b)`, snapped to the grid.
    pub fn around(field: &QuadratureField, x_a: f64, x_b: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::Range(format!("loop half-width {h} must be positive")));
        }
        let snap = |axis: &Axis, x: f64| {
            axis.nearest(x)
                .ok_or_else(|| Error::Range(format!("loop edge {x} lies outside [{}, {}]", axis.min(), axis.max())))
        };
        let lp = Self {
            ia0: snap(field.xa(), x_a - h)?,
            ia1: snap(field.xa(), x_a + h)?,
            ib0: snap(field.xb(), x_b - h)?,
            ib1: snap(field.xb(), x_b + h)?,
        };
        if lp.ia0 >= lp.ia1 || lp.ib0 >= lp.ib1 {
            return Err(Error::Range(format!("loop half-width {h} is below the grid step")));
        }
        Ok(lp)
    }

    /// Grid points along the boundary, counterclockwise from `(ia0, ib0)`.
    /// The start point is not repeated at the end.
    pub fn path(&self) -> Vec<(usize, usize)> {
        let mut path = Vec::new();
        path.extend((self.ia0..self.ia1).map(|ia| (ia, self.ib0)));
        path.extend((self.ib0..self.ib1).map(|ib| (self.ia1, ib)));
        path.extend((self.ia0 + 1..=self.ia1).rev().map(|ia| (ia, self.ib1)));
        path.extend((self.ib0 + 1..=self.ib1).rev().map(|ib| (self.ia0, ib)));
        path
    }
}

fn wrap(d: f64) -> f64 {
    let w = (d + PI).rem_euclid(2.0 * PI) - PI;
    if w == -PI {
        PI
    } else {
        w
    }
}

/// Net phase winding of `field` around `lp` in units of `2 pi`.
pub fn winding_number(field: &QuadratureField, lp: &GridLoop) -> Result<i64> {
    let path = lp.path();
    let mut phases = Vec::with_capacity(path.len());
    for (index, &(ia, ib)) in path.iter().enumerate() {
        if ia >= field.xa().points() || ib >= field.xb().points() {
            return Err(Error::Range(format!("loop point ({ia}, {ib}) is off the grid")));
        }
        let z = field.at(ia, ib);
        if z.norm() < MAG_FLOOR {
            return Err(Error::Magnitude {
                index,
                magnitude: z.norm(),
            });
        }
        phases.push(z.arg());
    }
    let mut total = 0.0;
    for index in 0..phases.len() {
        let next = phases[(index + 1) % phases.len()];
        let step = wrap(next - phases[index]);
        if step.abs() >= PHASE_STEP_LIMIT {
            return Err(Error::PhaseStep { index, step });
        }
        total += step;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}
