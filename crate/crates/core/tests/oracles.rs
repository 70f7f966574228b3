//! Closed forms checked against brute-force constructions.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2};
use subvortex_core::entanglement::{expand_spectrum, ladder_pt_oracle};
use subvortex_core::heralding::HERALD_K_MAX;
use subvortex_core::{
    herald_subtract, log_negativity_closed, pt_spectrum_structural, subtracted_coefficients, tmsv_coefficients,
    wavefunction_k1_closed, wavefunction_series, winding_number, Axis, BeamSplitterSpec, GridLoop, SchmidtLadderState,
    SqueezeParams,
};

fn state(k: usize, r: f64, theta: f64) -> SchmidtLadderState {
    let p = SqueezeParams::new(r, theta).unwrap();
    if k == 0 {
        tmsv_coefficients(p, 1e-12).unwrap()
    } else {
        subtracted_coefficients(k, p, 1e-12).unwrap()
    }
}

#[test]
fn closed_form_matches_dense_partial_transpose() {
    for k in [0, 2, 4] {
        for r in [0.1, 0.5, 1.2] {
            let full = state(k, r, 0.0);
            let dim = (full.len() + k).min(30);
            let finite = full.renormalized_prefix(dim - k).unwrap();
            let dense = ladder_pt_oracle(&finite, dim).unwrap();
            let closed = log_negativity_closed(&finite);
            assert!(
                (closed.log_negativity - dense.log_negativity()).abs() < 1e-6,
                "k={k} r={r}: {} vs {}",
                closed.log_negativity,
                dense.log_negativity()
            );
            let structural = expand_spectrum(&pt_spectrum_structural(&finite), dense.spectrum.len());
            let worst = structural
                .iter()
                .zip(&dense.spectrum)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(worst < 1e-7, "k={k} r={r}: {worst:e}");
            assert!((dense.spectrum.iter().sum::<f64>() - 1.0).abs() < 1e-8);
        }
    }
}

#[test]
fn untruncated_small_squeezing_needs_no_prefix() {
    // at r = 0.1 the whole 1e-12 ladder fits in the dense truncation
    let s = state(1, 0.1, 0.0);
    let dim = s.len() + 1;
    assert!(dim <= 40);
    let dense = ladder_pt_oracle(&s, dim).unwrap();
    let closed = log_negativity_closed(&s);
    assert!((closed.log_negativity - dense.log_negativity()).abs() < 1e-6);
}

#[test]
fn squeezed_vacuum_dense_matches_exponential() {
    let r = 1.2;
    let s = state(0, r, 0.0);
    assert!((log_negativity_closed(&s).log_negativity - 2.0 * r / LN_2).abs() < 1e-9);
    let dense = ladder_pt_oracle(&s.renormalized_prefix(64).unwrap(), 64).unwrap();
    // 64 rungs leave a tail of tanh(1.2)^64 ~ 1e-5
    assert!((dense.log_negativity() - 2.0 * r / LN_2).abs() < 1e-3);
}

#[test]
fn series_field_matches_closed_form_on_grid() {
    let axis = Axis::new(-4.0, 4.0, 81).unwrap();
    for r in [0.2, 0.5, 1.0] {
        for theta in [0.0, FRAC_PI_4, FRAC_PI_2] {
            let p = SqueezeParams::new(r, theta).unwrap();
            let series = wavefunction_series(&subtracted_coefficients(1, p, 1e-12).unwrap(), axis, axis).unwrap();
            let closed = wavefunction_k1_closed(p, axis, axis).unwrap();
            let (_, dev) = series.fit_constant(&closed);
            assert!(dev <= 1e-8, "r={r} theta={theta}: {dev:e}");
        }
    }
}

#[test]
fn series_parity_and_reality() {
    let axis = Axis::new(-4.0, 4.0, 41).unwrap();
    for k in 0..=3 {
        let f = wavefunction_series(&state(k, 0.6, 0.9), axis, axis).unwrap();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for ia in 0..41 {
            for ib in 0..41 {
                assert!((f.at(40 - ia, 40 - ib) - sign * f.at(ia, ib)).norm() <= 1e-10);
            }
        }
        let real = wavefunction_series(&state(k, 0.6, 0.0), axis, axis).unwrap();
        assert!(real.values().iter().all(|z| z.im.abs() <= 1e-12));
    }
}

#[test]
fn series_mass_is_captured() {
    // [-5, 5]^2 holds the mass up to r = 1; r = 1.5 needs the full [-8, 8]^2
    let cases = [(5.0, [0.2, 0.5, 1.0]), (8.0, [0.5, 1.0, 1.5])];
    for (half, radii) in cases {
        let axis = Axis::new(-half, half, (20.0 * half) as usize + 1).unwrap();
        for k in 0..=2 {
            for r in radii {
                let mass = wavefunction_series(&state(k, r, 0.3), axis, axis).unwrap().mass();
                assert!((0.98..=1.001).contains(&mass), "L={half} k={k} r={r}: {mass}");
            }
        }
    }
}

#[test]
fn winding_is_stable_under_refinement() {
    let p = SqueezeParams::new(0.5, FRAC_PI_2).unwrap();
    let s = subtracted_coefficients(1, p, 1e-12).unwrap();
    let mut seen = Vec::new();
    for points in [41, 81, 161, 321] {
        let axis = Axis::new(-4.0, 4.0, points).unwrap();
        let f = wavefunction_series(&s, axis, axis).unwrap();
        for h in [0.5, 1.0, 2.0] {
            seen.push(winding_number(&f, &GridLoop::centered(&f, h).unwrap()).unwrap());
        }
    }
    assert!(seen.iter().all(|&w| w == -1), "{seen:?}");

    // analytic prefactor x_a - i |kappa| x_b gives the same charge
    let closed =
        wavefunction_k1_closed(p, Axis::new(-4.0, 4.0, 81).unwrap(), Axis::new(-4.0, 4.0, 81).unwrap()).unwrap();
    assert_eq!(
        winding_number(&closed, &GridLoop::centered(&closed, 1.0).unwrap()).unwrap(),
        -1
    );
}

#[test]
fn squeezed_vacuum_has_no_vortex() {
    let axis = Axis::new(-4.0, 4.0, 81).unwrap();
    let f = wavefunction_series(&state(0, 0.5, 0.0), axis, axis).unwrap();
    assert_eq!(winding_number(&f, &GridLoop::centered(&f, 1.0).unwrap()).unwrap(), 0);
}

#[test]
fn two_photon_winding_is_measured() {
    let axis = Axis::new(-4.0, 4.0, 161).unwrap();
    let f = wavefunction_series(&state(2, 0.5, FRAC_PI_2), axis, axis).unwrap();
    for h in [0.25, 1.0, 2.5] {
        let w = winding_number(&f, &GridLoop::centered(&f, h).unwrap());
        println!("k=2 theta=pi/2 r=0.5 half-width {h}: winding {w:?}");
        assert!(w.is_ok());
    }
}

#[test]
fn herald_probabilities_are_complete() {
    for r in [0.1, 0.5, 1.0] {
        for rho2 in [1e-4, 0.01, 0.1, 0.3] {
            let bs = BeamSplitterSpec::from_reflectance(rho2).unwrap();
            let total: f64 = (0..=20)
                .map(|k| {
                    herald_subtract(SqueezeParams::new(r, 0.0).unwrap(), bs, k, 1e-12)
                        .unwrap()
                        .probability
                })
                .sum();
            assert!((total - 1.0).abs() < 1e-8, "r={r} rho2={rho2}: {total}");
        }
    }
    const { assert!(HERALD_K_MAX >= 20) };
}

#[test]
fn herald_fidelity_improves_as_reflectance_drops() {
    let p = SqueezeParams::new(0.5, 0.0).unwrap();
    for k in 1..=4 {
        let fids: Vec<f64> = [0.1, 0.05, 0.01, 0.001]
            .iter()
            .map(|&x| {
                herald_subtract(p, BeamSplitterSpec::from_reflectance(x).unwrap(), k, 1e-12)
                    .unwrap()
                    .fidelity_ideal
            })
            .collect();
        assert!(fids.windows(2).all(|w| w[1] > w[0]), "k={k}: {fids:?}");
        assert!(fids[3] > 0.999);
    }
}

#[test]
fn herald_probability_scales_with_reflectance_power() {
    let p = SqueezeParams::new(0.5, 0.0).unwrap();
    for k in 1..=4 {
        let scaled: Vec<f64> = [1e-3, 1e-4]
            .iter()
            .map(|&x| {
                herald_subtract(p, BeamSplitterSpec::from_reflectance(x).unwrap(), k, 1e-12)
                    .unwrap()
                    .probability
                    / x.powi(k as i32)
            })
            .collect();
        assert!((scaled[0] / scaled[1] - 1.0).abs() < 0.05, "k={k}: {scaled:?}");
    }
}
