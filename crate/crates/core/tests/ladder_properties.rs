use proptest::prelude::*;
use subvortex_core::fock::K_MAX;
use subvortex_core::{
    entanglement_ratio, log_negativity_closed, log_sum_coefficients, subtracted_coefficients, tmsv_coefficients,
    SchmidtLadderState, SqueezeParams,
};

fn state(k: usize, r: f64, theta: f64, tol: f64) -> SchmidtLadderState {
    let p = SqueezeParams::new(r, theta).unwrap();
    if k == 0 {
        tmsv_coefficients(p, tol).unwrap()
    } else {
        subtracted_coefficients(k, p, tol).unwrap()
    }
}

/// Linear-space evaluation of t^n sqrt(C(n+k, k)) / cosh^{k+1} r with the
/// binomial built as an exact product.
fn direct_coefficient(k: usize, r: f64, n: usize) -> f64 {
    let binom: f64 = (1..=k).map(|j| (n + j) as f64 / j as f64).product();
    r.tanh().powi(n as i32) * binom.sqrt() / r.cosh().powi(k as i32 + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normalization_within_tail(k in 0..=K_MAX, r in 0.0f64..3.0, tol in 1e-13f64..1e-6) {
        let s = state(k, r, 0.0, tol);
        let direct: f64 = s.mags().iter().map(|c| c * c).sum();
        prop_assert!(s.tail_bound() < tol);
        prop_assert!((direct - 1.0).abs() <= 2.0 * s.tail_bound() + 1e-12, "k={} r={} sum={}", k, r, direct);
    }

    #[test]
    fn ratio_recurrence_is_exact(k in 0..=K_MAX, r in 0.01f64..5.0) {
        let s = state(k, r, 0.0, 1e-10);
        let t = r.tanh();
        for (n, w) in s.mags().windows(2).enumerate() {
            let want = t * ((n + k + 1) as f64 / (n + 1) as f64).sqrt();
            let got = w[1] / w[0];
            prop_assert!((got / want - 1.0).abs() <= 1e-13, "k={} r={} n={} rel={:e}", k, r, n, got / want - 1.0);
        }
    }

    #[test]
    fn phase_never_touches_magnitudes(k in 0..=4usize, r in 0.0f64..2.0, theta in -10.0f64..10.0) {
        let a = state(k, r, 0.0, 1e-12);
        let b = state(k, r, theta, 1e-12);
        prop_assert_eq!(a.mags(), b.mags());
        prop_assert_eq!(a.tail_bound(), b.tail_bound());
    }

    #[test]
    fn ratio_consistency(k in 0..=4usize, r in 0.0f64..3.0) {
        let s = state(k, r, 0.0, 1e-12);
        let rep = log_negativity_closed(&s);
        let eq16 = rep.ratio_eq16.unwrap();
        let via_log_neg = 2f64.powf(rep.log_negativity) * (-2.0 * r).exp();
        prop_assert!((eq16 / via_log_neg - 1.0).abs() <= 1e-10);
        let from_n = (2.0 * rep.negativity).ln_1p() / std::f64::consts::LN_2;
        prop_assert!((from_n - rep.log_negativity).abs() <= 1e-12 * rep.log_negativity.max(1.0));
    }
}

#[test]
fn matches_direct_formula() {
    for k in 0..=5 {
        for r in [0.2, 0.8, 1.5] {
            let s = state(k, r, 0.0, 1e-12);
            for n in 0..s.len().min(60) {
                let want = direct_coefficient(k, r, n);
                assert!((s.mags()[n] / want - 1.0).abs() < 1e-12, "k={k} r={r} n={n}");
            }
        }
    }
}

#[test]
fn tmsv_equals_generalized_formula_at_k0() {
    for r in [0.2, 0.8, 1.5] {
        let s = state(0, r, 0.0, 1e-12);
        for (n, c) in s.mags().iter().enumerate() {
            let geometric = r.tanh().powi(n as i32) / r.cosh();
            assert!((c / geometric - 1.0).abs() < 1e-12);
            assert!((c / direct_coefficient(0, r, n) - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn single_subtraction_sum_by_direct_summation() {
    let r: f64 = 0.5;
    let t = r.tanh();
    let direct: f64 = (0..2000).map(|n| t.powi(n) * ((n + 1) as f64).sqrt()).sum::<f64>() / r.cosh().powi(2);
    let s = state(1, r, 0.0, 1e-12);
    let ls = log_sum_coefficients(&s);
    assert!((ls.log_sum.exp() - direct).abs() < 1e-10);
    assert!((direct - 1.907).abs() < 1e-3);
    assert!(ls.tail_rel < 1e-12);
}

#[test]
fn coefficient_sum_increases_with_squeezing() {
    for k in 0..=4 {
        let sums: Vec<f64> = (0..=30)
            .map(|i| log_sum_coefficients(&state(k, i as f64 * 0.1, 0.0, 1e-12)).log_sum)
            .collect();
        assert!(sums.windows(2).all(|w| w[1] > w[0]), "k={k}");
    }
}

#[test]
fn squeezed_vacuum_self_ratio() {
    for r in [0.01, 0.3, 1.0, 2.5, 4.0] {
        let ratio = entanglement_ratio(&state(0, r, 0.0, 1e-12)).unwrap();
        assert!((ratio.ratio_eq16 - 1.0).abs() < 1e-10, "r={r}");
        assert!((ratio.ratio_of_logs.unwrap() - 1.0).abs() < 1e-10, "r={r}");
    }
}

#[test]
fn single_subtraction_ratio_approaches_half_pi() {
    // independent: plain summation of sqrt(n+1) t^n in linear space
    let direct_ratio = |r: f64| {
        let t = r.tanh();
        let mut sum = 0.0;
        let mut term = 1.0;
        let mut n = 0usize;
        while term > 1e-18 || n < 10 {
            sum += term * ((n + 1) as f64).sqrt();
            term *= t;
            n += 1;
        }
        (sum / r.cosh().powi(2) * (-r).exp()).powi(2)
    };
    let half_pi = std::f64::consts::FRAC_PI_2;
    let gaps: Vec<f64> = [4.0, 5.0, 6.0]
        .iter()
        .map(|&r| (direct_ratio(r) - half_pi).abs())
        .collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2]);

    let got = entanglement_ratio(&state(1, 4.0, 0.0, 1e-12)).unwrap().ratio_eq16;
    assert!((got - direct_ratio(4.0)).abs() < 1e-9);
    assert!((got / half_pi - 1.0).abs() < 0.01);
}

#[test]
fn zero_squeeze_ratio_is_one_for_every_k() {
    for k in 0..=K_MAX {
        let ratio = entanglement_ratio(&state(k, 0.0, 0.0, 1e-12)).unwrap();
        assert_eq!(ratio.ratio_eq16, 1.0);
        assert_eq!(ratio.ratio_of_logs, None);
    }
}

#[test]
fn extreme_corner_stays_finite() {
    let s = state(K_MAX, 5.0, 0.0, 1e-12);
    assert!(s.len() > 10_000);
    let rep = log_negativity_closed(&s);
    assert!(rep.log_negativity.is_finite() && rep.ratio_eq16.unwrap().is_finite());
    assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
}
