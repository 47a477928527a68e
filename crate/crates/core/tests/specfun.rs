mod support;

use mild_eigen::specfun::{
    density_k, density_k_integral, density_laplace, density_moments, density_tau_max, erfc_fn, gamma_fn, ml,
    ml_asymptotic, ml_eval, ml_integral, ml_taylor, FracOrder, MLEvalConfig, DEFAULT_DENSITY_TERMS,
};
use mild_eigen::Error;
use proptest::prelude::*;
use std::f64::consts::PI;
use support::*;

const GAMMA_REF: [(f64, f64); 7] = [
    (0.1, 9.513507698668731836292),
    (0.3, 2.991568987687590628313),
    (2.5, 1.329340388179137020474),
    (7.7, 2769.830362327313660274),
    (10.3, 716430.6890623752445476),
    (33.3, 7.487577596522706607992e+35),
    (150.5, 4.661072627097377918445e+261),
];

const ERFC_REF: [(f64, f64); 25] = [
    (0.0, 1.0),
    (0.25, 0.7236736098317630670149),
    (0.5, 0.4795001221869534623173),
    (0.75, 0.2888443663464848684011),
    (1.0, 0.1572992070502851306588),
    (1.25, 0.07709987174354176986348),
    (1.5, 0.03389485352468927293302),
    (1.75, 0.01332832878081755622779),
    (2.0, 0.004677734981047265837931),
    (2.25, 0.001462716586681151697911),
    (2.5, 0.0004069520174449589395642),
    (2.75, 0.0001006219221196368369044),
    (3.0, 0.00002209049699858544137278),
    (3.25, 0.000004302779463675121830476),
    (3.5, 7.430983723414127455237e-7),
    (3.75, 1.137272565697966532591e-7),
    (4.0, 1.541725790028001885216e-8),
    (4.25, 1.850574137386742520056e-9),
    (4.5, 1.966160441542887476279e-10),
    (4.75, 1.848504772148531088743e-11),
    (5.0, 1.537459794428034850188e-12),
    (5.25, 1.131031326688715388279e-13),
    (5.5, 7.357847917974398063068e-15),
    (5.75, 4.232136617425737625947e-16),
    (6.0, 2.151973671249891311659e-17),
];

fn cfg() -> MLEvalConfig {
    MLEvalConfig::default()
}

#[test]
fn gamma_trivial_values() {
    assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
    assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-13);
    assert!(rel(gamma_fn(1.5).unwrap(), 0.5 * PI.sqrt()) < 1e-13);
}

#[test]
fn gamma_matches_reference_table() {
    for (x, want) in GAMMA_REF {
        assert!(rel(gamma_fn(x).unwrap(), want) < 1e-13, "x = {x}");
    }
}

#[test]
fn gamma_rejects_nonpositive() {
    for x in [0.0, -1.0, -0.5, f64::NAN] {
        assert!(matches!(gamma_fn(x), Err(Error::Domain(_))), "x = {x}");
    }
}

#[test]
fn erfc_matches_reference_table() {
    for (x, want) in ERFC_REF {
        assert!(rel(erfc_fn(x), want) <= 1e-12, "x = {x}: {} vs {want}", erfc_fn(x));
    }
    assert!(erfc_fn(6.0) <= 2.2e-17);
}

#[test]
fn erfc_matches_gaussian_quadrature() {
    // erfc(x) = 2/√π ∫_x^∞ e^{−t²} dt, by the test-side exp-sinh rule.
    for x in [0.3, 1.0, 2.2, 3.7] {
        let q = erfcx_oracle(x) * (-x * x).exp();
        assert!(rel(erfc_fn(x), q) < 1e-12, "x = {x}");
    }
    assert!((erfc_fn(1.0) - 0.157_299_207_1).abs() < 1e-10);
    assert!(rel(erfc_fn(1.0), ERFC_1) < 1e-13);
    // Asymptotic upper bound e^{−x²}/(x√π) at x = 6.
    assert!(erfc_fn(6.0) <= (-36f64).exp() / (6.0 * PI.sqrt()));
    assert!(rel(erfc_fn(6.0), ERFC_6) < 1e-12);
}

#[test]
fn erfc_negative_arguments_reflect() {
    for x in [0.1, 0.9, 2.5] {
        assert!((erfc_fn(-x) - (2.0 - erfc_fn(x))).abs() < 1e-15);
    }
}

#[test]
fn ml_examples() {
    assert!((ml(1.0, 1.0, -1.0, &cfg()).unwrap() - 0.367_879_441_2).abs() < 1e-10);
    assert!((ml(0.5, 0.5, 0.0, &cfg()).unwrap() - 0.564_189_583_5).abs() < 1e-10);
    let v = ml(0.5, 1.0, -1.0, &cfg()).unwrap();
    assert!((v - 0.427_583_576_2).abs() < 1e-10);
    assert!(rel(v, ml_half_oracle(1.0)) < 1e-12);
    assert!(rel(v, E_HALF_M1) < 1e-12);
}

#[test]
fn ml_domain_errors() {
    for (a, b, z) in [(0.0, 1.0, -1.0), (1.2, 1.0, -1.0), (0.5, 0.0, -1.0), (0.5, 1.0, 0.5), (0.5, 1.0, f64::NAN)] {
        assert!(matches!(ml(a, b, z, &cfg()), Err(Error::Domain(_))), "({a}, {b}, {z})");
    }
}

#[test]
fn ml_invalid_config_is_rejected() {
    let mut c = cfg();
    c.target_rel_err = 1e-3;
    assert!(ml(0.5, 1.0, -1.0, &c).is_err());
    let mut c = cfg();
    c.series_cutoff_terms = 0;
    assert!(ml(0.5, 1.0, -1.0, &c).is_err());
}

#[test]
fn ml_unreachable_tolerance_reports_accuracy() {
    let c = cfg().with_target(1e-17);
    match ml(0.3, 0.3, -40.0, &c) {
        Err(Error::Accuracy { requested, achieved, .. }) => {
            assert_eq!(requested, 1e-17);
            assert!(achieved > requested);
        }
        other => panic!("expected an accuracy error, got {other:?}"),
    }
}

#[test]
fn ml_at_zero_is_reciprocal_gamma() {
    for a in [0.3, 0.5, 0.7] {
        for b in [a, 1.0] {
            let v = ml(a, b, 0.0, &cfg()).unwrap();
            assert!((v - 1.0 / gamma_fn(b).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn ml_complete_monotonicity_proxy() {
    for a in [0.3, 0.5, 0.7] {
        let mut prev = f64::INFINITY;
        for i in 0..=500 {
            let x = i as f64 * 0.1;
            let e = ml(a, 1.0, -x, &cfg()).unwrap();
            let ea = ml(a, a, -x, &cfg()).unwrap();
            assert!(e > 0.0 && ea > 0.0, "a = {a}, x = {x}");
            assert!(e < prev, "a = {a}, x = {x}: not strictly decreasing");
            prev = e;
        }
    }
}

#[test]
fn ml_multiplier_bounds() {
    for beta in [0.3, 0.5, 0.7] {
        let cap = 1.0 / gamma_fn(beta).unwrap();
        for i in 0..=400 {
            let x = (i as f64 * 0.05).powi(2);
            let s = ml(beta, 1.0, -x, &cfg()).unwrap();
            let t = ml(beta, beta, -x, &cfg()).unwrap();
            assert!(s > 0.0 && s <= 1.0);
            assert!(t > 0.0 && t <= cap * (1.0 + 1e-15));
        }
    }
}

#[test]
fn ml_half_matches_erfc_identity_dense() {
    for i in 0..=200 {
        let x = i as f64 * 0.05;
        let v = ml(0.5, 1.0, -x, &cfg()).unwrap();
        assert!((v - ml_half_oracle(x)).abs() < 1e-8, "x = {x}");
    }
}

#[test]
fn regimes_agree_in_overlap_window() {
    // Every regime whose own bound certifies 1e-8 must agree with the others.
    for a in [0.3, 0.5, 0.7, 0.9, 1.0] {
        for b in [a, 1.0] {
            for i in 0..=8 {
                let x = 8.0 + 0.5 * i as f64;
                let reference = ml(a, b, -x, &cfg()).unwrap();
                let mut cands = vec![ml_taylor(a, b, x, 400), ml_asymptotic(a, b, x, 12)];
                if a < 1.0 && b < 1.0 + a {
                    cands.push(ml_integral(a, b, x, 1e-12));
                }
                for c in cands {
                    if c.rel_err <= 1e-8 {
                        let diff = (c.value - reference).abs();
                        assert!(
                            diff <= (c.rel_err + 1e-10) * reference.abs() + 1e-16,
                            "a={a} b={b} x={x} {:?}: {} vs {reference}",
                            c.method,
                            c.value
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn ml_eval_reports_honest_bounds() {
    for &(a, b, x) in &[(0.5, 1.0, 3.0), (0.3, 0.3, 20.0), (0.9, 1.0, 10.0), (0.5, 0.5, 50.0)] {
        let v = ml_eval(a, b, -x, &cfg()).unwrap();
        assert!(v.rel_err <= cfg().target_rel_err);
        if a == 0.5 && b == 1.0 {
            assert!(rel(v.value, ml_half_oracle(x)) <= 1e-10);
        }
    }
}

#[test]
fn density_examples() {
    let half = FracOrder::new(0.5).unwrap();
    assert!((density_k(half, 0.0, DEFAULT_DENSITY_TERMS).unwrap() - 0.564_189_583_5).abs() < 1e-10);
    assert!((density_k(half, 2.0, DEFAULT_DENSITY_TERMS).unwrap() - 0.207_553_748_7).abs() < 1e-10);
    let b3 = FracOrder::new(0.3).unwrap();
    let first_term = 1.0 / (0.3 * PI) * gamma_fn(1.3).unwrap() * (0.3 * PI).sin();
    let v = density_k(b3, 0.0, DEFAULT_DENSITY_TERMS).unwrap();
    assert!(rel(v, first_term) < 1e-13);
    assert!(rel(v, K03_AT_0) < 1e-13);
}

#[test]
fn density_outside_certified_range_is_a_range_error() {
    let half = FracOrder::new(0.5).unwrap();
    let tmax = density_tau_max(half, DEFAULT_DENSITY_TERMS);
    assert!(tmax > 3.0);
    match density_k(half, tmax + 1.0, DEFAULT_DENSITY_TERMS) {
        Err(Error::Range { tau_max, .. }) => assert_eq!(tau_max, tmax),
        other => panic!("expected a range error, got {other:?}"),
    }
    // The integral form covers the rest of the half line.
    let tau = tmax + 1.0;
    let closed = (-tau * tau / 4.0).exp() / PI.sqrt();
    assert!(rel(density_k_integral(half, tau).unwrap(), closed) < 1e-10);
}

#[test]
fn density_is_nonnegative_on_certified_range() {
    for b in [0.3, 0.5, 0.7] {
        let beta = FracOrder::new(b).unwrap();
        let tmax = density_tau_max(beta, DEFAULT_DENSITY_TERMS);
        for i in 0..=200 {
            let tau = tmax * i as f64 / 200.0;
            assert!(density_k(beta, tau, DEFAULT_DENSITY_TERMS).unwrap() >= -1e-12, "beta={b} tau={tau}");
        }
    }
}

#[test]
fn density_matches_test_side_quadrature_of_closed_form() {
    // ∫_0^∞ τ^j k_{1/2}(τ) e^{−xτ} dτ with the closed form and exp-sinh.
    let half = FracOrder::new(0.5).unwrap();
    for x in [0.5, 1.0, 4.0] {
        let q0 = exp_sinh(|t| (-t * t / 4.0 - x * t).exp() / PI.sqrt(), 1e-14);
        let q1 = exp_sinh(|t| t * (-t * t / 4.0 - x * t).exp() / PI.sqrt(), 1e-14);
        assert!((density_laplace(half, x, 0).unwrap() - q0).abs() < 1e-10);
        assert!((density_laplace(half, x, 1).unwrap() - 0.5 * q1).abs() < 1e-10);
    }
}

#[test]
fn density_moment_examples() {
    let m = density_moments(FracOrder::new(0.5).unwrap(), 20_000).unwrap();
    assert!((m.m0 - 1.0).abs() < 1e-6 && (m.m1 - 1.128_379_167_1).abs() < 1e-6);
    let m = density_moments(FracOrder::new(0.3).unwrap(), 20_000).unwrap();
    assert!((m.m0 - 1.0).abs() < 1e-6 && (m.m1 - RGAMMA_1_3).abs() < 1e-6);
    let m = density_moments(FracOrder::new(0.7).unwrap(), 20_000).unwrap();
    assert!((m.m0 - 1.0).abs() < 1e-6 && (m.m1 - RGAMMA_1_7).abs() < 1e-6);
    assert!(m.tail_bound <= 1e-8);
}

#[test]
fn laplace_bridge() {
    for b in [0.3, 0.5, 0.7] {
        let beta = FracOrder::new(b).unwrap();
        for x in [0.5, 1.0, 4.0, 9.0] {
            assert!((density_laplace(beta, x, 0).unwrap() - ml(b, 1.0, -x, &cfg()).unwrap()).abs() < 1e-6);
            assert!((density_laplace(beta, x, 1).unwrap() - ml(b, b, -x, &cfg()).unwrap()).abs() < 1e-6);
        }
    }
}

#[test]
fn frac_order_rejects_out_of_range() {
    for b in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
        assert!(FracOrder::new(b).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ml_recurrence_in_b(a in 0.2f64..1.0, b in 0.2f64..2.0, x in 0.0f64..30.0) {
        // E_{a,b}(z) = 1/Γ(b) + z E_{a,a+b}(z)
        let lhs = ml(a, b, -x, &cfg()).unwrap();
        let inner = ml(a, a + b, -x, &cfg()).unwrap();
        let g = 1.0 / gamma_fn(b).unwrap();
        let scale = g.abs() + (x * inner).abs();
        prop_assert!((lhs - (g - x * inner)).abs() <= 1e-9 * scale);
    }

    #[test]
    fn ml_derivative_identity_for_b_one(a in 0.2f64..1.0, x in 0.1f64..20.0) {
        // E_{a,1}(−x) − E_{a,1}(−y) ≈ via E_{a,a}: d/dt E_a(−t^a) = −t^{a−1} E_{a,a}(−t^a)
        let t = x.powf(1.0 / a);
        let h = 1e-5 * t;
        let f = |s: f64| ml(a, 1.0, -s.powf(a), &cfg()).unwrap();
        let fd = (f(t + h) - f(t - h)) / (2.0 * h);
        let exact = -t.powf(a - 1.0) * ml(a, a, -x, &cfg()).unwrap();
        prop_assert!((fd - exact).abs() <= 1e-5 * exact.abs() + 1e-12);
    }

    #[test]
    fn gamma_recurrence(x in 0.05f64..100.0) {
        prop_assert!(rel(gamma_fn(x + 1.0).unwrap(), x * gamma_fn(x).unwrap()) < 1e-13);
    }
}
