mod support;

use mild_eigen::lattice::{ConeKind, ConeSpec, SineTransform, SpectralField};
use mild_eigen::mild::{SolutionOperator, TimeGrid, Trajectory};
use mild_eigen::problem::{
    audit, eval_f, eval_h, sample_ball, sample_boundary, sample_rng, CustomMap, NonlinearitySpec, NonlocalSpec,
    ProblemSpec, TimeFn,
};
use mild_eigen::Error;
use std::f64::consts::PI;
use std::sync::Arc;
use support::*;

const MODES: usize = 32;

fn heat() -> ProblemSpec {
    ProblemSpec::heat_instance(MODES, 64).unwrap()
}

fn transform(p: &ProblemSpec) -> SineTransform {
    SineTransform::new(p.modes(), p.nodal_points()).unwrap()
}

fn nodal_min(tr: &SineTransform, f: &SpectralField) -> f64 {
    tr.to_nodal(f).into_iter().fold(f64::INFINITY, f64::min)
}

#[test]
fn source_term_at_zero_state() {
    let p = heat();
    let phi0 = SpectralField::sine(MODES, 1, 1.0);
    let f0 = eval_f(&p.nonlinearity, 0.0, &SpectralField::zeros(MODES)).unwrap();
    assert!(f0.distance(&phi0) < 1e-13);
    assert!((f0.coeffs()[0] - (PI / 2.0).sqrt()).abs() < 1e-13);
    let f = eval_f(&p.nonlinearity, 0.3, &SpectralField::zeros(MODES)).unwrap();
    assert!(f.distance(&phi0.scaled((-0.3f64).exp())) < 1e-13);
}

#[test]
fn large_states_saturate_the_sigma_term() {
    let p = heat();
    let tr = transform(&p);
    let big = SpectralField::e1(MODES).scaled(1e12);
    for t in [0.0, 0.25, 0.6, 1.0] {
        let f = eval_f(&p.nonlinearity, t, &big).unwrap();
        let (rho, sig) = ((-t as f64).exp(), (PI * t).cos().powi(2));
        let nodal = tr.to_nodal(&f);
        for (v, x) in nodal.iter().zip(tr.nodes()) {
            assert!((v - (rho * x.sin() + sig)).abs() < 1e-9, "t={t} x={x}");
        }
        assert!(f.l2_norm() <= rho * (PI / 2.0).sqrt() + sig * PI.sqrt() + 1e-12);
    }
}

#[test]
fn negative_states_are_clamped() {
    let p = heat();
    let tr = transform(&p);
    let f = eval_f(&p.nonlinearity, 0.5, &SpectralField::e1(MODES).scaled(-3.0)).unwrap();
    // σ(1/2) = 0, and the clamp removes the σ-term anyway: F = ρφ_0.
    let want = SpectralField::sine(MODES, 1, (-0.5f64).exp());
    assert!(f.distance(&want) < 1e-13);
    assert!(nodal_min(&tr, &f) >= -1e-14);
}

#[test]
fn nan_values_are_data_errors() {
    let mut c = vec![0.0; MODES];
    c[3] = f64::NAN;
    assert!(SpectralField::new(c).is_err());
    let nan_map = NonlinearitySpec::custom(CustomMap::new("nan", |_, _, u| if u > 0.5 { f64::NAN } else { u }), MODES + 1);
    let u = SpectralField::e1(MODES);
    assert!(matches!(eval_f(&nan_map, 0.1, &u), Err(Error::Data(_))));
}

#[test]
fn integral_functional_examples() {
    let grid = Arc::new(TimeGrid::uniform(40).unwrap());
    let h = NonlocalSpec::Integral {
        omega: TimeFn::Const(1.0),
    };
    let c = SpectralField::new(vec![0.4, -1.0, 2.5]).unwrap();
    assert!(eval_h(&h, &Trajectory::constant(grid.clone(), &c)).unwrap().distance(&c) < 1e-14);
    let lin = Trajectory::from_fn(grid.clone(), |_, t| SpectralField::e1(3).scaled(t)).unwrap();
    assert!(eval_h(&h, &lin).unwrap().distance(&SpectralField::e1(3).scaled(0.5)) < 1e-14);
}

#[test]
fn multipoint_and_periodic_functionals() {
    let grid = Arc::new(TimeGrid::uniform(10).unwrap());
    let u = Trajectory::from_fn(grid.clone(), |n, t| SpectralField::new(vec![t, (n * n) as f64]).unwrap()).unwrap();
    assert_eq!(eval_h(&NonlocalSpec::Periodic, &u).unwrap(), *u.last());
    let mp = NonlocalSpec::Multipoint(vec![(0.25, 2.0), (0.6, 1.0)]);
    let h = eval_h(&mp, &u).unwrap();
    assert!((h.coeffs()[0] - (2.0 * 0.25 + 0.6)).abs() < 1e-14);
    // (n²) interpolated linearly between nodes 2 and 3 at 0.25, node 6 at 0.6.
    assert!((h.coeffs()[1] - (2.0 * 6.5 + 36.0)).abs() < 1e-12);
    assert!(matches!(
        eval_h(&NonlocalSpec::Multipoint(vec![(1.5, 1.0)]), &u),
        Err(Error::Domain(_))
    ));
    assert!(NonlocalSpec::Multipoint(vec![(0.5, -1.0)]).validate(2).is_err());
    let u0 = SpectralField::new(vec![1.0, 2.0]).unwrap();
    assert_eq!(eval_h(&NonlocalSpec::Fixed(u0.clone()), &u).unwrap(), u0);
}

#[test]
fn heat_audit_values() {
    let p = ProblemSpec::heat_instance(64, 256).unwrap();
    let rep = audit(&p, 1.0, 40, 42).unwrap();
    // Each factor of the analytic bound from an independent quadrature.
    let rho_l1 = tanh_sinh(|t| (-t).exp(), 0.0, 1.0, 1e-14);
    let phi_l2 = tanh_sinh(|x| x.sin().powi(2), 0.0, PI, 1e-14).sqrt();
    let sig_sup = (0..=1000).map(|i| (PI * i as f64 / 1000.0).cos().powi(2)).fold(0.0, f64::max);
    let analytic = rho_l1 * phi_l2 + sig_sup * PI.sqrt();
    assert!(rel(analytic, M_ALPHA_EXACT) < 1e-12);
    assert!(rel(rep.m_alpha_analytic.unwrap(), analytic) < 1e-12);
    assert!(rep.m_alpha >= rep.m_alpha_analytic.unwrap());
    assert!(rep.phi_alpha.distance(&SpectralField::e1(64).scaled(0.1)) < 1e-15);
    assert_eq!(rep.omega0, Some(1.0));
    assert!(rep.b_t0 >= 0.1 * E_HALF_M1);
    assert!(rep.b_t0 >= 0.042_758_4);
    assert!(rep.passed.f2 && rep.passed.h1 && rep.passed.h2);
    assert!(rep.all_passed());
    assert_eq!(rep.gamma_alpha.len(), 257);
    assert!(rep.gamma_alpha.at(0).distance(&SpectralField::sine(64, 1, 1.0)) < 1e-15);
}

#[test]
fn sign_changing_weight_fails_h1() {
    let mut p = heat();
    p.nonlocal = NonlocalSpec::Integral {
        omega: TimeFn::Affine {
            offset: -0.5,
            slope: 1.0,
        },
    };
    let rep = audit(&p, 1.0, 10, 1).unwrap();
    assert_eq!(rep.omega0, Some(-0.5));
    assert!(!rep.passed.h1);
    assert!(!rep.all_passed());
}

#[test]
fn custom_nonlinearity_audit_is_unavailable() {
    let mut p = heat();
    p.nonlinearity = NonlinearitySpec::custom(CustomMap::new("square", |_, _, u| u * u), MODES + 1);
    assert!(matches!(audit(&p, 1.0, 10, 1), Err(Error::AuditUnavailable(_))));
}

#[test]
fn audit_rejects_bad_t0() {
    let p = heat();
    assert!(matches!(audit(&p, 0.0, 10, 1), Err(Error::Domain(_))));
    assert!(matches!(audit(&p, 0.123_456, 10, 1), Err(Error::Domain(_))));
    assert!(matches!(audit(&p, 1.0, 0, 1), Err(Error::Domain(_))));
}

#[test]
fn audit_is_seed_deterministic() {
    let p = heat();
    let a = audit(&p, 0.5, 8, 3).unwrap();
    let b = audit(&p, 0.5, 8, 3).unwrap();
    assert_eq!(a.m_alpha_sampled.to_bits(), b.m_alpha_sampled.to_bits());
    assert_eq!(a.floor_min.to_bits(), b.floor_min.to_bits());
}

#[test]
fn forcing_maps_the_cone_ball_into_a_bounded_nonnegative_set() {
    let p = heat();
    let rep = audit(&p, 1.0, 20, 42).unwrap();
    let op = SolutionOperator::new(&p).unwrap();
    let tr = op.transform();
    for s in 0..500 {
        let u = sample_ball(&p, tr, &mut sample_rng(2024, s)).unwrap();
        assert!(u.sup_norm() <= p.alpha * (1.0 + 1e-12));
        let f = op.forcing(&u).unwrap();
        for v in f.values() {
            assert!(nodal_min(tr, v) >= 0.0);
            assert!(v.l2_norm() <= rep.m_alpha, "sample {s}");
        }
    }
}

#[test]
fn boundary_samples_satisfy_the_lower_bounds() {
    let p = heat();
    let rep = audit(&p, 1.0, 20, 42).unwrap();
    let op = SolutionOperator::new(&p).unwrap();
    let tr = op.transform();
    let e1 = tr.to_nodal(&p.cone.e1);
    let phi = tr.to_nodal(&rep.phi_alpha);
    let tol = p.cone.pos_tol;
    for s in 0..100 {
        let u = sample_boundary(&p, tr, &mut sample_rng(77, s)).unwrap();
        assert!((u.sup_norm() - p.alpha).abs() <= 1e-12);
        for v in u.values() {
            for (a, e) in tr.to_nodal(v).iter().zip(&e1) {
                assert!(*a >= p.cone.sigma_cone * p.alpha * e - tol);
            }
        }
        let f = op.forcing(&u).unwrap();
        for (fv, g) in f.values().iter().zip(rep.gamma_alpha.values()) {
            for (a, b) in tr.to_nodal(fv).iter().zip(tr.to_nodal(g)) {
                assert!(*a >= b - tol, "f2 violated on sample {s}");
            }
        }
        let h = p.nonlocal.eval(&u).unwrap();
        for (a, b) in tr.to_nodal(&h).iter().zip(&phi) {
            assert!(*a >= b - tol, "h1 violated on sample {s}");
        }
    }
}

#[test]
fn solution_operator_preserves_order() {
    let p = heat();
    let op = SolutionOperator::new(&p).unwrap();
    let tr = op.transform();
    for s in 0..30 {
        let v = sample_ball(&p, tr, &mut sample_rng(31, s)).unwrap();
        let lower = sample_ball(&p, tr, &mut sample_rng(32, s)).unwrap();
        // u = min(v, lower) nodally lies below v and stays nonnegative.
        let u = Trajectory::from_fn(p.grid.clone(), |n, _| {
            let a = tr.to_nodal(v.at(n));
            let b = tr.to_nodal(lower.at(n));
            tr.from_nodal(&a.iter().zip(&b).map(|(x, y)| x.min(*y)).collect::<Vec<_>>()).unwrap()
        })
        .unwrap();
        let (tu, tv) = (op.apply(&u).unwrap(), op.apply(&v).unwrap());
        for n in 0..tu.len() {
            for (a, b) in tr.to_nodal(tu.at(n)).iter().zip(tr.to_nodal(tv.at(n))) {
                assert!(*a <= b + p.cone.pos_tol, "sample {s} node {n}");
            }
        }
    }
}

#[test]
fn operator_image_respects_the_normality_floor() {
    let p = heat();
    let rep = audit(&p, 1.0, 20, 42).unwrap();
    let op = SolutionOperator::new(&p).unwrap();
    for s in 0..100 {
        let u = sample_boundary(&p, op.transform(), &mut sample_rng(55, s)).unwrap();
        let tu = op.apply(&u).unwrap();
        assert!(tu.last().l2_norm() >= rep.b_t0 - 1e-6, "sample {s}");
    }
    assert!(rep.floor_min >= rep.b_t0 - 1e-6);
}

#[test]
fn positive_cone_audit_uses_h_only() {
    let mut p = heat();
    p.cone = ConeSpec::new(ConeKind::Positive, 0.1, MODES, 1e-8).unwrap();
    let rep = audit(&p, 1.0, 10, 5).unwrap();
    assert_eq!(rep.cone_kind, ConeKind::Positive);
    assert!(rep.phi_alpha.l2_norm() == 0.0);
    assert!(rep.passed.h2);
}

#[test]
fn time_functions() {
    let f = TimeFn::Exp { amp: 2.0, rate: 1.0 };
    assert!((f.eval(1.0) - 2.0 * (-1f64).exp()).abs() < 1e-15);
    assert!((f.l1_norm() - 2.0 * (1.0 - (-1f64).exp())).abs() < 1e-14);
    let c = TimeFn::CosSq { amp: 1.0, freq: 1.0 };
    assert_eq!(c.sup_norm(), 1.0);
    assert!((c.l1_norm() - 0.5).abs() < 1e-14);
    let a = TimeFn::Affine { offset: -0.5, slope: 1.0 };
    assert_eq!(a.inf(), -0.5);
    assert!((a.l1_norm() - 0.25).abs() < 1e-14);
}
