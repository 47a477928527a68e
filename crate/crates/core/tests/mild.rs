mod support;

use mild_eigen::lattice::{DiagonalGenerator, SpectralField};
use mild_eigen::mild::{
    benchmark_solution, build_weights, caputo_l1_residual, linear_benchmark, KernelRule, SolutionOperator,
    TimeGrid, Trajectory, VolterraOperator,
};
use mild_eigen::problem::{audit, sample_ball, sample_rng, NonlinearitySpec, NonlocalSpec, ProblemSpec};
use mild_eigen::specfun::{gamma_fn, ml, FracOrder, MLEvalConfig};
use mild_eigen::Error;
use std::f64::consts::PI;
use std::sync::Arc;
use support::*;

fn uniform(n: usize) -> Arc<TimeGrid> {
    Arc::new(TimeGrid::uniform(n).unwrap())
}

fn half() -> FracOrder {
    FracOrder::new(0.5).unwrap()
}

fn volterra(mu: Vec<f64>, beta: FracOrder, grid: Arc<TimeGrid>, rule: KernelRule) -> VolterraOperator {
    VolterraOperator::new(&DiagonalGenerator::new(mu).unwrap(), beta, grid, rule, &MLEvalConfig::default()).unwrap()
}

/// `E_{1/2,1/2}(−x) = 1/√π − x E_{1/2}(−x)`.
fn ml_half_half_oracle(x: f64) -> f64 {
    1.0 / PI.sqrt() - x * ml_half_oracle(x)
}

/// Adaptive oracle for `∫_0^t u^{−1/2} E_{1/2,1/2}(−√u) du`.
fn mode1_oracle(t: f64) -> f64 {
    tanh_sinh(|u| u.powf(-0.5) * ml_half_half_oracle(u.sqrt()), 0.0, t, 1e-13)
}

#[test]
fn single_step_weight_sum() {
    let w = build_weights(half(), &uniform(1));
    assert!((w.w[1].iter().sum::<f64>() - 2.0).abs() < 1e-14);
}

#[test]
fn weights_are_exact_on_constants_and_linears() {
    for b in [0.3, 0.5, 0.7] {
        let beta = FracOrder::new(b).unwrap();
        for grid in [uniform(16), uniform(50), Arc::new(TimeGrid::graded(40, 2.0 / b).unwrap())] {
            let w = build_weights(beta, &grid);
            let t = grid.nodes();
            for n in 0..t.len() {
                let s0 = w.apply(n, |_| 1.0);
                assert!((s0 - t[n].powf(b) / b).abs() < 1e-12, "beta={b} n={n}");
                // ∫_0^{t_n} (t_n − s)^{β−1} s ds = t_n^{β+1}/(β(β+1)).
                let s1 = w.apply(n, |j| t[j]);
                assert!((s1 - t[n].powf(b + 1.0) / (b * (b + 1.0))).abs() < 1e-12);
            }
            let last = t.len() - 1;
            assert!((w.apply(last, |j| t[j]) - 1.0 / (b * (b + 1.0))).abs() < 1e-12);
        }
    }
}

#[test]
fn weight_sums_agree_under_refinement() {
    let w64 = build_weights(half(), &uniform(64));
    let w128 = build_weights(half(), &uniform(128));
    for n in 0..=64 {
        let a: f64 = w64.w[n].iter().sum();
        let b: f64 = w128.w[2 * n].iter().sum();
        assert!((a - b).abs() < 1e-12, "n={n}");
    }
}

#[test]
fn all_weights_are_nonnegative() {
    for b in [0.3, 0.5, 0.9] {
        let beta = FracOrder::new(b).unwrap();
        for grid in [uniform(32), Arc::new(TimeGrid::graded(24, 2.0 / b).unwrap())] {
            assert!(build_weights(beta, &grid).w.iter().flatten().all(|w| *w >= 0.0));
            for rule in [KernelRule::Exact, KernelRule::Folded] {
                let op = volterra(vec![1.0, 4.0, 100.0, 2500.0], beta, grid.clone(), rule);
                for m in 0..4 {
                    for n in 0..=grid.steps() {
                        for j in 0..=n {
                            assert!(op.weight(m, n, j) >= 0.0, "beta={b} {rule:?} m={m} n={n} j={j}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn zero_forcing_gives_zero() {
    let grid = uniform(32);
    let op = volterra(vec![1.0, 4.0], half(), grid.clone(), KernelRule::Exact);
    let out = op.apply(&Trajectory::zeros(grid, 2)).unwrap();
    assert!(out.values().iter().all(|f| f.coeffs().iter().all(|c| *c == 0.0)));
}

#[test]
fn zero_eigenvalue_mode_integrates_constants_exactly() {
    let c = 1.7;
    for b in [0.3, 0.5, 0.7] {
        let beta = FracOrder::new(b).unwrap();
        for grid in [uniform(40), Arc::new(TimeGrid::graded(30, 2.0 / b).unwrap())] {
            for rule in [KernelRule::Exact, KernelRule::Folded] {
                let op = volterra(vec![0.0], beta, grid.clone(), rule);
                let f = Trajectory::constant(grid.clone(), &SpectralField::new(vec![c]).unwrap());
                let out = op.apply(&f).unwrap();
                assert_eq!(out.at(0).coeffs()[0], 0.0);
                for (n, t) in grid.nodes().iter().enumerate() {
                    let want = c * t.powf(b) / (b * gamma_fn(b).unwrap());
                    assert!((out.at(n).coeffs()[0] - want).abs() < 1e-12, "beta={b} {rule:?} n={n}");
                }
            }
        }
    }
}

#[test]
fn first_mode_matches_adaptive_quadrature() {
    let grid = uniform(256);
    let f = Trajectory::constant(grid.clone(), &SpectralField::e1(1));
    let exact = volterra(vec![1.0], half(), grid.clone(), KernelRule::Exact).apply(&f).unwrap();
    let folded = volterra(vec![1.0], half(), grid.clone(), KernelRule::Folded).apply(&f).unwrap();
    let oracle = mode1_oracle(1.0);
    assert!(rel(oracle, E_HALF_THREEHALF_M1) < 1e-10);
    let e_exact = rel(exact.last().coeffs()[0], oracle);
    let e_folded = rel(folded.last().coeffs()[0], oracle);
    assert!(e_exact <= 2e-3, "exact rule error {e_exact}");
    assert!(e_exact < e_folded);
    // Folding the operator factor into the scalar weights misses the bound.
    assert!(e_folded > 2e-3, "folded rule error {e_folded}");
    for (t, want) in [(0.5, V_MODE1_HALF), (0.25, V_MODE1_QUARTER)] {
        assert!(rel(mode1_oracle(t), want) < 1e-10);
        let n = grid.index_of(t).unwrap();
        assert!(rel(exact.at(n).coeffs()[0], want) <= 2e-3, "t={t}");
    }
}

#[test]
fn free_evolution_of_a_fixed_initial_value() {
    let grid = uniform(64);
    let u0 = SpectralField::new(vec![2.0, -0.5, 0.25]).unwrap();
    let p = ProblemSpec::new(half(), 3, grid.clone(), NonlinearitySpec::zero(4), NonlocalSpec::Fixed(u0.clone()), 0.1, 1.0)
        .unwrap();
    let op = SolutionOperator::new(&p).unwrap();
    let out = op.apply(&Trajectory::zeros(grid, 3)).unwrap();
    assert!((out.last().coeffs()[0] - 0.427_583_576_2 * 2.0).abs() < 1e-9);
    assert!(rel(out.last().coeffs()[0], E_HALF_M1 * 2.0) < 1e-12);
    for n in 0..3 {
        let mu = ((n + 1) * (n + 1)) as f64;
        let want = ml(0.5, 1.0, -mu, &MLEvalConfig::default()).unwrap() * u0.coeffs()[n];
        assert!((out.last().coeffs()[n] - want).abs() < 1e-14);
    }
}

#[test]
fn zero_input_leaves_only_the_source_term() {
    let p = ProblemSpec::heat_instance(16, 64).unwrap();
    let op = SolutionOperator::new(&p).unwrap();
    let zero = Trajectory::zeros(p.grid.clone(), 16);
    let out = op.apply(&zero).unwrap();
    assert!(out.at(0).coeffs().iter().all(|c| *c == 0.0));
    let phi0 = SpectralField::sine(16, 1, 1.0);
    let src = Trajectory::from_fn(p.grid.clone(), |_, t| phi0.scaled((-t).exp())).unwrap();
    let want = op.volterra_part(&src).unwrap();
    assert!(out.sup_distance(&want) < 1e-12);
}

#[test]
fn initial_node_equals_nonlocal_value_exactly() {
    let p = ProblemSpec::heat_instance(16, 64).unwrap();
    let op = SolutionOperator::new(&p).unwrap();
    let mut r = rng(9);
    for _ in 0..5 {
        let u = Trajectory::from_fn(p.grid.clone(), |_, _| random_field(&mut r, 16)).unwrap();
        let out = op.apply(&u).unwrap();
        assert_eq!(out.at(0), &p.nonlocal.eval(&u).unwrap());
    }
}

#[test]
fn operator_is_affine_in_f() {
    let p = ProblemSpec::heat_instance(16, 64).unwrap();
    let u = Trajectory::from_fn(p.grid.clone(), |_, t| SpectralField::sine(16, 1, 1.0 + t)).unwrap();
    let base = SolutionOperator::new(&p).unwrap().parts(&u).unwrap();
    for c in [0.0, 0.5, 3.0] {
        let mut q = p.clone();
        q.nonlinearity = p.nonlinearity.scaled(c);
        let out = SolutionOperator::new(&q).unwrap().apply(&u).unwrap();
        assert_eq!(out.at(0), &base.initial);
        for n in 1..u.len() {
            let want = base.free.at(n).add(&base.volterra.at(n).scaled(c));
            assert!(out.at(n).distance(&want) < 1e-12, "c={c} n={n}");
        }
    }
}

#[test]
fn volterra_part_respects_the_uniform_bound() {
    let p = ProblemSpec::heat_instance(32, 128).unwrap();
    let rep = audit(&p, 1.0, 50, 7).unwrap();
    let op = SolutionOperator::new(&p).unwrap();
    let bound = rep.m_alpha / gamma_fn(1.5).unwrap() + 1e-8;
    for s in 0..20 {
        let u = sample_ball(&p, op.transform(), &mut sample_rng(99, s)).unwrap();
        assert!(u.sup_norm() <= p.alpha * (1.0 + 1e-12));
        let g = op.volterra_part(&op.forcing(&u).unwrap()).unwrap();
        assert!(g.sup_norm() <= bound, "sample {s}: {} > {bound}", g.sup_norm());
    }
}

#[test]
fn refinement_converges_at_first_order() {
    let modes = 16;
    let field = |t: f64| {
        SpectralField::new((1..=modes).map(|n| (1.0 + t * t) / (n * n) as f64 * if n % 2 == 1 { 1.0 } else { 0.3 }).collect())
            .unwrap()
    };
    let image = |n: usize| {
        let p = ProblemSpec::heat_instance(modes, n).unwrap();
        let u = Trajectory::from_fn(p.grid.clone(), |_, t| field(t)).unwrap();
        SolutionOperator::new(&p).unwrap().apply(&u).unwrap()
    };
    let (a, b, c) = (image(32), image(64), image(128));
    let d1 = (0..=32).map(|n| a.at(n).distance(b.at(2 * n))).fold(0.0, f64::max);
    let d2 = (0..=64).map(|n| b.at(n).distance(c.at(2 * n))).fold(0.0, f64::max);
    assert!(d2 <= 0.5 * d1 * 1.05, "d1={d1} d2={d2}");
    assert!(d2 * 64.0 < 1.0, "C·N^-1 with C ≤ 1: d2={d2}");
}

fn single_mode_caputo_problem(grid: Arc<TimeGrid>, mu: f64) -> ProblemSpec {
    let mut p = ProblemSpec::new(
        half(),
        1,
        grid,
        NonlinearitySpec::zero(2),
        NonlocalSpec::Fixed(SpectralField::e1(1)),
        0.1,
        1.0,
    )
    .unwrap();
    p.generator = DiagonalGenerator::new(vec![mu]).unwrap();
    p
}

#[test]
fn caputo_of_a_constant_vanishes() {
    let grid = uniform(64);
    let p = single_mode_caputo_problem(grid.clone(), 0.0);
    let u = Trajectory::constant(grid, &SpectralField::new(vec![3.5]).unwrap());
    let r = caputo_l1_residual(&p, &u, 1.0).unwrap();
    assert_eq!(r.max, 0.0);
    assert_eq!(r.per_node.len(), 64);
}

#[test]
fn caputo_residual_of_the_closed_form_solution_decreases() {
    let mut prev = f64::INFINITY;
    let mut prev_ratio = None;
    for n in [32, 64, 128, 256] {
        let grid = uniform(n);
        let p = single_mode_caputo_problem(grid.clone(), 1.0);
        let u = Trajectory::from_fn(grid, |_, t| {
            SpectralField::new(vec![ml(0.5, 1.0, -t.sqrt(), &MLEvalConfig::default()).unwrap()]).unwrap()
        })
        .unwrap();
        let r = caputo_l1_residual(&p, &u, 1.0).unwrap();
        if prev.is_finite() {
            let ratio = prev / r.l2_time;
            assert!(ratio >= 2f64.powf(0.4), "N={n}: ratio {ratio}");
            prev_ratio = Some(ratio);
        }
        prev = r.l2_time;
        if n == 256 {
            assert!(r.l2_time <= 5e-2);
            assert!(r.last <= 5e-2);
        }
    }
    assert!(prev_ratio.is_some());
}

#[test]
fn caputo_residual_detects_a_non_solution() {
    let grid = uniform(256);
    let p = single_mode_caputo_problem(grid.clone(), 1.0);
    let u = Trajectory::from_fn(grid, |_, t| {
        let e = ml(0.5, 1.0, -t.sqrt(), &MLEvalConfig::default()).unwrap();
        SpectralField::new(vec![e + 0.1 * (3.0 * PI * t).sin()]).unwrap()
    })
    .unwrap();
    let r = caputo_l1_residual(&p, &u, 1.0).unwrap();
    assert!(r.l2_time >= 1e-2 && r.max >= 1e-2);
}

#[test]
fn caputo_residual_rejects_graded_grids() {
    let grid = Arc::new(TimeGrid::graded(32, 4.0).unwrap());
    let p = single_mode_caputo_problem(grid.clone(), 1.0);
    let u = Trajectory::zeros(grid, 1);
    assert!(matches!(caputo_l1_residual(&p, &u, 1.0), Err(Error::Unsupported(_))));
}

#[test]
fn linear_benchmark_matches_closed_form() {
    let run = linear_benchmark(half(), uniform(256), &MLEvalConfig::default()).unwrap();
    assert!(run.max_error < 1e-3);
    let graded = Arc::new(TimeGrid::graded(256, 4.0).unwrap());
    let u = benchmark_solution(half(), &graded);
    let e = ml(0.5, 1.0, -1.0, &MLEvalConfig::default()).unwrap();
    assert!((u.last().unwrap() - e).abs() < 1e-4);
    assert!(linear_benchmark(half(), graded, &MLEvalConfig::default()).unwrap().residual.is_none());
}

#[test]
fn grids_are_well_formed() {
    let g = TimeGrid::graded(10, 3.0).unwrap();
    assert_eq!(g.nodes()[0], 0.0);
    assert_eq!(*g.nodes().last().unwrap(), 1.0);
    assert!(g.nodes().windows(2).all(|w| w[0] < w[1]));
    assert!(TimeGrid::uniform(0).is_err());
    assert!(TimeGrid::graded(10, 0.5).is_err());
}
