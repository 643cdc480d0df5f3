use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use wavegraph_core::eigen::{jacobi_eigen, DenseMatrix};
use wavegraph_core::spectral::DEFAULT_EIGEN_TOL;
use wavegraph_core::*;

fn symmetric_matrix() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..=8).prop_flat_map(|n| {
        prop::collection::vec(-10.0..10.0f64, n * n).prop_map(move |raw| {
            let mut rows = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..=i {
                    rows[i][j] = raw[i * n + j];
                    rows[j][i] = raw[i * n + j];
                }
            }
            rows
        })
    })
}

/// Weighted path `0..n+1` with random measures and weights; `Omega` is the interior.
fn weighted_path() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>)> {
    (1usize..=7).prop_flat_map(|n| {
        (
            prop::collection::vec(0.1..10.0f64, n + 2),
            prop::collection::vec(0.1..10.0f64, n + 1),
            prop::collection::vec(-1.0..1.0f64, n),
            prop::collection::vec(-1.0..1.0f64, n),
        )
    })
}

fn build_path(mu: &[f64], w: &[f64], g: &[f64], h: &[f64]) -> WaveSolution {
    let vertices: Vec<(VertexId, f64)> = mu.iter().enumerate().map(|(i, &m)| (i as VertexId, m)).collect();
    let edges: Vec<(VertexId, VertexId, f64)> = w.iter().enumerate().map(|(i, &c)| (i as VertexId, i as VertexId + 1, c)).collect();
    let graph = Arc::new(WeightedGraph::new(&vertices, &edges).unwrap());
    let omega = VertexSet::new(&graph, 1..=g.len() as VertexId).unwrap();
    let g0 = VertexFunction::new(omega.clone(), g.to_vec()).unwrap();
    let h0 = VertexFunction::new(omega.clone(), h.to_vec()).unwrap();
    solve_wave(&DirichletProblem::new(graph, omega, g0, h0).unwrap(), DEFAULT_EIGEN_TOL).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_reconstructs_the_matrix(rows in symmetric_matrix()) {
        let a = DenseMatrix::from_rows(&rows).unwrap();
        let eig = jacobi_eigen(&a, 1e-12).unwrap();
        let n = rows.len();
        let scale = a.frobenius().max(1.0);
        for i in 0..n {
            for j in 0..n {
                let v: f64 = (0..n).map(|k| eig.values[k] * eig.vectors[k][i] * eig.vectors[k][j]).sum();
                prop_assert!((v - rows[i][j]).abs() <= 1e-9 * scale);
            }
        }
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        let trace: f64 = (0..n).map(|i| rows[i][i]).sum();
        prop_assert!((eig.values.iter().sum::<f64>() - trace).abs() <= 1e-9 * scale);
    }

    #[test]
    fn wave_solution_matches_data_and_conserves_energy((mu, w, g, h) in weighted_path(), t in -6.0..6.0f64) {
        let sol = build_path(&mu, &w, &g, &h);
        for (i, x) in (1..=g.len() as VertexId).enumerate() {
            prop_assert!((sol.evaluate(0.0, x).unwrap() - g[i]).abs() < 1e-10);
            prop_assert!((sol.derivative(0.0, x, 1).unwrap() - h[i]).abs() < 1e-10);
        }
        let e0 = sol.energy(0.0).unwrap();
        prop_assert!((sol.energy(t).unwrap() - e0).abs() <= 1e-9 * e0.max(1.0));
        prop_assert!(sol.residual(&[t]).unwrap() <= 1e-8);
        prop_assert!(sol.spectral().orthonormality_defect() <= 1e-10);
    }

    #[test]
    fn counterexample_is_mirror_symmetric(beta in 1u32..=4, m in 2u32..=4, x in 0i64..=6, t in 0.2..3.0f64) {
        let sol = CounterexampleSolution::new(beta, m, 128, CounterexampleSolution::required_depth(m, x, 2)).unwrap();
        let slice = sol.at(t).unwrap();
        for order in 0..=2 {
            prop_assert_eq!(slice.eval(x, order).unwrap(), slice.eval(-x - 1, order).unwrap());
        }
    }

    #[test]
    fn counterexample_residual_vanishes(beta in 1u32..=4, m in 2u32..=3, x in -5i64..=5, t in 0.3..2.5f64) {
        let sol = CounterexampleSolution::new(beta, m, 128, CounterexampleSolution::residual_depth(m, x)).unwrap();
        let slice = sol.at(t).unwrap();
        prop_assert!(slice.exact_residual_numerator(x).unwrap() == BigInt::from(0));
        let scale = slice.eval(x, m).unwrap().to_f64().abs().max(1.0);
        prop_assert!(slice.pde_residual(x).unwrap().abs_upper_bound().to_f64() <= scale * 2f64.powi(-90));
    }

    #[test]
    fn intermediate_bound_is_homogeneous(m0 in 0.0..100.0f64, top in 0.0..100.0f64, len in 0.01..10.0f64, n in 1u32..=6, i in 1u32..=6, lambda in 0.1..10.0f64) {
        prop_assume!(i <= n);
        let a = intermediate_derivative_bound(m0, top, 0.0, len, i, n).unwrap();
        let b = intermediate_derivative_bound(lambda * m0, lambda * top, 0.0, len, i, n).unwrap();
        prop_assert!((b - lambda * a).abs() <= 1e-12 * b.abs().max(1e-300));
    }

    #[test]
    fn ore_bound_on_monomials(n in 1u32..=5, i in 1u32..=5, a in -2.0..2.0f64, len in 0.1..3.0f64) {
        // x^n has vanishing (n+1)-th derivative, so sup |f^(i)| <= K(i,n) M0 / len^i.
        prop_assume!(i <= n);
        let b = a + len;
        let sup = |deriv: u32| {
            let c: f64 = ((n - deriv + 1)..=n).map(f64::from).product();
            (0..=400).map(|j| {
                let x = a + len * f64::from(j) / 400.0;
                (c * x.powi((n - deriv) as i32)).abs()
            }).fold(0.0, f64::max)
        };
        let bound = intermediate_derivative_bound(sup(0), 0.0, a, b, i, n).unwrap();
        prop_assert!(sup(i) <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn first_order_identity_is_exact(m0 in 0i64..10_000, m2 in 0i64..10_000, num in 1i64..10_000, den in 1i64..10_000) {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        let len = BigRational::new(num.into(), den.into());
        let lhs = analyticity::first_derivative_bound_exact(&r(m0), &r(m2), &len).unwrap();
        let rhs = analyticity::intermediate_derivative_bound_exact(&r(m0), &r(m2), &len, 1, 1).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn remainder_trace_turns_at_the_radius(d in 0.5..8.0f64, alpha in 0.0..1.5f64, below in 0.3..0.8f64, above in 1.3..2.0f64) {
        let rep = analytic_radius_lower_bound(d, alpha, 2.0 - alpha).unwrap();
        let Radius::Finite(r) = rep.radius else { panic!("finite radius expected") };
        let params = |dt: f64| TraceParams { c: 1.0, d: 3, dt, k_max: 300 };
        let short = rep.clone().with_trace(params(below * r)).unwrap();
        prop_assert!(short.decreasing_from.is_some_and(|k| k < 300));
        let long = rep.with_trace(params(above * r)).unwrap();
        prop_assert!(long.increasing_from.is_some_and(|k| k < 300));
    }

    #[test]
    fn exp_and_ln_invert(num in 1i64..1_000_000, den in 1i64..1_000_000) {
        let q = BigRational::new(num.into(), den.into());
        let x = BigFloat::from_ratio(&q, 160);
        let back = x.ln(160).unwrap().exp(160).unwrap();
        let rel = back.sub(&x, 160).abs().div(&x, 64).to_f64();
        prop_assert!(rel < 1e-40);
    }

    #[test]
    fn graph_json_round_trips(n in 1usize..=12, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = verify::random_weighted_graph(&mut rng, n, 0.3).unwrap();
        let back = WeightedGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        for x in g.vertices() {
            prop_assert_eq!(back.measure(x).unwrap(), g.measure(x).unwrap());
        }
    }
}
