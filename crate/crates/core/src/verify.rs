//! Seeded property sweeps over the library's inequalities and identities.
//! Failures are reported as results, never raised as errors.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analyticity::{
    certify_class_membership, first_derivative_bound, first_derivative_bound_exact, intermediate_derivative_bound,
    intermediate_derivative_bound_exact, uniqueness_gap, Horizon, UniquenessStatus,
};
use crate::error::{Error, Result};
use crate::evolution::{TimeEvolution, ZeroExtended, ZeroSolution};
use crate::graph::{VertexId, VertexSet, WeightedGraph};
use crate::laplacian::{verify_power_bound, VertexFunction};
use crate::spectral::{solve_wave, DirichletProblem, DEFAULT_EIGEN_TOL};
use crate::tychonoff::{growth_ratio, CounterexampleSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LapBound,
    Ore,
    Residual,
    Growth,
    Uniqueness,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::LapBound, Suite::Ore, Suite::Residual, Suite::Growth, Suite::Uniqueness];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LapBound => "lap-bound",
            Suite::Ore => "ore",
            Suite::Residual => "residual",
            Suite::Growth => "growth",
            Suite::Uniqueness => "uniqueness",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All].into_iter().chain(Suite::EACH).find(|v| v.name() == s).ok_or_else(|| {
            Error::InvalidParameter(format!("unknown suite '{s}' (expected lap-bound, ore, residual, growth, uniqueness or all)"))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub suite: Suite,
    pub property: String,
    pub instances: usize,
    pub failures: usize,
    pub passed: bool,
    pub detail: String,
}

impl PropertyResult {
    fn new(suite: Suite, property: &str, instances: usize, failures: usize, detail: String) -> Self {
        PropertyResult { suite, property: property.into(), instances, failures, passed: failures == 0, detail }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub results: Vec<PropertyResult>,
    pub passed: bool,
}

/// Runs one suite, or all of them in a fixed order, with a corpus derived from `seed`.
pub fn verify_suite(suite: Suite, seed: u64) -> Result<VerifyReport> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut results = Vec::new();
    for s in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ suite_salt(s));
        results.extend(match s {
            Suite::LapBound => lap_bound_suite(&mut rng, 200)?,
            Suite::Ore => ore_suite(&mut rng, 100)?,
            Suite::Residual => residual_suite(&mut rng)?,
            Suite::Growth => growth_suite()?,
            Suite::Uniqueness => uniqueness_suite(&mut rng)?,
            Suite::All => unreachable!(),
        });
    }
    let passed = results.iter().all(|r| r.passed);
    Ok(VerifyReport { suite, seed, results, passed })
}

fn suite_salt(s: Suite) -> u64 {
    match s {
        Suite::LapBound => 0x6c61_7062,
        Suite::Ore => 0x6f72_6500,
        Suite::Residual => 0x7265_7369,
        Suite::Growth => 0x6772_6f77,
        Suite::Uniqueness => 0x756e_6971,
        Suite::All => 0,
    }
}

/// Connected random graph on `0..n`: a random tree plus extra edges with probability `extra`,
/// measures and weights uniform in `[0.1, 10]`.
pub fn random_weighted_graph(rng: &mut impl Rng, n: usize, extra: f64) -> Result<WeightedGraph> {
    let vertices: Vec<(VertexId, f64)> = (0..n as VertexId).map(|i| (i, rng.random_range(0.1..=10.0))).collect();
    let mut edges = Vec::new();
    for v in 1..n as VertexId {
        let u = rng.random_range(0..v);
        edges.push((u, v, rng.random_range(0.1..=10.0)));
    }
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if edges.iter().any(|&(a, b, _)| (a, b) == (u, v)) {
                continue;
            }
            if rng.random_bool(extra) {
                edges.push((u, v, rng.random_range(0.1..=10.0)));
            }
        }
    }
    WeightedGraph::new(&vertices, &edges)
}

/// `|Delta^k f(x)| <= (2 sup Deg)^k sup |f|` on random weighted graphs, every vertex, `k <= 4`.
pub fn lap_bound_suite(rng: &mut impl Rng, instances: usize) -> Result<Vec<PropertyResult>> {
    let mut failures = 0;
    let mut checks = 0;
    let mut worst_ratio = 0.0_f64;
    for _ in 0..instances {
        let n = rng.random_range(1..=20);
        let g = random_weighted_graph(rng, n, 0.15)?;
        let values: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let f = VertexFunction::new(g.all_vertices(), values)?;
        let mut ok = true;
        for x in g.vertices() {
            for k in 1..=4 {
                let check = verify_power_bound(&g, &f, x, k)?;
                checks += 1;
                ok &= check.holds;
                if check.rhs > 0.0 {
                    worst_ratio = worst_ratio.max(check.lhs / check.rhs);
                }
            }
        }
        failures += usize::from(!ok);
    }
    Ok(vec![PropertyResult::new(
        Suite::LapBound,
        "laplacian power bound",
        instances,
        failures,
        format!("{checks} vertex checks, max lhs/rhs {worst_ratio:.6}"),
    )])
}

/// Polynomial with coefficients `c[j]` of `x^j`.
#[derive(Debug, Clone)]
struct Poly(Vec<f64>);

impl Poly {
    fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly(vec![0.0]);
        }
        Poly(self.0.iter().enumerate().skip(1).map(|(j, c)| c * j as f64).collect())
    }

    fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn sampled_max(&self, a: f64, b: f64, points: usize) -> f64 {
        (0..points)
            .map(|j| self.eval(a + (b - a) * j as f64 / (points - 1) as f64).abs())
            .fold(0.0, f64::max)
    }
}

/// First-derivative and intermediate-derivative bounds on random polynomials of degree at most 6.
pub fn ore_suite(rng: &mut impl Rng, instances: usize) -> Result<Vec<PropertyResult>> {
    const POINTS: usize = 1000;
    let mut first_fail = 0;
    let mut ore_fail = 0;
    let mut ore_checks = 0;
    for _ in 0..instances {
        let degree = rng.random_range(0..=6);
        let poly = Poly((0..=degree).map(|_| rng.random_range(-5.0..=5.0)).collect());
        let a = rng.random_range(-2.0..=2.0);
        let b = a + rng.random_range(0.1..=3.0);
        let mut derivs = vec![poly];
        for i in 0..7 {
            let next = derivs[i].derivative();
            derivs.push(next);
        }
        let maxima: Vec<f64> = derivs.iter().map(|p| p.sampled_max(a, b, POINTS)).collect();
        let slack = |bound: f64| bound * (1.0 + 1e-12) + 1e-12;
        if maxima[1] > slack(first_derivative_bound(maxima[0], maxima[2], a, b)?) {
            first_fail += 1;
        }
        for n in 1..=5u32 {
            for i in 1..=n {
                let bound = intermediate_derivative_bound(maxima[0], maxima[n as usize + 1], a, b, i, n)?;
                ore_checks += 1;
                if maxima[i as usize] > slack(bound) {
                    ore_fail += 1;
                }
            }
        }
    }
    let mut identity_fail = 0;
    let identity_cases = 50;
    for _ in 0..identity_cases {
        let m0 = random_ratio(rng, 0);
        let m2 = random_ratio(rng, 0);
        let len = random_ratio(rng, 1);
        if first_derivative_bound_exact(&m0, &m2, &len)? != intermediate_derivative_bound_exact(&m0, &m2, &len, 1, 1)? {
            identity_fail += 1;
        }
    }
    Ok(vec![
        PropertyResult::new(Suite::Ore, "first derivative bound", instances, first_fail, format!("{POINTS} sample points")),
        PropertyResult::new(
            Suite::Ore,
            "intermediate derivative bound",
            instances,
            ore_fail,
            format!("{ore_checks} (i, n) checks with 1 <= i <= n <= 5"),
        ),
        PropertyResult::new(Suite::Ore, "first-order identity", identity_cases, identity_fail, "exact rationals".into()),
    ])
}

fn random_function(rng: &mut impl Rng, omega: &VertexSet) -> Result<VertexFunction> {
    VertexFunction::new(omega.clone(), (0..omega.len()).map(|_| rng.random_range(-1.0..=1.0)).collect())
}

fn random_ratio(rng: &mut impl Rng, min_numer: i64) -> BigRational {
    BigRational::new(rng.random_range(min_numer..1000).into(), rng.random_range(1..1000i64).into())
}

/// Unit-weight path `lo..=hi`.
fn path(lo: VertexId, hi: VertexId) -> Result<WeightedGraph> {
    let vertices: Vec<(VertexId, f64)> = (lo..=hi).map(|x| (x, 1.0)).collect();
    let edges: Vec<(VertexId, VertexId, f64)> = (lo..hi).map(|x| (x, x + 1, 1.0)).collect();
    WeightedGraph::new(&vertices, &edges)
}

/// Counterexample residual on a fixed grid, and the spectral residual on random data.
pub fn residual_suite(rng: &mut impl Rng) -> Result<Vec<PropertyResult>> {
    let xmax = 10;
    let sol = CounterexampleSolution::new(3, 2, 256, CounterexampleSolution::residual_depth(2, xmax))?;
    let times = [0.25, 0.5, 1.0, 2.0];
    let mut worst = 0.0_f64;
    let mut cells = 0;
    let mut fails = 0;
    for &t in &times {
        let slice = sol.at(t)?;
        for x in -xmax..=xmax {
            let r = slice.pde_residual(x)?.value.abs().to_f64();
            worst = worst.max(r);
            cells += 1;
            fails += usize::from(!(r <= 1e-30));
        }
    }
    let counter = PropertyResult::new(
        Suite::Residual,
        "counterexample residual",
        cells,
        fails,
        format!("beta 3, m 2, 256 bits, max residual {worst:e}"),
    );

    let graph = Arc::new(path(-3, 3)?);
    let omega = VertexSet::new(&graph, -2..=2)?;
    let mut spec_fail = 0;
    let mut spec_worst = 0.0_f64;
    let trials = 10;
    for _ in 0..trials {
        let g0 = random_function(rng, &omega)?;
        let h0 = random_function(rng, &omega)?;
        let ts: Vec<f64> = (0..20).map(|_| rng.random_range(-5.0..=5.0)).collect();
        let sol = solve_wave(&DirichletProblem::new(graph.clone(), omega.clone(), g0, h0)?, DEFAULT_EIGEN_TOL)?;
        let r = sol.residual(&ts)?;
        spec_worst = spec_worst.max(r);
        spec_fail += usize::from(!(r <= 1e-9));
    }
    let spectral = PropertyResult::new(
        Suite::Residual,
        "spectral residual",
        trials,
        spec_fail,
        format!("path Omega = -2..2, 20 random t in [-5, 5], max residual {spec_worst:e}"),
    );
    Ok(vec![counter, spectral])
}

/// `|u(1, x)| exp(-3 x ln x)` decreasing on `21..=30` for beta 3, at 512 bits.
pub fn growth_suite() -> Result<Vec<PropertyResult>> {
    let sol = CounterexampleSolution::new(3, 2, 512, CounterexampleSolution::required_depth(2, 30, 0))?;
    let ratio = |x: i64| growth_ratio(&sol, 1.0, x, 1.0);
    let r10 = ratio(10)?;
    let tail: Vec<_> = (21..=30).map(ratio).collect::<Result<_>>()?;
    let mut fails = 0;
    for w in tail.windows(2) {
        fails += usize::from(!w[1].abs_upper_bound().cmp_value(&lower_bound(&w[0])).is_lt());
    }
    fails += usize::from(!tail[9].abs_upper_bound().cmp_value(&lower_bound(&r10)).is_lt());
    Ok(vec![PropertyResult::new(
        Suite::Growth,
        "growth ratio decreasing",
        10,
        fails,
        format!("ratio(21) = {}, ratio(30) = {}", tail[0].value.to_sci_string(12), tail[9].value.to_sci_string(12)),
    )])
}

fn lower_bound(a: &crate::hp::Approx) -> crate::hp::BigFloat {
    let v = a.value.abs();
    match a.err_log2 {
        None => v,
        Some(e) => v.sub(&crate::hp::BigFloat::one().mul_pow2(e), u32::MAX),
    }
}

/// Two solves of the same data agree; the counterexample is flagged as outside the class.
pub fn uniqueness_suite(rng: &mut impl Rng) -> Result<Vec<PropertyResult>> {
    let graph = Arc::new(path(-4, 4)?);
    let omega = VertexSet::new(&graph, -3..=3)?;
    let g0 = random_function(rng, &omega)?;
    let h0 = random_function(rng, &omega)?;
    let horizon = 5.0;
    let c = g0.sup_norm() + h0.sup_norm() * horizon + 1.0;
    let problem = DirichletProblem::new(graph.clone(), omega, g0, h0)?;
    let u = ZeroExtended(solve_wave(&problem, DEFAULT_EIGEN_TOL)?);
    let v = ZeroExtended(solve_wave(&problem, DEFAULT_EIGEN_TOL)?);
    let grid: Vec<(f64, VertexId)> = (0..10)
        .flat_map(|_| {
            let t = rng.random_range(-horizon * 0.99..horizon * 0.99);
            [-4, -3, -2, -1, 1, 2, 3, 4].map(|x| (t, x))
        })
        .collect();
    let cert_u = certify_class_membership(&u, &graph, 0, 0.0, 0.0, c, Horizon::Finite(horizon), &grid)?;
    let cert_v = certify_class_membership(&v, &graph, 0, 0.0, 0.0, c, Horizon::Finite(horizon), &grid)?;
    let rep = uniqueness_gap(&u, &v, &cert_u, &cert_v, &grid, 1e-12)?;
    let same = PropertyResult::new(
        Suite::Uniqueness,
        "identical data agree",
        grid.len(),
        usize::from(!(rep.status == UniquenessStatus::HypothesesMet && rep.gap <= 1e-10)),
        format!("gap {:e}", rep.gap),
    );

    let line = WeightedGraph::line_window(12)?;
    let xs = 1..=10;
    let tychonoff = CounterexampleSolution::new(3, 2, 256, CounterexampleSolution::required_depth(2, 10, 1))?;
    let grid: Vec<(f64, VertexId)> = [0.25, 0.5, 1.0].iter().flat_map(|&t| xs.clone().map(move |x| (t, x))).collect();
    let cert_zero = certify_class_membership(&ZeroSolution, &line, 0, 0.0, 2.0, 1.0, Horizon::Unbounded, &grid)?;
    let cert_t = certify_class_membership(&tychonoff, &line, 0, 0.0, 2.0, 1.0, Horizon::Unbounded, &grid)?;
    let rep = uniqueness_gap(&ZeroSolution, &tychonoff, &cert_zero, &cert_t, &grid, 0.0)?;
    let max_abs = grid
        .iter()
        .map(|&(t, x)| tychonoff.value(t, x).map(f64::abs))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let labelled = rep.status == UniquenessStatus::HypothesesUnmet && rep.data_agree && rep.gap > 0.0 && rep.gap == max_abs;
    let control = PropertyResult::new(
        Suite::Uniqueness,
        "counterexample flagged hypotheses-unmet",
        grid.len(),
        usize::from(!labelled),
        format!("gap {:e}, data gap {:e}", rep.gap, rep.data_gap),
    );
    Ok(vec![same, control])
}
