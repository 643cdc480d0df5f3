use std::sync::Arc;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use wavegraph_core::analyticity::TraceParams;
use wavegraph_core::tychonoff::NonAnalyticityReport;
use wavegraph_core::{
    analytic_radius_lower_bound, apply_laplacian, certify_class_membership, nonanalyticity_certificate, solve_wave,
    solve_wave_forced, uniqueness_gap, verify_suite, Approx, ClassCertificate, CounterexampleSolution, Horizon, Suite,
    UniquenessStatus, VertexFunction, VertexId, VertexSet, WeightedGraph,
};

use crate::input::{load_graph, parse_reals, parse_vertex_data, parse_vertices, TimeProfile};
use crate::output::{fmt_f64, Header, Sink};
use crate::solution::{build_forcing, build_problem, SolutionSpec};
use crate::{ClassArgs, CounterexampleArgs, ForcedArgs, RadiusArgs, SolveArgs, UniquenessArgs, VerifyArgs};

/// Result of a command that ran to completion.
pub enum Outcome {
    Success,
    /// Computation finished but a certified property failed.
    CertificationFailed(String),
}

fn time_grid(t0: f64, t1: f64, steps: usize) -> Result<Vec<f64>> {
    if !(t0.is_finite() && t1.is_finite()) {
        bail!("time range must be finite");
    }
    if steps == 0 {
        return Ok(vec![t0]);
    }
    Ok((0..=steps).map(|k| t0 + (t1 - t0) * k as f64 / steps as f64).collect())
}

/// `Delta u` on `omega` for `u` given on `omega` and zero on `boundary`.
fn laplacian_on(g: &WeightedGraph, omega: &VertexSet, boundary: &VertexSet, u: &[f64]) -> Result<Vec<f64>> {
    let closure = omega.union(boundary);
    let f = VertexFunction::from_fn(closure, |x| omega.position(x).map_or(0.0, |j| u[j]));
    omega.iter().map(|x| Ok(apply_laplacian(g, &f, x)?)).collect()
}

struct SolveRows {
    rows: Vec<Vec<String>>,
    max_residual: f64,
}

/// Rows `t, vertex, u, du_dt, residual` over `Omega` and its boundary, sorted by `t` then vertex.
fn solve_rows(
    g: &WeightedGraph,
    omega: &VertexSet,
    boundary: &VertexSet,
    times: &[f64],
    slice: impl Fn(f64, u32) -> wavegraph_core::Result<Vec<f64>> + Sync,
    source: impl Fn(f64, VertexId) -> f64 + Sync,
) -> Result<SolveRows> {
    let per_t: Vec<(Vec<Vec<String>>, f64)> = times
        .par_iter()
        .map(|&t| -> Result<(Vec<Vec<String>>, f64)> {
            let u = slice(t, 0)?;
            let ut = slice(t, 1)?;
            let utt = slice(t, 2)?;
            let lap = laplacian_on(g, omega, boundary, &u)?;
            let closure = omega.union(boundary);
            let mut worst = 0.0_f64;
            let rows = closure
                .iter()
                .map(|x| match omega.position(x) {
                    Some(j) => {
                        let r = (utt[j] - lap[j] - source(t, x)).abs();
                        worst = worst.max(r);
                        vec![fmt_f64(t), x.to_string(), fmt_f64(u[j]), fmt_f64(ut[j]), fmt_f64(r)]
                    }
                    None => vec![fmt_f64(t), x.to_string(), "0".into(), "0".into(), String::new()],
                })
                .collect();
            Ok((rows, worst))
        })
        .collect::<Result<_>>()?;
    let max_residual = per_t.iter().map(|p| p.1).fold(0.0, f64::max);
    Ok(SolveRows { rows: per_t.into_iter().flat_map(|p| p.0).collect(), max_residual })
}

const SOLVE_COLUMNS: [&str; 5] = ["t", "vertex", "u", "du_dt", "residual"];

#[derive(Serialize)]
struct SolveSummary {
    max_residual: f64,
    residual_tol: f64,
    touches_truncation: bool,
    solution: SolutionSpec,
}

pub fn solve(args: &SolveArgs, header: &Header, sink: &Sink) -> Result<Outcome> {
    let graph = Arc::new(load_graph(&args.graph)?);
    let omega = parse_vertices(&args.omega)?;
    let g = args.g.as_deref().map(parse_vertex_data).transpose()?.unwrap_or_default();
    let h = args.h.as_deref().map(parse_vertex_data).transpose()?.unwrap_or_default();
    let times = time_grid(args.t0, args.t1, args.steps)?;
    let problem = build_problem(graph.clone(), &omega, &g, &h)?;
    warn_truncation(problem.touches_truncation());
    let sol = solve_wave(&problem, args.tol)?;
    let out = solve_rows(&graph, problem.omega(), problem.boundary(), &times, |t, k| Ok(sol.slice(t, k)), |_, _| 0.0)?;
    let spec = SolutionSpec::Spectral {
        graph: serde_json::from_str(&graph.to_json())?,
        omega: problem.omega().as_slice().to_vec(),
        g,
        h,
        tol: args.tol,
    };
    finish_solve("solve", out, args, problem.touches_truncation(), spec, header, sink)
}

pub fn solve_forced(args: &ForcedArgs, header: &Header, sink: &Sink) -> Result<Outcome> {
    let base = &args.solve;
    let graph = Arc::new(load_graph(&base.graph)?);
    let omega = parse_vertices(&base.omega)?;
    let g = base.g.as_deref().map(parse_vertex_data).transpose()?.unwrap_or_default();
    let h = base.h.as_deref().map(parse_vertex_data).transpose()?.unwrap_or_default();
    let source = args.source.as_deref().map(parse_vertex_data).transpose()?.unwrap_or_default();
    let profile = TimeProfile::parse(&args.source_time)?;
    let times = time_grid(base.t0, base.t1, base.steps)?;
    let problem = build_problem(graph.clone(), &omega, &g, &h)?;
    warn_truncation(problem.touches_truncation());
    let forcing = build_forcing(problem.omega(), &source, profile)?;
    let sol = solve_wave_forced(&problem, forcing.clone(), args.step, base.tol)?;
    let out = solve_rows(&graph, problem.omega(), problem.boundary(), &times, |t, k| sol.slice(t, k), |t, x| forcing(t, x))?;
    let spec = SolutionSpec::Forced {
        graph: serde_json::from_str(&graph.to_json())?,
        omega: problem.omega().as_slice().to_vec(),
        g,
        h,
        tol: base.tol,
        source,
        source_time: args.source_time.clone(),
        step: args.step,
    };
    finish_solve("solve_forced", out, base, problem.touches_truncation(), spec, header, sink)
}

fn warn_truncation(touches: bool) {
    if touches {
        eprintln!("warning: Omega or its boundary reaches the truncated edge of the graph window");
    }
}

fn finish_solve(
    stem: &str,
    out: SolveRows,
    args: &SolveArgs,
    touches_truncation: bool,
    spec: SolutionSpec,
    header: &Header,
    sink: &Sink,
) -> Result<Outcome> {
    sink.emit(&format!("{stem}.csv"), &header.csv(&SOLVE_COLUMNS, &out.rows), true)?;
    let summary = SolveSummary { max_residual: out.max_residual, residual_tol: args.residual_tol, touches_truncation, solution: spec };
    sink.emit("solution.json", &header.json(&summary)?, false)?;
    if !(out.max_residual <= args.residual_tol) {
        return Ok(Outcome::CertificationFailed(format!(
            "max residual {:e} exceeds tolerance {:e}",
            out.max_residual, args.residual_tol
        )));
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct RatioEntry {
    x: i64,
    ratio: String,
}

#[derive(Serialize)]
struct CounterexampleCertificate {
    flat_jet_order: Option<u32>,
    flat_jet_vertices: u64,
    max_residual: f64,
    max_residual_decimal: String,
    residual_error_bound: f64,
    residual_tol: f64,
    ratio_t: f64,
    ratio_tail: Vec<RatioEntry>,
    ratio_tail_decreasing: Option<bool>,
    nonanalyticity: NonAnalyticityReport,
    table_depth: u32,
    solution: SolutionSpec,
}

fn approx_str(a: &Approx, digits: u32) -> String {
    a.value.to_sci_string(digits)
}

/// `|a| < |b|` certified by the error bounds.
fn certainly_smaller(a: &Approx, b: &Approx) -> bool {
    let lower_b = match b.err_log2 {
        None => b.value.abs(),
        Some(e) => b.value.abs().sub(&wavegraph_core::BigFloat::one().mul_pow2(e), u32::MAX),
    };
    a.abs_upper_bound().cmp_value(&lower_b).is_lt()
}

pub fn counterexample(args: &CounterexampleArgs, header: &Header, sink: &Sink) -> Result<Outcome> {
    if args.xmax < 0 {
        bail!("--xmax must be nonnegative");
    }
    if !(args.tmax.is_finite()) {
        bail!("--tmax must be finite");
    }
    if !(args.probe_t > 0.0) {
        bail!("--probe-t must be positive");
    }
    if !(args.residual_tol > 0.0) {
        bail!("--residual-tol must be positive");
    }
    let m = args.order;
    let depth = CounterexampleSolution::residual_depth(m, args.xmax)
        .max(CounterexampleSolution::required_depth(m, args.xmax, args.jet_order));
    let sol = CounterexampleSolution::new(args.beta, m, args.precision, depth)?;
    if let Some(eps) = args.eps {
        sol.check_growth_params(args.xmax.max(2), eps)?;
    }
    let digits = args.precision / 3;
    let times = time_grid(0.0, args.tmax, args.tsteps as usize)?;
    let xs: Vec<i64> = (-args.xmax..=args.xmax).collect();

    type Row = (Vec<String>, Approx);
    let per_t: Vec<Vec<Row>> = times
        .par_iter()
        .map(|&t| -> Result<Vec<Row>> {
            let slice = sol.at(t)?;
            xs.iter()
                .map(|&x| {
                    let u = slice.eval(x, 0)?;
                    let r = slice.pde_residual(x)?;
                    let growth = match args.eps {
                        Some(eps) if x >= 2 => approx_str(&slice.growth_ratio(x, eps)?, digits),
                        _ => String::new(),
                    };
                    Ok((vec![fmt_f64(t), x.to_string(), approx_str(&u, digits), approx_str(&r, digits), growth], r))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut max_residual = 0.0_f64;
    let mut max_residual_decimal = "0".to_string();
    let mut residual_error_bound = 0.0_f64;
    let mut rows = Vec::new();
    for (row, r) in per_t.into_iter().flatten() {
        let mag = r.value.abs().to_f64();
        if mag > max_residual {
            max_residual = mag;
            max_residual_decimal = approx_str(&r, digits);
        }
        residual_error_bound = residual_error_bound.max(r.error_bound_f64());
        rows.push(row);
    }

    let at_zero = sol.at(0.0)?;
    let mut flat_jet_order = None;
    'orders: for k in 0..=args.jet_order {
        for &x in &xs {
            if !at_zero.eval(x, k)?.is_exact_zero() {
                break 'orders;
            }
        }
        flat_jet_order = Some(k);
    }

    let (ratio_tail, ratio_tail_decreasing) = match args.eps {
        Some(eps) if args.xmax >= 2 => {
            let slice = sol.at(args.ratio_t)?;
            let lo = (args.xmax - 9).max(2);
            let ratios: Vec<(i64, Approx)> =
                (lo..=args.xmax).map(|x| Ok((x, slice.growth_ratio(x, eps)?))).collect::<Result<_>>()?;
            let decreasing = ratios.windows(2).all(|w| certainly_smaller(&w[1].1, &w[0].1));
            let tail = ratios.iter().map(|(x, r)| RatioEntry { x: *x, ratio: approx_str(r, digits) }).collect();
            (tail, Some(decreasing))
        }
        _ => (Vec::new(), None),
    };
    let nonanalyticity = nonanalyticity_certificate(&sol, 0, args.jet_order.min(depth), args.probe_t)?;

    let cert = CounterexampleCertificate {
        flat_jet_order,
        flat_jet_vertices: xs.len() as u64,
        max_residual,
        max_residual_decimal,
        residual_error_bound,
        residual_tol: args.residual_tol,
        ratio_t: args.ratio_t,
        ratio_tail,
        ratio_tail_decreasing,
        nonanalyticity,
        table_depth: depth,
        solution: SolutionSpec::Counterexample { beta: args.beta, order: m, precision: args.precision },
    };
    let columns = ["t", "x", "u", "residual", "growth_ratio"];
    sink.emit("counterexample.csv", &header.csv(&columns, &rows), false)?;
    let cert_json = header.json(&cert)?;
    sink.emit("certificate.json", &cert_json, true)?;
    sink.emit("solution.json", &cert_json, false)?;

    let mut failures = Vec::new();
    if !(max_residual <= args.residual_tol) {
        failures.push(format!("max residual {max_residual:e} exceeds {:e}", args.residual_tol));
    }
    if flat_jet_order != Some(args.jet_order) {
        failures.push("time jet at t = 0 is not flat".to_string());
    }
    if !cert.nonanalyticity.certified {
        failures.push("non-analyticity probe failed".to_string());
    }
    Ok(if failures.is_empty() { Outcome::Success } else { Outcome::CertificationFailed(failures.join("; ")) })
}

pub fn radius(args: &RadiusArgs, header: &Header, sink: &Sink) -> Result<Outcome> {
    let mut report = analytic_radius_lower_bound(args.d_const, args.alpha, args.a1)?;
    if let Some(dt) = args.dt {
        report = report.with_trace(TraceParams { c: args.c, d: args.d, dt, k_max: args.kmax })?;
    }
    sink.emit("radius.json", &header.json(&report)?, true)?;
    Ok(Outcome::Success)
}

struct Grid {
    times: Vec<f64>,
    xs: Vec<VertexId>,
}

impl Grid {
    fn parse(times: &str, xs: &str, p: VertexId) -> Result<Self> {
        let times = parse_reals(times)?;
        let mut xs = parse_vertices(xs)?;
        xs.retain(|&x| x != p);
        if times.is_empty() || xs.is_empty() {
            bail!("the sample grid is empty");
        }
        Ok(Grid { times, xs })
    }

    fn cells(&self) -> Vec<(f64, VertexId)> {
        self.times.iter().flat_map(|&t| self.xs.iter().map(move |&x| (t, x))).collect()
    }

    fn reach(&self) -> i64 {
        self.xs.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    fn max_time(&self) -> f64 {
        self.times.iter().map(|t| t.abs()).fold(0.0, f64::max)
    }
}

fn horizon_of(args_horizon: Option<f64>) -> Result<Horizon> {
    match args_horizon {
        None => Ok(Horizon::Unbounded),
        Some(t) if t > 0.0 && t.is_finite() => Ok(Horizon::Finite(t)),
        Some(t) => bail!("--horizon must be positive, got {t}"),
    }
}

/// Certifies one solution: the graph is the solution's own, else `--graph`,
/// else a unit line window covering the grid.
fn certify(
    spec: &SolutionSpec,
    graph_arg: Option<&str>,
    p: VertexId,
    alpha: f64,
    a1: f64,
    c: Option<f64>,
    horizon: Horizon,
    grid: &Grid,
) -> Result<(crate::solution::Loaded, ClassCertificate)> {
    let loaded = spec.load(grid.reach(), 1)?;
    let graph = match (&loaded.graph, graph_arg) {
        (Some(g), _) => g.clone(),
        (None, Some(src)) => Arc::new(load_graph(src)?),
        (None, None) => {
            let r = u32::try_from(grid.reach().max(p.abs()) + 1).context("grid too large")?;
            Arc::new(WeightedGraph::line_window(r)?)
        }
    };
    let c = match (c, loaded.data_sup) {
        (Some(c), _) => c,
        (None, Some((g, h))) => {
            let span = match horizon {
                Horizon::Finite(t) => t,
                Horizon::Unbounded => grid.max_time(),
            };
            g + h * span + 1.0
        }
        (None, None) => 1.0,
    };
    let cert = certify_class_membership(&*loaded.evolution, &graph, p, alpha, a1, c, horizon, &grid.cells())?;
    Ok((loaded, cert))
}

pub fn class_check(args: &ClassArgs, header: &Header, sink: &Sink) -> Result<Outcome> {
    let spec = SolutionSpec::read(&args.solution)?;
    let grid = Grid::parse(&args.times, &args.xs, args.p)?;
    let horizon = horizon_of(args.horizon)?;
    let (_, cert) = certify(&spec, args.graph.as_deref(), args.p, args.alpha, args.a1, args.c, horizon, &grid)?;
    sink.emit("class_check.json", &header.json(&cert)?, true)?;
    Ok(if cert.holds {
        Outcome::Success
    } else {
        Outcome::CertificationFailed(format!("growth bound fails on the grid (worst margin {:e})", cert.worst_margin))
    })
}

#[derive(Serialize)]
struct UniquenessOutput {
    #[serde(flatten)]
    report: wavegraph_core::UniquenessReport,
    gap_tol: f64,
    class_u_certificate: ClassCertificate,
    class_v_certificate: ClassCertificate,
}

pub fn uniqueness(args: &UniquenessArgs, header: &Header, sink: &Sink) -> Result<Outcome> {
    let spec_u = SolutionSpec::read(&args.u)?;
    let spec_v = SolutionSpec::read(&args.v)?;
    let grid = Grid::parse(&args.times, &args.xs, args.p)?;
    let horizon = horizon_of(args.horizon)?;
    let g = args.graph.as_deref();
    let (u, cert_u) = certify(&spec_u, g, args.p, args.alpha, args.a1, args.cu, horizon, &grid)?;
    let (v, cert_v) = certify(&spec_v, g, args.p, args.alpha, args.a1, args.cv, horizon, &grid)?;
    let report = uniqueness_gap(&*u.evolution, &*v.evolution, &cert_u, &cert_v, &grid.cells(), args.data_tol)?;
    let failed = report.status == UniquenessStatus::HypothesesMet && !(report.gap <= args.gap_tol);
    let gap = report.gap;
    let out = UniquenessOutput { report, gap_tol: args.gap_tol, class_u_certificate: cert_u, class_v_certificate: cert_v };
    sink.emit("uniqueness.json", &header.json(&out)?, true)?;
    Ok(if failed {
        Outcome::CertificationFailed(format!("hypotheses hold but the solutions differ by {gap:e}"))
    } else {
        Outcome::Success
    })
}

pub fn verify(args: &VerifyArgs, seed: u64, header: &Header, sink: &Sink) -> Result<Outcome> {
    let suite: Suite = args.suite.parse()?;
    let report = verify_suite(suite, seed)?;
    sink.emit("verify.json", &header.json(&report)?, true)?;
    if report.passed {
        Ok(Outcome::Success)
    } else {
        let failed: Vec<String> = report.results.iter().filter(|r| !r.passed).map(|r| r.property.clone()).collect();
        Ok(Outcome::CertificationFailed(format!("failed properties: {}", failed.join(", "))))
    }
}
