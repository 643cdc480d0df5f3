//! Solution specs: the `solution.json` artifact written by the solvers and
//! read back by `class-check` and `uniqueness`.

use std::collections::HashMap;
use std::fs;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use wavegraph_core::{
    solve_wave, solve_wave_forced, CounterexampleSolution, DirichletProblem, Forcing, TimeEvolution, VertexFunction,
    VertexId, VertexSet, WeightedGraph, ZeroExtended, ZeroSolution,
};

use crate::input::TimeProfile;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SolutionSpec {
    Zero,
    Spectral {
        graph: Value,
        omega: Vec<VertexId>,
        g: Vec<(VertexId, f64)>,
        h: Vec<(VertexId, f64)>,
        tol: f64,
    },
    Forced {
        graph: Value,
        omega: Vec<VertexId>,
        g: Vec<(VertexId, f64)>,
        h: Vec<(VertexId, f64)>,
        tol: f64,
        source: Vec<(VertexId, f64)>,
        source_time: String,
        step: f64,
    },
    Counterexample {
        beta: u32,
        order: u32,
        precision: u32,
    },
}

/// A solution ready for pointwise evaluation.
pub struct Loaded {
    pub evolution: Box<dyn TimeEvolution>,
    /// Graph the solution lives on, when it carries one.
    pub graph: Option<Arc<WeightedGraph>>,
    /// `(sup |g0|, sup |h0|)` for spectral solutions.
    pub data_sup: Option<(f64, f64)>,
}

/// Restricts `pairs` to a function on `omega`, zero where unspecified.
pub fn data_on(omega: &VertexSet, pairs: &[(VertexId, f64)], what: &str) -> Result<VertexFunction> {
    let map: HashMap<VertexId, f64> = pairs.iter().copied().collect();
    if let Some(&(x, _)) = pairs.iter().find(|(x, _)| !omega.contains(*x)) {
        bail!("{what} given at vertex {x}, which is not in Omega");
    }
    Ok(VertexFunction::from_fn(omega.clone(), |x| map.get(&x).copied().unwrap_or(0.0)))
}

pub fn build_problem(
    graph: Arc<WeightedGraph>,
    omega: &[VertexId],
    g: &[(VertexId, f64)],
    h: &[(VertexId, f64)],
) -> Result<DirichletProblem> {
    let omega = VertexSet::new(&graph, omega.iter().copied())?;
    let g0 = data_on(&omega, g, "initial value")?;
    let h0 = data_on(&omega, h, "initial velocity")?;
    Ok(DirichletProblem::new(graph, omega, g0, h0)?)
}

pub fn build_forcing(omega: &VertexSet, source: &[(VertexId, f64)], time: TimeProfile) -> Result<Forcing> {
    let profile = data_on(omega, source, "source")?;
    let map: HashMap<VertexId, f64> = profile.iter().collect();
    Ok(Arc::new(move |t, x| map.get(&x).copied().unwrap_or(0.0) * time.eval(t)))
}

fn graph_from_value(v: &Value) -> Result<Arc<WeightedGraph>> {
    Ok(Arc::new(WeightedGraph::from_json(&v.to_string())?))
}

impl SolutionSpec {
    /// Reads a spec from a `solution.json` artifact, or `zero` for the zero solution.
    pub fn read(source: &str) -> Result<Self> {
        if source == "zero" {
            return Ok(SolutionSpec::Zero);
        }
        let text = fs::read_to_string(source).with_context(|| format!("cannot read solution file {source}"))?;
        let v: Value = serde_json::from_str(&text).with_context(|| format!("{source} is not JSON"))?;
        let inner = v.get("solution").cloned().unwrap_or(v);
        serde_json::from_value(inner).with_context(|| format!("{source} is not a solution spec"))
    }

    /// Builds the evaluator; `reach` is the largest `|x|` and `order` the highest
    /// time derivative that will be requested.
    pub fn load(&self, reach: i64, order: u32) -> Result<Loaded> {
        Ok(match self {
            SolutionSpec::Zero => Loaded { evolution: Box::new(ZeroSolution), graph: None, data_sup: None },
            SolutionSpec::Spectral { graph, omega, g, h, tol } => {
                let graph = graph_from_value(graph)?;
                let problem = build_problem(graph.clone(), omega, g, h)?;
                let sup = (problem.initial_value().sup_norm(), problem.initial_velocity().sup_norm());
                let sol = solve_wave(&problem, *tol)?;
                Loaded { evolution: Box::new(ZeroExtended(sol)), graph: Some(graph), data_sup: Some(sup) }
            }
            SolutionSpec::Forced { graph, omega, g, h, tol, source, source_time, step } => {
                let graph = graph_from_value(graph)?;
                let problem = build_problem(graph.clone(), omega, g, h)?;
                let sup = (problem.initial_value().sup_norm(), problem.initial_velocity().sup_norm());
                let forcing = build_forcing(problem.omega(), source, TimeProfile::parse(source_time)?)?;
                let sol = solve_wave_forced(&problem, forcing, *step, *tol)?;
                Loaded { evolution: Box::new(ZeroExtended(sol)), graph: Some(graph), data_sup: Some(sup) }
            }
            SolutionSpec::Counterexample { beta, order: m, precision } => {
                let depth = CounterexampleSolution::required_depth(*m, reach, order);
                let sol = CounterexampleSolution::new(*beta, *m, *precision, depth)?;
                Loaded { evolution: Box::new(sol), graph: None, data_sup: None }
            }
        })
    }
}
