//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use wavegraph_core::{DirichletProblem, Result, VertexFunction, VertexSet, WeightedGraph};

/// Dirichlet problem on the interior `1..=n` of the unit path `0..=n+1`, with a
/// bump of initial data in the middle.
pub fn path_problem(n: u32) -> Result<DirichletProblem> {
    let graph = Arc::new(WeightedGraph::line_window(n + 1)?);
    let omega = VertexSet::new(&graph, 1..=i64::from(n))?;
    let mid = f64::from(n) / 2.0;
    let g0 = VertexFunction::from_fn(omega.clone(), |x| (-(x as f64 - mid).powi(2) / 4.0).exp());
    let h0 = VertexFunction::zero(omega.clone());
    DirichletProblem::new(graph, omega, g0, h0)
}

/// Circulant graph on `0..n` with chords of length 1, 2 and 5 and varying weights.
pub fn circulant(n: i64) -> Result<WeightedGraph> {
    let vertices: Vec<(i64, f64)> = (0..n).map(|i| (i, 1.0 + (i % 7) as f64 / 7.0)).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for step in [1, 2, 5] {
            let j = (i + step) % n;
            if j != i {
                edges.push((i.min(j), i.max(j), 0.5 + ((i * step) % 11) as f64 / 11.0));
            }
        }
    }
    edges.sort_by_key(|e| (e.0, e.1));
    edges.dedup_by(|a, b| (a.0, a.1) == (b.0, b.1));
    WeightedGraph::new(&vertices, &edges)
}
