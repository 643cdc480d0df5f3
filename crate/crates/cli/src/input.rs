//! Parsing of graph sources, vertex lists, vertex data and grids.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use wavegraph_core::{VertexId, WeightedGraph};

/// Window radius used by the plain `line` builtin.
pub const DEFAULT_LINE_RADIUS: u32 = 64;

/// `line`, `line:R`, `star:n`, or a path to a graph JSON file.
pub fn load_graph(source: &str) -> Result<WeightedGraph> {
    if source == "line" {
        return Ok(WeightedGraph::line_window(DEFAULT_LINE_RADIUS)?);
    }
    if let Some(r) = source.strip_prefix("line:") {
        let r: u32 = r.parse().with_context(|| format!("bad line radius in '{source}'"))?;
        return Ok(WeightedGraph::line_window(r)?);
    }
    if let Some(n) = source.strip_prefix("star:") {
        let n: u32 = n.parse().with_context(|| format!("bad leaf count in '{source}'"))?;
        if n == 0 {
            bail!("star needs at least one leaf");
        }
        return Ok(WeightedGraph::star(n, 1.0)?);
    }
    let text = fs::read_to_string(source).with_context(|| format!("cannot read graph file {source}"))?;
    WeightedGraph::from_json(&text).with_context(|| format!("invalid graph file {source}"))
}

/// `a:b` (inclusive) or a comma-separated list of integers.
pub fn parse_vertices(spec: &str) -> Result<Vec<VertexId>> {
    let spec = spec.trim();
    if let Some((a, b)) = spec.split_once(':') {
        let a: VertexId = a.trim().parse().with_context(|| format!("bad range start in '{spec}'"))?;
        let b: VertexId = b.trim().parse().with_context(|| format!("bad range end in '{spec}'"))?;
        if b < a {
            bail!("empty vertex range '{spec}'");
        }
        return Ok((a..=b).collect());
    }
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().with_context(|| format!("bad vertex id '{s}'")))
        .collect()
}

/// Comma-separated list of reals.
pub fn parse_reals(spec: &str) -> Result<Vec<f64>> {
    let values: Vec<f64> = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().with_context(|| format!("bad number '{s}'")))
        .collect::<Result<_>>()?;
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        bail!("non-finite value {v} in '{spec}'");
    }
    Ok(values)
}

/// Vertex data as `id=value,...` or a file of `id,value` lines (`#` comments
/// and a non-numeric header line are skipped). Missing vertices read as zero.
pub fn parse_vertex_data(spec: &str) -> Result<Vec<(VertexId, f64)>> {
    let path = Path::new(spec);
    let pairs: Vec<(String, String)> = if !spec.contains('=') && path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read data file {spec}"))?;
        let mut out = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((a, b)) = line.split_once(',') else {
                bail!("{spec}:{}: expected 'vertex,value'", n + 1);
            };
            if n == 0 && a.trim().parse::<VertexId>().is_err() {
                continue;
            }
            out.push((a.to_string(), b.to_string()));
        }
        out
    } else {
        spec.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.split_once('=')
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .with_context(|| format!("expected 'vertex=value', got '{s}'"))
            })
            .collect::<Result<_>>()?
    };
    let mut data = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let id: VertexId = a.trim().parse().with_context(|| format!("bad vertex id '{a}'"))?;
        let v: f64 = b.trim().parse().with_context(|| format!("bad value '{b}'"))?;
        if !v.is_finite() {
            bail!("non-finite value at vertex {id}");
        }
        if data.iter().any(|&(j, _)| j == id) {
            bail!("vertex {id} given twice");
        }
        data.push((id, v));
    }
    Ok(data)
}

/// Time factor of a separable source `p(x) T(t)`: `const`, `sin:w` or `cos:w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeProfile {
    Const,
    Sin(f64),
    Cos(f64),
}

impl TimeProfile {
    pub fn parse(spec: &str) -> Result<Self> {
        let freq = |w: &str| -> Result<f64> {
            let w: f64 = w.parse().with_context(|| format!("bad frequency in '{spec}'"))?;
            if !w.is_finite() {
                bail!("non-finite frequency in '{spec}'");
            }
            Ok(w)
        };
        match spec.split_once(':') {
            None if spec == "const" => Ok(TimeProfile::Const),
            Some(("sin", w)) => Ok(TimeProfile::Sin(freq(w)?)),
            Some(("cos", w)) => Ok(TimeProfile::Cos(freq(w)?)),
            _ => bail!("time profile must be 'const', 'sin:w' or 'cos:w', got '{spec}'"),
        }
    }

    pub fn eval(self, t: f64) -> f64 {
        match self {
            TimeProfile::Const => 1.0,
            TimeProfile::Sin(w) => (w * t).sin(),
            TimeProfile::Cos(w) => (w * t).cos(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_vertices("-2:2").unwrap(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(parse_vertices("3, -1,0").unwrap(), vec![3, -1, 0]);
        assert!(parse_vertices("2:1").is_err());
        assert!(parse_vertices("a").is_err());
    }

    #[test]
    fn inline_and_file_data() {
        assert_eq!(parse_vertex_data("0=1, -1=0.5").unwrap(), vec![(0, 1.0), (-1, 0.5)]);
        assert!(parse_vertex_data("0=1,0=2").is_err());
        assert!(parse_vertex_data("0=nan").is_err());
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.csv");
        fs::write(&p, "vertex,value\n# note\n0,1.5\n2,-3\n").unwrap();
        assert_eq!(parse_vertex_data(p.to_str().unwrap()).unwrap(), vec![(0, 1.5), (2, -3.0)]);
    }

    #[test]
    fn builtin_graphs() {
        assert_eq!(load_graph("line:3").unwrap().vertex_count(), 7);
        assert_eq!(load_graph("star:4").unwrap().vertex_count(), 5);
        assert!(load_graph("star:0").is_err());
        assert!(load_graph("/nonexistent/graph.json").is_err());
    }

    #[test]
    fn time_profiles() {
        assert_eq!(TimeProfile::parse("const").unwrap(), TimeProfile::Const);
        assert_eq!(TimeProfile::parse("sin:2").unwrap(), TimeProfile::Sin(2.0));
        assert!(TimeProfile::parse("tan:1").is_err());
        assert!((TimeProfile::Cos(1.0).eval(0.0) - 1.0).abs() < 1e-15);
    }
}
