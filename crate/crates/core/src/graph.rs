//! Weighted graphs `(V, E, mu, omega)` with combinatorial distance, balls,
//! vertex boundaries and weighted degrees.
//!
//! Infinite graphs are handled through finite windows. A window records the
//! vertices where it cuts the infinite graph (`truncated`); degrees there are
//! artifacts of the cut, and operations that care report when they touch them.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::{Error, Result};

/// Opaque vertex id. Windows of `Z` use the integer coordinate.
pub type VertexId = i64;

/// Combinatorial distance between two vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

/// Immutable locally finite weighted graph.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    ids: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    measure: Vec<f64>,
    adjacency: Vec<Vec<(usize, f64)>>,
    edge_count: usize,
    truncated: BTreeSet<VertexId>,
}

/// Finite ordered set of vertices (Omega, its boundary, balls).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    /// Builds a set of vertices of `graph`, rejecting unknown ids and duplicates.
    pub fn new(graph: &WeightedGraph, ids: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut out: Vec<VertexId> = Vec::new();
        for id in ids {
            if !graph.contains(id) {
                return Err(Error::UnknownVertex(id));
            }
            out.push(id);
        }
        out.sort_unstable();
        for w in out.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateInSet(w[0]));
            }
        }
        Ok(VertexSet(out))
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn position(&self, id: VertexId) -> Option<usize> {
        self.0.binary_search(&id).ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&x| !other.contains(x))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let set: BTreeSet<VertexId> = self.iter().chain(other.iter()).collect();
        VertexSet(set.into_iter().collect())
    }
}

/// Witness (or refutation) of `Deg(x) <= D d(x,p)^alpha` over a ball around `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthCertificate {
    pub p: VertexId,
    pub alpha: f64,
    pub d_const: f64,
    pub checked_radius: u32,
    pub holds: bool,
    /// Smallest constant for which the inequality holds at this `alpha`.
    pub minimal_d: f64,
    pub checked_vertices: usize,
    /// Worst vertex, i.e. the one attaining `minimal_d`.
    pub worst_vertex: Option<VertexId>,
    /// Window vertices skipped because their degree is a truncation artifact.
    pub excluded_truncated: Vec<VertexId>,
    /// True when the requested radius reaches past what the finite graph can vouch for.
    pub limited_by_extent: bool,
}

impl WeightedGraph {
    /// Builds a graph from `(id, mu)` vertices and `(u, v, omega)` edges.
    pub fn new(vertices: &[(VertexId, f64)], edges: &[(VertexId, VertexId, f64)]) -> Result<Self> {
        let mut sorted: Vec<(VertexId, f64)> = vertices.to_vec();
        sorted.sort_by_key(|&(id, _)| id);
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateVertex(w[0].0));
            }
        }
        for &(id, mu) in &sorted {
            if !(mu > 0.0 && mu.is_finite()) {
                return Err(Error::NonPositiveMeasure { id, value: mu });
            }
        }
        let ids: Vec<VertexId> = sorted.iter().map(|&(id, _)| id).collect();
        let measure: Vec<f64> = sorted.iter().map(|&(_, mu)| mu).collect();
        let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); ids.len()];
        let mut seen: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        for &(u, v, w) in edges {
            let iu = *index.get(&u).ok_or(Error::MissingEndpoint { u, v, missing: u })?;
            let iv = *index.get(&v).ok_or(Error::MissingEndpoint { u, v, missing: v })?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::NonPositiveWeight { u, v, value: w });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::RepeatedEdge(u, v));
            }
            adjacency[iu].push((iv, w));
            adjacency[iv].push((iu, w));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_by_key(|&(j, _)| j);
        }
        Ok(WeightedGraph {
            ids,
            index,
            measure,
            adjacency,
            edge_count: seen.len(),
            truncated: BTreeSet::new(),
        })
    }

    /// Marks vertices where a finite window cuts an infinite graph.
    pub fn with_truncation(mut self, truncated: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        for id in truncated {
            if !self.contains(id) {
                return Err(Error::UnknownVertex(id));
            }
            self.truncated.insert(id);
        }
        Ok(self)
    }

    /// The window `{-radius, ..., radius}` of the unit-weight line graph `Z`.
    pub fn line_window(radius: u32) -> Result<Self> {
        if radius == 0 {
            return Err(Error::InvalidParameter("line window radius must be >= 1".into()));
        }
        let r = radius as i64;
        let vertices: Vec<(VertexId, f64)> = (-r..=r).map(|x| (x, 1.0)).collect();
        let edges: Vec<(VertexId, VertexId, f64)> = (-r..r).map(|x| (x, x + 1, 1.0)).collect();
        WeightedGraph::new(&vertices, &edges)?.with_truncation([-r, r])
    }

    /// Star with center `0` of measure `center_mu` and unit-weight leaves `1..=leaves`.
    pub fn star(leaves: u32, center_mu: f64) -> Result<Self> {
        let mut vertices = vec![(0, center_mu)];
        vertices.extend((1..=leaves as i64).map(|i| (i, 1.0)));
        let edges: Vec<_> = (1..=leaves as i64).map(|i| (0, i, 1.0)).collect();
        WeightedGraph::new(&vertices, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.ids.iter().copied()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet(self.ids.clone())
    }

    pub fn truncated(&self) -> &BTreeSet<VertexId> {
        &self.truncated
    }

    pub fn is_truncated(&self, id: VertexId) -> bool {
        self.truncated.contains(&id)
    }

    fn idx(&self, id: VertexId) -> Result<usize> {
        self.index.get(&id).copied().ok_or(Error::UnknownVertex(id))
    }

    pub fn measure(&self, id: VertexId) -> Result<f64> {
        Ok(self.measure[self.idx(id)?])
    }

    /// Neighbors of `id` with their edge weights, in ascending id order.
    pub fn neighbors(&self, id: VertexId) -> Result<impl Iterator<Item = (VertexId, f64)> + '_> {
        let i = self.idx(id)?;
        Ok(self.adjacency[i].iter().map(move |&(j, w)| (self.ids[j], w)))
    }

    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Result<Option<f64>> {
        let iu = self.idx(u)?;
        let iv = self.idx(v)?;
        Ok(self.adjacency[iu]
            .binary_search_by_key(&iv, |&(j, _)| j)
            .ok()
            .map(|pos| self.adjacency[iu][pos].1))
    }

    /// All edges `(u, v, omega)` with `u < v`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, f64)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            for &(j, w) in nbrs {
                if self.ids[i] < self.ids[j] {
                    out.push((self.ids[i], self.ids[j], w));
                }
            }
        }
        out
    }

    /// Weighted degree `Deg(x) = sum_{y~x} omega_xy / mu_x`.
    pub fn degree(&self, id: VertexId) -> Result<f64> {
        let i = self.idx(id)?;
        let total: f64 = self.adjacency[i].iter().map(|&(_, w)| w).sum();
        Ok(total / self.measure[i])
    }

    /// Multi-source BFS; `None` marks vertices not reached within `limit`.
    fn bfs(&self, sources: &[usize], limit: Option<u32>) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.ids.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(i) = queue.pop_front() {
            let d = dist[i].unwrap();
            if limit.is_some_and(|l| d >= l) {
                continue;
            }
            for &(j, _) in &self.adjacency[i] {
                if dist[j].is_none() {
                    dist[j] = Some(d + 1);
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    pub fn distance(&self, x: VertexId, y: VertexId) -> Result<Distance> {
        let ix = self.idx(x)?;
        let iy = self.idx(y)?;
        Ok(match self.bfs(&[ix], None)[iy] {
            Some(d) => Distance::Finite(d),
            None => Distance::Unreachable,
        })
    }

    /// Distances from `source` to every vertex, in ascending id order.
    pub fn distances_from(&self, source: VertexId) -> Result<Vec<(VertexId, Distance)>> {
        let dist = self.bfs(&[self.idx(source)?], None);
        Ok(self
            .ids
            .iter()
            .zip(dist)
            .map(|(&id, d)| (id, d.map_or(Distance::Unreachable, Distance::Finite)))
            .collect())
    }

    /// `B_R(K)`: vertices within distance `radius` of some vertex of `center`.
    pub fn ball(&self, center: &[VertexId], radius: u32) -> Result<VertexSet> {
        let sources = center.iter().map(|&c| self.idx(c)).collect::<Result<Vec<_>>>()?;
        let dist = self.bfs(&sources, Some(radius));
        Ok(VertexSet(
            self.ids
                .iter()
                .zip(dist)
                .filter_map(|(&id, d)| d.map(|_| id))
                .collect(),
        ))
    }

    /// `delta Omega = { y not in Omega : y ~ x for some x in Omega }`.
    pub fn vertex_boundary(&self, omega: &VertexSet) -> Result<VertexSet> {
        let mut out = BTreeSet::new();
        for x in omega.iter() {
            for (y, _) in self.neighbors(x)? {
                if !omega.contains(y) {
                    out.insert(y);
                }
            }
        }
        Ok(VertexSet(out.into_iter().collect()))
    }

    /// Connected components, each as a sorted vertex set, ordered by smallest id.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.all_vertices())
    }

    /// Components of the subgraph induced on `subset`.
    pub fn components_within(&self, subset: &VertexSet) -> Vec<VertexSet> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for start in subset.iter() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let i = self.index[&x];
                for &(j, _) in &self.adjacency[i] {
                    let y = self.ids[j];
                    if subset.contains(y) && seen.insert(y) {
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(VertexSet(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Checks `Deg(x) <= D d(x,p)^alpha` for every `x != p` with `d(x,p) <= radius`.
    ///
    /// `p` itself is never tested. Truncated window vertices are skipped and
    /// listed; the certificate is flagged when the radius reaches them or
    /// exceeds the extent of `p`'s component.
    pub fn certify_degree_growth(
        &self,
        p: VertexId,
        alpha: f64,
        d_const: f64,
        radius: u32,
    ) -> Result<GrowthCertificate> {
        if !(0.0..=2.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!("alpha must lie in [0, 2], got {alpha}")));
        }
        if !(d_const > 0.0) {
            return Err(Error::InvalidParameter(format!("D must be positive, got {d_const}")));
        }
        let dist = self.bfs(&[self.idx(p)?], None);
        let extent = dist.iter().flatten().copied().max().unwrap_or(0);
        let mut minimal_d = 0.0_f64;
        let mut worst_vertex = None;
        let mut excluded = Vec::new();
        let mut checked = 0;
        let mut holds = true;
        for (i, d) in dist.iter().enumerate() {
            let Some(d) = *d else { continue };
            let id = self.ids[i];
            if d == 0 || d > radius {
                continue;
            }
            if self.truncated.contains(&id) {
                excluded.push(id);
                continue;
            }
            checked += 1;
            let ratio = self.degree(id)? / f64::from(d).powf(alpha);
            if ratio > d_const {
                holds = false;
            }
            if worst_vertex.is_none() || ratio > minimal_d {
                minimal_d = ratio;
                worst_vertex = Some(id);
            }
        }
        Ok(GrowthCertificate {
            p,
            alpha,
            d_const,
            checked_radius: radius,
            holds,
            minimal_d,
            checked_vertices: checked,
            worst_vertex,
            limited_by_extent: !excluded.is_empty() || radius > extent,
            excluded_truncated: excluded,
        })
    }

    /// Loads a graph from the JSON format
    /// `{"vertices":[{"id":..,"mu":..}],"edges":[{"u":..,"v":..,"w":..}],"truncated":[..]}`.
    /// Errors carry the line of the offending element.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw<'a> {
            #[serde(borrow)]
            vertices: Vec<&'a RawValue>,
            #[serde(borrow)]
            edges: Vec<&'a RawValue>,
            #[serde(default)]
            truncated: Vec<VertexId>,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct VertexRecord {
            id: VertexId,
            mu: f64,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct EdgeRecord {
            u: VertexId,
            v: VertexId,
            w: f64,
        }

        let line_of = |raw: &RawValue| -> usize {
            let offset = raw.get().as_ptr() as usize - text.as_ptr() as usize;
            text[..offset].bytes().filter(|&b| b == b'\n').count() + 1
        };
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::GraphFile {
            line: e.line(),
            message: e.to_string(),
        })?;

        let mut vertices = Vec::with_capacity(raw.vertices.len());
        let mut vertex_lines = HashMap::new();
        for r in &raw.vertices {
            let line = line_of(r);
            let rec: VertexRecord = serde_json::from_str(r.get())
                .map_err(|e| Error::GraphFile { line, message: e.to_string() })?;
            if vertex_lines.insert(rec.id, line).is_some() {
                return Err(Error::GraphFile { line, message: Error::DuplicateVertex(rec.id).to_string() });
            }
            if !(rec.mu > 0.0 && rec.mu.is_finite()) {
                let err = Error::NonPositiveMeasure { id: rec.id, value: rec.mu };
                return Err(Error::GraphFile { line, message: err.to_string() });
            }
            vertices.push((rec.id, rec.mu));
        }
        let mut edges = Vec::with_capacity(raw.edges.len());
        let mut seen = BTreeSet::new();
        for r in &raw.edges {
            let line = line_of(r);
            let rec: EdgeRecord = serde_json::from_str(r.get())
                .map_err(|e| Error::GraphFile { line, message: e.to_string() })?;
            let err = if !vertex_lines.contains_key(&rec.u) {
                Some(Error::MissingEndpoint { u: rec.u, v: rec.v, missing: rec.u })
            } else if !vertex_lines.contains_key(&rec.v) {
                Some(Error::MissingEndpoint { u: rec.u, v: rec.v, missing: rec.v })
            } else if rec.u == rec.v {
                Some(Error::SelfLoop(rec.u))
            } else if !(rec.w > 0.0 && rec.w.is_finite()) {
                Some(Error::NonPositiveWeight { u: rec.u, v: rec.v, value: rec.w })
            } else if !seen.insert((rec.u.min(rec.v), rec.u.max(rec.v))) {
                Some(Error::RepeatedEdge(rec.u, rec.v))
            } else {
                None
            };
            if let Some(err) = err {
                return Err(Error::GraphFile { line, message: err.to_string() });
            }
            edges.push((rec.u, rec.v, rec.w));
        }
        WeightedGraph::new(&vertices, &edges)?.with_truncation(raw.truncated)
    }

    /// Serializes to the same JSON format accepted by [`WeightedGraph::from_json`].
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct V {
            id: VertexId,
            mu: f64,
        }
        #[derive(Serialize)]
        struct E {
            u: VertexId,
            v: VertexId,
            w: f64,
        }
        #[derive(Serialize)]
        struct G {
            vertices: Vec<V>,
            edges: Vec<E>,
            truncated: Vec<VertexId>,
        }
        let g = G {
            vertices: self.ids.iter().zip(&self.measure).map(|(&id, &mu)| V { id, mu }).collect(),
            edges: self.edges().into_iter().map(|(u, v, w)| E { u, v, w }).collect(),
            truncated: self.truncated.iter().copied().collect(),
        };
        serde_json::to_string_pretty(&g).expect("graph serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(set: &VertexSet) -> Vec<VertexId> {
        set.as_slice().to_vec()
    }

    #[test]
    fn single_edge_degrees() {
        let g = WeightedGraph::new(&[(0, 1.0), (1, 1.0)], &[(0, 1, 1.0)]).unwrap();
        assert_eq!(g.degree(0).unwrap(), 1.0);
        assert_eq!(g.degree(1).unwrap(), 1.0);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            WeightedGraph::new(&[(0, 1.0)], &[(0, 0, 1.0)]).unwrap_err(),
            Error::SelfLoop(0)
        );
        assert_eq!(
            WeightedGraph::new(&[(0, 1.0), (0, 2.0)], &[]).unwrap_err(),
            Error::DuplicateVertex(0)
        );
        assert!(matches!(
            WeightedGraph::new(&[(0, 1.0)], &[(0, 7, 1.0)]).unwrap_err(),
            Error::MissingEndpoint { missing: 7, .. }
        ));
        assert!(matches!(
            WeightedGraph::new(&[(0, -1.0)], &[]).unwrap_err(),
            Error::NonPositiveMeasure { id: 0, .. }
        ));
        assert!(matches!(
            WeightedGraph::new(&[(0, 1.0), (1, 1.0)], &[(0, 1, 0.0)]).unwrap_err(),
            Error::NonPositiveWeight { .. }
        ));
        assert_eq!(
            WeightedGraph::new(&[(0, 1.0), (1, 1.0)], &[(0, 1, 1.0), (1, 0, 2.0)]).unwrap_err(),
            Error::RepeatedEdge(1, 0)
        );
    }

    #[test]
    fn line_window_shape() {
        let g = WeightedGraph::line_window(5).unwrap();
        assert_eq!(g.vertex_count(), 11);
        assert_eq!(g.edge_count(), 10);
        let g1 = WeightedGraph::line_window(1).unwrap();
        assert_eq!(g1.vertices().collect::<Vec<_>>(), vec![-1, 0, 1]);
        assert_eq!(g1.edges(), vec![(-1, 0, 1.0), (0, 1, 1.0)]);
        let g3 = WeightedGraph::line_window(3).unwrap();
        assert_eq!(g3.degree(0).unwrap(), 2.0);
        assert_eq!(g3.degree(3).unwrap(), 1.0);
        assert!(g3.is_truncated(3) && g3.is_truncated(-3));
        assert!(WeightedGraph::line_window(0).is_err());
    }

    #[test]
    fn distances() {
        let g = WeightedGraph::line_window(5).unwrap();
        assert_eq!(g.distance(-2, 3).unwrap(), Distance::Finite(5));
        assert_eq!(g.distance(4, 4).unwrap(), Distance::Finite(0));
        let star = WeightedGraph::star(3, 1.0).unwrap();
        assert_eq!(star.distance(1, 2).unwrap(), Distance::Finite(2));
        let split = WeightedGraph::new(&[(0, 1.0), (1, 1.0), (2, 1.0)], &[(0, 1, 1.0)]).unwrap();
        assert_eq!(split.distance(0, 2).unwrap(), Distance::Unreachable);
        assert!(!split.is_connected());
        assert_eq!(split.components().len(), 2);
    }

    #[test]
    fn balls_and_boundaries() {
        let g = WeightedGraph::line_window(5).unwrap();
        assert_eq!(ids(&g.ball(&[0], 2).unwrap()), vec![-2, -1, 0, 1, 2]);
        assert_eq!(ids(&g.ball(&[3], 0).unwrap()), vec![3]);
        let omega = VertexSet::new(&g, [0]).unwrap();
        assert_eq!(ids(&g.vertex_boundary(&omega).unwrap()), vec![-1, 1]);
        let omega = VertexSet::new(&g, [0, 1]).unwrap();
        assert_eq!(ids(&g.vertex_boundary(&omega).unwrap()), vec![-1, 2]);
        assert!(g.vertex_boundary(&g.all_vertices()).unwrap().is_empty());
    }

    #[test]
    fn vertex_set_validation() {
        let g = WeightedGraph::line_window(2).unwrap();
        assert_eq!(VertexSet::new(&g, [0, 9]).unwrap_err(), Error::UnknownVertex(9));
        assert_eq!(VertexSet::new(&g, [1, 1]).unwrap_err(), Error::DuplicateInSet(1));
    }

    #[test]
    fn degrees() {
        let star = WeightedGraph::star(3, 2.0).unwrap();
        assert_eq!(star.degree(0).unwrap(), 1.5);
        let lonely = WeightedGraph::new(&[(4, 1.0)], &[]).unwrap();
        assert_eq!(lonely.degree(4).unwrap(), 0.0);
    }

    #[test]
    fn degree_growth_certificates() {
        let g = WeightedGraph::line_window(10).unwrap();
        let ok = g.certify_degree_growth(0, 0.0, 2.0, 9).unwrap();
        assert!(ok.holds);
        assert!(!ok.limited_by_extent);
        assert_eq!(ok.minimal_d, 2.0);
        assert!(!g.certify_degree_growth(0, 0.0, 1.9, 9).unwrap().holds);

        let flagged = g.certify_degree_growth(0, 0.0, 2.0, 40).unwrap();
        assert!(flagged.limited_by_extent);
        assert_eq!(flagged.excluded_truncated, vec![-10, 10]);

        let star = WeightedGraph::star(10, 1.0).unwrap();
        let cert = star.certify_degree_growth(0, 0.0, 10.0, 1).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.minimal_d, 1.0);

        assert!(g.certify_degree_growth(0, 2.5, 1.0, 3).is_err());
        assert!(g.certify_degree_growth(0, 1.0, 0.0, 3).is_err());
    }

    #[test]
    fn json_round_trip_and_line_errors() {
        let g = WeightedGraph::line_window(3).unwrap();
        let back = WeightedGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert!(back.is_truncated(3));

        let bad = "{\n \"vertices\": [\n  {\"id\": 0, \"mu\": 1},\n  {\"id\": 1, \"mu\": 1}\n ],\n \"edges\": [\n  {\"u\": 0, \"v\": 1, \"w\": 1},\n  {\"u\": 1, \"v\": 1, \"w\": 1}\n ]\n}";
        match WeightedGraph::from_json(bad).unwrap_err() {
            Error::GraphFile { line, message } => {
                assert_eq!(line, 8);
                assert!(message.contains("self-loop"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let bad_mu = "{\"vertices\": [\n{\"id\": 0, \"mu\": 0}], \"edges\": []}";
        assert!(matches!(
            WeightedGraph::from_json(bad_mu).unwrap_err(),
            Error::GraphFile { line: 2, .. }
        ));
    }
}
