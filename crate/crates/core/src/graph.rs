//! Undirected multigraph with stable opaque vertex and edge identifiers.
//!
//! Parallel edges are first class (skeletons of 2-port clusters and
//! normalization can produce them); self-loops are rejected on construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn other(&self, w: VertexId) -> VertexId {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }
}

/// Undirected multigraph. Vertices and edges keep the ids they were created
/// with; deletions never renumber.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    labels: BTreeMap<VertexId, String>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Graph with vertices 0..n-1 and no edges.
    pub fn with_vertices(n: u32) -> Self {
        let mut g = Graph::new();
        for i in 0..n {
            g.vertices.insert(VertexId(i));
        }
        g
    }

    /// Convenience constructor from (u, v) pairs over vertices 0..n-1,
    /// assigning edge ids 0, 1, 2, ... in order.
    pub fn from_edge_list(n: u32, pairs: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in pairs {
            g.add_edge_auto(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    /// Complete graph K_n on vertices 0..n-1.
    pub fn complete(n: u32) -> Self {
        let mut g = Graph::with_vertices(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge_auto(VertexId(u), VertexId(v)).unwrap();
            }
        }
        g
    }

    /// Complete bipartite graph K_{a,b} on vertices 0..a+b-1.
    pub fn complete_bipartite(a: u32, b: u32) -> Self {
        let mut g = Graph::with_vertices(a + b);
        for u in 0..a {
            for v in a..(a + b) {
                g.add_edge_auto(VertexId(u), VertexId(v)).unwrap();
            }
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    /// Allocates and adds a fresh vertex (one past the current maximum id).
    pub fn fresh_vertex(&mut self) -> VertexId {
        let v = VertexId(self.vertices.iter().next_back().map_or(0, |w| w.0 + 1));
        self.vertices.insert(v);
        v
    }

    pub fn add_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::validation(format!("self-loop at vertex {u}")));
        }
        if !self.vertices.contains(&u) || !self.vertices.contains(&v) {
            return Err(Error::validation(format!(
                "edge {id} references missing vertex ({u},{v})"
            )));
        }
        if self.edges.contains_key(&id) {
            return Err(Error::validation(format!("duplicate edge id {id}")));
        }
        self.edges.insert(id, (u, v));
        Ok(())
    }

    /// Adds an edge with the next unused edge id.
    pub fn add_edge_auto(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let id = EdgeId(self.edges.keys().next_back().map_or(0, |e| e.0 + 1));
        self.add_edge(id, u, v)?;
        Ok(id)
    }

    pub fn remove_edge(&mut self, id: EdgeId) {
        self.edges.remove(&id);
    }

    /// Removes a vertex together with its incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) {
        self.vertices.remove(&v);
        self.edges.retain(|_, &mut (a, b)| a != v && b != v);
        self.labels.remove(&v);
    }

    pub fn set_label(&mut self, v: VertexId, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.get(&v).map(|s| s.as_str())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&id, &(u, v))| Edge { id, u, v })
    }

    pub fn edge(&self, id: EdgeId) -> Option<Edge> {
        self.edges.get(&id).map(|&(u, v)| Edge { id, u, v })
    }

    pub fn endpoints(&self, id: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&id).copied()
    }

    /// True if some edge joins u and v.
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.edges
            .values()
            .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub fn incident_edges(&self, v: VertexId) -> Vec<Edge> {
        self.edges()
            .filter(|e| e.touches(v))
            .collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.values().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.edges()
            .filter(|e| e.touches(v))
            .map(|e| e.other(v))
            .collect()
    }

    /// Number of distinct endpoint pairs (parallel bundles collapsed).
    pub fn simple_edge_count(&self) -> usize {
        self.simple_pairs().len()
    }

    pub fn simple_pairs(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edges
            .values()
            .map(|&(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect()
    }

    /// Copy with parallel edges collapsed; keeps the smallest edge id of each
    /// bundle.
    pub fn simple_reduction(&self) -> Graph {
        let mut g = Graph {
            vertices: self.vertices.clone(),
            edges: BTreeMap::new(),
            labels: self.labels.clone(),
        };
        let mut seen: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        for (&id, &(u, v)) in &self.edges {
            let key = if u <= v { (u, v) } else { (v, u) };
            if seen.insert(key) {
                g.edges.insert(id, (u, v));
            }
        }
        g
    }

    /// Connected components as sorted vertex lists, sorted by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices.iter().copied() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on the given vertex set (edge ids preserved).
    pub fn induced(&self, verts: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for &v in verts {
            g.add_vertex(v);
        }
        for (&id, &(u, v)) in &self.edges {
            if verts.contains(&u) && verts.contains(&v) {
                g.edges.insert(id, (u, v));
            }
        }
        g
    }

    pub fn max_vertex_id(&self) -> Option<u32> {
        self.vertices.iter().next_back().map(|v| v.0)
    }

    pub fn max_edge_id(&self) -> Option<u32> {
        self.edges.keys().next_back().map(|e| e.0)
    }
}

/// Number of u-v paths of length at most 2: the edge itself (0 or 1, parallel
/// bundles count once) plus the number of common neighbors.
pub fn short_path_count(g: &Graph, u: VertexId, v: VertexId) -> Result<usize> {
    if u == v {
        return Err(Error::validation("short_path_count needs two distinct vertices"));
    }
    if !g.has_vertex(u) || !g.has_vertex(v) {
        return Err(Error::validation(format!("unknown vertex in pair ({u},{v})")));
    }
    let direct = usize::from(g.adjacent(u, v));
    let nu = g.neighbors(u);
    let nv = g.neighbors(v);
    Ok(direct + nu.intersection(&nv).count())
}

/// Largest short_path_count over all vertex pairs (0 for graphs with < 2
/// vertices).
pub fn max_short_path_count(g: &Graph) -> usize {
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut best = 0;
    for i in 0..vs.len() {
        for j in (i + 1)..vs.len() {
            best = best.max(short_path_count(g, vs[i], vs[j]).unwrap());
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_unknown_endpoints() {
        let mut g = Graph::with_vertices(2);
        assert!(g.add_edge(EdgeId(0), VertexId(0), VertexId(0)).is_err());
        assert!(g.add_edge(EdgeId(0), VertexId(0), VertexId(5)).is_err());
        g.add_edge(EdgeId(0), VertexId(0), VertexId(1)).unwrap();
        assert!(g.add_edge(EdgeId(0), VertexId(1), VertexId(0)).is_err());
    }

    #[test]
    fn parallel_edges_collapse_in_simple_reduction() {
        let mut g = Graph::with_vertices(2);
        g.add_edge(EdgeId(0), VertexId(0), VertexId(1)).unwrap();
        g.add_edge(EdgeId(1), VertexId(1), VertexId(0)).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.simple_edge_count(), 1);
        assert_eq!(g.simple_reduction().edge_count(), 1);
    }

    #[test]
    fn short_paths_k4() {
        let g = Graph::complete(4);
        assert_eq!(short_path_count(&g, VertexId(0), VertexId(1)).unwrap(), 3);
    }

    #[test]
    fn short_paths_isolated_pair() {
        let g = Graph::with_vertices(2);
        assert_eq!(short_path_count(&g, VertexId(0), VertexId(1)).unwrap(), 0);
    }

    #[test]
    fn short_paths_symmetric() {
        let g = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        for u in 0..5 {
            for v in (u + 1)..5 {
                let a = short_path_count(&g, VertexId(u), VertexId(v)).unwrap();
                let b = short_path_count(&g, VertexId(v), VertexId(u)).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}
