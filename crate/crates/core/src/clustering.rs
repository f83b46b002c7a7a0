//! Vertex partitions into clusters of bounded size.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// A partition of the vertex set into non-empty parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    parts: Vec<Vec<VertexId>>,
}

impl Clustering {
    /// Builds a clustering, validating that parts are non-empty, disjoint and
    /// cover the vertex set of `g` exactly. Parts and their members are
    /// canonically sorted.
    pub fn new(g: &Graph, parts: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut norm: Vec<Vec<VertexId>> = Vec::with_capacity(parts.len());
        for part in parts {
            if part.is_empty() {
                return Err(Error::validation("empty cluster part"));
            }
            let mut p = part;
            p.sort();
            p.dedup();
            for &v in &p {
                if !g.has_vertex(v) {
                    return Err(Error::validation(format!("cluster references missing vertex {v}")));
                }
                if !seen.insert(v) {
                    return Err(Error::validation(format!("vertex {v} appears in two clusters")));
                }
            }
            norm.push(p);
        }
        if seen.len() != g.vertex_count() {
            return Err(Error::validation("clustering does not cover all vertices"));
        }
        norm.sort();
        Ok(Clustering { parts: norm })
    }

    pub fn singletons(g: &Graph) -> Self {
        Clustering {
            parts: g.vertices().map(|v| vec![v]).collect(),
        }
    }

    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Size of the largest part.
    pub fn k(&self) -> usize {
        self.parts.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    /// Number of singleton parts.
    pub fn singleton_count(&self) -> usize {
        self.parts.iter().filter(|p| p.len() == 1).count()
    }

    /// Index of the part containing each vertex.
    pub fn part_of(&self) -> BTreeMap<VertexId, usize> {
        let mut m = BTreeMap::new();
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                m.insert(v, i);
            }
        }
        m
    }
}

/// Contracts every cluster to a single node: one vertex per part (numbered by
/// part index), one edge per pair of parts joined by at least one edge of `g`.
/// The result is simple by construction.
pub fn graph_of_clusters(g: &Graph, c: &Clustering) -> Result<Graph> {
    // Re-validate against g so stale clusterings are rejected.
    let c = Clustering::new(g, c.parts().to_vec())?;
    let part_of = c.part_of();
    let mut out = Graph::with_vertices(c.len() as u32);
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for e in g.edges() {
        let pu = part_of[&e.u];
        let pv = part_of[&e.v];
        if pu != pv {
            let key = (pu.min(pv), pu.max(pv));
            if pairs.insert(key) {
                out.add_edge_auto(VertexId(key.0 as u32), VertexId(key.1 as u32))?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;

    #[test]
    fn triangle_with_merged_edge_contracts_to_single_edge() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = Clustering::new(&g, vec![vec![VertexId(0), VertexId(1)], vec![VertexId(2)]]).unwrap();
        let gc = graph_of_clusters(&g, &c).unwrap();
        assert_eq!(gc.vertex_count(), 2);
        assert_eq!(gc.edge_count(), 1);
    }

    #[test]
    fn k7_paired_contracts_to_k4() {
        let g = Graph::complete(7);
        let c = Clustering::new(
            &g,
            vec![
                vec![VertexId(0), VertexId(1)],
                vec![VertexId(2), VertexId(3)],
                vec![VertexId(4), VertexId(5)],
                vec![VertexId(6)],
            ],
        )
        .unwrap();
        let gc = graph_of_clusters(&g, &c).unwrap();
        assert_eq!(gc.vertex_count(), 4);
        assert_eq!(gc.edge_count(), 6);
        // brute-force cross-check: every pair of parts sees an edge of K7
        for i in 0..4u32 {
            for j in (i + 1)..4 {
                assert!(gc.adjacent(VertexId(i), VertexId(j)));
            }
        }
    }

    #[test]
    fn singleton_clustering_is_simple_reduction() {
        let mut g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        g.add_edge(EdgeId(10), VertexId(0), VertexId(1)).unwrap(); // parallel
        let c = Clustering::singletons(&g);
        let gc = graph_of_clusters(&g, &c).unwrap();
        assert_eq!(gc.vertex_count(), g.vertex_count());
        assert_eq!(gc.edge_count(), g.simple_edge_count());
    }

    #[test]
    fn overlap_rejected() {
        let g = Graph::with_vertices(3);
        let bad = Clustering::new(
            &g,
            vec![vec![VertexId(0), VertexId(1)], vec![VertexId(1), VertexId(2)]],
        );
        assert!(bad.is_err());
    }
}
