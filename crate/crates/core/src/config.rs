//! The combinatorial content of a (k,p) representation: ports, cluster
//! boundaries and edge-endpoint port assignment.

use std::collections::{BTreeMap, BTreeSet};

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// One of the up-to-p boundary points a vertex is identified with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortRef {
    pub vertex: VertexId,
    pub index: u8,
}

impl PortRef {
    pub fn new(vertex: VertexId, index: u8) -> Self {
        PortRef { vertex, index }
    }
}

/// Clustering plus per-vertex port lists, per-cluster cyclic boundary order
/// and the edge-endpoint-to-port map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KpConfiguration {
    pub clustering: Clustering,
    /// Maximum ports allowed per vertex.
    pub p: usize,
    /// Ports per vertex (vertex absent = 0 ports).
    pub ports: BTreeMap<VertexId, u8>,
    /// Per cluster (indexed like `clustering.parts()`), the cyclic sequence of
    /// all ports of its member vertices.
    pub boundary: Vec<Vec<PortRef>>,
    /// For each endpoint of each inter-cluster edge, the port it attaches to.
    pub assign: BTreeMap<(EdgeId, VertexId), PortRef>,
}

impl KpConfiguration {
    /// All-singleton, one-port-per-incident-vertex configuration of a graph.
    pub fn trivial(g: &Graph, p: usize) -> Self {
        let clustering = Clustering::singletons(g);
        let mut ports = BTreeMap::new();
        let mut assign = BTreeMap::new();
        for e in g.edges() {
            for v in [e.u, e.v] {
                ports.insert(v, 1);
                assign.insert((e.id, v), PortRef::new(v, 0));
            }
        }
        let boundary = clustering
            .parts()
            .iter()
            .map(|part| {
                part.iter()
                    .filter(|v| ports.contains_key(v))
                    .map(|&v| PortRef::new(v, 0))
                    .collect()
            })
            .collect();
        KpConfiguration { clustering, p, ports, assign, boundary }
    }

    pub fn port_count(&self, v: VertexId) -> usize {
        self.ports.get(&v).map_or(0, |&c| c as usize)
    }

    /// Inter-cluster edges of `g` under this configuration's clustering.
    pub fn inter_cluster_edges(&self, g: &Graph) -> Vec<EdgeId> {
        let part_of = self.clustering.part_of();
        g.edges()
            .filter(|e| part_of[&e.u] != part_of[&e.v])
            .map(|e| e.id)
            .collect()
    }

    /// Checks every structural invariant against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let c = Clustering::new(g, self.clustering.parts().to_vec())?;
        if c != self.clustering {
            return Err(Error::validation("clustering not in canonical form"));
        }
        let part_of = self.clustering.part_of();
        for (&v, &count) in &self.ports {
            if !g.has_vertex(v) {
                return Err(Error::validation(format!("ports on missing vertex {v}")));
            }
            if count as usize > self.p {
                return Err(Error::validation(format!(
                    "vertex {v} has {count} ports, more than p={}",
                    self.p
                )));
            }
        }
        // every endpoint of every inter-cluster edge maps to a port it owns
        for e in g.edges() {
            if part_of[&e.u] == part_of[&e.v] {
                continue;
            }
            for v in [e.u, e.v] {
                let port = self.assign.get(&(e.id, v)).ok_or_else(|| {
                    Error::validation(format!("edge {} endpoint {v} has no port", e.id))
                })?;
                if port.vertex != v || (port.index as usize) >= self.port_count(v) {
                    return Err(Error::validation(format!(
                        "edge {} endpoint {v} assigned to foreign or missing port",
                        e.id
                    )));
                }
            }
        }
        // boundaries are cyclic permutations of exactly the member ports
        if self.boundary.len() != self.clustering.len() {
            return Err(Error::validation("boundary count != cluster count"));
        }
        for (i, part) in self.clustering.parts().iter().enumerate() {
            let mut expect: BTreeSet<PortRef> = BTreeSet::new();
            for &v in part {
                for idx in 0..self.port_count(v) {
                    expect.insert(PortRef::new(v, idx as u8));
                }
            }
            let got: BTreeSet<PortRef> = self.boundary[i].iter().copied().collect();
            if got.len() != self.boundary[i].len() || got != expect {
                return Err(Error::validation(format!(
                    "boundary of cluster {i} is not a permutation of its ports"
                )));
            }
        }
        Ok(())
    }
}
