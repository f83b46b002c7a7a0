//! 1-plane graphs: a graph together with a set of crossing edge pairs.
//!
//! Realizability and embeddings go through the *framed planarization*: every
//! crossing pair is replaced by a degree-4 dummy vertex, and the 4-cycle on
//! the pair's endpoints is added beside it. A wheel is rigid, so any planar
//! embedding of the framed graph is forced to alternate the two edges around
//! the dummy — exactly the difference between a transversal crossing and two
//! edges touching at a point. Dropping the frames afterwards leaves a valid
//! embedding of the plain planarization.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph, VertexId};
use crate::planarity::{is_planar, planar_embedding};
use crate::rotation::RotationSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePlaneGraph {
    pub graph: Graph,
    /// Unordered crossing pairs, stored with the smaller edge id first.
    pub crossings: Vec<(EdgeId, EdgeId)>,
}

/// Where the pieces of a crossed edge went in the planarization.
#[derive(Debug, Clone)]
pub struct Planarization {
    pub graph: Graph,
    /// crossing index -> dummy vertex
    pub dummy: Vec<VertexId>,
    /// crossed edge -> (half toward endpoint u, half toward endpoint v)
    pub halves: BTreeMap<EdgeId, (EdgeId, EdgeId)>,
}

impl OnePlaneGraph {
    /// Builds and validates the combinatorial structure: edges exist, pairs
    /// are vertex-disjoint, and no edge is crossed twice. Realizability is a
    /// separate check (`validate`).
    pub fn new(graph: Graph, crossings: Vec<(EdgeId, EdgeId)>) -> Result<Self> {
        let mut seen: BTreeMap<EdgeId, ()> = BTreeMap::new();
        let mut canon = Vec::with_capacity(crossings.len());
        for (a, b) in crossings {
            let ea = graph.edge(a).ok_or_else(|| Error::validation(format!("crossing references missing edge {a}")))?;
            let eb = graph.edge(b).ok_or_else(|| Error::validation(format!("crossing references missing edge {b}")))?;
            if a == b {
                return Err(Error::validation(format!("edge {a} cannot cross itself")));
            }
            if ea.touches(eb.u) || ea.touches(eb.v) {
                return Err(Error::validation(format!(
                    "crossing edges {a} and {b} share an endpoint"
                )));
            }
            for id in [a, b] {
                if seen.insert(id, ()).is_some() {
                    return Err(Error::validation(format!("edge {id} crossed more than once")));
                }
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort();
        Ok(OnePlaneGraph { graph, crossings: canon })
    }

    pub fn crossing_partner(&self, e: EdgeId) -> Option<EdgeId> {
        self.crossings.iter().find_map(|&(a, b)| {
            if a == e {
                Some(b)
            } else if b == e {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Planarization: each crossing becomes a degree-4 dummy vertex.
    pub fn planarization(&self) -> Planarization {
        let mut g = self.graph.clone();
        let mut dummy = Vec::new();
        let mut halves = BTreeMap::new();
        let mut next_edge = self.graph.max_edge_id().map_or(0, |e| e + 1);
        for &(a, b) in &self.crossings {
            let d = g.fresh_vertex();
            dummy.push(d);
            for id in [a, b] {
                let Edge { u, v, .. } = g.edge(id).unwrap();
                g.remove_edge(id);
                let h1 = EdgeId(next_edge);
                let h2 = EdgeId(next_edge + 1);
                next_edge += 2;
                g.add_edge(h1, u, d).unwrap();
                g.add_edge(h2, d, v).unwrap();
                halves.insert(id, (h1, h2));
            }
        }
        Planarization { graph: g, dummy, halves }
    }

    /// Planarization plus one frame 4-cycle per crossing.
    fn framed(&self) -> (Planarization, Vec<EdgeId>) {
        let mut pl = self.planarization();
        let mut frame_edges = Vec::new();
        let mut next_edge = pl.graph.max_edge_id().map_or(0, |e| e + 1);
        for &(a, b) in &self.crossings {
            let (u1, u2) = self.graph.endpoints(a).unwrap();
            let (v1, v2) = self.graph.endpoints(b).unwrap();
            for (x, y) in [(u1, v1), (v1, u2), (u2, v2), (v2, u1)] {
                let id = EdgeId(next_edge);
                next_edge += 1;
                pl.graph.add_edge(id, x, y).unwrap();
                frame_edges.push(id);
            }
        }
        (pl, frame_edges)
    }

    /// True iff a drawing with exactly these crossings exists.
    pub fn validate(&self) -> bool {
        let (framed, _) = self.framed();
        is_planar(&framed.graph)
    }

    /// Planarization together with an embedding in which every dummy's
    /// rotation alternates between the two crossing edges.
    pub fn planarization_embedding(&self) -> Result<(Planarization, RotationSystem)> {
        let (framed, frame_edges) = self.framed();
        let rot = planar_embedding(&framed.graph).map_err(|_| {
            Error::validation("crossing structure is not realizable as a 1-plane drawing")
        })?;
        // drop frames (a frame edge can be collapsed with a pre-existing
        // parallel edge by the embedder, in which case nothing was added)
        let mut plain = framed;
        let mut rot = rot;
        for id in frame_edges {
            plain.graph.remove_edge(id);
            for r in rot.rot.values_mut() {
                r.retain(|&e| e != id);
            }
        }
        debug_assert!(self.alternation_ok(&plain, &rot));
        Ok((plain, rot))
    }

    fn alternation_ok(&self, pl: &Planarization, rot: &RotationSystem) -> bool {
        for (i, &(a, b)) in self.crossings.iter().enumerate() {
            let d = pl.dummy[i];
            let r = rot.rotation(d);
            if r.len() != 4 {
                return false;
            }
            let of_a = pl.halves[&a];
            let belongs_a: Vec<bool> = r.iter().map(|&e| e == of_a.0 || e == of_a.1).collect();
            if belongs_a[0] == belongs_a[1] {
                return false;
            }
            if belongs_a[0] != belongs_a[2] || belongs_a[1] != belongs_a[3] {
                return false;
            }
            let _ = b;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::euler_check;

    /// K4 drawn with one crossing: the kite.
    fn kite() -> OnePlaneGraph {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        OnePlaneGraph::new(g, vec![(EdgeId(4), EdgeId(5))]).unwrap()
    }

    #[test]
    fn kite_is_valid_one_plane() {
        let k = kite();
        assert!(k.validate());
        let (pl, rot) = k.planarization_embedding().unwrap();
        assert_eq!(pl.graph.vertex_count(), 5);
        assert_eq!(pl.graph.edge_count(), 8);
        euler_check(&pl.graph, &rot).unwrap();
    }

    #[test]
    fn sharing_endpoint_rejected() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(OnePlaneGraph::new(g, vec![(EdgeId(0), EdgeId(1))]).is_err());
    }

    #[test]
    fn double_crossing_rejected() {
        let g = Graph::from_edge_list(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert!(OnePlaneGraph::new(g, vec![(EdgeId(0), EdgeId(1)), (EdgeId(0), EdgeId(2))]).is_err());
    }

    #[test]
    fn k5_with_declared_crossing_is_realizable() {
        let g = Graph::complete(5);
        // edges (0,2) and (1,3): ids in K5 listing
        let e02 = g.edges().find(|e| (e.u.0, e.v.0) == (0, 2)).unwrap().id;
        let e13 = g.edges().find(|e| (e.u.0, e.v.0) == (1, 3)).unwrap().id;
        let op = OnePlaneGraph::new(g, vec![(e02, e13)]).unwrap();
        assert!(op.validate());
    }

    #[test]
    fn impossible_crossing_set_detected() {
        // K6 needs three crossings; declaring a single one cannot be drawn
        let g = Graph::complete(6);
        let e01 = g.edges().find(|e| (e.u.0, e.v.0) == (0, 1)).unwrap().id;
        let e23 = g.edges().find(|e| (e.u.0, e.v.0) == (2, 3)).unwrap().id;
        let op = OnePlaneGraph::new(g, vec![(e01, e23)]).unwrap();
        assert!(!op.validate());
        assert!(op.planarization_embedding().is_err());
    }
}
