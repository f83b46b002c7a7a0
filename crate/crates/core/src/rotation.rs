//! Rotation systems (combinatorial embeddings) and face walks.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// Per vertex, the cyclic sequence of incident edge ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RotationSystem {
    pub rot: BTreeMap<VertexId, Vec<EdgeId>>,
}

impl RotationSystem {
    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        self.rot.get(&v).map_or(&[], |r| r.as_slice())
    }

    /// Mirror image: reverses every rotation.
    pub fn reflected(&self) -> RotationSystem {
        let rot = self
            .rot
            .iter()
            .map(|(&v, r)| {
                let mut r = r.clone();
                r.reverse();
                (v, r)
            })
            .collect();
        RotationSystem { rot }
    }

    /// Every incident edge appears exactly once in each endpoint's rotation.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for v in g.vertices() {
            let mut seen = BTreeSet::new();
            for &e in self.rotation(v) {
                let (a, b) = g
                    .endpoints(e)
                    .ok_or_else(|| Error::validation(format!("rotation references missing edge {e}")))?;
                if a != v && b != v {
                    return Err(Error::validation(format!(
                        "edge {e} in rotation of non-endpoint {v}"
                    )));
                }
                if !seen.insert(e) {
                    return Err(Error::validation(format!("edge {e} twice in rotation of {v}")));
                }
            }
            if seen.len() != g.degree(v) {
                return Err(Error::validation(format!(
                    "rotation of {v} misses incident edges"
                )));
            }
        }
        Ok(())
    }
}

/// Traces all faces of the embedding. Each face is the cyclic sequence of
/// darts (edge, tail) it traverses. Uses the convention: after arriving at
/// `head` along `e`, leave along the successor of `e` in the rotation at
/// `head`.
pub fn face_walks(g: &Graph, rot: &RotationSystem) -> Vec<Vec<(EdgeId, VertexId)>> {
    let mut visited: BTreeSet<(EdgeId, VertexId)> = BTreeSet::new();
    let mut faces = Vec::new();
    let mut darts: Vec<(EdgeId, VertexId)> = Vec::new();
    for e in g.edges() {
        darts.push((e.id, e.u));
        darts.push((e.id, e.v));
    }
    darts.sort();
    for start in darts {
        if visited.contains(&start) {
            continue;
        }
        let mut face = Vec::new();
        let mut dart = start;
        loop {
            visited.insert(dart);
            face.push(dart);
            let (e, tail) = dart;
            let head = g.edge(e).unwrap().other(tail);
            let r = rot.rotation(head);
            let pos = r.iter().position(|&x| x == e).expect("edge missing from rotation");
            let next = r[(pos + 1) % r.len()];
            dart = (next, head);
            if dart == start {
                break;
            }
        }
        faces.push(face);
    }
    faces
}

/// Component-wise Euler identity: V - E + F = 2C, where each component is
/// embedded on its own sphere. Isolated vertices contribute one face each,
/// which the walk does not see, so they are added explicitly.
pub fn euler_check(g: &Graph, rot: &RotationSystem) -> Result<()> {
    rot.validate(g)?;
    let comps = g.components();
    let c = comps.len() as i64;
    let isolated = comps.iter().filter(|comp| comp.len() == 1).count() as i64;
    let v = g.vertex_count() as i64;
    let e = g.edge_count() as i64;
    let f = face_walks(g, rot).len() as i64 + isolated;
    if v - e + f != 2 * c {
        return Err(Error::validation(format!(
            "euler check failed: V={v} E={e} F={f} C={c}"
        )));
    }
    Ok(())
}

/// Number of face walks a planar embedding of this graph must produce
/// (isolated vertices excluded).
pub fn expected_face_count(g: &Graph) -> usize {
    let comps = g.components();
    let isolated = comps.iter().filter(|c| c.len() == 1).count();
    2 * comps.len() + g.edge_count() - g.vertex_count() - isolated
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_rotation(g: &Graph) -> RotationSystem {
        let mut rot = RotationSystem::default();
        for v in g.vertices() {
            rot.rot.insert(v, g.incident_edges(v).iter().map(|e| e.id).collect());
        }
        rot
    }

    #[test]
    fn triangle_has_two_faces() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let rot = cycle_rotation(&g);
        assert_eq!(face_walks(&g, &rot).len(), 2);
        euler_check(&g, &rot).unwrap();
    }

    #[test]
    fn reflection_preserves_euler() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let rot = cycle_rotation(&g).reflected();
        euler_check(&g, &rot).unwrap();
    }
}
