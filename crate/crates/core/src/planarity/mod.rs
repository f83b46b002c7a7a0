//! Exact planarity testing and embedding extraction for loop-free
//! multigraphs. Parallel edges are collapsed before testing (they never
//! change planarity of a loop-free multigraph) and re-inserted beside their
//! representative when an embedding is requested.

mod lr;
pub mod oracle;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::rotation::RotationSystem;

struct Indexed {
    verts: Vec<VertexId>,
    /// representative original edge per simple edge
    reps: Vec<EdgeId>,
    edges: Vec<(usize, usize)>,
}

fn index_simple(g: &Graph) -> Indexed {
    let verts: Vec<VertexId> = g.vertices().collect();
    let pos: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut seen: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    let mut reps = Vec::new();
    let mut edges = Vec::new();
    for e in g.edges() {
        let a = pos[&e.u];
        let b = pos[&e.v];
        let key = (a.min(b), a.max(b));
        if seen.insert(key, ()).is_none() {
            reps.push(e.id);
            edges.push(key);
        }
    }
    Indexed { verts, reps, edges }
}

/// Allocation-light planarity entry for index-based edge lists. Vertices are
/// 0..n; parallels are collapsed; loops must not occur.
pub fn is_planar_edge_list(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut es: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
        .collect();
    es.sort_unstable();
    es.dedup();
    let m = es.len();
    if n <= 4 || m < 9 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    lr::Lr::new(n, es).test()
}

/// True iff the graph embeds in the plane.
pub fn is_planar(g: &Graph) -> bool {
    let idx = index_simple(g);
    let n = idx.verts.len();
    let m = idx.edges.len();
    if n <= 4 || m < 9 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    lr::Lr::new(n, idx.edges).test()
}

/// Combinatorial embedding of a planar multigraph: parallel edges are placed
/// immediately after their bundle representative on both endpoints.
/// Disconnected graphs are embedded component-wise.
pub fn planar_embedding(g: &Graph) -> Result<RotationSystem> {
    let idx = index_simple(g);
    let n = idx.verts.len();
    let mut lr = lr::Lr::new(n, idx.edges.clone());
    if !lr.test() {
        return Err(Error::NotPlanar);
    }
    let rot_idx = lr.embed();
    // rotation in terms of representative edge ids
    let mut rot: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for (i, &v) in idx.verts.iter().enumerate() {
        rot.insert(v, rot_idx[i].iter().map(|&e| idx.reps[e]).collect());
    }
    // re-insert parallel copies next to their representatives
    let mut bundle: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    {
        let mut rep_of: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
        for e in g.edges() {
            let key = if e.u <= e.v { (e.u, e.v) } else { (e.v, e.u) };
            match rep_of.get(&key) {
                None => {
                    rep_of.insert(key, e.id);
                }
                Some(&rep) => bundle.entry(rep).or_default().push(e.id),
            }
        }
    }
    if !bundle.is_empty() {
        // nested bigons: copies follow the representative at the lower
        // endpoint and precede it, reversed, at the higher one
        for (&v, r) in rot.iter_mut() {
            let mut out = Vec::with_capacity(r.len());
            for &e in r.iter() {
                let (a, b) = g.endpoints(e).unwrap();
                let low = a.min(b);
                match bundle.get(&e) {
                    Some(extra) if v != low => {
                        out.extend(extra.iter().rev().copied());
                        out.push(e);
                    }
                    Some(extra) => {
                        out.push(e);
                        out.extend(extra.iter().copied());
                    }
                    None => out.push(e),
                }
            }
            *r = out;
        }
    }
    Ok(RotationSystem { rot })
}

/// Euler rejection: a skeleton on `n_s >= 3` vertices cannot be planar with
/// more than 3*n_s - 6 simple edges. For `n_s < 3` the bound is inapplicable
/// and nothing is rejected.
pub fn euler_reject_counts(m_simple: usize, n_s: usize) -> bool {
    if n_s < 3 {
        return false;
    }
    m_simple > 3 * n_s - 6
}

/// Euler rejection applied to a concrete graph (parallels collapsed first).
pub fn euler_reject(g: &Graph, n_s: usize) -> bool {
    euler_reject_counts(g.simple_edge_count(), n_s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;
    use crate::rotation::{euler_check, face_walks};

    #[test]
    fn kuratowski_verdicts() {
        assert!(is_planar(&Graph::complete(4)));
        assert!(!is_planar(&Graph::complete(5)));
        assert!(!is_planar(&Graph::complete_bipartite(3, 3)));
    }

    #[test]
    fn petersen_graph_not_planar() {
        let g = Graph::from_edge_list(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        )
        .unwrap();
        assert!(!is_planar(&g));
    }

    #[test]
    fn cube_embedding_has_six_faces() {
        let cube = Graph::from_edge_list(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
        .unwrap();
        let rot = planar_embedding(&cube).unwrap();
        euler_check(&cube, &rot).unwrap();
        assert_eq!(face_walks(&cube, &rot).len(), 6);
    }

    #[test]
    fn parallel_edges_do_not_disturb_embedding() {
        let mut g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        g.add_edge(EdgeId(7), VertexId(0), VertexId(1)).unwrap();
        g.add_edge(EdgeId(8), VertexId(0), VertexId(1)).unwrap();
        assert!(is_planar(&g));
        let rot = planar_embedding(&g).unwrap();
        euler_check(&g, &rot).unwrap();
    }

    #[test]
    fn disconnected_components_embed() {
        let mut g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        for i in 3..7 {
            g.add_vertex(VertexId(i));
        }
        for (a, b) in [(3, 4), (4, 5), (5, 6), (6, 3), (3, 5)] {
            g.add_edge_auto(VertexId(a), VertexId(b)).unwrap();
        }
        let rot = planar_embedding(&g).unwrap();
        euler_check(&g, &rot).unwrap();
    }

    #[test]
    fn euler_reject_bounds() {
        assert!(euler_reject_counts(22, 8)); // 22 > 18
        assert!(!euler_reject_counts(3, 3)); // 3 <= 3
        assert!(!euler_reject_counts(100, 2)); // bound inapplicable
    }

    /// Exhaustive agreement with the subdivision oracle on all labeled
    /// 6-vertex graphs (the full 7-vertex sweep runs in the acceptance
    /// suite).
    #[test]
    fn agrees_with_oracle_on_all_6_vertex_graphs() {
        let pairs: Vec<(u32, u32)> =
            (0..6).flat_map(|i| ((i + 1)..6).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << 15) {
            let chosen: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect();
            let g = Graph::from_edge_list(6, &chosen).unwrap();
            let fast = is_planar(&g);
            let slow = oracle::is_planar_upto7(&g);
            assert_eq!(fast, slow, "disagreement on mask {mask:#x}");
            if fast {
                let rot = planar_embedding(&g).unwrap();
                euler_check(&g, &rot).unwrap();
            }
        }
    }
}
