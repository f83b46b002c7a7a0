//! Brute-force automorphism enumeration for small graphs, used to collapse
//! clustering candidates into isomorphism orbits.

use std::collections::BTreeMap;

use crate::graph::{Graph, VertexId};

/// Automorphisms as index permutations over the sorted vertex list. Stops at
/// `cap` permutations; a truncated set still yields sound (merely coarser)
/// orbit deduplication.
pub fn automorphisms(g: &Graph, cap: usize) -> Vec<Vec<usize>> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let n = verts.len();
    let pos: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![0u64; n];
    for e in g.edges() {
        let a = pos[&e.u];
        let b = pos[&e.v];
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let deg: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    backtrack(&adj, &deg, 0, &mut map, &mut used, &mut out, cap);
    out
}

fn backtrack(
    adj: &[u64],
    deg: &[u32],
    i: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    let n = adj.len();
    if i == n {
        out.push(map.clone());
        return;
    }
    for t in 0..n {
        if used[t] || deg[t] != deg[i] {
            continue;
        }
        let mut ok = true;
        for j in 0..i {
            let want = adj[i] & (1 << j) != 0;
            let have = adj[t] & (1 << map[j]) != 0;
            if want != have {
                ok = false;
                break;
            }
        }
        if ok {
            map[i] = t;
            used[t] = true;
            backtrack(adj, deg, i + 1, map, used, out, cap);
            used[t] = false;
            map[i] = usize::MAX;
        }
    }
}

/// Canonical key of a partition under a permutation set: the minimum, over
/// all supplied permutations, of the relabeled sorted-parts form.
pub fn orbit_key(
    parts: &[Vec<VertexId>],
    verts: &[VertexId],
    perms: &[Vec<usize>],
) -> Vec<Vec<VertexId>> {
    let pos: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut best: Option<Vec<Vec<VertexId>>> = None;
    for perm in perms {
        let mut mapped: Vec<Vec<VertexId>> = parts
            .iter()
            .map(|part| {
                let mut q: Vec<VertexId> = part.iter().map(|v| verts[perm[pos[v]]]).collect();
                q.sort();
                q
            })
            .collect();
        mapped.sort();
        if best.as_ref().map_or(true, |b| mapped < *b) {
            best = Some(mapped);
        }
    }
    best.unwrap_or_else(|| parts.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_has_full_symmetry() {
        let g = Graph::complete(4);
        assert_eq!(automorphisms(&g, 1000).len(), 24);
    }

    #[test]
    fn path_has_two_automorphisms() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(automorphisms(&g, 1000).len(), 2);
    }

    #[test]
    fn orbit_keys_merge_equivalent_pairings() {
        let g = Graph::complete(4);
        let verts: Vec<VertexId> = g.vertices().collect();
        let perms = automorphisms(&g, 1000);
        let a = vec![vec![VertexId(0), VertexId(1)], vec![VertexId(2), VertexId(3)]];
        let b = vec![vec![VertexId(0), VertexId(2)], vec![VertexId(1), VertexId(3)]];
        assert_eq!(orbit_key(&a, &verts, &perms), orbit_key(&b, &verts, &perms));
    }
}
