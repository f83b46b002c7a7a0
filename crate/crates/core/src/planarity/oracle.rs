//! Independent brute-force planarity reference for graphs with at most 7
//! vertices: exhaustive search for K5 and K3,3 subdivisions.
//!
//! A subdivision of K5 inside a 7-vertex graph has 5 branch vertices and at
//! most 2 subdivision vertices; a K3,3 subdivision has 6 branch vertices and
//! at most 1. Both cases are enumerated completely, so by Kuratowski's
//! theorem the verdict is exact. Kept deliberately independent of the
//! left-right implementation it cross-checks.

use crate::graph::Graph;

/// Exact planarity for graphs with up to 7 vertices.
///
/// Panics if the graph has more than 7 vertices.
pub fn is_planar_upto7(g: &Graph) -> bool {
    let verts: Vec<_> = g.vertices().collect();
    let n = verts.len();
    assert!(n <= 7, "oracle only supports up to 7 vertices");
    let mut adj = [0u8; 7];
    for e in g.edges() {
        let i = verts.binary_search(&e.u).unwrap();
        let j = verts.binary_search(&e.v).unwrap();
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    !has_k5_subdivision(&adj, n) && !has_k33_subdivision(&adj, n)
}

fn has_edge(adj: &[u8; 7], i: usize, j: usize) -> bool {
    adj[i] & (1 << j) != 0
}

/// Pair (i, j) of branch indices is linked by a path through the listed
/// subdividers (0, 1 or 2 of them), internally disjoint by construction.
fn pair_linked(adj: &[u8; 7], a: usize, b: usize, subs: &[usize]) -> bool {
    match subs {
        [] => has_edge(adj, a, b),
        [r] => has_edge(adj, a, *r) && has_edge(adj, *r, b),
        [r1, r2] => {
            has_edge(adj, *r1, *r2)
                && ((has_edge(adj, a, *r1) && has_edge(adj, *r2, b))
                    || (has_edge(adj, a, *r2) && has_edge(adj, *r1, b)))
        }
        _ => unreachable!(),
    }
}

fn has_k5_subdivision(adj: &[u8; 7], n: usize) -> bool {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| ((i + 1)..5).map(move |j| (i, j))).collect();
    for branch_mask in 0u8..(1 << n) {
        if (branch_mask.count_ones()) != 5 {
            continue;
        }
        let branch: Vec<usize> = (0..n).filter(|&i| branch_mask & (1 << i) != 0).collect();
        let rest: Vec<usize> = (0..n).filter(|&i| branch_mask & (1 << i) == 0).collect();
        // role of each leftover vertex: unused (10) or subdivider of pair t
        let options = pairs.len() + 1;
        let combos = options.pow(rest.len() as u32);
        'combo: for c in 0..combos {
            let mut roles = [usize::MAX; 2];
            let mut cc = c;
            for (idx, _) in rest.iter().enumerate() {
                let r = cc % options;
                cc /= options;
                roles[idx] = r;
            }
            for (t, &(i, j)) in pairs.iter().enumerate() {
                let mut subs: Vec<usize> = Vec::with_capacity(2);
                for (idx, &r) in rest.iter().enumerate() {
                    if roles[idx] == t + 1 {
                        subs.push(r);
                    }
                }
                if !pair_linked(adj, branch[i], branch[j], &subs) {
                    continue 'combo;
                }
            }
            return true;
        }
    }
    false
}

fn has_k33_subdivision(adj: &[u8; 7], n: usize) -> bool {
    for branch_mask in 0u8..(1 << n) {
        if branch_mask.count_ones() != 6 {
            continue;
        }
        let branch: Vec<usize> = (0..n).filter(|&i| branch_mask & (1 << i) != 0).collect();
        let rest: Vec<usize> = (0..n).filter(|&i| branch_mask & (1 << i) == 0).collect();
        // bipartitions with branch[0] pinned to the left side
        for mask in 0u8..(1 << 5) {
            if mask.count_ones() != 2 {
                continue;
            }
            let mut left = vec![branch[0]];
            let mut right = Vec::new();
            for t in 0..5 {
                if mask & (1 << t) != 0 {
                    left.push(branch[t + 1]);
                } else {
                    right.push(branch[t + 1]);
                }
            }
            let cross: Vec<(usize, usize)> = left
                .iter()
                .flat_map(|&a| right.iter().map(move |&b| (a, b)))
                .collect();
            let options = cross.len() + 1;
            let combos = options.pow(rest.len() as u32);
            'combo: for c in 0..combos {
                let role = if rest.is_empty() { usize::MAX } else { c % options };
                for (t, &(a, b)) in cross.iter().enumerate() {
                    let subs: Vec<usize> = if !rest.is_empty() && role == t + 1 {
                        vec![rest[0]]
                    } else {
                        vec![]
                    };
                    if !pair_linked(adj, a, b, &subs) {
                        continue 'combo;
                    }
                }
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kuratowski_graphs_rejected() {
        assert!(!is_planar_upto7(&Graph::complete(5)));
        assert!(!is_planar_upto7(&Graph::complete_bipartite(3, 3)));
        assert!(!is_planar_upto7(&Graph::complete(6)));
        assert!(!is_planar_upto7(&Graph::complete(7)));
    }

    #[test]
    fn small_planar_accepted() {
        assert!(is_planar_upto7(&Graph::complete(4)));
        // octahedron
        let oct = Graph::from_edge_list(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (0, 4),
                (1, 4),
                (1, 5),
                (2, 5),
                (2, 3),
            ],
        )
        .unwrap();
        assert!(is_planar_upto7(&oct));
    }

    #[test]
    fn k5_subdivision_on_7_vertices_rejected() {
        // K5 on {0..4} with edge (0,1) subdivided through 5 and (2,3) through 6
        let g = Graph::from_edge_list(
            7,
            &[
                (0, 5),
                (5, 1),
                (2, 6),
                (6, 3),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 4),
                (3, 4),
            ],
        )
        .unwrap();
        assert!(!is_planar_upto7(&g));
    }
}
