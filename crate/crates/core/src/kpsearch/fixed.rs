//! Exhaustive decision procedure for a fixed clustering: does some port
//! structure make the configuration (k,p)-planar?
//!
//! The search enumerates, for every vertex, the partitions of its
//! inter-cluster edge ends into exactly min(p, degree) unlabeled groups (a
//! coarser assignment that works can always be refined by splitting a port's
//! bundle at a consecutive cut, so maximal splits lose nothing). Boundary
//! cyclic orders are not enumerated at all: each cluster contributes an apex
//! vertex with a spoke to every port, and a planar embedding of that spokes
//! graph chooses the boundary order through the rotation at the apex. The
//! boundary cycle can always be drawn beside consecutive spokes, so
//! spokes-graph planarity is equivalent to the existence of a planar
//! wheel-augmented skeleton.

use std::collections::{BTreeMap, BTreeSet};

use crate::clustering::{graph_of_clusters, Clustering};
use crate::config::{KpConfiguration, PortRef};
use crate::density::wheel_augmented_skeleton;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph, VertexId};
use crate::planarity::{is_planar, is_planar_edge_list, planar_embedding};

/// Budget and per-vertex port caps for the exhaustive searches.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Maximum number of enumerated configurations (planarity probes).
    pub budget: u64,
    /// Overrides the port budget for individual vertices.
    pub port_caps: BTreeMap<VertexId, u8>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 100_000_000, port_caps: BTreeMap::new() }
    }
}

/// Running budget shared across nested searches.
#[derive(Debug)]
pub struct BudgetCounter {
    pub used: u64,
    pub limit: u64,
}

impl BudgetCounter {
    pub fn new(limit: u64) -> Self {
        BudgetCounter { used: 0, limit }
    }

    fn spend(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::Exhausted(self.used))
        } else {
            Ok(())
        }
    }
}

/// Partitions of 0..d into exactly t unlabeled nonempty groups, as group
/// index per position, in restricted growth order.
fn group_partitions(d: usize, t: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if t == 0 || t > d {
        return out;
    }
    let mut cur = vec![0u8; d];
    fn rec(d: usize, t: usize, i: usize, maxg: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == d {
            if maxg as usize + 1 == t {
                out.push(cur.clone());
            }
            return;
        }
        // not enough positions left to open the remaining groups
        let remaining = d - i;
        let need = t - (maxg as usize + 1);
        if need > remaining {
            return;
        }
        let hi = (maxg + 1).min(t as u8 - 1);
        for g in 0..=hi {
            cur[i] = g;
            rec(d, t, i + 1, maxg.max(g), cur, out);
        }
    }
    // position 0 is always group 0
    cur[0] = 0;
    rec(d, t, 1, 0, &mut cur, &mut out);
    out
}

struct FixedSearch<'a> {
    g: &'a Graph,
    clustering: &'a Clustering,
    p: usize,
    order: Vec<VertexId>,
    ends: BTreeMap<VertexId, Vec<EdgeId>>,
    target: BTreeMap<VertexId, usize>,
    partitions: BTreeMap<VertexId, Vec<Vec<u8>>>,
    /// skeleton index of port (v, j) = port_base[v] + j
    port_base: BTreeMap<VertexId, usize>,
    apex: Vec<usize>,
    n_static: usize,
    /// edges closing at order position i: (edge, earlier endpoint, this endpoint)
    closing: Vec<Vec<Edge>>,
    group: BTreeMap<(EdgeId, VertexId), u8>,
    edge_buf: Vec<(usize, usize)>,
}

/// Decides whether `c` admits a (k,p)-planar configuration of `g` and
/// returns a witness if so.
pub fn check_fixed_clustering(
    g: &Graph,
    c: &Clustering,
    p: usize,
) -> Result<Option<KpConfiguration>> {
    let opts = SearchOptions::default();
    let mut budget = BudgetCounter::new(opts.budget);
    check_fixed_clustering_with(g, c, p, &opts, &mut budget)
}

pub fn check_fixed_clustering_with(
    g: &Graph,
    c: &Clustering,
    p: usize,
    opts: &SearchOptions,
    budget: &mut BudgetCounter,
) -> Result<Option<KpConfiguration>> {
    let c = Clustering::new(g, c.parts().to_vec())?;
    let part_of = c.part_of();
    let inter: Vec<Edge> = g
        .edges()
        .filter(|e| part_of[&e.u] != part_of[&e.v])
        .collect();
    if inter.is_empty() {
        let cfg = KpConfiguration {
            clustering: c.clone(),
            p,
            ports: BTreeMap::new(),
            boundary: vec![Vec::new(); c.len()],
            assign: BTreeMap::new(),
        };
        return Ok(Some(cfg));
    }
    if p == 0 {
        return Ok(None);
    }
    // necessary condition: the graph of clusters must be planar
    let gc = graph_of_clusters(g, &c)?;
    if !is_planar(&gc) {
        return Ok(None);
    }
    let mut ends: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for e in &inter {
        ends.entry(e.u).or_default().push(e.id);
        ends.entry(e.v).or_default().push(e.id);
    }
    for v in ends.values_mut() {
        v.sort();
    }
    let target: BTreeMap<VertexId, usize> = ends
        .iter()
        .map(|(&v, list)| {
            let cap = opts.port_caps.get(&v).map_or(p, |&c| c as usize);
            (v, cap.min(list.len()).max(1).min(p))
        })
        .collect();
    // Euler prune at maximal port counts
    {
        let n_s: usize = target.values().sum();
        let mut cluster_ports = vec![0usize; c.len()];
        for (&v, &t) in &target {
            cluster_ports[part_of[&v]] += t;
        }
        let port_clusters = cluster_ports.iter().filter(|&&q| q >= 1).count() as i64;
        let ones = cluster_ports.iter().filter(|&&q| q == 1).count() as i64;
        if n_s >= 3
            && (inter.len() as i64) > n_s as i64 + 3 * port_clusters - 6 - ones
        {
            return Ok(None);
        }
    }
    // static skeleton vertex indexing
    let mut port_base = BTreeMap::new();
    let mut next = 0usize;
    for (&v, &t) in &target {
        port_base.insert(v, next);
        next += t;
    }
    let mut apex = vec![usize::MAX; c.len()];
    for item in apex.iter_mut() {
        *item = next;
        next += 1;
    }
    // vertex order: greedy, most closed edges into the chosen prefix first
    let mut order: Vec<VertexId> = Vec::new();
    {
        let mut remaining: BTreeSet<VertexId> = ends.keys().copied().collect();
        while !remaining.is_empty() {
            let best = remaining
                .iter()
                .map(|&v| {
                    let closed = ends[&v]
                        .iter()
                        .filter(|&&e| {
                            let edge = g.edge(e).unwrap();
                            let o = edge.other(v);
                            order.contains(&o)
                        })
                        .count();
                    (closed, ends[&v].len(), v)
                })
                .max_by_key(|&(closed, d, v)| (closed, d, std::cmp::Reverse(v)))
                .map(|(_, _, v)| v)
                .unwrap();
            order.push(best);
            remaining.remove(&best);
        }
    }
    let posn: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut closing: Vec<Vec<Edge>> = vec![Vec::new(); order.len()];
    for e in &inter {
        let i = posn[&e.u].max(posn[&e.v]);
        closing[i].push(*e);
    }
    let partitions: BTreeMap<VertexId, Vec<Vec<u8>>> = target
        .iter()
        .map(|(&v, &t)| (v, group_partitions(ends[&v].len(), t)))
        .collect();
    let mut search = FixedSearch {
        g,
        clustering: &c,
        p,
        order,
        ends,
        target,
        partitions,
        port_base,
        apex,
        n_static: next,
        closing,
        group: BTreeMap::new(),
        edge_buf: Vec::new(),
    };
    search.dfs(0, &part_of, budget)
}

impl<'a> FixedSearch<'a> {
    fn port_index(&self, v: VertexId, group: u8) -> usize {
        self.port_base[&v] + group as usize
    }

    fn dfs(
        &mut self,
        i: usize,
        part_of: &BTreeMap<VertexId, usize>,
        budget: &mut BudgetCounter,
    ) -> Result<Option<KpConfiguration>> {
        if i == self.order.len() {
            return Ok(Some(self.extract(part_of)?));
        }
        let v = self.order[i];
        let spokes_start = self.edge_buf.len();
        // spokes of v (fixed across choices)
        let t = self.target[&v];
        let apex = self.apex[part_of[&v]];
        for j in 0..t {
            self.edge_buf.push((apex, self.port_base[&v] + j));
        }
        let base_len = self.edge_buf.len();
        let choices = self.partitions[&v].clone();
        let ends = self.ends[&v].clone();
        let closing = self.closing[i].clone();
        for choice in &choices {
            for (pos, &e) in ends.iter().enumerate() {
                self.group.insert((e, v), choice[pos]);
            }
            // close edges whose both endpoints are now grouped
            self.edge_buf.truncate(base_len);
            for e in &closing {
                let gu = self.group[&(e.id, e.u)];
                let gv = self.group[&(e.id, e.v)];
                self.edge_buf
                    .push((self.port_index(e.u, gu), self.port_index(e.v, gv)));
            }
            budget.spend()?;
            if is_planar_edge_list(self.n_static, &self.edge_buf) {
                match self.dfs(i + 1, part_of, budget)? {
                    Some(cfg) => return Ok(Some(cfg)),
                    None => {}
                }
            }
        }
        for &e in &self.ends[&v].clone() {
            self.group.remove(&(e, v));
        }
        self.edge_buf.truncate(spokes_start);
        Ok(None)
    }

    /// Builds the witness configuration from the final spokes graph.
    fn extract(&self, part_of: &BTreeMap<VertexId, usize>) -> Result<KpConfiguration> {
        let mut sk = Graph::new();
        for i in 0..self.n_static {
            sk.add_vertex(VertexId(i as u32));
        }
        // spoke edges first so rotations at apexes list them
        let mut spoke_port: BTreeMap<EdgeId, PortRef> = BTreeMap::new();
        let mut next_e = 0u32;
        for (&v, &t) in &self.target {
            let apex = self.apex[part_of[&v]];
            for j in 0..t {
                let id = EdgeId(next_e);
                next_e += 1;
                sk.add_edge(id, VertexId(apex as u32), VertexId(self.port_index(v, j as u8) as u32))?;
                spoke_port.insert(id, PortRef::new(v, j as u8));
            }
        }
        for (&(e, v), &grp) in &self.group {
            let edge = self.g.edge(e).unwrap();
            if v != edge.u {
                continue;
            }
            let gu = grp;
            let gv = self.group[&(e, edge.v)];
            sk.add_edge(
                EdgeId(next_e),
                VertexId(self.port_index(edge.u, gu) as u32),
                VertexId(self.port_index(edge.v, gv) as u32),
            )?;
            next_e += 1;
        }
        let rot = planar_embedding(&sk)?;
        let mut boundary = vec![Vec::new(); self.clustering.len()];
        for (ci, b) in boundary.iter_mut().enumerate() {
            let apex = VertexId(self.apex[ci] as u32);
            for &spoke in rot.rotation(apex) {
                b.push(spoke_port[&spoke]);
            }
        }
        let ports: BTreeMap<VertexId, u8> =
            self.target.iter().map(|(&v, &t)| (v, t as u8)).collect();
        let assign: BTreeMap<(EdgeId, VertexId), PortRef> = self
            .group
            .iter()
            .map(|(&(e, v), &grp)| ((e, v), PortRef::new(v, grp)))
            .collect();
        let cfg = KpConfiguration {
            clustering: self.clustering.clone(),
            p: self.p,
            ports,
            boundary,
            assign,
        };
        cfg.validate(self.g)?;
        debug_assert!({
            let wheel = wheel_augmented_skeleton(self.g, &cfg)?;
            is_planar(&wheel.graph)
        });
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_partition_counts_are_stirling() {
        assert_eq!(group_partitions(4, 2).len(), 7); // S(4,2)
        assert_eq!(group_partitions(5, 2).len(), 15);
        assert_eq!(group_partitions(6, 2).len(), 31);
        assert_eq!(group_partitions(5, 3).len(), 25);
        assert_eq!(group_partitions(3, 3).len(), 1);
        assert!(group_partitions(2, 3).is_empty());
    }

    #[test]
    fn planar_all_singletons_one_port_accepts() {
        let g = Graph::complete(4);
        let c = Clustering::singletons(&g);
        let cfg = check_fixed_clustering(&g, &c, 1).unwrap().expect("K4 accepted");
        assert!(cfg.ports.values().all(|&t| t == 1));
    }

    #[test]
    fn k5_all_singletons_rejected_for_small_p() {
        let g = Graph::complete(5);
        let c = Clustering::singletons(&g);
        for p in 1..=3 {
            assert!(
                check_fixed_clustering(&g, &c, p).unwrap().is_none(),
                "K5 with singleton clusters must fail at p={p}"
            );
        }
    }

    #[test]
    fn triangle_single_cluster_accepts() {
        let g = Graph::complete(3);
        let c = Clustering::new(
            &g,
            vec![vec![VertexId(0), VertexId(1), VertexId(2)]],
        )
        .unwrap();
        let cfg = check_fixed_clustering(&g, &c, 1).unwrap();
        assert!(cfg.is_some());
    }

    #[test]
    fn monotone_in_p() {
        // K5 with one pair cluster is (2,2)-planar, so also (2,3)-planar
        let g = Graph::complete(5);
        let c = Clustering::new(
            &g,
            vec![
                vec![VertexId(0), VertexId(1)],
                vec![VertexId(2)],
                vec![VertexId(3)],
                vec![VertexId(4)],
            ],
        )
        .unwrap();
        let yes2 = check_fixed_clustering(&g, &c, 2).unwrap().is_some();
        let yes3 = check_fixed_clustering(&g, &c, 3).unwrap().is_some();
        assert!(yes2, "K5 with one 2-cluster admits a (2,2) representation");
        assert!(yes3);
    }
}
