//! Exact (k,p)-planarity decisions for desk-scale graphs: a fixed-clustering
//! checker, exhaustive search over clusterings with necessary-condition
//! pruning and isomorphism-orbit deduplication, the polynomial special cases
//! for p = 1, and the contraction-counting certificate.

pub mod fixed;
pub mod iso;
pub mod k8m;
pub mod partitions;

use std::collections::BTreeSet;

use crate::clustering::{graph_of_clusters, Clustering};
use crate::config::KpConfiguration;
use crate::error::{Error, Result};
use crate::graph::{max_short_path_count, Graph, VertexId};
use crate::oneplane::OnePlaneGraph;
use crate::planarity::is_planar;

pub use fixed::{check_fixed_clustering, check_fixed_clustering_with, BudgetCounter, SearchOptions};

/// Searches all clusterings with parts of size <= k for one that admits a
/// (k,p)-planar configuration. Returns the first witness in canonical order.
pub fn search_kp(g: &Graph, k: usize, p: usize) -> Result<Option<(Clustering, KpConfiguration)>> {
    search_kp_with(g, k, p, &SearchOptions::default())
}

pub fn search_kp_with(
    g: &Graph,
    k: usize,
    p: usize,
    opts: &SearchOptions,
) -> Result<Option<(Clustering, KpConfiguration)>> {
    let mut budget = BudgetCounter::new(opts.budget);
    // pendant-block reduction, valid for the (2,2) case only
    if k == 2 && p == 2 {
        let blocks = k8m::detect_pendant_blocks(g);
        if !blocks.is_empty() {
            let mut cuts: BTreeSet<VertexId> = BTreeSet::new();
            for b in &blocks {
                if !cuts.insert(b.cut) {
                    // a vertex cannot pair inside two blocks at once
                    return Ok(None);
                }
            }
            let analysis = k8m::k8m_analysis();
            if analysis.lemma1_holds && analysis.one_port_witness.is_some() {
                let mut core_verts: BTreeSet<VertexId> = g.vertices().collect();
                for b in &blocks {
                    for w in &b.others {
                        core_verts.remove(w);
                    }
                }
                let core = g.induced(&core_verts);
                let found = search_clusterings(&core, k, p, &cuts, opts, &mut budget)?;
                return match found {
                    None => Ok(None),
                    Some((_, core_cfg)) => {
                        let cfg = k8m::compose_block_witnesses(g, &core, &core_cfg, &blocks)?;
                        Ok(Some((cfg.clustering.clone(), cfg)))
                    }
                };
            }
        }
    }
    search_clusterings(g, k, p, &BTreeSet::new(), opts, &mut budget)
}

/// Clustering enumeration with pruning and iterative-deepening budgets.
fn search_clusterings(
    g: &Graph,
    k: usize,
    p: usize,
    forced_singleton: &BTreeSet<VertexId>,
    opts: &SearchOptions,
    budget: &mut BudgetCounter,
) -> Result<Option<(Clustering, KpConfiguration)>> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let all = partitions::bounded_partitions(&verts, k, forced_singleton);
    // orbit deduplication for small graphs
    let mut candidates: Vec<&Vec<Vec<VertexId>>> = Vec::new();
    if verts.len() <= 9 {
        let perms: Vec<Vec<usize>> = iso::automorphisms(g, 50_000)
            .into_iter()
            .filter(|perm| {
                // automorphisms must preserve the pinned-singleton set
                forced_singleton.iter().all(|v| {
                    let i = verts.binary_search(v).unwrap();
                    forced_singleton.contains(&verts[perm[i]])
                })
            })
            .collect();
        let mut seen: BTreeSet<Vec<Vec<VertexId>>> = BTreeSet::new();
        for parts in &all {
            if seen.insert(iso::orbit_key(parts, &verts, &perms)) {
                candidates.push(parts);
            }
        }
    } else {
        candidates = all.iter().collect();
    }
    // cheap necessary conditions first
    let mut live: Vec<Clustering> = Vec::new();
    for parts in candidates {
        let c = Clustering::new(g, parts.clone())?;
        let gc = graph_of_clusters(g, &c)?;
        if is_planar(&gc) {
            live.push(c);
        }
    }
    // iterative deepening so cheap witnesses are found before hard
    // refutations burn the budget
    let mut round_budget: u64 = 1_000;
    let mut undecided: Vec<Clustering> = live;
    loop {
        let mut next_round: Vec<Clustering> = Vec::new();
        for c in undecided {
            let remaining = opts.budget.saturating_sub(budget.used);
            if remaining == 0 {
                return Err(Error::Exhausted(budget.used));
            }
            let mut local = BudgetCounter::new(round_budget.min(remaining));
            match check_fixed_clustering_with(g, &c, p, opts, &mut local) {
                Ok(Some(cfg)) => {
                    budget.used += local.used;
                    return Ok(Some((c, cfg)));
                }
                Ok(None) => {
                    budget.used += local.used;
                }
                Err(Error::Exhausted(_)) => {
                    budget.used += local.used;
                    next_round.push(c);
                }
                Err(e) => return Err(e),
            }
        }
        if next_round.is_empty() {
            return Ok(None);
        }
        if round_budget >= opts.budget {
            return Err(Error::Exhausted(budget.used));
        }
        round_budget = round_budget.saturating_mul(10);
        undecided = next_round;
    }
}

/// (k,1)-planarity for k <= 3 coincides with planarity.
pub fn test_k1(g: &Graph, k: usize) -> Result<bool> {
    if !(1..=3).contains(&k) {
        return Err(Error::validation(format!(
            "(k,1) fast test only covers k <= 3 (got {k}); use the search"
        )));
    }
    Ok(is_planar(g))
}

/// (4,1)-planarity equals IC-planarity: brute-force search over sets of
/// pairwise vertex-disjoint crossing pairs. Desk scale only.
pub fn test_41(g: &Graph) -> Result<bool> {
    if is_planar(g) {
        return Ok(true);
    }
    let n = g.vertex_count();
    let m = g.simple_edge_count();
    // 1-planar graphs have at most 4n-8 edges, IC-planar ones are 1-planar
    if n >= 3 && m > 4 * n - 8 {
        return Ok(false);
    }
    let edges: Vec<_> = g.edges().collect();
    let mut disjoint_pairs = Vec::new();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (a, b) = (&edges[i], &edges[j]);
            if a.touches(b.u) || a.touches(b.v) {
                continue;
            }
            disjoint_pairs.push((a.id, b.id, [a.u, a.v, b.u, b.v]));
        }
    }
    // grow sets of crossing pairs with pairwise disjoint vertex supports
    fn grow(
        g: &Graph,
        pairs: &[(crate::graph::EdgeId, crate::graph::EdgeId, [VertexId; 4])],
        start: usize,
        chosen: &mut Vec<(crate::graph::EdgeId, crate::graph::EdgeId)>,
        used: &mut BTreeSet<VertexId>,
    ) -> Result<bool> {
        if !chosen.is_empty() {
            let op = OnePlaneGraph::new(g.clone(), chosen.clone())?;
            if op.validate() {
                return Ok(true);
            }
        }
        for (idx, &(a, b, support)) in pairs.iter().enumerate().skip(start) {
            if support.iter().any(|v| used.contains(v)) {
                continue;
            }
            chosen.push((a, b));
            used.extend(support.iter().copied());
            if grow(g, pairs, idx + 1, chosen, used)? {
                return Ok(true);
            }
            chosen.pop();
            for v in support {
                used.remove(&v);
            }
        }
        Ok(false)
    }
    let mut chosen = Vec::new();
    let mut used = BTreeSet::new();
    grow(g, &disjoint_pairs, 0, &mut chosen, &mut used)
}

/// Contraction-counting certificate that a graph is not (2,p)-planar for any
/// p: contracting a pair removes at most max_short_path_count edges, and at
/// most floor(n/2) disjoint pairs exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub m: usize,
    /// largest number of length-<=2 paths between any vertex pair
    pub max_short_paths: usize,
    /// minimum number of contractions a planar graph of clusters would need;
    /// None when no finite number works (max_short_paths <= 3)
    pub required_pairs: Option<u64>,
    /// floor(n/2), the number of disjoint pairs available
    pub available_pairs: u64,
}

pub fn counting_certificate(g: &Graph) -> Option<Certificate> {
    let n = g.vertex_count();
    let m = g.simple_edge_count();
    let excess = m as i64 - 3 * n as i64 + 6;
    if excess <= 0 {
        return None;
    }
    let c = max_short_path_count(g);
    let available = (n / 2) as u64;
    if c <= 3 {
        return Some(Certificate {
            n,
            m,
            max_short_paths: c,
            required_pairs: None,
            available_pairs: available,
        });
    }
    let denom = (c - 3) as i64;
    let required = ((excess + denom - 1) / denom) as u64;
    if required > available {
        Some(Certificate {
            n,
            m,
            max_short_paths: c,
            required_pairs: Some(required),
            available_pairs: available,
        })
    } else {
        None
    }
}

/// Exhaustive Lemma-1 style report: every clustering of the reference block
/// into parts of size <= 2 is decided, and the accepted ones are exactly
/// internal perfect pairings.
#[derive(Debug)]
pub struct Lemma1Report {
    pub total_partitions: usize,
    pub orbit_count: usize,
    pub accepted_count: usize,
    pub rejected_by_graph_of_clusters: usize,
    pub all_accepted_pair_internally: bool,
    /// the 3-pairs + 2-singletons counting numbers: (m_inter, bound)
    pub eq2_example: (i64, i64),
}

pub fn lemma1_oracle() -> Lemma1Report {
    let analysis = k8m::k8m_analysis();
    let accepted = analysis.accepted();
    let goc = analysis
        .verdicts
        .iter()
        .filter(|v| **v == k8m::OrbitVerdict::RejectedGraphOfClusters)
        .count();
    // the three-pairs-two-singletons case of the counting argument:
    // 23 inter-cluster edges against a bound of 21
    let g = k8m::reference_k8m();
    let parts = vec![
        vec![VertexId(0)],
        vec![VertexId(1), VertexId(2)],
        vec![VertexId(3), VertexId(4)],
        vec![VertexId(5), VertexId(6)],
        vec![VertexId(7)],
    ];
    let c = Clustering::new(&g, parts).unwrap();
    let part_of = c.part_of();
    let m_inter = g
        .edges()
        .filter(|e| part_of[&e.u] != part_of[&e.v])
        .count() as i64;
    let bound = crate::density::inter_cluster_bound(14, 5, 2);
    Lemma1Report {
        total_partitions: analysis.partitions.len(),
        orbit_count: analysis.orbit_count,
        accepted_count: accepted.len(),
        rejected_by_graph_of_clusters: goc,
        all_accepted_pair_internally: analysis.lemma1_holds,
        eq2_example: (m_inter, bound),
    }
}

/// Convenience: verdict map of the reference-block analysis for reporting.
pub fn k8m_accepted_pairings() -> Vec<Vec<Vec<VertexId>>> {
    k8m::k8m_analysis().accepted().into_iter().cloned().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KpVerdict {
    Yes,
    No,
    Exhausted,
}

/// Exit-code friendly wrapper.
pub fn decide(g: &Graph, k: usize, p: usize, budget: u64) -> (KpVerdict, Option<(Clustering, KpConfiguration)>) {
    let opts = SearchOptions { budget, ..Default::default() };
    match search_kp_with(g, k, p, &opts) {
        Ok(Some(w)) => (KpVerdict::Yes, Some(w)),
        Ok(None) => (KpVerdict::No, None),
        Err(_) => (KpVerdict::Exhausted, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_special_cases() {
        assert!(test_k1(&Graph::complete(4), 2).unwrap());
        assert!(!test_k1(&Graph::complete(5), 3).unwrap());
        assert!(test_k1(&Graph::complete(5), 4).is_err());
        assert!(!test_k1(&k8m::reference_k8m(), 3).unwrap());
    }

    #[test]
    fn k5_is_ic_planar_k7_is_not() {
        assert!(test_41(&Graph::complete(5)).unwrap());
        assert!(test_41(&Graph::complete(4)).unwrap());
        assert!(!test_41(&Graph::complete(7)).unwrap());
    }

    #[test]
    fn triangle_is_3_1_planar_via_search() {
        let g = Graph::complete(3);
        let w = search_kp(&g, 3, 1).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn k5_not_k1_planar_for_small_k_via_search() {
        let g = Graph::complete(5);
        assert!(search_kp(&g, 1, 2).unwrap().is_none());
        assert!(search_kp(&g, 2, 1).unwrap().is_none());
    }

    #[test]
    fn certificate_on_planar_graph_is_none() {
        assert!(counting_certificate(&Graph::complete(4)).is_none());
    }

    #[test]
    fn certificate_on_k7_is_inconclusive() {
        // K7 is (2,2)-planar, so the certificate must not fire
        let cert = counting_certificate(&Graph::complete(7));
        assert!(cert.is_none());
    }
}

#[cfg(test)]
mod k8m_probe {
    use super::*;

    #[test]
    fn k8m_analysis_probe() {
        let t0 = std::time::Instant::now();
        let report = lemma1_oracle();
        println!(
            "k8m analysis: {:?}, orbits={}, accepted={}, goc_rejected={}, lemma1={}, eq2={:?}",
            t0.elapsed(),
            report.orbit_count,
            report.accepted_count,
            report.rejected_by_graph_of_clusters,
            report.all_accepted_pair_internally,
            report.eq2_example
        );
        assert_eq!(report.total_partitions, 764);
        assert!(report.all_accepted_pair_internally);
        assert!(report.accepted_count > 0);
        assert_eq!(report.eq2_example, (23, 21));
        let one_port = &k8m::k8m_analysis().one_port_witness;
        println!("one-port witness present: {}", one_port.is_some());
        assert!(one_port.is_some());
    }
}
