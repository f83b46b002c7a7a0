//! Edge-density bounds for (k,p)-planar graphs, skeleton construction, the
//! tight construction attaining the bound for p < k, and the normalization
//! sequence that removes singleton clusters and pads undersized ones.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::clustering::Clustering;
use crate::config::{KpConfiguration, PortRef};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::planarity::{is_planar, planar_embedding};
use crate::rotation::face_walks;

/// Exact value of the density bound n(p + 3/k + k/2 - 1/2) - 6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityBound {
    pub n: u64,
    pub k: u64,
    pub p: u64,
    /// exact rational value of the bound
    pub bound: Ratio<i64>,
    /// floor of the bound, the reportable integer
    pub max_edges: i64,
    /// true when n is too small for the skeleton Euler argument to apply
    pub vacuous: bool,
}

pub fn bound_value(n: u64, k: u64, p: u64) -> Ratio<i64> {
    let n = Ratio::from_integer(n as i64);
    let k = Ratio::from_integer(k as i64);
    let p = Ratio::from_integer(p as i64);
    let half = Ratio::new(1, 2);
    let three = Ratio::from_integer(3);
    let six = Ratio::from_integer(6);
    n * (p + three / k + k * half - half) - six
}

/// Maximum edge count of an n-vertex (k,p)-planar graph.
pub fn max_edges(n: u64, k: u64, p: u64) -> DensityBound {
    assert!(n >= 1 && k >= 1 && p >= 1);
    let bound = bound_value(n, k, p);
    // the skeleton argument needs at least 3 skeleton vertices
    let vacuous = n < 3 || n * p < 3;
    DensityBound { n, k, p, bound, max_edges: bound.floor().to_integer(), vacuous }
}

/// Inter-cluster edge bound n_S + 3N - 6 - s.
pub fn inter_cluster_bound(n_s: i64, big_n: i64, s: i64) -> i64 {
    n_s + 3 * big_n - 6 - s
}

/// Skeleton of a configuration: ports become vertices; each cluster region
/// becomes its boundary cycle with a fan triangulation (2p_i - 3 edges for
/// p_i >= 2, none for p_i <= 1); inter-cluster edges join assigned ports.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub graph: Graph,
    pub port_vertex: BTreeMap<PortRef, VertexId>,
    /// skeleton edges contributed by cluster boundaries + triangulation
    pub cluster_edges: usize,
    /// skeleton edges contributed by inter-cluster edges of g
    pub inter_edges: usize,
    /// g edge id -> skeleton edge id
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

fn build_skeleton(g: &Graph, cfg: &KpConfiguration, wheel: bool) -> Result<Skeleton> {
    cfg.validate(g)?;
    let mut sk = Graph::new();
    let mut port_vertex = BTreeMap::new();
    let mut next_v = 0u32;
    for boundary in &cfg.boundary {
        for &port in boundary {
            let v = VertexId(next_v);
            next_v += 1;
            sk.add_vertex(v);
            port_vertex.insert(port, v);
        }
    }
    let mut next_e = 0u32;
    let mut add = |sk: &mut Graph, a: VertexId, b: VertexId| -> Result<EdgeId> {
        let id = EdgeId(next_e);
        next_e += 1;
        sk.add_edge(id, a, b)?;
        Ok(id)
    };
    let mut cluster_edges = 0;
    for boundary in &cfg.boundary {
        let ports: Vec<VertexId> = boundary.iter().map(|p| port_vertex[p]).collect();
        let m = ports.len();
        if wheel {
            // boundary cycle plus an apex joined to all ports
            if m >= 3 {
                for i in 0..m {
                    add(&mut sk, ports[i], ports[(i + 1) % m])?;
                    cluster_edges += 1;
                }
            } else if m == 2 {
                add(&mut sk, ports[0], ports[1])?;
                cluster_edges += 1;
            }
            if m >= 2 {
                let apex = VertexId(next_v);
                next_v += 1;
                sk.add_vertex(apex);
                for &q in &ports {
                    add(&mut sk, apex, q)?;
                    cluster_edges += 1;
                }
            }
        } else {
            // boundary cycle plus fan triangulation: 2m - 3 edges
            if m >= 3 {
                for i in 0..m {
                    add(&mut sk, ports[i], ports[(i + 1) % m])?;
                }
                for i in 2..(m - 1) {
                    add(&mut sk, ports[0], ports[i])?;
                }
                cluster_edges += 2 * m - 3;
            } else if m == 2 {
                add(&mut sk, ports[0], ports[1])?;
                cluster_edges += 1;
            }
        }
    }
    let mut inter_edges = 0;
    let mut edge_map = BTreeMap::new();
    for eid in cfg.inter_cluster_edges(g) {
        let e = g.edge(eid).unwrap();
        let pu = cfg.assign[&(eid, e.u)];
        let pv = cfg.assign[&(eid, e.v)];
        let se = add(&mut sk, port_vertex[&pu], port_vertex[&pv])?;
        edge_map.insert(eid, se);
        inter_edges += 1;
    }
    Ok(Skeleton { graph: sk, port_vertex, cluster_edges, inter_edges, edge_map })
}

pub fn skeleton(g: &Graph, cfg: &KpConfiguration) -> Result<Skeleton> {
    build_skeleton(g, cfg, false)
}

/// Wheel-augmented variant used by the realizability checker: the fan
/// triangulation is replaced by an apex vertex joined to every port, which
/// pins the boundary order and keeps the region empty.
pub fn wheel_augmented_skeleton(g: &Graph, cfg: &KpConfiguration) -> Result<Skeleton> {
    build_skeleton(g, cfg, true)
}

/// Edge slots of a kp-connection. Slot t carries (small port index,
/// large port index); small indices run 0..=p, large 0..=p(k-1).
pub fn connection_slots(k: u64, p: u64) -> Vec<(u64, u64)> {
    let mut slots = Vec::new();
    for t in 0..(k * p) {
        let fan = t / k;
        let j = t % k;
        slots.push((fan, fan * (k - 1) + j));
    }
    slots.push((p, p * (k - 1)));
    slots
}

/// Two k-clusters joined by kp+1 edges: the small end uses p+1 consecutive
/// ports (k edges on each of the first p, one extra on the last), the large
/// end p(k-1)+1 consecutive ports of degree one or two.
pub struct KpConnection {
    pub graph: Graph,
    pub config: KpConfiguration,
    pub edge_count: usize,
    pub small_ports: usize,
    pub large_ports: usize,
    pub small_degrees: Vec<usize>,
}

/// Cluster-local port numbering used by the tight construction: port q of a
/// cluster belongs to member q mod k at index q / k.
fn port_of(cluster_base: u32, k: u64, q: u64) -> PortRef {
    PortRef::new(VertexId(cluster_base + (q % k) as u32), (q / k) as u8)
}

pub fn kp_connection(k: u64, p: u64) -> Result<KpConnection> {
    if p >= k {
        return Err(Error::infeasible(format!(
            "kp-connection needs kp+1 <= k^2, i.e. p < k (got k={k}, p={p})"
        )));
    }
    let kp = k * p;
    let mut g = Graph::with_vertices(2 * k as u32);
    // only the ports the connection touches are materialized; per vertex the
    // used cluster ports get contiguous indices in boundary order
    let small_used: Vec<u64> = (0..=p).collect();
    let mut large_used: Vec<u64> = (p..kp).collect();
    large_used.push(0);
    let rank_ports = |base: u32, used: &[u64]| -> BTreeMap<u64, PortRef> {
        let mut counts: BTreeMap<VertexId, u8> = BTreeMap::new();
        let mut map = BTreeMap::new();
        for &q in used {
            let v = VertexId(base + (q % k) as u32);
            let idx = counts.entry(v).or_insert(0);
            map.insert(q, PortRef::new(v, *idx));
            *idx += 1;
        }
        map
    };
    let small_map = rank_ports(0, &small_used);
    let large_map = rank_ports(k as u32, &large_used);
    let slots = connection_slots(k, p);
    let mut assign = BTreeMap::new();
    let mut small_degrees = vec![0usize; (p + 1) as usize];
    for &(sp, lp) in &slots {
        let small_port = small_map[&sp];
        let large_port = large_map[&((kp - lp) % kp)];
        let e = g.add_edge_auto(small_port.vertex, large_port.vertex)?;
        assign.insert((e, small_port.vertex), small_port);
        assign.insert((e, large_port.vertex), large_port);
        small_degrees[sp as usize] += 1;
    }
    let clustering = Clustering::new(
        &g,
        vec![
            (0..k as u32).map(VertexId).collect(),
            (k as u32..2 * k as u32).map(VertexId).collect(),
        ],
    )?;
    let mut ports = BTreeMap::new();
    for map in [&small_map, &large_map] {
        for port in map.values() {
            let e = ports.entry(port.vertex).or_insert(0u8);
            *e = (*e).max(port.index + 1);
        }
    }
    let small_boundary: Vec<PortRef> = small_used.iter().map(|q| small_map[q]).collect();
    let large_boundary: Vec<PortRef> = large_used.iter().map(|q| large_map[q]).collect();
    let config = KpConfiguration {
        clustering,
        p: p as usize,
        ports,
        boundary: vec![small_boundary, large_boundary],
        assign,
    };
    config.validate(&g)?;
    Ok(KpConnection {
        edge_count: g.edge_count(),
        small_ports: small_used.len(),
        large_ports: large_used.len(),
        small_degrees,
        graph: g,
        config,
    })
}

/// The tight construction: N clusters of k vertices (each a k-clique),
/// chained in a cycle of kp-connections, both degree-N faces fan-triangulated.
pub fn tight_construction(big_n: u64, k: u64, p: u64) -> Result<(Graph, KpConfiguration)> {
    if p >= k {
        return Err(Error::validation(format!("tight construction needs p < k (k={k}, p={p})")));
    }
    if big_n <= 2 {
        return Err(Error::validation(format!("tight construction needs N > 2 (N={big_n})")));
    }
    let kp = k * p;
    let n = big_n * k;
    let mut g = Graph::with_vertices(n as u32);
    let base = |j: u64| (j * k) as u32;
    // intra-cluster k-cliques
    for j in 0..big_n {
        for a in 0..k {
            for b in (a + 1)..k {
                g.add_edge_auto(VertexId(base(j) + a as u32), VertexId(base(j) + b as u32))?;
            }
        }
    }
    let mut assign = BTreeMap::new();
    let slots = connection_slots(k, p);
    // connection j: cluster j is the small end, cluster j+1 the large end
    for j in 0..big_n {
        let jn = (j + 1) % big_n;
        for &(sp, lp) in &slots {
            let small = port_of(base(j), k, sp);
            let large = port_of(base(jn), k, (kp - lp) % kp);
            let e = g.add_edge_auto(small.vertex, large.vertex)?;
            assign.insert((e, small.vertex), small);
            assign.insert((e, large.vertex), large);
        }
    }
    // fan-triangulate the two degree-N faces: one passes every cluster's
    // port 0, the other every cluster's port p
    for q in [0u64, p] {
        for j in 2..(big_n - 1) {
            let a = port_of(base(0), k, q);
            let b = port_of(base(j), k, q);
            let e = g.add_edge_auto(a.vertex, b.vertex)?;
            assign.insert((e, a.vertex), a);
            assign.insert((e, b.vertex), b);
        }
    }
    let clustering = Clustering::new(
        &g,
        (0..big_n)
            .map(|j| (0..k).map(|i| VertexId(base(j) + i as u32)).collect())
            .collect(),
    )?;
    let mut ports = BTreeMap::new();
    for v in g.vertices() {
        ports.insert(v, p as u8);
    }
    let boundary = (0..big_n)
        .map(|j| (0..kp).map(|q| port_of(base(j), k, q)).collect())
        .collect();
    let cfg = KpConfiguration { clustering, p: p as usize, ports, boundary, assign };
    cfg.validate(&g)?;
    Ok((g, cfg))
}

/// One step of the normalization sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeStep {
    /// Added inter-cluster edges until every skeleton face is a triangle.
    Triangulate { added: usize },
    /// Removed a singleton cluster and re-triangulated the hole.
    RemoveSingleton { vertex: VertexId, edge_delta: i64 },
    /// Padded an undersized cluster with dummies.
    Pad { cluster: usize, added_vertices: usize, edge_delta: i64 },
}

#[derive(Debug, Clone)]
pub struct Normalized {
    pub graph: Graph,
    pub config: KpConfiguration,
    pub steps: Vec<NormalizeStep>,
    pub k: usize,
}

/// Fan-triangulates every non-triangle skeleton face with new inter-cluster
/// edges attached at existing ports. Returns the number of edges added.
fn triangulate_all_faces(g: &mut Graph, cfg: &mut KpConfiguration) -> Result<usize> {
    let mut added = 0;
    loop {
        let sk = skeleton(g, cfg)?;
        if !is_planar(&sk.graph) {
            return Err(Error::NotPlanar);
        }
        let rot = planar_embedding(&sk.graph)?;
        let owner: BTreeMap<VertexId, PortRef> =
            sk.port_vertex.iter().map(|(&p, &v)| (v, p)).collect();
        let part_of = cfg.clustering.part_of();
        let faces = face_walks(&sk.graph, &rot);
        let mut did = false;
        for face in faces {
            if face.len() <= 3 {
                continue;
            }
            // corner sequence of the walk
            let corners: Vec<VertexId> = face
                .iter()
                .map(|&(e, tail)| sk.graph.edge(e).unwrap().other(tail))
                .collect();
            let l = corners.len();
            let mut chord = None;
            'outer: for i in 0..l {
                for d in 2..(l - 1) {
                    let j = (i + d) % l;
                    let (a, b) = (corners[i], corners[j]);
                    if a == b {
                        continue;
                    }
                    let (pa, pb) = (owner[&a], owner[&b]);
                    if part_of[&pa.vertex] == part_of[&pb.vertex] {
                        continue;
                    }
                    chord = Some((pa, pb));
                    break 'outer;
                }
            }
            let (pa, pb) = chord.ok_or_else(|| {
                Error::validation("face admits no inter-cluster chord during triangulation")
            })?;
            let e = g.add_edge_auto(pa.vertex, pb.vertex)?;
            cfg.assign.insert((e, pa.vertex), pa);
            cfg.assign.insert((e, pb.vertex), pb);
            added += 1;
            did = true;
            break; // re-embed and continue
        }
        if !did {
            return Ok(added);
        }
    }
}

/// Removes cluster `idx` (a singleton) and re-triangulates.
fn remove_singleton(g: &mut Graph, cfg: &mut KpConfiguration, idx: usize) -> Result<i64> {
    let v = cfg.clustering.parts()[idx][0];
    let before = g.edge_count() as i64;
    g.remove_vertex(v);
    let parts: Vec<Vec<VertexId>> = cfg
        .clustering
        .parts()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(_, p)| p.clone())
        .collect();
    cfg.clustering = Clustering::new(g, parts)?;
    cfg.ports.remove(&v);
    cfg.boundary.remove(idx);
    cfg.assign.retain(|&(e, _), _| g.edge(e).is_some());
    let added = triangulate_all_faces(g, cfg)?;
    let _ = added;
    Ok(g.edge_count() as i64 - before)
}

/// Pads cluster `idx` with dummies up to size k.
fn pad_cluster(g: &mut Graph, cfg: &mut KpConfiguration, idx: usize, k: usize) -> Result<(usize, i64)> {
    let before = g.edge_count() as i64;
    let members = cfg.clustering.parts()[idx].clone();
    let h = k - members.len();
    let p = cfg.p;
    // insertion gap: two consecutive boundary ports of different owners whose
    // outer face offers a foreign fan target
    let sk = skeleton(g, cfg)?;
    let rot = planar_embedding(&sk.graph)?;
    let faces = face_walks(&sk.graph, &rot);
    let owner: BTreeMap<VertexId, PortRef> = sk.port_vertex.iter().map(|(&q, &v)| (v, q)).collect();
    let part_of = cfg.clustering.part_of();
    let boundary = cfg.boundary[idx].clone();
    let m = boundary.len();
    if m < 2 {
        return Err(Error::validation("padding needs a cluster with at least 2 ports"));
    }
    let mut choice = None;
    'gap: for t in 0..m {
        let (a, b) = (boundary[t], boundary[(t + 1) % m]);
        if a.vertex == b.vertex {
            continue;
        }
        let (va, vb) = (sk.port_vertex[&a], sk.port_vertex[&b]);
        // find the triangle face using edge (va, vb) outside the region
        for face in &faces {
            if face.len() != 3 {
                continue;
            }
            let verts: Vec<VertexId> = face
                .iter()
                .map(|&(e, tail)| sk.graph.edge(e).unwrap().other(tail))
                .collect();
            if !(verts.contains(&va) && verts.contains(&vb)) {
                continue;
            }
            let w = verts.into_iter().find(|&x| x != va && x != vb);
            let Some(w) = w else { continue };
            let wp = owner[&w];
            if part_of[&wp.vertex] != part_of[&members[0]] {
                choice = Some((t, wp));
                break 'gap;
            }
        }
    }
    let (t, target) = choice
        .ok_or_else(|| Error::validation("no insertion gap with a foreign fan target"))?;
    // keep boundaries keyed by part identity across the canonical re-sort
    let mut bmap: BTreeMap<Vec<VertexId>, Vec<PortRef>> = cfg
        .clustering
        .parts()
        .iter()
        .cloned()
        .zip(cfg.boundary.iter().cloned())
        .collect();
    // dummy vertices: clique join with existing members and each other
    let mut dummies = Vec::new();
    for _ in 0..h {
        let d = g.fresh_vertex();
        dummies.push(d);
        cfg.ports.insert(d, p as u8);
    }
    for (i, &d) in dummies.iter().enumerate() {
        for &u in &members {
            g.add_edge_auto(d, u)?;
        }
        for &d2 in &dummies[(i + 1)..] {
            g.add_edge_auto(d, d2)?;
        }
    }
    // splice the new ports into the boundary just after gap position t
    let mut new_ports = Vec::new();
    for &d in &dummies {
        for i in 0..p {
            new_ports.push(PortRef::new(d, i as u8));
        }
    }
    let mut spliced = boundary.clone();
    let at = (t + 1) % m;
    for (off, &np) in new_ports.iter().enumerate() {
        spliced.insert((at + off).min(spliced.len()), np);
    }
    let mut grown = members.clone();
    grown.extend(dummies.iter().copied());
    grown.sort();
    bmap.remove(&members);
    bmap.insert(grown.clone(), spliced);
    let mut parts: Vec<Vec<VertexId>> = bmap.keys().cloned().collect();
    parts.sort();
    cfg.clustering = Clustering::new(g, parts)?;
    cfg.boundary = cfg.clustering.parts().iter().map(|part| bmap[part].clone()).collect();
    // fan every new port to the foreign corner
    for &np in &new_ports {
        let e = g.add_edge_auto(np.vertex, target.vertex)?;
        cfg.assign.insert((e, np.vertex), np);
        cfg.assign.insert((e, target.vertex), target);
    }
    let sk = skeleton(g, cfg)?;
    if !is_planar(&sk.graph) {
        return Err(Error::NotPlanar);
    }
    Ok((h, g.edge_count() as i64 - before))
}

/// Normalizes a configuration so every cluster has exactly `k` vertices:
/// first triangulates all skeleton faces, then removes singleton clusters
/// (edge delta exactly -3 each) and pads undersized clusters (edge delta
/// exactly p*h + h*k - h^2/2 - h/2). Skeleton planarity is preserved and
/// re-checked at every step.
pub fn normalize(g: &Graph, cfg: &KpConfiguration, k: usize) -> Result<Normalized> {
    cfg.validate(g)?;
    let sk = skeleton(g, cfg)?;
    if !is_planar(&sk.graph) {
        return Err(Error::NotPlanar);
    }
    let mut g = g.clone();
    let mut cfg = cfg.clone();
    let mut steps = Vec::new();
    let added = triangulate_all_faces(&mut g, &mut cfg)?;
    steps.push(NormalizeStep::Triangulate { added });
    loop {
        let sizes: Vec<usize> = cfg.clustering.parts().iter().map(|p| p.len()).collect();
        if let Some(idx) = sizes.iter().position(|&s| s == 1) {
            let v = cfg.clustering.parts()[idx][0];
            let delta = remove_singleton(&mut g, &mut cfg, idx)?;
            steps.push(NormalizeStep::RemoveSingleton { vertex: v, edge_delta: delta });
            continue;
        }
        if let Some(idx) = sizes.iter().position(|&s| s > 1 && s < k) {
            let (h, delta) = pad_cluster(&mut g, &mut cfg, idx, k)?;
            steps.push(NormalizeStep::Pad { cluster: idx, added_vertices: h, edge_delta: delta });
            continue;
        }
        break;
    }
    let sk = skeleton(&g, &cfg)?;
    if !is_planar(&sk.graph) {
        return Err(Error::NotPlanar);
    }
    Ok(Normalized { graph: g, config: cfg, steps, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::euler_reject_counts;
    use crate::rotation::euler_check;

    #[test]
    fn bound_matches_known_values() {
        assert_eq!(max_edges(12, 2, 2).max_edges, 42); // 4n-6
        assert_eq!(max_edges(15, 5, 3).max_edges, 78);
        let tiny = max_edges(1, 2, 2);
        assert_eq!(tiny.max_edges, -2);
        assert!(tiny.vacuous);
    }

    #[test]
    fn inter_cluster_bound_values() {
        assert_eq!(inter_cluster_bound(14, 5, 2), 21);
        assert_eq!(inter_cluster_bound(3, 3, 3), 3); // 3N-6 shape for all singletons
        assert_eq!(inter_cluster_bound(75, 5, 0), 84); // (kp+3)N-6 for k=5,p=3,N=5
    }

    #[test]
    fn singleton_one_port_skeleton_mirrors_graph() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let cfg = KpConfiguration::trivial(&g, 1);
        let sk = skeleton(&g, &cfg).unwrap();
        assert_eq!(sk.graph.vertex_count(), 4);
        assert_eq!(sk.graph.edge_count(), 4);
        assert_eq!(sk.cluster_edges, 0);
        assert_eq!(sk.inter_edges, 4);
    }

    #[test]
    fn connection_5_3_matches_figure_counts() {
        let c = kp_connection(5, 3).unwrap();
        assert_eq!(c.edge_count, 16);
        assert_eq!(c.small_ports, 4);
        assert_eq!(c.small_degrees, vec![5, 5, 5, 1]);
        assert_eq!(c.large_ports, 13);
        // connection is simple
        assert_eq!(c.graph.simple_edge_count(), 16);
        // and realizable: the skeleton of the fragment is planar
        let sk = skeleton(&c.graph, &c.config).unwrap();
        assert!(is_planar(&sk.graph));
    }

    #[test]
    fn connection_2_1_and_infeasible() {
        let c = kp_connection(2, 1).unwrap();
        assert_eq!(c.edge_count, 3);
        assert_eq!(c.small_ports, 2);
        assert_eq!(c.small_degrees, vec![2, 1]);
        assert_eq!(c.large_ports, 2);
        assert!(kp_connection(1, 1).is_err());
    }

    #[test]
    fn tight_construction_counts_and_planarity() {
        let (g, cfg) = tight_construction(5, 5, 3).unwrap();
        let inter = cfg.inter_cluster_edges(&g).len();
        assert_eq!(inter, 84); // (kp+3)N-6
        let sk = skeleton(&g, &cfg).unwrap();
        assert!(is_planar(&sk.graph), "skeleton of tight construction must be planar");
        // eq. (1): m_S = m_inter + sum(2p_i - 3) + s, all clusters kp ports, s = 0
        let expect = inter + 5 * (2 * 15 - 3);
        assert_eq!(sk.graph.edge_count(), expect);
        assert!(!euler_reject_counts(sk.graph.simple_edge_count(), sk.graph.vertex_count()));
        // total edge count attains the bound exactly
        assert_eq!(g.edge_count() as i64, max_edges(25, 5, 3).max_edges);
    }

    #[test]
    fn tight_construction_smallest_case() {
        let (g, cfg) = tight_construction(3, 2, 1).unwrap();
        assert_eq!(cfg.inter_cluster_edges(&g).len(), 9); // (2+3)*3-6
        assert_eq!(g.edge_count(), 12);
        assert_eq!(max_edges(6, 2, 1).max_edges, 12);
        let sk = skeleton(&g, &cfg).unwrap();
        assert!(is_planar(&sk.graph));
        assert!(tight_construction(2, 2, 1).is_err());
    }

    #[test]
    fn tight_skeleton_embeds_with_euler() {
        let (g, cfg) = tight_construction(5, 5, 3).unwrap();
        let sk = skeleton(&g, &cfg).unwrap();
        let rot = planar_embedding(&sk.graph).unwrap();
        euler_check(&sk.graph, &rot).unwrap();
    }

    #[test]
    fn normalize_identity_when_all_full() {
        let (g, cfg) = tight_construction(3, 2, 1).unwrap();
        let norm = normalize(&g, &cfg, 2).unwrap();
        // already triangulated and all clusters full: only the (empty)
        // triangulation step is recorded
        assert_eq!(norm.graph.edge_count(), g.edge_count());
        assert_eq!(norm.steps.len(), 1);
    }

    /// Deleting one vertex from a cluster of the tight construction and
    /// normalizing exercises both the singleton-removal and padding paths.
    #[test]
    fn normalize_deltas_exact() {
        // k=3, p=1: drop one vertex from a 3-cluster -> padding with h=1:
        // delta must be p*h + h*k - h^2/2 - h/2 = 1 + 3 - 1 = +3
        let (mut g, mut cfg) = tight_construction(4, 3, 1).unwrap();
        let victim = cfg.clustering.parts()[0][2];
        remove_vertex_from_config(&mut g, &mut cfg, victim);
        cfg.validate(&g).unwrap();
        let norm = normalize(&g, &cfg, 3).unwrap();
        let pad = norm
            .steps
            .iter()
            .find_map(|s| match s {
                NormalizeStep::Pad { edge_delta, added_vertices, .. } => {
                    Some((*edge_delta, *added_vertices))
                }
                _ => None,
            })
            .expect("padding step present");
        assert_eq!(pad, (3, 1));
        assert!(norm.config.clustering.parts().iter().all(|p| p.len() == 3));
    }

    #[test]
    fn normalize_singleton_removal_is_minus_three() {
        // shrink one cluster of a (k=2,p=1) tight construction to a singleton
        let (mut g, mut cfg) = tight_construction(4, 2, 1).unwrap();
        let victim = cfg.clustering.parts()[0][1];
        remove_vertex_from_config(&mut g, &mut cfg, victim);
        cfg.validate(&g).unwrap();
        let before_triangulated = {
            let mut g2 = g.clone();
            let mut cfg2 = cfg.clone();
            triangulate_all_faces(&mut g2, &mut cfg2).unwrap();
            g2.edge_count() as i64
        };
        let norm = normalize(&g, &cfg, 2).unwrap();
        let removal = norm
            .steps
            .iter()
            .find_map(|s| match s {
                NormalizeStep::RemoveSingleton { edge_delta, .. } => Some(*edge_delta),
                _ => None,
            })
            .expect("removal step present");
        assert_eq!(removal, -3);
        assert_eq!(norm.graph.edge_count() as i64, before_triangulated - 3);
    }

    /// Test helper: delete a vertex and scrub it from the configuration.
    pub(super) fn remove_vertex_from_config(
        g: &mut Graph,
        cfg: &mut KpConfiguration,
        victim: crate::graph::VertexId,
    ) {
        g.remove_vertex(victim);
        let parts: Vec<Vec<crate::graph::VertexId>> = cfg
            .clustering
            .parts()
            .iter()
            .filter_map(|part| {
                let p: Vec<_> = part.iter().copied().filter(|&v| v != victim).collect();
                if p.is_empty() {
                    None
                } else {
                    Some(p)
                }
            })
            .collect();
        let old_parts: Vec<Vec<crate::graph::VertexId>> = cfg.clustering.parts().to_vec();
        let boundaries: Vec<Vec<PortRef>> = cfg.boundary.clone();
        cfg.clustering = Clustering::new(g, parts).unwrap();
        cfg.ports.remove(&victim);
        cfg.assign.retain(|&(e, _), _| g.edge(e).is_some());
        // rebuild boundaries in new part order, dropping the victim's ports
        cfg.boundary = cfg
            .clustering
            .parts()
            .iter()
            .map(|part| {
                let old_idx = old_parts
                    .iter()
                    .position(|op| {
                        let trimmed: Vec<_> =
                            op.iter().copied().filter(|&v| v != victim).collect();
                        trimmed == *part
                    })
                    .unwrap();
                boundaries[old_idx]
                    .iter()
                    .copied()
                    .filter(|pr| pr.vertex != victim)
                    .collect()
            })
            .collect();
    }
}

#[cfg(test)]
mod range_probe {
    use super::*;

    #[test]
    fn tightness_over_full_range() {
        for k in 2u64..=5 {
            for p in 1..k {
                for n in 3u64..=6 {
                    let (g, cfg) = tight_construction(n, k, p).unwrap();
                    let inter = cfg.inter_cluster_edges(&g).len() as i64;
                    assert_eq!(inter, ((k * p + 3) * n) as i64 - 6, "inter k={k} p={p} N={n}");
                    assert_eq!(
                        g.edge_count() as i64,
                        max_edges(n * k, k, p).max_edges,
                        "total k={k} p={p} N={n}"
                    );
                    assert_eq!(g.simple_edge_count(), g.edge_count(), "simple k={k} p={p} N={n}");
                    let sk = skeleton(&g, &cfg).unwrap();
                    assert!(is_planar(&sk.graph), "planar k={k} p={p} N={n}");
                }
            }
        }
    }
}
