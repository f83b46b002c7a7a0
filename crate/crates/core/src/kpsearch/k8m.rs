//! The K8-minus-two-adjacent-edges building block: exhaustive clustering
//! analysis of the reference copy (computed once and cached), detection of
//! pendant copies hanging off a cut vertex, and composition of their cached
//! representations into full witnesses.
//!
//! Every vertex of such a block must be paired inside the block in any
//! (2,2)-planar representation (verified exhaustively, not assumed), so a
//! pendant block can be cut off a (2,2) search: the cut vertex is pinned
//! singleton in the residual graph and the block re-attached to the witness
//! afterwards through a cached representation in which the cut vertex uses a
//! single port.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use crate::clustering::{graph_of_clusters, Clustering};
use crate::config::{KpConfiguration, PortRef};
use crate::density::wheel_augmented_skeleton;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::planarity::is_planar;

use super::fixed::{check_fixed_clustering_with, BudgetCounter, SearchOptions};
use super::iso::{automorphisms, orbit_key};
use super::partitions::bounded_partitions;

/// K8 minus the two adjacent edges (0,6) and (0,7); vertex 0 has degree 5.
pub fn reference_k8m() -> Graph {
    let mut g = Graph::complete(8);
    let skip: Vec<EdgeId> = g
        .edges()
        .filter(|e| {
            let pair = (e.u.0.min(e.v.0), e.u.0.max(e.v.0));
            pair == (0, 6) || pair == (0, 7)
        })
        .map(|e| e.id)
        .collect();
    for id in skip {
        g.remove_edge(id);
    }
    g
}

/// Verdict of one clustering orbit of the reference block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitVerdict {
    Accepted,
    RejectedGraphOfClusters,
    RejectedSearch,
}

#[derive(Debug)]
pub struct K8mAnalysis {
    /// all 764 partitions of the 8 vertices into parts of size <= 2
    pub partitions: Vec<Vec<Vec<VertexId>>>,
    /// verdict per partition (index-aligned)
    pub verdicts: Vec<OrbitVerdict>,
    /// number of distinct orbits the search actually decided
    pub orbit_count: usize,
    /// true iff every accepted partition pairs all 8 vertices internally
    pub lemma1_holds: bool,
    /// an accepted perfect pairing whose degree-5 vertex uses one port
    pub one_port_witness: Option<(Vec<Vec<VertexId>>, KpConfiguration)>,
}

impl K8mAnalysis {
    pub fn accepted(&self) -> Vec<&Vec<Vec<VertexId>>> {
        self.partitions
            .iter()
            .zip(&self.verdicts)
            .filter(|(_, v)| **v == OrbitVerdict::Accepted)
            .map(|(p, _)| p)
            .collect()
    }
}

static ANALYSIS: OnceLock<K8mAnalysis> = OnceLock::new();

pub fn k8m_analysis() -> &'static K8mAnalysis {
    ANALYSIS.get_or_init(compute_analysis)
}

fn compute_analysis() -> K8mAnalysis {
    let g = reference_k8m();
    let verts: Vec<VertexId> = g.vertices().collect();
    let partitions = bounded_partitions(&verts, 2, &BTreeSet::new());
    let perms = automorphisms(&g, 100_000);
    let mut orbit_of: BTreeMap<Vec<Vec<VertexId>>, Vec<usize>> = BTreeMap::new();
    for (i, parts) in partitions.iter().enumerate() {
        orbit_of.entry(orbit_key(parts, &verts, &perms)).or_default().push(i);
    }
    let mut verdicts = vec![OrbitVerdict::RejectedSearch; partitions.len()];
    let orbit_count = orbit_of.len();
    for members in orbit_of.values() {
        let rep = &partitions[members[0]];
        let c = Clustering::new(&g, rep.clone()).unwrap();
        let gc = graph_of_clusters(&g, &c).unwrap();
        let verdict = if !is_planar(&gc) {
            OrbitVerdict::RejectedGraphOfClusters
        } else {
            let opts = SearchOptions::default();
            let mut budget = BudgetCounter::new(opts.budget);
            match check_fixed_clustering_with(&g, &c, 2, &opts, &mut budget) {
                Ok(Some(_)) => OrbitVerdict::Accepted,
                Ok(None) => OrbitVerdict::RejectedSearch,
                Err(e) => panic!("reference block analysis exhausted its budget: {e}"),
            }
        };
        for &i in members {
            verdicts[i] = verdict.clone();
        }
    }
    let lemma1_holds = partitions
        .iter()
        .zip(&verdicts)
        .filter(|(_, v)| **v == OrbitVerdict::Accepted)
        .all(|(parts, _)| parts.len() == 4 && parts.iter().all(|p| p.len() == 2));
    // a pairing where vertex 0 keeps a single port, needed for composition
    let mut one_port_witness = None;
    for (parts, verdict) in partitions.iter().zip(&verdicts) {
        if *verdict != OrbitVerdict::Accepted {
            continue;
        }
        let c = Clustering::new(&g, parts.clone()).unwrap();
        let mut opts = SearchOptions::default();
        opts.port_caps.insert(VertexId(0), 1);
        let mut budget = BudgetCounter::new(opts.budget);
        if let Ok(Some(cfg)) = check_fixed_clustering_with(&g, &c, 2, &opts, &mut budget) {
            one_port_witness = Some((parts.clone(), cfg));
            break;
        }
    }
    K8mAnalysis { partitions, verdicts, orbit_count, lemma1_holds, one_port_witness }
}

/// A pendant block: a K8-minus copy whose only contact with the rest of the
/// graph is its degree-5 vertex.
#[derive(Debug, Clone)]
pub struct PendantBlock {
    pub cut: VertexId,
    pub others: Vec<VertexId>,
}

impl PendantBlock {
    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        let mut s: BTreeSet<VertexId> = self.others.iter().copied().collect();
        s.insert(self.cut);
        s
    }
}

pub fn detect_pendant_blocks(g: &Graph) -> Vec<PendantBlock> {
    let mut blocks: Vec<PendantBlock> = Vec::new();
    let mut taken: BTreeSet<VertexId> = BTreeSet::new();
    for v in g.vertices() {
        if g.degree(v) < 5 {
            continue;
        }
        let mut rest = g.clone();
        rest.remove_vertex(v);
        for comp in rest.components() {
            if comp.len() != 7 {
                continue;
            }
            let mut set: BTreeSet<VertexId> = comp.iter().copied().collect();
            set.insert(v);
            let ind = g.induced(&set);
            if ind.simple_edge_count() != 26 || ind.edge_count() != 26 {
                continue;
            }
            if ind.degree(v) != 5 {
                continue;
            }
            // the two missing pairs must both touch v
            let mut missing = Vec::new();
            let vs: Vec<VertexId> = set.iter().copied().collect();
            for i in 0..8 {
                for j in (i + 1)..8 {
                    if !ind.adjacent(vs[i], vs[j]) {
                        missing.push((vs[i], vs[j]));
                    }
                }
            }
            if missing.len() != 2 || !missing.iter().all(|&(a, b)| a == v || b == v) {
                continue;
            }
            if set.iter().any(|w| taken.contains(w) && *w != v) {
                continue;
            }
            for w in &comp {
                taken.insert(*w);
            }
            blocks.push(PendantBlock { cut: v, others: comp.clone() });
        }
    }
    blocks
}

/// Maps reference labels to block vertices: 0 -> cut, {6,7} -> the cut's two
/// non-neighbors inside the block, 1..5 -> the rest. Any choice is valid
/// because the reference block's automorphisms act fully on both classes.
fn block_iso(g: &Graph, b: &PendantBlock) -> BTreeMap<u32, VertexId> {
    let set = b.vertex_set();
    let ind = g.induced(&set);
    let nonneighbors: Vec<VertexId> = b
        .others
        .iter()
        .copied()
        .filter(|&w| !ind.adjacent(b.cut, w))
        .collect();
    let neighbors: Vec<VertexId> =
        b.others.iter().copied().filter(|&w| ind.adjacent(b.cut, w)).collect();
    let mut map = BTreeMap::new();
    map.insert(0u32, b.cut);
    for (i, &w) in neighbors.iter().enumerate() {
        map.insert(1 + i as u32, w);
    }
    map.insert(6, nonneighbors[0]);
    map.insert(7, nonneighbors[1]);
    map
}

fn find_edge(g: &Graph, a: VertexId, b: VertexId) -> Result<EdgeId> {
    g.edges()
        .find(|e| (e.u == a && e.v == b) || (e.u == b && e.v == a))
        .map(|e| e.id)
        .ok_or_else(|| Error::validation(format!("no edge between {a} and {b}")))
}

/// Attaches the cached block representations to a core witness. The cut
/// vertex's single block port is fused into one of its core ports; both the
/// fusion port and the orientation of the spliced boundary walk are chosen
/// by re-checking the composed wheel-augmented skeleton.
pub fn compose_block_witnesses(
    g: &Graph,
    core: &Graph,
    core_cfg: &KpConfiguration,
    blocks: &[PendantBlock],
) -> Result<KpConfiguration> {
    let analysis = k8m_analysis();
    let (ref_pairing, ref_cfg) = analysis
        .one_port_witness
        .as_ref()
        .ok_or_else(|| Error::infeasible("no one-port block representation available"))?;
    let mut cfg = core_cfg.clone();
    let mut covered: BTreeSet<VertexId> = core.vertices().collect();
    for block in blocks {
        covered.extend(block.others.iter().copied());
        let partial = g.induced(&covered);
        let iso = block_iso(g, block);
        cfg = attach_one_block(&partial, &cfg, block, ref_pairing, ref_cfg, &iso)?;
    }
    cfg.validate(g)?;
    let wheel = wheel_augmented_skeleton(g, &cfg)?;
    if !is_planar(&wheel.graph) {
        return Err(Error::infeasible("block composition failed the skeleton check"));
    }
    Ok(cfg)
}

fn attach_one_block(
    g: &Graph,
    cfg: &KpConfiguration,
    block: &PendantBlock,
    ref_pairing: &[Vec<VertexId>],
    ref_cfg: &KpConfiguration,
    iso: &BTreeMap<u32, VertexId>,
) -> Result<KpConfiguration> {
    let map = |v: VertexId| iso[&v.0];
    let cut = block.cut;
    // relabeled block parts; the pair containing reference vertex 0 hosts cut
    let block_parts: Vec<Vec<VertexId>> = ref_pairing
        .iter()
        .map(|part| {
            let mut q: Vec<VertexId> = part.iter().map(|&v| map(v)).collect();
            q.sort();
            q
        })
        .collect();
    let cut_pair = block_parts.iter().find(|p| p.contains(&cut)).unwrap().clone();
    // boundaries keyed by part content; the cut's singleton part dissolves
    let mut bmap: BTreeMap<Vec<VertexId>, Vec<PortRef>> = cfg
        .clustering
        .parts()
        .iter()
        .cloned()
        .zip(cfg.boundary.iter().cloned())
        .collect();
    let core_cut_boundary = bmap
        .remove(&vec![cut])
        .ok_or_else(|| Error::validation("cut vertex not singleton in core witness"))?;
    // translate boundaries, ports and assignments of the reference block
    let mut translated_boundaries: Vec<(Vec<VertexId>, Vec<PortRef>)> = Vec::new();
    for (i, part) in ref_cfg.clustering.parts().iter().enumerate() {
        let mut mapped: Vec<VertexId> = part.iter().map(|&v| map(v)).collect();
        mapped.sort();
        let b: Vec<PortRef> = ref_cfg.boundary[i]
            .iter()
            .map(|pr| PortRef::new(map(pr.vertex), pr.index))
            .collect();
        translated_boundaries.push((mapped, b));
    }
    let mut block_ports: Vec<(VertexId, u8)> = Vec::new();
    for (&v, &count) in &ref_cfg.ports {
        if v != VertexId(0) {
            block_ports.push((map(v), count));
        }
    }
    // cut entries are flagged so the fusion port can be substituted later
    let mut block_assign: Vec<((EdgeId, VertexId), PortRef, bool)> = Vec::new();
    for (&(e, v), &pr) in &ref_cfg.assign {
        let (ru, rv) = reference_endpoints(e);
        let ge = find_edge(g, map(ru), map(rv))?;
        let gv = map(v);
        let gpr = PortRef::new(map(pr.vertex), pr.index);
        block_assign.push(((ge, gv), gpr, gpr.vertex == cut));
    }
    let core_count = cfg.port_count(cut);
    let cut_pair_boundary = translated_boundaries
        .iter()
        .find(|(part, _)| *part == cut_pair)
        .map(|(_, b)| b.clone())
        .unwrap();
    let fusions: Vec<u8> =
        if core_count == 0 { vec![0] } else { (0..core_count as u8).collect() };
    for &fusion in &fusions {
        for reversed in [false, true] {
            let mut bmap2 = bmap.clone();
            let mut ports2 = cfg.ports.clone();
            let mut assign2 = cfg.assign.clone();
            if core_count == 0 {
                ports2.insert(cut, 1);
            }
            for &(v, count) in &block_ports {
                ports2.insert(v, count);
            }
            let fused = PortRef::new(cut, fusion);
            for &(key, pr, at_cut) in &block_assign {
                assign2.insert(key, if at_cut { fused } else { pr });
            }
            // rotate the block walk to start just past the cut's block port
            let pos = cut_pair_boundary
                .iter()
                .position(|pr| pr.vertex == cut)
                .expect("cut port present in block boundary");
            let mut walk: Vec<PortRef> = cut_pair_boundary[pos + 1..]
                .iter()
                .chain(cut_pair_boundary[..pos].iter())
                .copied()
                .collect();
            if reversed {
                walk.reverse();
            }
            // merged cluster {cut, mate}: core blob boundary with the block
            // walk spliced in right after the fusion port
            let merged: Vec<PortRef> = if core_count == 0 {
                let mut m = vec![fused];
                m.extend(walk.iter().copied());
                m
            } else {
                let mut m = Vec::new();
                for &pr in &core_cut_boundary {
                    m.push(pr);
                    if pr.index == fusion {
                        m.extend(walk.iter().copied());
                    }
                }
                m
            };
            bmap2.insert(cut_pair.clone(), merged);
            for (part, b) in &translated_boundaries {
                if *part != cut_pair {
                    bmap2.insert(part.clone(), b.clone());
                }
            }
            let parts: Vec<Vec<VertexId>> = bmap2.keys().cloned().collect();
            let clustering = Clustering::new(g, parts)?;
            let boundary = clustering.parts().iter().map(|p| bmap2[p].clone()).collect();
            let candidate = KpConfiguration {
                clustering,
                p: cfg.p,
                ports: ports2,
                boundary,
                assign: assign2,
            };
            if candidate.validate(g).is_err() {
                continue;
            }
            let wheel = wheel_augmented_skeleton(g, &candidate)?;
            if is_planar(&wheel.graph) {
                return Ok(candidate);
            }
        }
    }
    Err(Error::infeasible("no fusion variant produced a planar composed skeleton"))
}

/// Endpoints of a reference-block edge id (the reference graph is built once
/// with deterministic ids).
fn reference_endpoints(e: EdgeId) -> (VertexId, VertexId) {
    static REF: OnceLock<BTreeMap<EdgeId, (VertexId, VertexId)>> = OnceLock::new();
    let map = REF.get_or_init(|| {
        reference_k8m().edges().map(|ed| (ed.id, (ed.u, ed.v))).collect()
    });
    map[&e]
}
