//! Canonical enumeration of set partitions with bounded part size.

use std::collections::BTreeSet;

use crate::graph::VertexId;

/// All partitions of `items` into parts of size at most `k`, in restricted
/// growth order. Items in `forced` are pinned to singleton parts.
pub fn bounded_partitions(
    items: &[VertexId],
    k: usize,
    forced: &BTreeSet<VertexId>,
) -> Vec<Vec<Vec<VertexId>>> {
    let mut sorted = items.to_vec();
    sorted.sort();
    let mut out = Vec::new();
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    recurse(&sorted, 0, k, forced, &mut groups, &mut out);
    out
}

fn recurse(
    items: &[VertexId],
    i: usize,
    k: usize,
    forced: &BTreeSet<VertexId>,
    groups: &mut Vec<Vec<VertexId>>,
    out: &mut Vec<Vec<Vec<VertexId>>>,
) {
    if i == items.len() {
        out.push(groups.clone());
        return;
    }
    let v = items[i];
    if !forced.contains(&v) {
        for gi in 0..groups.len() {
            if groups[gi].len() >= k || forced.contains(&groups[gi][0]) {
                continue;
            }
            groups[gi].push(v);
            recurse(items, i + 1, k, forced, groups, out);
            groups[gi].pop();
        }
    }
    groups.push(vec![v]);
    recurse(items, i + 1, k, forced, groups, out);
    groups.pop();
}

/// Number of partitions counted without materializing, for sanity checks.
pub fn count_bounded_partitions(n: usize, k: usize) -> u64 {
    let items: Vec<VertexId> = (0..n as u32).map(VertexId).collect();
    bounded_partitions(&items, k, &BTreeSet::new()).len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_partition_counts() {
        // partitions of 8 into parts <= 2: 764 (matchings of K8 incl. partial)
        assert_eq!(count_bounded_partitions(8, 2), 764);
        // partitions of 7 into parts <= 2: 232
        assert_eq!(count_bounded_partitions(7, 2), 232);
        // unbounded = Bell numbers
        assert_eq!(count_bounded_partitions(5, 5), 52);
    }

    #[test]
    fn forced_items_stay_singleton() {
        let items: Vec<VertexId> = (0..4).map(VertexId).collect();
        let forced: BTreeSet<VertexId> = [VertexId(0)].into_iter().collect();
        let parts = bounded_partitions(&items, 2, &forced);
        for p in &parts {
            let part0 = p.iter().find(|part| part.contains(&VertexId(0))).unwrap();
            assert_eq!(part0.len(), 1);
        }
        // = partitions of remaining 3 into <= 2 parts: 4
        assert_eq!(parts.len(), 4);
    }
}
