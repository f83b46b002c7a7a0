//! Left-right planarity test with combinatorial embedding extraction,
//! operating on a simple graph given as an indexed edge list.
//!
//! Follows the Brandes formulation: DFS orientation with lowpoints, the
//! conflict-pair stack for testing, then sign resolution and a second DFS
//! that places half-edges to build the rotation system.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ConflictPair {
    l: Interval,
    r: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.l, &mut self.r);
    }
}

pub struct Lr {
    n: usize,
    /// edge list of the simple input graph
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>, // incident edge indices per vertex
    // orientation state
    tail: Vec<usize>, // usize::MAX while unoriented
    height: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    roots: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    ordered: Vec<Vec<usize>>, // outgoing edge indices, sorted by nesting depth
    // testing state
    eref: Vec<Option<usize>>,
    side: Vec<i8>,
    lowpt_edge: Vec<Option<usize>>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
    // embedding state
    left_ref: Vec<Option<usize>>,
    right_ref: Vec<Option<usize>>,
    rotation: Vec<Vec<usize>>, // clockwise incident edge order per vertex
}

const UNORIENTED: usize = usize::MAX;

impl Lr {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let m = edges.len();
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            debug_assert!(u != v);
            adj[u].push(i);
            adj[v].push(i);
        }
        Lr {
            n,
            edges,
            adj,
            tail: vec![UNORIENTED; m],
            height: vec![usize::MAX; n],
            parent_edge: vec![None; n],
            roots: Vec::new(),
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting: vec![0; m],
            ordered: vec![Vec::new(); n],
            eref: vec![None; m],
            side: vec![1; m],
            lowpt_edge: vec![None; m],
            stack_bottom: vec![0; m],
            stack: Vec::new(),
            left_ref: vec![None; n],
            right_ref: vec![None; n],
            rotation: vec![Vec::new(); n],
        }
    }

    fn head(&self, e: usize) -> usize {
        let (u, v) = self.edges[e];
        if self.tail[e] == u {
            v
        } else {
            u
        }
    }

    /// Runs the test. Returns false on a non-planar input.
    pub fn test(&mut self) -> bool {
        let m = self.edges.len();
        if self.n > 2 && m > 3 * self.n - 6 {
            return false;
        }
        for v in 0..self.n {
            if self.height[v] == usize::MAX {
                self.height[v] = 0;
                self.roots.push(v);
                self.dfs_orientation(v);
            }
        }
        for v in 0..self.n {
            let mut out: Vec<usize> = self
                .adj[v]
                .iter()
                .copied()
                .filter(|&e| self.tail[e] == v)
                .collect();
            out.sort_by_key(|&e| (self.nesting[e], self.head(e)));
            self.ordered[v] = out;
        }
        let roots = self.roots.clone();
        for &s in &roots {
            if !self.dfs_testing(s) {
                return false;
            }
        }
        true
    }

    fn dfs_orientation(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for idx in 0..self.adj[v].len() {
            let ei = self.adj[v][idx];
            if self.tail[ei] != UNORIENTED {
                continue;
            }
            self.tail[ei] = v;
            let w = self.head(ei);
            self.lowpt[ei] = self.height[v];
            self.lowpt2[ei] = self.height[v];
            if self.height[w] == usize::MAX {
                // tree edge
                self.parent_edge[w] = Some(ei);
                self.height[w] = self.height[v] + 1;
                self.dfs_orientation(w);
            } else {
                // back edge
                self.lowpt[ei] = self.height[w];
            }
            self.nesting[ei] = 2 * self.lowpt[ei] as i64;
            if self.lowpt2[ei] < self.height[v] {
                self.nesting[ei] += 1; // chordal
            }
            if let Some(pe) = e {
                if self.lowpt[ei] < self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[ei]);
                    self.lowpt[pe] = self.lowpt[ei];
                } else if self.lowpt[ei] > self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[ei]);
                } else {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[ei]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.l.low, p.r.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => usize::MAX,
        }
    }

    fn dfs_testing(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        for idx in 0..self.ordered[v].len() {
            let ei = self.ordered[v][idx];
            self.stack_bottom[ei] = self.stack.len();
            let w = self.head(ei);
            if self.parent_edge[w] == Some(ei) {
                if !self.dfs_testing(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                self.stack.push(ConflictPair {
                    l: Interval::default(),
                    r: Interval { low: Some(ei), high: Some(ei) },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                // ei has a return edge
                if idx == 0 {
                    if let Some(pe) = e {
                        self.lowpt_edge[pe] = self.lowpt_edge[ei];
                    }
                } else if !self.add_constraints(ei, e.expect("non-first edge implies parent")) {
                    return false;
                }
            }
        }
        if let Some(pe) = e {
            self.remove_back_edges(pe);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        // merge return edges of ei into p.r
        loop {
            let mut q = match self.stack.pop() {
                Some(q) => q,
                None => break,
            };
            if !q.l.is_empty() {
                q.swap();
            }
            if !q.l.is_empty() {
                return false; // not planar
            }
            let qr_low = q.r.low.expect("popped pair has a right interval");
            if self.lowpt[qr_low] > self.lowpt[e] {
                // merge intervals
                if p.r.is_empty() {
                    p.r.high = q.r.high;
                } else {
                    self.eref[p.r.low.unwrap()] = q.r.high;
                }
                p.r.low = q.r.low;
            } else {
                // align
                self.eref[qr_low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.l
        loop {
            let top = match self.stack.last() {
                Some(t) => *t,
                None => break,
            };
            if !(self.conflicting(&top.l, ei) || self.conflicting(&top.r, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.r, ei) {
                q.swap();
            }
            if self.conflicting(&q.r, ei) {
                return false; // not planar
            }
            // merge interval below lowpt(ei) into p.r
            if let Some(prl) = p.r.low {
                self.eref[prl] = q.r.high;
            }
            if q.r.low.is_some() {
                p.r.low = q.r.low;
            }
            if p.l.is_empty() {
                p.l.high = q.l.high;
            } else {
                self.eref[p.l.low.unwrap()] = q.l.high;
            }
            p.l.low = q.l.low;
        }
        if !(p.l.is_empty() && p.r.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.tail[e];
        // drop entire conflict pairs returning to u
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.l.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            // trim left interval
            while let Some(h) = p.l.high {
                if self.head(h) != u {
                    break;
                }
                p.l.high = self.eref[h];
            }
            if p.l.high.is_none() {
                if let Some(l) = p.l.low {
                    self.eref[l] = p.r.low;
                    self.side[l] = -1;
                    p.l.low = None;
                }
            }
            // trim right interval
            while let Some(h) = p.r.high {
                if self.head(h) != u {
                    break;
                }
                p.r.high = self.eref[h];
            }
            if p.r.high.is_none() {
                if let Some(l) = p.r.low {
                    self.eref[l] = p.l.low;
                    self.side[l] = -1;
                    p.r.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            // side of e is the side of a highest return edge
            let top = self.stack.last().expect("return edge implies live pair");
            let hl = top.l.high;
            let hr = top.r.high;
            self.eref[e] = match (hl, hr) {
                (Some(l), Some(r)) => {
                    if self.lowpt[l] > self.lowpt[r] {
                        Some(l)
                    } else {
                        Some(r)
                    }
                }
                (Some(l), None) => Some(l),
                (None, r) => r,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i8 {
        // iterative ref-chain resolution
        let mut chain = vec![e];
        while let Some(r) = self.eref[*chain.last().unwrap()] {
            chain.push(r);
        }
        for i in (0..chain.len() - 1).rev() {
            let cur = chain[i];
            let nxt = chain[i + 1];
            self.side[cur] *= self.side[nxt];
            self.eref[cur] = None;
        }
        self.side[e]
    }

    /// Builds the clockwise rotation per vertex. Call after a successful
    /// `test()`.
    pub fn embed(&mut self) -> Vec<Vec<usize>> {
        let m = self.edges.len();
        for e in 0..m {
            self.nesting[e] *= self.sign(e) as i64;
        }
        for v in 0..self.n {
            let mut out = std::mem::take(&mut self.ordered[v]);
            out.sort_by_key(|&e| (self.nesting[e], self.head(e)));
            self.rotation[v] = out.clone();
            self.ordered[v] = out;
        }
        let roots = self.roots.clone();
        for &s in &roots {
            self.dfs_embedding(s);
        }
        std::mem::take(&mut self.rotation)
    }

    fn insert_after(&mut self, v: usize, e: usize, after: usize) {
        let pos = self.rotation[v].iter().position(|&x| x == after).unwrap();
        self.rotation[v].insert(pos + 1, e);
    }

    fn insert_before(&mut self, v: usize, e: usize, before: usize) {
        let pos = self.rotation[v].iter().position(|&x| x == before).unwrap();
        self.rotation[v].insert(pos, e);
    }

    fn dfs_embedding(&mut self, v: usize) {
        for idx in 0..self.ordered[v].len() {
            let ei = self.ordered[v][idx];
            let w = self.head(ei);
            if self.parent_edge[w] == Some(ei) {
                // tree edge: at w the parent half-edge comes first
                self.rotation[w].insert(0, ei);
                self.left_ref[v] = Some(ei);
                self.right_ref[v] = Some(ei);
                self.dfs_embedding(w);
            } else {
                // back edge into ancestor w
                if self.side[ei] == 1 {
                    let r = self.right_ref[w].expect("right_ref set before back edge lands");
                    self.insert_after(w, ei, r);
                } else {
                    let l = self.left_ref[w].expect("left_ref set before back edge lands");
                    self.insert_before(w, ei, l);
                    self.left_ref[w] = Some(ei);
                }
            }
        }
    }
}
