//! Integer max-flow by BFS augmenting paths.
//!
//! Arcs are stored in pairs: arc `2k` is forward, `2k + 1` its residual
//! reverse. Adjacency lists keep insertion order, which callers arrange to
//! be the sorted edge order of the source graph.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    head: Vec<usize>,
    residual: Vec<u64>,
    capacity: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: Vec::new(),
            residual: Vec::new(),
            capacity: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    /// Adds an arc and returns its id.
    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.head.len();
        self.head.push(to);
        self.residual.push(cap);
        self.capacity.push(cap);
        self.adj[from].push(id);
        self.head.push(from);
        self.residual.push(0);
        self.capacity.push(0);
        self.adj[to].push(id + 1);
        id
    }

    pub(crate) fn flow(&self, arc: usize) -> u64 {
        self.capacity[arc] - self.residual[arc]
    }

    /// Pushes flow from `s` to `t` until no augmenting path is left.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        let mut via = vec![usize::MAX; self.adj.len()];
        loop {
            via.fill(usize::MAX);
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(v) = queue.pop_front() {
                for &a in &self.adj[v] {
                    let w = self.head[a];
                    if self.residual[a] > 0 && !seen[w] {
                        seen[w] = true;
                        via[w] = a;
                        if w == t {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut bottleneck = u64::MAX;
            let mut v = t;
            while v != s {
                let a = via[v];
                bottleneck = bottleneck.min(self.residual[a]);
                v = self.head[a ^ 1];
            }
            let mut v = t;
            while v != s {
                let a = via[v];
                self.residual[a] -= bottleneck;
                self.residual[a ^ 1] += bottleneck;
                v = self.head[a ^ 1];
            }
            total += bottleneck;
        }
    }

    /// Nodes reachable from `s` through arcs with spare residual capacity.
    /// After `max_flow` this is the source side of a minimum cut.
    pub(crate) fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &a in &self.adj[v] {
                let w = self.head[a];
                if self.residual[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Splits the current flow into `count` unit `s -> t` walks, each given
    /// as its list of forward arcs. Flow cycles met along the way are
    /// discarded, so every returned walk visits each node at most once.
    ///
    /// At every node the first arc (in adjacency order) still carrying flow
    /// is taken.
    pub(crate) fn decompose(&self, s: usize, t: usize, count: u64) -> Vec<Vec<usize>> {
        let mut left: Vec<u64> = (0..self.head.len())
            .map(|a| if a % 2 == 0 { self.flow(a) } else { 0 })
            .collect();
        let mut on_path = vec![usize::MAX; self.adj.len()];
        let mut paths = Vec::new();
        for _ in 0..count {
            let mut nodes = vec![s];
            let mut arcs: Vec<usize> = Vec::new();
            on_path[s] = 0;
            while *nodes.last().expect("walk is nonempty") != t {
                let v = *nodes.last().expect("walk is nonempty");
                let a = *self.adj[v]
                    .iter()
                    .find(|&&a| left[a] > 0)
                    .expect("flow conservation leaves an outgoing unit");
                left[a] -= 1;
                let w = self.head[a];
                if on_path[w] != usize::MAX {
                    // Drop the cycle closed by this arc.
                    let keep = on_path[w] + 1;
                    for &x in &nodes[keep..] {
                        on_path[x] = usize::MAX;
                    }
                    nodes.truncate(keep);
                    arcs.truncate(keep - 1);
                } else {
                    on_path[w] = nodes.len();
                    nodes.push(w);
                    arcs.push(a);
                }
            }
            for &x in &nodes {
                on_path[x] = usize::MAX;
            }
            paths.push(arcs);
        }
        paths
    }
}
