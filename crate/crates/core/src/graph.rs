//! Directed multigraphs with indexed parallel edges.
//!
//! A [`MultiGraph`] is immutable once built. Vertices and edges are kept
//! sorted, so every traversal in this crate visits them in the same order
//! and all outputs are reproducible byte-for-byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of a vertex.
///
/// A nonempty run of ASCII alphanumerics, `_` and `-`, optionally followed
/// by one or more `+` markers. The markers are what the broadcast
/// transformation appends to the relay copy of an untrusted node.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct NodeId(String);

impl NodeId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let stem = name.trim_end_matches('+');
        let ok = !stem.is_empty()
            && stem
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-');
        if ok {
            Ok(NodeId(name))
        } else {
            Err(Error::InvalidNodeId(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The relay node name `u+` used by the broadcast transformation.
    pub fn relay(&self) -> NodeId {
        NodeId(format!("{}+", self.0))
    }

    pub fn is_relay(&self) -> bool {
        self.0.ends_with('+')
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for NodeId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NodeId::new(s)
    }
}

impl TryFrom<String> for NodeId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        NodeId::new(s)
    }
}

impl From<NodeId> for String {
    fn from(id: NodeId) -> String {
        id.0
    }
}

/// Convenience for building ids from literals in tests and examples.
///
/// Panics on an invalid name.
pub fn id(name: &str) -> NodeId {
    NodeId::new(name).unwrap_or_else(|e| panic!("{e}"))
}

/// Builds a set of ids from literals; panics on an invalid name.
pub fn ids<'a>(names: impl IntoIterator<Item = &'a str>) -> BTreeSet<NodeId> {
    names.into_iter().map(id).collect()
}

/// One edge `(tail, head, index)`. The index tells parallel edges apart and
/// runs `1..=m` for the `m` edges of a given `(tail, head)` pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: NodeId,
    pub head: NodeId,
    pub index: u32,
}

impl Edge {
    pub fn new(tail: NodeId, head: NodeId, index: u32) -> Self {
        Edge { tail, head, index }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.tail, self.head, self.index)
    }
}

/// Result of [`MultiGraph::topological_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopoOrder {
    /// Every edge points forward in this order.
    Acyclic(Vec<NodeId>),
    /// The vertices of one directed cycle, in traversal order.
    Cyclic(Vec<NodeId>),
}

impl TopoOrder {
    pub fn order(&self) -> Option<&[NodeId]> {
        match self {
            TopoOrder::Acyclic(order) => Some(order),
            TopoOrder::Cyclic(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: Vec<NodeId>,
    edges: Vec<Edge>,
    // Positions into `vertices` / `edges`, derived from the two fields above.
    ends: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl MultiGraph {
    /// Builds a graph from explicit vertices and edges, validating every
    /// invariant: known endpoints, no self-loops, unique contiguous indices.
    pub fn new(
        vertices: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let vertices: Vec<NodeId> = vertices
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort();

        let mut ends = Vec::with_capacity(edges.len());
        for e in &edges {
            if e.tail == e.head {
                return Err(Error::SelfLoop(e.tail.clone()));
            }
            let t = vertices
                .binary_search(&e.tail)
                .map_err(|_| Error::UnknownNode(e.tail.clone()))?;
            let h = vertices
                .binary_search(&e.head)
                .map_err(|_| Error::UnknownNode(e.head.clone()))?;
            ends.push((t, h));
        }

        // Sorted order groups each pair's edges by index; they must read 1, 2, ..., m.
        let mut expected = 1;
        for (i, e) in edges.iter().enumerate() {
            if i > 0 && ends[i] != ends[i - 1] {
                expected = 1;
            }
            if e.index != expected {
                return Err(Error::EdgeIndex {
                    tail: e.tail.clone(),
                    head: e.head.clone(),
                    index: e.index,
                });
            }
            expected += 1;
        }

        let mut out_adj = vec![Vec::new(); vertices.len()];
        let mut in_adj = vec![Vec::new(); vertices.len()];
        for (i, &(t, h)) in ends.iter().enumerate() {
            out_adj[t].push(i);
            in_adj[h].push(i);
        }

        Ok(MultiGraph {
            vertices,
            edges,
            ends,
            out_adj,
            in_adj,
        })
    }

    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn vertices(&self) -> &[NodeId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: &NodeId) -> bool {
        self.position(v).is_some()
    }

    pub fn vertex_set(&self) -> BTreeSet<NodeId> {
        self.vertices.iter().cloned().collect()
    }

    pub(crate) fn position(&self, v: &NodeId) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub(crate) fn require(&self, v: &NodeId) -> Result<usize> {
        self.position(v).ok_or_else(|| Error::UnknownNode(v.clone()))
    }

    pub(crate) fn require_all<'a>(
        &self,
        set: impl IntoIterator<Item = &'a NodeId>,
    ) -> Result<Vec<usize>> {
        set.into_iter().map(|v| self.require(v)).collect()
    }

    /// Vertex positions `(tail, head)` of the edge at position `e`.
    pub(crate) fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub(crate) fn out_positions(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Outgoing edges of `v`, ordered by head then index.
    pub fn out_edges(&self, v: &NodeId) -> Result<impl Iterator<Item = &Edge> + '_> {
        let p = self.require(v)?;
        Ok(self.out_adj[p].iter().map(move |&e| &self.edges[e]))
    }

    pub fn in_edges(&self, v: &NodeId) -> Result<impl Iterator<Item = &Edge> + '_> {
        let p = self.require(v)?;
        Ok(self.in_adj[p].iter().map(move |&e| &self.edges[e]))
    }

    /// `|[u, v]|`, the number of parallel edges from `u` to `v`.
    pub fn multiplicity(&self, u: &NodeId, v: &NodeId) -> Result<usize> {
        let hp = self.require(v)?;
        let tp = self.require(u)?;
        Ok(self.out_adj[tp]
            .iter()
            .filter(|&&e| self.ends[e].1 == hp)
            .count())
    }

    /// `[a, b]`: every edge with its tail in `a` and its head in `b`, sorted.
    pub fn edges_between(&self, a: &BTreeSet<NodeId>, b: &BTreeSet<NodeId>) -> Result<Vec<Edge>> {
        let a = self.mask(a)?;
        let b = self.mask(b)?;
        Ok(self
            .edges
            .iter()
            .zip(&self.ends)
            .filter(|(_, &(t, h))| a[t] && b[h])
            .map(|(e, _)| e.clone())
            .collect())
    }

    pub(crate) fn mask(&self, set: &BTreeSet<NodeId>) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.vertices.len()];
        for p in self.require_all(set)? {
            mask[p] = true;
        }
        Ok(mask)
    }

    /// `G - S`: drops the vertices of `s` and every edge touching them.
    /// Surviving edges keep their indices.
    pub fn remove_vertices(&self, s: &BTreeSet<NodeId>) -> Result<MultiGraph> {
        let dead = self.mask(s)?;
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(p, _)| !dead[*p])
            .map(|(_, v)| v.clone());
        let edges = self
            .edges
            .iter()
            .zip(&self.ends)
            .filter(|(_, &(t, h))| !dead[t] && !dead[h])
            .map(|(e, _)| e.clone());
        MultiGraph::new(vertices, edges)
    }

    /// Removes the given edges; vertices are untouched.
    ///
    /// Callers only ever remove whole `(tail, head)` groups or suffixes of
    /// them, so contiguity is re-validated rather than repaired.
    pub fn remove_edges(&self, gone: &BTreeSet<Edge>) -> Result<MultiGraph> {
        MultiGraph::new(
            self.vertices.iter().cloned(),
            self.edges.iter().filter(|e| !gone.contains(*e)).cloned(),
        )
    }

    /// `Γ⁻(v)`: distinct parents.
    pub fn parents(&self, v: &NodeId) -> Result<BTreeSet<NodeId>> {
        let p = self.require(v)?;
        Ok(self.in_adj[p]
            .iter()
            .map(|&e| self.edges[e].tail.clone())
            .collect())
    }

    /// `Γ⁺(v)`: distinct children.
    pub fn children(&self, v: &NodeId) -> Result<BTreeSet<NodeId>> {
        let p = self.require(v)?;
        Ok(self.out_adj[p]
            .iter()
            .map(|&e| self.edges[e].head.clone())
            .collect())
    }

    /// Number of incoming edges, counted with multiplicity.
    pub fn indegree(&self, v: &NodeId) -> Result<usize> {
        Ok(self.in_adj[self.require(v)?].len())
    }

    pub fn outdegree(&self, v: &NodeId) -> Result<usize> {
        Ok(self.out_adj[self.require(v)?].len())
    }

    /// Vertices reachable from `from` (including itself).
    pub fn reachable_from(&self, from: &NodeId) -> Result<BTreeSet<NodeId>> {
        let start = self.require(from)?;
        Ok(self
            .reach_mask(start)
            .iter()
            .enumerate()
            .filter(|(_, &r)| r)
            .map(|(p, _)| self.vertices[p].clone())
            .collect())
    }

    pub fn has_path(&self, from: &NodeId, to: &NodeId) -> Result<bool> {
        let start = self.require(from)?;
        let goal = self.require(to)?;
        Ok(self.reach_mask(start)[goal])
    }

    pub(crate) fn reach_mask(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.out_adj[v] {
                let h = self.ends[e].1;
                if !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        seen
    }

    /// Kahn's algorithm with the ready set ordered by `NodeId`, so the order
    /// is the lexicographically smallest topological order.
    pub fn topological_order(&self) -> TopoOrder {
        let n = self.vertices.len();
        let mut indeg: Vec<usize> = self.in_adj.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &e in &self.out_adj[v] {
                let h = self.ends[e].1;
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    ready.insert(h);
                }
            }
        }
        if order.len() == n {
            return TopoOrder::Acyclic(order.into_iter().map(|p| self.vertices[p].clone()).collect());
        }

        // Every unfinished vertex still has an unfinished parent, so walking
        // backwards through unfinished parents must revisit a vertex.
        let done: Vec<bool> = {
            let mut d = vec![false; n];
            for &p in &order {
                d[p] = true;
            }
            d
        };
        let mut walk = Vec::new();
        let mut at: BTreeMap<usize, usize> = BTreeMap::new();
        let mut v = (0..n).find(|&v| !done[v]).expect("unfinished vertex");
        loop {
            if let Some(&i) = at.get(&v) {
                let mut cycle: Vec<NodeId> =
                    walk[i..].iter().map(|&p: &usize| self.vertices[p].clone()).collect();
                cycle.reverse();
                let first = (0..cycle.len()).min_by_key(|&i| &cycle[i]).unwrap_or(0);
                cycle.rotate_left(first);
                return TopoOrder::Cyclic(cycle);
            }
            at.insert(v, walk.len());
            walk.push(v);
            v = self.in_adj[v]
                .iter()
                .map(|&e| self.ends[e].0)
                .filter(|&t| !done[t])
                .min()
                .expect("unfinished vertex has an unfinished parent");
        }
    }

    pub fn is_acyclic(&self) -> bool {
        matches!(self.topological_order(), TopoOrder::Acyclic(_))
    }
}

/// Accumulates vertices and edges; parallel edges get indices in insertion
/// order.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: BTreeSet<NodeId>,
    edges: Vec<Edge>,
    counts: BTreeMap<(NodeId, NodeId), u32>,
}

impl GraphBuilder {
    pub fn node(&mut self, v: NodeId) -> &mut Self {
        self.vertices.insert(v);
        self
    }

    /// Adds `count` parallel edges `u -> v`.
    pub fn edges(&mut self, u: NodeId, v: NodeId, count: u32) -> &mut Self {
        let next = self.counts.entry((u.clone(), v.clone())).or_insert(0);
        for _ in 0..count {
            *next += 1;
            self.edges.push(Edge::new(u.clone(), v.clone(), *next));
        }
        self.vertices.insert(u);
        self.vertices.insert(v);
        self
    }

    pub fn edge(&mut self, u: NodeId, v: NodeId) -> &mut Self {
        self.edges(u, v, 1)
    }

    pub fn build(&self) -> Result<MultiGraph> {
        MultiGraph::new(self.vertices.iter().cloned(), self.edges.iter().cloned())
    }
}

/// Builds a graph from `(tail, head, count)` triples of literal names.
/// Panics on invalid input; meant for tests and doc examples.
pub fn graph_of(edges: &[(&str, &str, u32)]) -> MultiGraph {
    let mut b = MultiGraph::builder();
    for &(u, v, c) in edges {
        b.edges(id(u), id(v), c);
    }
    b.build().unwrap_or_else(|e| panic!("{e}"))
}
