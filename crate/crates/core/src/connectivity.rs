//! Edge and vertex connectivity between two vertices, with witnesses.
//!
//! Everything reduces to unit-capacity max-flow. Edge quantities run on the
//! graph as is; vertex quantities run on the split graph, where every vertex
//! other than the two endpoints becomes `v_in -> v_out` with capacity one
//! and original edges become uncuttable `u_out -> v_in` arcs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Edge, MultiGraph, NodeId};

/// An `s,t`-edge cut `[S, S̄]` and its size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutWitness {
    pub value: usize,
    /// The set `S`; holds the source (or every vertex of the source set).
    pub side_s: BTreeSet<NodeId>,
    /// `[S, S̄]`, sorted.
    pub crossing: Vec<Edge>,
}

impl CutWitness {
    /// `tail([S, S̄])`.
    pub fn tails(&self) -> BTreeSet<NodeId> {
        self.crossing.iter().map(|e| e.tail.clone()).collect()
    }

    /// Checks the witness against `g`: `crossing` is exactly `[S, S̄]`,
    /// `value` is its size and deleting it leaves no path from `S` to `t`.
    pub fn is_valid_for(&self, g: &MultiGraph, t: &NodeId) -> bool {
        if self.side_s.contains(t) {
            return false;
        }
        let rest: BTreeSet<NodeId> = g.vertex_set().difference(&self.side_s).cloned().collect();
        let Ok(crossing) = g.edges_between(&self.side_s, &rest) else {
            return false;
        };
        if crossing != self.crossing || self.value != crossing.len() {
            return false;
        }
        let gone: BTreeSet<Edge> = crossing.into_iter().collect();
        let Ok(cut) = g.remove_edges(&gone) else {
            return false;
        };
        self.side_s
            .iter()
            .all(|v| !cut.has_path(v, t).unwrap_or(true))
    }
}

/// An `s,t`-vertex cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCutWitness {
    pub value: usize,
    pub separator: BTreeSet<NodeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Disjointness {
    /// No edge is shared.
    Edge,
    /// No internal vertex is shared.
    Internal,
}

/// A directed path: `nodes[i] -> nodes[i + 1]` along `edges[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    pub kind: Disjointness,
    pub paths: Vec<Path>,
}

impl PathFamily {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Each path is an `s -> t` path of `g` and the family is pairwise
    /// disjoint in the declared sense.
    pub fn is_valid_for(&self, g: &MultiGraph, s: &NodeId, t: &NodeId) -> bool {
        let edge_set: BTreeSet<&Edge> = g.edges().iter().collect();
        for p in &self.paths {
            if p.nodes.first() != Some(s) || p.nodes.last() != Some(t) {
                return false;
            }
            if p.edges.len() + 1 != p.nodes.len() {
                return false;
            }
            for (i, e) in p.edges.iter().enumerate() {
                if !edge_set.contains(e) || e.tail != p.nodes[i] || e.head != p.nodes[i + 1] {
                    return false;
                }
            }
        }
        match self.kind {
            Disjointness::Edge => {
                let mut used = BTreeSet::new();
                self.paths
                    .iter()
                    .flat_map(|p| &p.edges)
                    .all(|e| used.insert(e))
            }
            Disjointness::Internal => {
                let mut used = BTreeSet::new();
                let mut direct = BTreeSet::new();
                self.paths.iter().all(|p| {
                    if p.edges.len() == 1 {
                        return direct.insert(&p.edges[0]);
                    }
                    p.nodes[1..p.nodes.len() - 1].iter().all(|v| used.insert(v))
                })
            }
        }
    }
}

fn endpoints(g: &MultiGraph, s: &NodeId, t: &NodeId) -> Result<(usize, usize)> {
    let sp = g.require(s)?;
    let tp = g.require(t)?;
    if sp == tp {
        return Err(Error::SameEndpoints(s.clone()));
    }
    Ok((sp, tp))
}

/// Unit arcs for every edge; arc `2 * e` carries edge position `e`.
fn edge_network(g: &MultiGraph, extra_nodes: usize) -> FlowNetwork {
    let mut net = FlowNetwork::new(g.vertex_count() + extra_nodes);
    for e in 0..g.edge_count() {
        let (u, v) = g.ends(e);
        net.add_arc(u, v, 1);
    }
    net
}

fn cut_from_side(g: &MultiGraph, side: &[bool]) -> CutWitness {
    let side_s: BTreeSet<NodeId> = g
        .vertices()
        .iter()
        .zip(side)
        .filter(|(_, &in_s)| in_s)
        .map(|(v, _)| v.clone())
        .collect();
    let crossing: Vec<Edge> = (0..g.edge_count())
        .filter(|&e| {
            let (u, v) = g.ends(e);
            side[u] && !side[v]
        })
        .map(|e| g.edges()[e].clone())
        .collect();
    CutWitness {
        value: crossing.len(),
        side_s,
        crossing,
    }
}

/// `K(s,t)`: minimum `s,t`-edge cut by unit-capacity max-flow.
pub fn min_edge_cut(g: &MultiGraph, s: &NodeId, t: &NodeId) -> Result<CutWitness> {
    let (sp, tp) = endpoints(g, s, t)?;
    let mut net = edge_network(g, 0);
    let flow = net.max_flow(sp, tp);
    let reach = net.residual_reachable(sp);
    let cut = cut_from_side(g, &reach);
    debug_assert_eq!(cut.value as u64, flow);
    Ok(cut)
}

/// `K(A,t)`: minimum `|[S, S̄]|` over `S ⊇ A` with `t ∉ S`.
///
/// A virtual super-source feeds every vertex of `A` with `|E| + 1` units,
/// more than any cut can hold, so none of those arcs is ever cut.
pub fn min_edge_cut_from_set(
    g: &MultiGraph,
    a: &BTreeSet<NodeId>,
    t: &NodeId,
) -> Result<CutWitness> {
    let tp = g.require(t)?;
    let members = g.require_all(a)?;
    if members.is_empty() {
        return Err(Error::Precondition("source set must be nonempty".into()));
    }
    if a.contains(t) {
        return Err(Error::Precondition(format!("{t} is in the source set")));
    }
    let n = g.vertex_count();
    let mut net = edge_network(g, 1);
    let unbounded = g.edge_count() as u64 + 1;
    for &v in &members {
        net.add_arc(n, v, unbounded);
    }
    let flow = net.max_flow(n, tp);
    let reach = net.residual_reachable(n);
    let cut = cut_from_side(g, &reach[..n]);
    debug_assert_eq!(cut.value as u64, flow);
    Ok(cut)
}

/// `λ′(s,t)` edge-disjoint paths, read off the max-flow.
pub fn max_edge_disjoint_paths(g: &MultiGraph, s: &NodeId, t: &NodeId) -> Result<PathFamily> {
    let (sp, tp) = endpoints(g, s, t)?;
    let mut net = edge_network(g, 0);
    let flow = net.max_flow(sp, tp);
    let paths = net
        .decompose(sp, tp, flow)
        .into_iter()
        .map(|arcs| {
            let edges: Vec<Edge> = arcs.iter().map(|&a| g.edges()[a / 2].clone()).collect();
            path_from_edges(s, edges)
        })
        .collect();
    Ok(PathFamily {
        kind: Disjointness::Edge,
        paths,
    })
}

fn path_from_edges(s: &NodeId, edges: Vec<Edge>) -> Path {
    let mut nodes = vec![s.clone()];
    nodes.extend(edges.iter().map(|e| e.head.clone()));
    Path { nodes, edges }
}

struct SplitNetwork {
    net: FlowNetwork,
    source: usize,
    sink: usize,
    /// Indexed by arc id / 2; `Some(edge position)` for edge arcs.
    arc_edge: Vec<Option<usize>>,
}

fn split_in(v: usize) -> usize {
    2 * v
}

fn split_out(v: usize) -> usize {
    2 * v + 1
}

/// Split graph of `g` minus `[s, t]`.
fn split_network(g: &MultiGraph, sp: usize, tp: usize) -> SplitNetwork {
    let n = g.vertex_count();
    let unbounded = g.edge_count() as u64 + 1;
    let mut net = FlowNetwork::new(2 * n);
    let mut arc_edge = Vec::new();
    for v in 0..n {
        let cap = if v == sp || v == tp { unbounded } else { 1 };
        net.add_arc(split_in(v), split_out(v), cap);
        arc_edge.push(None);
    }
    for e in 0..g.edge_count() {
        let (u, v) = g.ends(e);
        if u == sp && v == tp {
            continue;
        }
        net.add_arc(split_out(u), split_in(v), unbounded);
        arc_edge.push(Some(e));
    }
    SplitNetwork {
        net,
        source: split_out(sp),
        sink: split_in(tp),
        arc_edge,
    }
}

/// `λ(s,t)` internally-disjoint paths. Each direct `s -> t` edge is a path
/// of its own; the rest come from the split-graph flow.
pub fn max_internally_disjoint_paths(
    g: &MultiGraph,
    s: &NodeId,
    t: &NodeId,
) -> Result<PathFamily> {
    let (sp, tp) = endpoints(g, s, t)?;
    let mut paths: Vec<Path> = g
        .out_positions(sp)
        .iter()
        .filter(|&&e| g.ends(e).1 == tp)
        .map(|&e| path_from_edges(s, vec![g.edges()[e].clone()]))
        .collect();
    let mut split = split_network(g, sp, tp);
    let flow = split.net.max_flow(split.source, split.sink);
    for arcs in split.net.decompose(split.source, split.sink, flow) {
        let edges = arcs
            .iter()
            .filter_map(|&a| split.arc_edge[a / 2])
            .map(|e| g.edges()[e].clone())
            .collect();
        paths.push(path_from_edges(s, edges));
    }
    Ok(PathFamily {
        kind: Disjointness::Internal,
        paths,
    })
}

fn require_nonadjacent(g: &MultiGraph, s: &NodeId, t: &NodeId) -> Result<(usize, usize)> {
    let (sp, tp) = endpoints(g, s, t)?;
    if g.out_positions(sp).iter().any(|&e| g.ends(e).1 == tp) {
        return Err(Error::VertexCutUndefined(s.clone(), t.clone()));
    }
    Ok((sp, tp))
}

/// Residual-reachable split nodes after a maximum split-graph flow.
fn saturated_split(g: &MultiGraph, sp: usize, tp: usize) -> (u64, Vec<bool>) {
    let mut split = split_network(g, sp, tp);
    let flow = split.net.max_flow(split.source, split.sink);
    (flow, split.net.residual_reachable(split.source))
}

/// `κ(s,t)`: a minimum `s,t`-vertex cut. Requires `|[s,t]| = 0`.
///
/// The separator is the set of vertices whose `v_in -> v_out` arc crosses
/// the minimum split-graph cut.
pub fn min_vertex_cut(g: &MultiGraph, s: &NodeId, t: &NodeId) -> Result<VertexCutWitness> {
    let (sp, tp) = require_nonadjacent(g, s, t)?;
    let (flow, reach) = saturated_split(g, sp, tp);
    let separator: BTreeSet<NodeId> = (0..g.vertex_count())
        .filter(|&v| reach[split_in(v)] && !reach[split_out(v)])
        .map(|v| g.vertices()[v].clone())
        .collect();
    debug_assert_eq!(separator.len() as u64, flow);
    Ok(VertexCutWitness {
        value: separator.len(),
        separator,
    })
}

/// Minimum of `|tail([S, S̄])|` over `s,t`-edge cuts with `s ∉ tail([S, S̄])`,
/// together with a cut attaining it. Requires `|[s,t]| = 0`; the value
/// equals `λ(s,t)`.
pub fn min_tail_over_edge_cuts(
    g: &MultiGraph,
    s: &NodeId,
    t: &NodeId,
) -> Result<(usize, CutWitness)> {
    let (sp, tp) = require_nonadjacent(g, s, t)?;
    let (_, reach) = saturated_split(g, sp, tp);
    let side: Vec<bool> = (0..g.vertex_count())
        .map(|v| v == sp || reach[split_in(v)])
        .collect();
    let cut = cut_from_side(g, &side);
    Ok((cut.tails().len(), cut))
}

/// `K(s,t)` without the witness.
pub fn edge_connectivity(g: &MultiGraph, s: &NodeId, t: &NodeId) -> Result<usize> {
    min_edge_cut(g, s, t).map(|c| c.value)
}

/// `λ(s,t)`: `|[s,t]|` plus the split-graph flow of `G - [s,t]`.
pub fn internal_connectivity(g: &MultiGraph, s: &NodeId, t: &NodeId) -> Result<usize> {
    let (sp, tp) = endpoints(g, s, t)?;
    let direct = g
        .out_positions(sp)
        .iter()
        .filter(|&&e| g.ends(e).1 == tp)
        .count();
    let mut split = split_network(g, sp, tp);
    Ok(direct + split.net.max_flow(split.source, split.sink) as usize)
}

/// Inclusion-minimal `s,t`-vertex cut: it separates, avoids `s` and `t`,
/// and no single vertex can be dropped from it.
pub fn is_minimal_vertex_cut(
    g: &MultiGraph,
    s: &NodeId,
    t: &NodeId,
    cut: &BTreeSet<NodeId>,
) -> Result<bool> {
    endpoints(g, s, t)?;
    g.require_all(cut)?;
    if cut.contains(s) || cut.contains(t) {
        return Ok(false);
    }
    let separates = |set: &BTreeSet<NodeId>| -> Result<bool> {
        Ok(!g.remove_vertices(set)?.has_path(s, t)?)
    };
    if !separates(cut)? {
        return Ok(false);
    }
    for v in cut {
        let mut smaller = cut.clone();
        smaller.remove(v);
        if separates(&smaller)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{graph_of, id, ids};

    #[test]
    fn single_edge_cut() {
        let g = graph_of(&[("s", "t", 1)]);
        let cut = min_edge_cut(&g, &id("s"), &id("t")).unwrap();
        assert_eq!(cut.value, 1);
        assert_eq!(cut.side_s, ids(["s"]));
        assert!(cut.is_valid_for(&g, &id("t")));
    }

    #[test]
    fn unreachable_gives_zero() {
        let g = graph_of(&[("t", "s", 2)]);
        let cut = min_edge_cut(&g, &id("s"), &id("t")).unwrap();
        assert_eq!(cut.value, 0);
        assert!(cut.crossing.is_empty());
    }

    #[test]
    fn same_endpoints_rejected() {
        let g = graph_of(&[("s", "t", 1)]);
        assert_eq!(
            min_edge_cut(&g, &id("s"), &id("s")),
            Err(Error::SameEndpoints(id("s")))
        );
        assert!(max_edge_disjoint_paths(&g, &id("t"), &id("t")).is_err());
        assert!(max_internally_disjoint_paths(&g, &id("t"), &id("t")).is_err());
        assert!(min_edge_cut(&g, &id("s"), &id("x")).is_err());
    }

    #[test]
    fn parallel_edges_paths() {
        let g = graph_of(&[("s", "t", 3)]);
        let edge = max_edge_disjoint_paths(&g, &id("s"), &id("t")).unwrap();
        assert_eq!(edge.len(), 3);
        assert!(edge.paths.iter().all(|p| p.edges.len() == 1));
        assert!(edge.is_valid_for(&g, &id("s"), &id("t")));
        let internal = max_internally_disjoint_paths(&g, &id("s"), &id("t")).unwrap();
        assert_eq!(internal.len(), 3);
        assert!(internal.is_valid_for(&g, &id("s"), &id("t")));
    }

    #[test]
    fn from_set_matches_single_source() {
        let g = graph_of(&[("s", "a", 2), ("a", "t", 1), ("s", "b", 1), ("b", "t", 2)]);
        let single = min_edge_cut(&g, &id("s"), &id("t")).unwrap();
        let set = min_edge_cut_from_set(&g, &ids(["s"]), &id("t")).unwrap();
        assert_eq!(single, set);
    }

    #[test]
    fn from_set_outdegree_bound() {
        let g = graph_of(&[("u", "t", 1), ("u", "x", 1), ("x", "t", 1)]);
        let cut = min_edge_cut_from_set(&g, &ids(["u"]), &id("t")).unwrap();
        assert!(cut.value <= 2);
        assert_eq!(cut.value, 2);
        assert!(min_edge_cut_from_set(&g, &ids(["t"]), &id("t")).is_err());
        assert!(min_edge_cut_from_set(&g, &BTreeSet::new(), &id("t")).is_err());
    }

    #[test]
    fn two_middles_vertex_cut() {
        let g = graph_of(&[("s", "a", 1), ("a", "t", 1), ("s", "b", 1), ("b", "t", 1)]);
        let cut = min_vertex_cut(&g, &id("s"), &id("t")).unwrap();
        assert_eq!(cut.value, 2);
        assert_eq!(cut.separator, ids(["a", "b"]));
        assert!(is_minimal_vertex_cut(&g, &id("s"), &id("t"), &cut.separator).unwrap());
        let (value, witness) = min_tail_over_edge_cuts(&g, &id("s"), &id("t")).unwrap();
        assert_eq!(value, 2);
        assert!(!witness.tails().contains(&id("s")));
        assert!(witness.is_valid_for(&g, &id("t")));
    }

    #[test]
    fn vertex_cut_needs_nonadjacent_pair() {
        let g = graph_of(&[("s", "t", 1), ("s", "a", 1), ("a", "t", 1)]);
        let err = min_vertex_cut(&g, &id("s"), &id("t")).unwrap_err();
        assert_eq!(err.to_string(), "vertex cut undefined: t adjacent to s (s -> t)");
        assert!(min_tail_over_edge_cuts(&g, &id("s"), &id("t")).is_err());
        // λ still counts the direct edge as a path of its own.
        assert_eq!(internal_connectivity(&g, &id("s"), &id("t")).unwrap(), 2);
    }

    #[test]
    fn bottleneck_vertex() {
        // Three edge-disjoint routes squeezed through m.
        let g = graph_of(&[("s", "m", 3), ("m", "t", 3)]);
        assert_eq!(edge_connectivity(&g, &id("s"), &id("t")).unwrap(), 3);
        assert_eq!(internal_connectivity(&g, &id("s"), &id("t")).unwrap(), 1);
        let cut = min_vertex_cut(&g, &id("s"), &id("t")).unwrap();
        assert_eq!(cut.separator, ids(["m"]));
    }

    #[test]
    fn minimality_checker_rejects_supersets() {
        let g = graph_of(&[("s", "a", 1), ("a", "b", 1), ("b", "t", 1)]);
        assert!(is_minimal_vertex_cut(&g, &id("s"), &id("t"), &ids(["a"])).unwrap());
        assert!(!is_minimal_vertex_cut(&g, &id("s"), &id("t"), &ids(["a", "b"])).unwrap());
        assert!(!is_minimal_vertex_cut(&g, &id("s"), &id("t"), &BTreeSet::new()).unwrap());
    }

    #[test]
    fn path_order_prefers_small_names() {
        let g = graph_of(&[("s", "b", 1), ("s", "a", 1), ("a", "t", 1), ("b", "t", 1)]);
        let paths = max_edge_disjoint_paths(&g, &id("s"), &id("t")).unwrap();
        assert_eq!(paths.paths[0].nodes, vec![id("s"), id("a"), id("t")]);
        assert_eq!(paths.paths[1].nodes, vec![id("s"), id("b"), id("t")]);
    }
}
