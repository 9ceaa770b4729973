//! Exhaustive oracles. Every one enumerates vertex subsets directly, so they
//! are only usable on graphs with at most ten vertices.

#![allow(dead_code)]

use std::collections::BTreeSet;

use umn::graph::{Edge, MultiGraph, NodeId};
use umn::rates::{adversary_sets, Model};
use umn::UntrustedNetwork;

pub const ORACLE_LIMIT: usize = 10;

fn guard(g: &MultiGraph) {
    assert!(g.vertex_count() <= ORACLE_LIMIT, "oracle called on {} vertices", g.vertex_count());
}

/// Every `S` with `must ⊆ S`, `t ∉ S`.
fn sides<'a>(g: &'a MultiGraph, must: &'a BTreeSet<NodeId>, t: &'a NodeId) -> impl Iterator<Item = BTreeSet<NodeId>> + 'a {
    guard(g);
    let free: Vec<&NodeId> = g
        .vertices()
        .iter()
        .filter(|v| !must.contains(*v) && *v != t)
        .collect();
    (0u32..1 << free.len()).map(move |bits| {
        let mut side = must.clone();
        for (i, v) in free.iter().enumerate() {
            if bits >> i & 1 == 1 {
                side.insert((*v).clone());
            }
        }
        side
    })
}

fn crossing(g: &MultiGraph, side: &BTreeSet<NodeId>) -> Vec<Edge> {
    g.edges()
        .iter()
        .filter(|e| side.contains(&e.tail) && !side.contains(&e.head))
        .cloned()
        .collect()
}

/// `K(s,t)` as the smallest `|[S, S̄]|` over all `S ∋ s`, `t ∉ S`.
pub fn brute_edge_cut(g: &MultiGraph, s: &NodeId, t: &NodeId) -> usize {
    brute_set_cut(g, &BTreeSet::from([s.clone()]), t)
}

/// `K(A,t)`; zero for empty `A`.
pub fn brute_set_cut(g: &MultiGraph, a: &BTreeSet<NodeId>, t: &NodeId) -> usize {
    if a.is_empty() {
        return 0;
    }
    sides(g, a, t).map(|side| crossing(g, &side).len()).min().unwrap()
}

/// Smallest `X ⊆ V \ {s,t}` whose removal leaves no `s -> t` path.
pub fn brute_vertex_cut(g: &MultiGraph, s: &NodeId, t: &NodeId) -> usize {
    guard(g);
    let inner: Vec<&NodeId> = g.vertices().iter().filter(|v| *v != s && *v != t).collect();
    (0u32..1 << inner.len())
        .filter_map(|bits| {
            let x: BTreeSet<NodeId> = inner
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, v)| (*v).clone())
                .collect();
            let cut_off = !g.remove_vertices(&x).unwrap().has_path(s, t).unwrap();
            cut_off.then_some(x.len())
        })
        .min()
        .expect("removing every inner vertex separates nonadjacent s, t")
}

/// `λ(s,t)` by Menger on `G - [s,t]`, plus the direct edges.
pub fn brute_internal(g: &MultiGraph, s: &NodeId, t: &NodeId) -> usize {
    let direct: BTreeSet<Edge> = g
        .edges()
        .iter()
        .filter(|e| e.tail == *s && e.head == *t)
        .cloned()
        .collect();
    let rest = g.remove_edges(&direct).unwrap();
    direct.len() + brute_vertex_cut(&rest, s, t)
}

/// Smallest `|tail([S, S̄])|` over `s,t`-edge cuts whose tail avoids `s`.
pub fn brute_min_tail(g: &MultiGraph, s: &NodeId, t: &NodeId) -> usize {
    sides(g, &BTreeSet::from([s.clone()]), t)
        .filter_map(|side| {
            let tails: BTreeSet<NodeId> = crossing(g, &side).into_iter().map(|e| e.tail).collect();
            (!tails.contains(s)).then_some(tails.len())
        })
        .min()
        .expect("S = V \\ {t} has no s in its tail when s, t are nonadjacent")
}

/// Rate by enumerating adversaries, sinks, and cut sides for every term
/// independently of the library's flow code.
pub fn brute_rate(n: &UntrustedNetwork, model: Model, w: usize) -> usize {
    let g = n.graph();
    let w = w.min(n.untrusted().len());
    let penalty = match model {
        Model::Omniscient => 2,
        Model::SharedSecret => 1,
    };
    let mut best = usize::MAX;
    let mut subsets: Vec<BTreeSet<NodeId>> = Vec::new();
    let pool: Vec<&NodeId> = n.untrusted().iter().collect();
    for bits in 0u32..1 << pool.len() {
        if bits.count_ones() as usize <= w {
            subsets.push(
                pool.iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, v)| (*v).clone())
                    .collect(),
            );
        }
    }
    debug_assert_eq!(subsets.len(), adversary_sets(n.untrusted(), w).len());
    for a in &subsets {
        for t in n.sinks().iter().filter(|t| !a.contains(*t)) {
            let k = brute_edge_cut(g, n.source(), t);
            let ka = brute_set_cut(g, a, t);
            best = best.min(k.saturating_sub(penalty * ka));
        }
    }
    best
}

/// Whether `t` has a parallel-edge-free direct edge from `s`.
pub fn adjacent(g: &MultiGraph, s: &NodeId, t: &NodeId) -> bool {
    g.multiplicity(s, t).unwrap() > 0
}
