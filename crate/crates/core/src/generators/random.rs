use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{id, MultiGraph, NodeId};
use crate::network::UntrustedNetwork;
use crate::rng::SeededRng;

fn names(n: usize) -> Vec<NodeId> {
    std::iter::once(id("s"))
        .chain((1..n).map(|i| id(&format!("v{i}"))))
        .collect()
}

/// Random acyclic network on `s, v1, ..., v{n-1}`.
///
/// The non-source vertices are shuffled behind `s`; every forward pair in
/// that order independently gets `1..=max_parallel` parallel edges with
/// probability `edge_prob`. Vertices without out-edges are the sinks and
/// every non-source vertex is untrusted. The last vertex in the order never
/// has out-edges, so there is always a sink.
pub fn random_network(
    n_nodes: usize,
    max_parallel: u32,
    edge_prob: f64,
    seed: u64,
) -> Result<UntrustedNetwork> {
    if n_nodes < 2 {
        return Err(Error::Precondition("random_network needs at least 2 nodes".into()));
    }
    if max_parallel == 0 {
        return Err(Error::Precondition("max_parallel must be at least 1".into()));
    }
    let mut rng = SeededRng::new(seed);
    let all = names(n_nodes);
    let mut order = vec![all[0].clone()];
    order.extend(rng.sample(n_nodes - 1, n_nodes - 1).into_iter().map(|i| all[i + 1].clone()));

    let mut b = MultiGraph::builder();
    for v in &all {
        b.node(v.clone());
    }
    for i in 0..n_nodes {
        for j in i + 1..n_nodes {
            if rng.unit() < edge_prob {
                let count = 1 + rng.below(max_parallel as u64) as u32;
                b.edges(order[i].clone(), order[j].clone(), count);
            }
        }
    }
    let g = b.build()?;
    let sinks: BTreeSet<NodeId> = all[1..]
        .iter()
        .filter(|v| g.outdegree(v).expect("vertex exists") == 0)
        .cloned()
        .collect();
    UntrustedNetwork::all_untrusted(g, all[0].clone(), sinks)
}

/// Random multigraph on `n0, ..., n{n-1}` with `n_edges` edges between
/// uniformly drawn ordered pairs of distinct vertices. Cycles and parallel
/// edges are allowed.
pub fn random_multigraph(n_nodes: usize, n_edges: usize, seed: u64) -> Result<MultiGraph> {
    if n_nodes < 2 {
        return Err(Error::Precondition("random_multigraph needs at least 2 nodes".into()));
    }
    let mut rng = SeededRng::new(seed);
    let nodes: Vec<NodeId> = (0..n_nodes).map(|i| id(&format!("n{i}"))).collect();
    let mut b = MultiGraph::builder();
    for v in &nodes {
        b.node(v.clone());
    }
    for _ in 0..n_edges {
        let pair = rng.sample(n_nodes, 2);
        b.edge(nodes[pair[0]].clone(), nodes[pair[1]].clone());
    }
    b.build()
}
