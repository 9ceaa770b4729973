//! Untrusted multicast networks `(G, s, T, U)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::connectivity::{edge_connectivity, internal_connectivity};
use crate::error::{Error, Result};
use crate::graph::{Edge, MultiGraph, NodeId, TopoOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UntrustedNetwork {
    graph: MultiGraph,
    source: NodeId,
    sinks: BTreeSet<NodeId>,
    untrusted: BTreeSet<NodeId>,
}

impl UntrustedNetwork {
    pub fn new(
        graph: MultiGraph,
        source: NodeId,
        sinks: BTreeSet<NodeId>,
        untrusted: BTreeSet<NodeId>,
    ) -> Result<Self> {
        graph.require(&source)?;
        graph.require_all(&sinks)?;
        graph.require_all(&untrusted)?;
        if sinks.is_empty() {
            return Err(Error::InvalidNetwork("at least one sink is required".into()));
        }
        if sinks.contains(&source) {
            return Err(Error::InvalidNetwork(format!("source {source} is also a sink")));
        }
        if untrusted.contains(&source) {
            return Err(Error::InvalidNetwork(format!("source {source} cannot be untrusted")));
        }
        Ok(UntrustedNetwork {
            graph,
            source,
            sinks,
            untrusted,
        })
    }

    /// Network whose untrusted set is every vertex except the source.
    pub fn all_untrusted(graph: MultiGraph, source: NodeId, sinks: BTreeSet<NodeId>) -> Result<Self> {
        let untrusted = graph
            .vertices()
            .iter()
            .filter(|v| **v != source)
            .cloned()
            .collect();
        Self::new(graph, source, sinks, untrusted)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn source(&self) -> &NodeId {
        &self.source
    }

    pub fn sinks(&self) -> &BTreeSet<NodeId> {
        &self.sinks
    }

    pub fn untrusted(&self) -> &BTreeSet<NodeId> {
        &self.untrusted
    }

    /// `U = V \ {s}`.
    pub fn everything_untrusted(&self) -> bool {
        self.untrusted.len() + 1 == self.graph.vertex_count()
    }

    pub fn with_untrusted(&self, untrusted: BTreeSet<NodeId>) -> Result<Self> {
        Self::new(self.graph.clone(), self.source.clone(), self.sinks.clone(), untrusted)
    }

    /// `K(s,t)` for every sink.
    pub fn sink_edge_connectivity(&self) -> BTreeMap<NodeId, usize> {
        self.sinks
            .iter()
            .map(|t| {
                let k = edge_connectivity(&self.graph, &self.source, t).expect("validated sink");
                (t.clone(), k)
            })
            .collect()
    }

    /// `λ(s,t)` for every sink.
    pub fn sink_internal_connectivity(&self) -> BTreeMap<NodeId, usize> {
        self.sinks
            .iter()
            .map(|t| {
                let l = internal_connectivity(&self.graph, &self.source, t).expect("validated sink");
                (t.clone(), l)
            })
            .collect()
    }
}

/// `C(N)`: the smallest `K(s,t)` over sinks.
pub fn capacity(n: &UntrustedNetwork) -> usize {
    n.sink_edge_connectivity()
        .into_values()
        .min()
        .expect("sinks are nonempty")
}

/// `Λ(N)`: the smallest `λ(s,t)` over sinks.
pub fn lambda_capacity(n: &UntrustedNetwork) -> usize {
    n.sink_internal_connectivity()
        .into_values()
        .min()
        .expect("sinks are nonempty")
}

/// `β(N)`: every untrusted `u` keeps its in-edges, gains the single edge
/// `(u, u+, 1)`, and hands its out-edges to the trusted relay `u+` with
/// head and index unchanged.
pub fn broadcast_transform(n: &UntrustedNetwork) -> Result<UntrustedNetwork> {
    let g = &n.graph;
    for u in &n.untrusted {
        let relay = u.relay();
        if g.contains(&relay) {
            return Err(Error::NameCollision(relay));
        }
    }
    let vertices = g
        .vertices()
        .iter()
        .cloned()
        .chain(n.untrusted.iter().map(NodeId::relay));
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            if n.untrusted.contains(&e.tail) {
                Edge::new(e.tail.relay(), e.head.clone(), e.index)
            } else {
                e.clone()
            }
        })
        .chain(n.untrusted.iter().map(|u| Edge::new(u.clone(), u.relay(), 1)));
    let graph = MultiGraph::new(vertices, edges)?;
    UntrustedNetwork::new(graph, n.source.clone(), n.sinks.clone(), n.untrusted.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiversityProfile {
    pub per_node: BTreeMap<NodeId, usize>,
    pub network_diversity: usize,
}

/// Parent diversity `d(v) = |Γ⁻(v) \ {s}| + |[s,v]|` of every non-source
/// vertex, and its minimum `d(N)`. Only defined on acyclic networks.
pub fn diversity(n: &UntrustedNetwork) -> Result<DiversityProfile> {
    if let TopoOrder::Cyclic(cycle) = n.graph.topological_order() {
        return Err(Error::Cyclic(cycle));
    }
    let g = &n.graph;
    let s = &n.source;
    let mut per_node = BTreeMap::new();
    for v in g.vertices().iter().filter(|v| *v != s) {
        let mut parents = g.parents(v)?;
        parents.remove(s);
        per_node.insert(v.clone(), parents.len() + g.multiplicity(s, v)?);
    }
    let network_diversity = per_node.values().copied().min().unwrap_or(0);
    Ok(DiversityProfile {
        per_node,
        network_diversity,
    })
}
