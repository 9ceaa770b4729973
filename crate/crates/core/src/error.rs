use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid node id {0:?}: expected ASCII alphanumerics, '_' or '-', optionally followed by '+' markers")]
    InvalidNodeId(String),

    #[error("unknown node {0}")]
    UnknownNode(NodeId),

    #[error("self-loop on {0} is not allowed")]
    SelfLoop(NodeId),

    #[error("edge {tail}->{head} #{index} breaks index contiguity for that pair")]
    EdgeIndex { tail: NodeId, head: NodeId, index: u32 },

    #[error("source and target must differ (both are {0})")]
    SameEndpoints(NodeId),

    #[error("vertex cut undefined: t adjacent to s ({0} -> {1})")]
    VertexCutUndefined(NodeId, NodeId),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("broadcast transform: {0} already exists; rename it before transforming")]
    NameCollision(NodeId),

    #[error("diversity undefined on cyclic network (cycle: {})", join(.0))]
    Cyclic(Vec<NodeId>),

    #[error("theorem hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("generation failed at join {join}: {reason}")]
    Generation { join: usize, reason: String },

    #[error("field order {0} is not a prime below 2^32")]
    NotPrime(u64),

    #[error("unknown fixture {0:?} (expected fig2, fig3 or fig4)")]
    UnknownFixture(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn join(ids: &[NodeId]) -> String {
    ids.iter().map(NodeId::as_str).collect::<Vec<_>>().join(" -> ")
}
