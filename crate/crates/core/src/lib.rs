//! Analysis of multicast networks whose relays may pollute the stream.
//!
//! The crate models a network as a directed multigraph with a trusted
//! source, a set of sinks and a set of untrusted nodes, and provides
//!
//! * edge and vertex connectivity with witnesses ([`connectivity`]);
//! * capacity, the broadcast transformation and parent diversity ([`network`]);
//! * worst-case rates against omniscient and shared-secret adversaries ([`rates`]);
//! * numeric checkers for the structural results those rest on ([`checks`]);
//! * random, fixture and pool-based (JLC) topologies ([`generators`]);
//! * a random linear network coding simulator with gateways ([`sim`]);
//! * the `.umn` text format ([`format`]) and Graphviz output ([`dot`]).
//!
//! ```
//! use umn::{capacity, lambda_capacity, parse_network};
//!
//! let n = parse_network("source s\nsink t\nedge s a 2\nedge a t 2\n").unwrap();
//! assert_eq!(capacity(&n), 2);
//! assert_eq!(lambda_capacity(&n), 1);
//! ```

pub mod checks;
pub mod connectivity;
pub mod dot;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod network;
pub mod rates;
pub mod rng;
pub mod sim;

mod flow;

pub use error::{Error, Result};
pub use format::{parse_network, serialize_network};
pub use graph::{Edge, MultiGraph, NodeId};
pub use network::{broadcast_transform, capacity, diversity, lambda_capacity, UntrustedNetwork};
pub use rates::{rate, Model, RateReport};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/multigraphs.md")]
    mod multigraphs {}
    #[doc = include_str!("../../../book/src/connectivity.md")]
    mod connectivity {}
    #[doc = include_str!("../../../book/src/rates.md")]
    mod rates {}
    #[doc = include_str!("../../../book/src/broadcast.md")]
    mod broadcast {}
    #[doc = include_str!("../../../book/src/diversity.md")]
    mod diversity {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
