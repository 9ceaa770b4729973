//! Instance sources: reconstructed example networks, random networks for
//! property runs, and JLC-style peer-to-peer growth.

mod fixtures;
mod jlc;
mod random;

pub use fixtures::{fixture, fixture_text, Fixture, FIG4_CONFIG};
pub use jlc::{generate_jlc, pool_audit, JlcConfig, JlcNetwork, JlcTrace, JoinRecord, PoolLink};
pub use random::{random_multigraph, random_network};
