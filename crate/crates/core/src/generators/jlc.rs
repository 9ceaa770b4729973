//! Peer-to-peer topologies grown from a server-side pool of download links.
//!
//! The pool always holds `k` links, each owned by a node that can serve
//! one unit stream. A joining node takes `d` links out of the pool (and
//! gets one edge per link from the link's owner), then puts `d` links of
//! its own back in.
//!
//! In diverse mode the `d` links must come from `d` different parents,
//! where every link owned by the source counts as a parent of its own: a
//! source link stands for a separate unit stream, exactly as in parent
//! diversity `d(v) = |Γ⁻(v) \ {s}| + |[s,v]|`. Without that rule the first
//! join could never succeed, since the source owns the whole initial pool.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{id, MultiGraph, NodeId};
use crate::network::UntrustedNetwork;
use crate::rng::SeededRng;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JlcConfig {
    /// Links in the server pool.
    pub k: usize,
    /// Links taken per join.
    pub d: usize,
    pub n_joins: usize,
    pub d_diverse_mode: bool,
    pub seed: u64,
}

/// A download link waiting in the pool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolLink {
    pub owner: NodeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinRecord {
    pub node: NodeId,
    /// Links drawn per owner, sorted by owner.
    pub drawn: Vec<(NodeId, usize)>,
    /// Links the new node put back.
    pub added: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JlcTrace {
    pub k: usize,
    pub source: NodeId,
    pub joins: Vec<JoinRecord>,
}

impl JlcTrace {
    /// One line per join: `join <node> <- owner:count,owner:count,...`.
    pub fn to_log(&self) -> String {
        let mut out = String::new();
        for j in &self.joins {
            let parts: Vec<String> = j.drawn.iter().map(|(o, c)| format!("{o}:{c}")).collect();
            writeln!(out, "join {} <- {}", j.node, parts.join(",")).unwrap();
        }
        out
    }

    /// Reads a join log back. Every node is taken to return as many links
    /// as it drew.
    pub fn from_log(k: usize, source: NodeId, text: &str) -> Result<JlcTrace> {
        let mut joins = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let bad = || Error::Parse {
                line,
                message: format!("expected `join <node> <- owner:count,...`, got {raw:?}"),
            };
            let rest = raw.trim().strip_prefix("join ").ok_or_else(bad)?;
            let (node, drawn) = rest.split_once(" <- ").ok_or_else(bad)?;
            let node = NodeId::new(node.trim()).map_err(|_| bad())?;
            let mut parts = Vec::new();
            for item in drawn.split(',') {
                let (owner, count) = item.split_once(':').ok_or_else(bad)?;
                let owner = NodeId::new(owner.trim()).map_err(|_| bad())?;
                let count: usize = count.trim().parse().map_err(|_| bad())?;
                parts.push((owner, count));
            }
            let added = parts.iter().map(|(_, c)| c).sum();
            joins.push(JoinRecord { node, drawn: parts, added });
        }
        Ok(JlcTrace { k, source, joins })
    }
}

/// Generated topology together with its join trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JlcNetwork {
    pub graph: MultiGraph,
    pub source: NodeId,
    pub trace: JlcTrace,
}

impl JlcNetwork {
    /// Every non-source node as an untrusted sink. Fails when nobody joined,
    /// since a network needs at least one sink.
    pub fn network(&self) -> Result<UntrustedNetwork> {
        let sinks = self
            .graph
            .vertices()
            .iter()
            .filter(|v| **v != self.source)
            .cloned()
            .collect();
        UntrustedNetwork::all_untrusted(self.graph.clone(), self.source.clone(), sinks)
    }
}

/// Pick `d` pool positions for the next join.
fn draw(pool: &[PoolLink], source: &NodeId, d: usize, diverse: bool, rng: &mut SeededRng, join: usize) -> Result<Vec<usize>> {
    if !diverse {
        return Ok(rng.sample(pool.len(), d));
    }
    // One class per source link, one per other owner (its first link stands in).
    let mut classes: Vec<usize> = Vec::new();
    let mut seen: BTreeSet<&NodeId> = BTreeSet::new();
    for (pos, link) in pool.iter().enumerate() {
        if link.owner == *source || seen.insert(&link.owner) {
            classes.push(pos);
        }
    }
    if classes.len() < d {
        return Err(Error::Generation {
            join,
            reason: format!("only {} distinct parents own pool links, need {d}", classes.len()),
        });
    }
    Ok(rng.sample(classes.len(), d).into_iter().map(|c| classes[c]).collect())
}

/// Grows a network by `n_joins` joins named `v1, v2, ...` behind source `s`.
pub fn generate_jlc(cfg: &JlcConfig) -> Result<JlcNetwork> {
    if cfg.k == 0 || cfg.d == 0 || cfg.d > cfg.k {
        return Err(Error::Precondition(format!(
            "need 1 <= d <= k, got k = {}, d = {}",
            cfg.k, cfg.d
        )));
    }
    let source = id("s");
    let mut rng = SeededRng::new(cfg.seed);
    let mut pool: Vec<PoolLink> = vec![PoolLink { owner: source.clone() }; cfg.k];
    let mut b = MultiGraph::builder();
    b.node(source.clone());
    let mut joins = Vec::with_capacity(cfg.n_joins);

    for join in 1..=cfg.n_joins {
        let node = id(&format!("v{join}"));
        let mut picked = draw(&pool, &source, cfg.d, cfg.d_diverse_mode, &mut rng, join)?;
        let mut drawn: BTreeMap<NodeId, usize> = BTreeMap::new();
        for &p in &picked {
            *drawn.entry(pool[p].owner.clone()).or_default() += 1;
        }
        picked.sort_unstable_by(|a, b| b.cmp(a));
        for p in picked {
            pool.remove(p);
        }
        for (owner, &count) in &drawn {
            b.edges(owner.clone(), node.clone(), count as u32);
        }
        pool.extend(std::iter::repeat_n(PoolLink { owner: node.clone() }, cfg.d));
        debug_assert_eq!(pool.len(), cfg.k);
        joins.push(JoinRecord {
            node,
            drawn: drawn.into_iter().collect(),
            added: cfg.d,
        });
    }

    Ok(JlcNetwork {
        graph: b.build()?,
        source: source.clone(),
        trace: JlcTrace { k: cfg.k, source, joins },
    })
}

/// Replays a trace and reports whether the pool held exactly `k` links
/// after every join (and no join drew a link that was not there).
pub fn pool_audit(trace: &JlcTrace) -> bool {
    let mut pool: BTreeMap<&NodeId, usize> = BTreeMap::from([(&trace.source, trace.k)]);
    for j in &trace.joins {
        for (owner, count) in &j.drawn {
            match pool.get_mut(owner) {
                Some(have) if *have >= *count => *have -= count,
                _ => return false,
            }
        }
        *pool.entry(&j.node).or_default() += j.added;
        if pool.values().sum::<usize>() != trace.k {
            return false;
        }
    }
    true
}
