//! One generation of random linear network coding with polluters.
//!
//! A payload has `n_src + n_adv` coordinates over `GF(q)`. The first
//! `n_src` carry coefficients of the source symbols. The rest are
//! adversarial coordinates: every out-edge of every adversary owns one (its
//! *slot*), and whatever the adversary puts on that edge is nonzero there.
//! At a sink, the rank of the adversarial block is the dimension of the
//! injected error.
//!
//! Honest nodes forward uniform random combinations of what they received.
//! Trusted nodes draw a fresh combination per out-edge. Untrusted honest
//! nodes do the same in [`Mode::Raw`], but obey the broadcast constraint
//! (one combination copied to all out-edges) in the other two modes.
//!
//! * [`Mode::Raw`]: adversaries put an independent random vector on each
//!   out-edge.
//! * [`Mode::GatewayEnforced`]: as raw, but every untrusted node's output
//!   passes through [`gateway_filter`]; differing payloads are dropped and
//!   never reach the head of their edge.
//! * [`Mode::Transformed`]: adversaries send one vector, nonzero in their
//!   first slot, copied to every out-edge.

mod field;
mod gateway;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, NodeId, TopoOrder};
use crate::network::{capacity, UntrustedNetwork};
use crate::rng::SeededRng;

pub use field::PrimeField;
pub use gateway::{gateway_filter, GatewayOutcome};

pub const DEFAULT_Q: u64 = 65521;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Raw,
    #[serde(rename = "gateway")]
    GatewayEnforced,
    Transformed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Raw => "raw",
            Mode::GatewayEnforced => "gateway",
            Mode::Transformed => "transformed",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Mode::Raw),
            "gateway" | "gateway_enforced" => Ok(Mode::GatewayEnforced),
            "transformed" => Ok(Mode::Transformed),
            other => Err(Error::Precondition(format!(
                "unknown mode {other:?} (expected raw, gateway or transformed)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub network: UntrustedNetwork,
    /// Must be a subset of the untrusted nodes.
    pub adversary: BTreeSet<NodeId>,
    pub n_src: usize,
    pub q: u64,
    pub mode: Mode,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packet {
    pub payload: Vec<u64>,
    pub origin_edge: Edge,
    pub generation: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SinkRanks {
    pub received_rank: usize,
    pub message_rank: usize,
    pub error_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Drop {
    pub node: NodeId,
    pub edge: Edge,
    pub generation: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimTrace {
    pub n_src: usize,
    pub n_adv: usize,
    pub q: u64,
    pub mode: Mode,
    pub generation: u64,
    /// Honest sinks only; corrupted sinks are not judged.
    pub per_sink: BTreeMap<NodeId, SinkRanks>,
    pub drops: Vec<Drop>,
    pub flagged: BTreeSet<NodeId>,
    /// First adversarial coordinate and slot count of each adversary.
    pub slots: BTreeMap<NodeId, (usize, usize)>,
    /// Every packet that was delivered, in emission order.
    pub packets: Vec<Packet>,
    pub warnings: Vec<String>,
}

impl SimTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace is serializable")
    }

    /// `sink,received_rank,message_rank,error_rank,decoded`, one row per sink.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sink,received_rank,message_rank,error_rank,decoded\n");
        for (t, r) in &self.per_sink {
            let decoded = decodes(r, self.n_src);
            writeln!(
                out,
                "{t},{},{},{},{decoded}",
                r.received_rank, r.message_rank, r.error_rank
            )
            .unwrap();
        }
        out
    }

    /// Packets delivered into `v`.
    pub fn received_by<'a>(&'a self, v: &'a NodeId) -> impl Iterator<Item = &'a Packet> + 'a {
        self.packets.iter().filter(move |p| p.origin_edge.head == *v)
    }

    /// Packets `v` put on its out-edges that were delivered.
    pub fn sent_by<'a>(&'a self, v: &'a NodeId) -> impl Iterator<Item = &'a Packet> + 'a {
        self.packets.iter().filter(move |p| p.origin_edge.tail == *v)
    }
}

fn decodes(r: &SinkRanks, n_src: usize) -> bool {
    r.message_rank == n_src && r.error_rank == 0
}

fn combine(f: PrimeField, inputs: &[Vec<u64>], width: usize, rng: &mut SeededRng) -> Vec<u64> {
    let mut out = vec![0; width];
    for row in inputs {
        let c = f.random(rng);
        f.axpy(&mut out, c, row);
    }
    out
}

fn polluted(f: PrimeField, width: usize, slot: usize, rng: &mut SeededRng) -> Vec<u64> {
    let mut v: Vec<u64> = (0..width).map(|_| f.random(rng)).collect();
    v[slot] = f.random_nonzero(rng);
    v
}

/// Runs generation 0 of `cfg`.
pub fn run_generation(cfg: &SimConfig) -> Result<SimTrace> {
    const GENERATION: u64 = 0;
    let f = PrimeField::new(cfg.q)?;
    let n = &cfg.network;
    let g = n.graph();
    if cfg.n_src == 0 {
        return Err(Error::Precondition("n_src must be positive".into()));
    }
    if let Some(a) = cfg.adversary.iter().find(|a| !n.untrusted().contains(*a)) {
        return Err(Error::Precondition(format!("adversary {a} is not untrusted")));
    }
    let order = match g.topological_order() {
        TopoOrder::Acyclic(order) => order,
        TopoOrder::Cyclic(cycle) => {
            let names: Vec<&str> = cycle.iter().map(NodeId::as_str).collect();
            return Err(Error::Precondition(format!(
                "simulation needs an acyclic network (cycle: {})",
                names.join(" -> ")
            )));
        }
    };
    let mut warnings = Vec::new();
    let c = capacity(n);
    if cfg.n_src > c {
        warnings.push(format!("n_src = {} exceeds capacity {c}; no sink can decode", cfg.n_src));
    }

    let mut slots = BTreeMap::new();
    let mut next = cfg.n_src;
    for a in &cfg.adversary {
        let count = g.outdegree(a)?;
        slots.insert(a.clone(), (next, count));
        next += count;
    }
    let width = next;

    let mut rng = SeededRng::new(cfg.seed);
    let mut inbox: BTreeMap<NodeId, Vec<Vec<u64>>> = BTreeMap::new();
    let mut packets = Vec::new();
    let mut drops = Vec::new();
    let mut flagged = BTreeSet::new();

    for v in &order {
        let out: Vec<Edge> = g.out_edges(v)?.cloned().collect();
        if out.is_empty() {
            continue;
        }
        let inputs = inbox.get(v).cloned().unwrap_or_default();
        let untrusted = n.untrusted().contains(v);
        let payloads: Vec<Vec<u64>> = if v == n.source() {
            out.iter()
                .map(|_| {
                    let mut p: Vec<u64> = (0..cfg.n_src).map(|_| f.random(&mut rng)).collect();
                    p.resize(width, 0);
                    p
                })
                .collect()
        } else if let Some(&(first, _)) = slots.get(v) {
            match cfg.mode {
                Mode::Raw | Mode::GatewayEnforced => (0..out.len())
                    .map(|j| polluted(f, width, first + j, &mut rng))
                    .collect(),
                Mode::Transformed => vec![polluted(f, width, first, &mut rng); out.len()],
            }
        } else if untrusted && cfg.mode != Mode::Raw {
            vec![combine(f, &inputs, width, &mut rng); out.len()]
        } else {
            out.iter().map(|_| combine(f, &inputs, width, &mut rng)).collect()
        };

        let stream = payloads.into_iter().zip(out);
        let delivered: Vec<(Vec<u64>, Edge)> = if untrusted && cfg.mode == Mode::GatewayEnforced {
            let outcome = gateway_filter(stream);
            if outcome.suspicious {
                flagged.insert(v.clone());
            }
            drops.extend(outcome.dropped.into_iter().map(|(_, edge)| Drop {
                node: v.clone(),
                edge,
                generation: GENERATION,
            }));
            outcome.kept
        } else {
            stream.collect()
        };
        for (payload, edge) in delivered {
            inbox.entry(edge.head.clone()).or_default().push(payload.clone());
            packets.push(Packet {
                payload,
                origin_edge: edge,
                generation: GENERATION,
            });
        }
    }

    let mut per_sink = BTreeMap::new();
    for t in n.sinks().iter().filter(|t| !cfg.adversary.contains(*t)) {
        let rows = inbox.get(t).map(Vec::as_slice).unwrap_or(&[]);
        per_sink.insert(
            t.clone(),
            SinkRanks {
                received_rank: f.rank(rows, 0..width),
                message_rank: f.rank(rows, 0..cfg.n_src),
                error_rank: f.rank(rows, cfg.n_src..width),
            },
        );
    }

    Ok(SimTrace {
        n_src: cfg.n_src,
        n_adv: width - cfg.n_src,
        q: cfg.q,
        mode: cfg.mode,
        generation: GENERATION,
        per_sink,
        drops,
        flagged,
        slots,
        packets,
        warnings,
    })
}

/// Whether each honest sink can recover all `n_src` symbols untainted:
/// full message rank and zero error rank.
pub fn decode_check(trace: &SimTrace, cfg: &SimConfig) -> BTreeMap<NodeId, bool> {
    trace
        .per_sink
        .iter()
        .map(|(t, r)| (t.clone(), decodes(r, cfg.n_src)))
        .collect()
}
