//! Achievable rates against at most `w` adversarial nodes.
//!
//! Both benchmarks minimise over adversary sets `A ⊆ U` with `|A| ≤ w` and
//! honest sinks `t ∈ T \ A`:
//!
//! * omniscient adversary: `[K(s,t) - 2 K(A,t)]⁺`
//! * shared secret: `[K(s,t) - K(A,t)]⁺`
//!
//! `K(∅,t)` is taken as 0, so a zero budget gives the plain capacity.
//! The enumeration is exact and exponential in `w`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::connectivity::{edge_connectivity, min_edge_cut_from_set};
use crate::error::Error;
use crate::graph::NodeId;
use crate::network::UntrustedNetwork;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    /// Omniscient adversary; each adversarial cut unit costs two.
    #[serde(rename = "OA")]
    Omniscient,
    /// Shared secret between source and sinks; each unit costs one.
    #[serde(rename = "SS")]
    SharedSecret,
}

impl Model {
    pub fn penalty(self) -> usize {
        match self {
            Model::Omniscient => 2,
            Model::SharedSecret => 1,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Omniscient => "OA",
            Model::SharedSecret => "SS",
        })
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "oa" => Ok(Model::Omniscient),
            "ss" => Ok(Model::SharedSecret),
            _ => Err(Error::Precondition(format!("unknown rate model {s:?} (expected oa or ss)"))),
        }
    }
}

/// `K(s,t)` and `K(A,t)` for one adversary set and honest sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutTerm {
    pub adversary: BTreeSet<NodeId>,
    pub sink: NodeId,
    pub source_cut: usize,
    pub adversary_cut: usize,
}

impl CutTerm {
    pub fn rate(&self, model: Model) -> usize {
        self.source_cut
            .saturating_sub(model.penalty() * self.adversary_cut)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTerm {
    pub adversary: BTreeSet<NodeId>,
    pub sink: NodeId,
    pub term: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RateReport {
    pub model: Model,
    pub budget_w: usize,
    pub rate: usize,
    pub worst_adversary: BTreeSet<NodeId>,
    pub worst_sink: NodeId,
    pub per_pair_terms: Vec<PairTerm>,
    /// Set when the requested budget exceeded `|U|` and was lowered to it.
    pub clamped: bool,
}

/// Index combinations of `k` out of `n`, in lexicographic order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (k <= n).then(|| (0..k).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut c = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                next = Some(c);
                break;
            }
        }
        Some(current)
    })
}

/// Every adversary set of size at most `w` (smallest first, then in
/// lexicographic order of the sorted untrusted set).
pub fn adversary_sets(untrusted: &BTreeSet<NodeId>, w: usize) -> Vec<BTreeSet<NodeId>> {
    let pool: Vec<&NodeId> = untrusted.iter().collect();
    (0..=w.min(pool.len()))
        .flat_map(|k| combinations(pool.len(), k))
        .map(|idx| idx.into_iter().map(|i| pool[i].clone()).collect())
        .collect()
}

/// The cut pair for every `(A, t)` the rate minimises over.
pub fn cut_terms(n: &UntrustedNetwork, w: usize) -> Vec<CutTerm> {
    let g = n.graph();
    let source_cuts: BTreeMap<&NodeId, usize> = n
        .sinks()
        .iter()
        .map(|t| (t, edge_connectivity(g, n.source(), t).expect("validated sink")))
        .collect();
    let mut terms = Vec::new();
    for adversary in adversary_sets(n.untrusted(), w) {
        for t in n.sinks().iter().filter(|t| !adversary.contains(*t)) {
            let adversary_cut = if adversary.is_empty() {
                0
            } else {
                min_edge_cut_from_set(g, &adversary, t)
                    .expect("adversary excludes the sink")
                    .value
            };
            terms.push(CutTerm {
                adversary: adversary.clone(),
                sink: t.clone(),
                source_cut: source_cuts[t],
                adversary_cut,
            });
        }
    }
    terms
}

/// Reduces precomputed terms; ties keep the first term in enumeration order.
pub fn rate_from_terms(terms: &[CutTerm], model: Model, w: usize, clamped: bool) -> RateReport {
    let per_pair_terms: Vec<PairTerm> = terms
        .iter()
        .map(|c| PairTerm {
            adversary: c.adversary.clone(),
            sink: c.sink.clone(),
            term: c.rate(model),
        })
        .collect();
    let worst = per_pair_terms
        .iter()
        .reduce(|best, p| if p.term < best.term { p } else { best })
        .expect("the empty adversary set always yields a term");
    RateReport {
        model,
        budget_w: w,
        rate: worst.term,
        worst_adversary: worst.adversary.clone(),
        worst_sink: worst.sink.clone(),
        clamped,
        per_pair_terms,
    }
}

/// `R^OA(N,w)` or `R^SS(N,w)` with the minimising adversary set and sink.
/// A budget above `|U|` is clamped to `|U|` and flagged.
pub fn rate(n: &UntrustedNetwork, model: Model, w: usize) -> RateReport {
    let clamped = w > n.untrusted().len();
    let w = w.min(n.untrusted().len());
    rate_from_terms(&cut_terms(n, w), model, w, clamped)
}
