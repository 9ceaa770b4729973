use std::collections::{BTreeMap, BTreeSet};

use umn::connectivity::min_edge_cut_from_set;
use umn::generators::{fixture, random_network};
use umn::graph::{id, ids};
use umn::sim::*;
use umn::{broadcast_transform, capacity, NodeId, UntrustedNetwork};

fn config(network: UntrustedNetwork, adversary: BTreeSet<NodeId>, n_src: usize, mode: Mode, seed: u64) -> SimConfig {
    SimConfig { network, adversary, n_src, q: DEFAULT_Q, mode, seed }
}

/// Every node outside the adversary sends only combinations of what it got.
fn honest_outputs_in_span(trace: &SimTrace, cfg: &SimConfig) -> bool {
    let f = PrimeField::new(cfg.q).unwrap();
    let n = &cfg.network;
    n.graph()
        .vertices()
        .iter()
        .filter(|v| *v != n.source() && !cfg.adversary.contains(*v))
        .all(|v| {
            let rows: Vec<Vec<u64>> = trace.received_by(v).map(|p| p.payload.clone()).collect();
            trace.sent_by(v).all(|p| f.in_span(&rows, &p.payload))
        })
}

#[test]
fn clean_runs_decode() {
    let fig3 = fixture("fig3").unwrap();
    let c = capacity(&fig3);
    let mut all = 0;
    for seed in 0..100 {
        let cfg = config(fig3.clone(), BTreeSet::new(), c, Mode::Raw, seed);
        let trace = run_generation(&cfg).unwrap();
        assert!(trace.per_sink.values().all(|r| r.error_rank == 0));
        if decode_check(&trace, &cfg).values().all(|&ok| ok) {
            all += 1;
        }
    }
    assert!(all >= 95, "{all}/100");
}

#[test]
fn overfull_generation_never_decodes() {
    let fig3 = fixture("fig3").unwrap();
    for seed in 0..20 {
        let cfg = config(fig3.clone(), BTreeSet::new(), 4, Mode::Raw, seed);
        let trace = run_generation(&cfg).unwrap();
        assert!(decode_check(&trace, &cfg).values().any(|&ok| !ok));
        assert!(!trace.warnings.is_empty());
    }
}

#[test]
fn raw_pollution_fills_the_cut() {
    let fig2 = fixture("fig2").unwrap();
    let a = ids(["v5"]);
    let bound: BTreeMap<NodeId, usize> = fig2
        .sinks()
        .iter()
        .filter(|t| !a.contains(*t))
        .map(|t| (t.clone(), min_edge_cut_from_set(fig2.graph(), &a, t).unwrap().value))
        .collect();
    assert_eq!(bound[&id("v9")], 3);
    let mut contaminated = 0;
    for seed in 0..100 {
        let cfg = config(fig2.clone(), a.clone(), 3, Mode::Raw, seed);
        let trace = run_generation(&cfg).unwrap();
        for (t, r) in &trace.per_sink {
            assert!(r.error_rank <= bound[t]);
        }
        if trace.per_sink[&id("v9")].error_rank >= 1 {
            contaminated += 1;
        }
        assert!(honest_outputs_in_span(&trace, &cfg));
        assert!(trace.drops.is_empty() && trace.flagged.is_empty());
    }
    assert!(contaminated >= 95);
}

#[test]
fn gateway_keeps_one_payload_per_node() {
    let fig2 = fixture("fig2").unwrap();
    for seed in 0..50 {
        let cfg = config(fig2.clone(), ids(["v4", "v5"]), 3, Mode::GatewayEnforced, seed);
        let trace = run_generation(&cfg).unwrap();
        for u in fig2.untrusted() {
            let distinct: BTreeSet<&Vec<u64>> = trace.sent_by(u).map(|p| &p.payload).collect();
            assert!(distinct.len() <= 1, "{u} leaked {} payloads", distinct.len());
        }
        assert_eq!(trace.flagged, ids(["v4", "v5"]));
        assert!(trace.per_sink.values().all(|r| r.error_rank <= 2));
        assert!(honest_outputs_in_span(&trace, &cfg));
    }
}

#[test]
fn transformed_mode_matches_raw_on_the_transform() {
    for seed in 0..40 {
        let n = random_network(7, 2, 0.6, seed).unwrap();
        let a: BTreeSet<NodeId> = n.untrusted().iter().take(2).cloned().collect();
        let on_n = run_generation(&config(n.clone(), a.clone(), 2, Mode::Transformed, seed)).unwrap();
        let beta = broadcast_transform(&n).unwrap();
        let on_beta = run_generation(&config(beta, a.clone(), 2, Mode::Raw, seed)).unwrap();
        for trace in [&on_n, &on_beta] {
            assert!(trace.per_sink.values().all(|r| r.error_rank <= a.len()));
        }
        assert!(on_beta.slots.values().all(|&(_, count)| count <= 1));
    }
}

#[test]
fn deterministic_and_serializable() {
    let cfg = config(fixture("fig2").unwrap(), ids(["v5"]), 2, Mode::GatewayEnforced, 17);
    let a = run_generation(&cfg).unwrap();
    assert_eq!(a, run_generation(&cfg).unwrap());
    let back: SimTrace = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(back, a);
    let csv = a.to_csv();
    assert_eq!(csv.lines().count(), 1 + 8);
    assert!(csv.lines().nth(1).unwrap().starts_with("v1,"));
}

#[test]
fn gateway_table() {
    let out = gateway_filter([("p", 1), ("p", 2), ("q", 3)]);
    assert_eq!(out.dropped, vec![("q", 3)]);
    assert!(out.suspicious);
    let out = gateway_filter([("p", 1), ("p", 2)]);
    assert!(out.dropped.is_empty() && !out.suspicious);
}
