//! Acceptance suite: one line per criterion.
//!
//! Runs without the libtest harness so the lines always print. The process
//! fails if any criterion misses its expected outcome. A criterion listed
//! in `KNOWN_FAILURES` is expected to fail on the measured instances; it is
//! still printed as FAIL, and the suite goes red if it starts passing or
//! fails for a reason other than the one recorded.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use umn::checks::{check_proposition1, check_theorem4, check_theorem5};
use umn::connectivity::{edge_connectivity, internal_connectivity, min_edge_cut, min_edge_cut_from_set};
use umn::generators::{fixture, generate_jlc, pool_audit, random_multigraph, random_network, JlcConfig, FIG4_CONFIG};
use umn::graph::ids;
use umn::rates::Model;
use umn::sim::{gateway_filter, run_generation, Mode, SimConfig, DEFAULT_Q};
use umn::{broadcast_transform, capacity, diversity, lambda_capacity, rate};

use common::*;

struct Outcome {
    pass: bool,
    detail: String,
    /// For a known failure: the measured failure has the recorded cause.
    cause_matches: bool,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into(), cause_matches: false }
}

const KNOWN_FAILURES: &[(u32, &str)] = &[(
    6,
    "the equality clause fails when every minimising sink gets more than C(beta) - w of its \
     cut directly from the trusted source; no adversary can touch those edges",
)];

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if took > limit {
        out.pass = false;
    }
    out.detail = format!("{}; {:.0?} (limit {limit:?})", out.detail, took);
    out
}

fn example1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let n = fixture("fig2").unwrap();
        let (c, l, cb) = (capacity(&n), lambda_capacity(&n), capacity(&broadcast_transform(&n).unwrap()));
        outcome((c, l, cb) == (3, 1, 1), format!("C = {c}, Lambda = {l}, C(beta) = {cb}"))
    })
}

fn example2() -> Outcome {
    timed(Duration::from_secs(1), || {
        let n = fixture("fig3").unwrap();
        let (c, l, cb) = (capacity(&n), lambda_capacity(&n), capacity(&broadcast_transform(&n).unwrap()));
        outcome((c, l, cb) == (3, 3, 3), format!("C = {c}, Lambda = {l}, C(beta) = {cb}"))
    })
}

fn menger() -> Outcome {
    timed(Duration::from_secs(60), || {
        let (mut graphs, mut edge_checks, mut vertex_checks, mut mismatches) = (0, 0, 0, 0);
        for seed in 0..250u64 {
            let g = random_multigraph(2 + (seed % 7) as usize, (seed % 15) as usize, seed).unwrap();
            graphs += 1;
            for s in g.vertices() {
                for t in g.vertices().iter().filter(|t| *t != s) {
                    edge_checks += 1;
                    if edge_connectivity(&g, s, t).unwrap() != brute_edge_cut(&g, s, t) {
                        mismatches += 1;
                    }
                    if !adjacent(&g, s, t) {
                        vertex_checks += 1;
                        if internal_connectivity(&g, s, t).unwrap() != brute_vertex_cut(&g, s, t) {
                            mismatches += 1;
                        }
                    }
                }
            }
        }
        outcome(
            mismatches == 0,
            format!("{graphs} graphs, {edge_checks} edge and {vertex_checks} vertex pairs, {mismatches} mismatches"),
        )
    })
}

fn theorem4() -> Outcome {
    let mut bad = 0;
    for seed in 0..500u64 {
        let n = random_network(2 + (seed % 9) as usize, 1 + (seed % 3) as u32, 0.5, seed).unwrap();
        if !check_theorem4(&n).unwrap().equal {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("500 networks, {bad} mismatches"))
}

fn theorem5() -> Outcome {
    let mut bad = 0;
    for seed in 0..500u64 {
        let n = random_network(2 + (seed % 9) as usize, 1 + (seed % 3) as u32, 0.5, 10_000 + seed).unwrap();
        if !check_theorem5(&n).unwrap().holds {
            bad += 1;
        }
    }
    let mut jlc = 0;
    for d in 1..=4 {
        for seed in 0..25 {
            let cfg = JlcConfig { k: 4 * d, d, n_joins: 8, d_diverse_mode: true, seed };
            let n = generate_jlc(&cfg).unwrap().network().unwrap();
            let r = check_theorem5(&n).unwrap();
            jlc += 1;
            if !(r.tight_applies && r.capacity == d && r.lambda_n == d && r.d_n == d) {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("500 random + {jlc} diverse JLC networks, {bad} violations"))
}

fn proposition1() -> Outcome {
    let beta = broadcast_transform(&fixture("fig3").unwrap()).unwrap();
    let (oa, ss) = (rate(&beta, Model::Omniscient, 1).rate, rate(&beta, Model::SharedSecret, 1).rate);
    let (mut cases, mut ineq_bad, mut eq_expected, mut eq_bad, mut unexplained) = (0, 0, 0, 0, 0);
    for seed in 0..150u64 {
        let n = random_network(3 + (seed % 6) as usize, 3, 0.5, seed).unwrap();
        let b = broadcast_transform(&n).unwrap();
        let cb = capacity(&b);
        for w in (0..=2).filter(|&w| w <= cb) {
            let r = check_proposition1(&n, w).unwrap();
            cases += 1;
            if !r.inequality_holds {
                ineq_bad += 1;
            }
            if r.equality_expected {
                eq_expected += 1;
                if !r.equality_holds {
                    eq_bad += 1;
                    let attackable = b.sinks().iter().any(|t| {
                        min_edge_cut(b.graph(), b.source(), t).unwrap().value == cb
                            && b.graph().multiplicity(b.source(), t).unwrap() + w <= cb
                    });
                    if attackable {
                        unexplained += 1;
                    }
                }
            }
        }
    }
    let pass = (oa, ss) == (1, 2) && ineq_bad == 0 && eq_bad == 0;
    let detail = format!(
        "beta(fig3): R^OA = {oa}, R^SS = {ss}; {cases} cases, {ineq_bad} bound violations, \
         equality failed in {eq_bad}/{eq_expected} ({unexplained} not explained by source-adjacent sinks)"
    );
    Outcome {
        pass,
        detail,
        cause_matches: unexplained == 0 && ineq_bad == 0 && (oa, ss) == (1, 2),
    }
}

fn rate_oracle() -> Outcome {
    let mut bad = 0;
    let mut n_checked = 0;
    for seed in 0..120u64 {
        let n = random_network(2 + (seed % 6) as usize, 2, 0.5, 500 + seed).unwrap();
        for w in 0..=2 {
            for model in [Model::Omniscient, Model::SharedSecret] {
                n_checked += 1;
                if rate(&n, model, w).rate != brute_rate(&n, model, w) {
                    bad += 1;
                }
            }
        }
    }
    outcome(bad == 0, format!("120 networks, {n_checked} evaluations, {bad} mismatches"))
}

fn jlc() -> Outcome {
    let mut bad = 0;
    for seed in 0..60 {
        let out = generate_jlc(&JlcConfig { seed, ..FIG4_CONFIG }).unwrap();
        let profile = diversity(&out.network().unwrap()).unwrap();
        let ok = pool_audit(&out.trace)
            && out.graph.is_acyclic()
            && profile.per_node.values().all(|&d| d == 3)
            && profile.network_diversity == 3;
        if !ok {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("60 seeds, {bad} violations (pool 12, acyclic, 3 parents each, d = 3)"))
}

fn simulation() -> Outcome {
    let fig2 = fixture("fig2").unwrap();
    let a = ids(["v5"]);
    let bounds: Vec<_> = fig2
        .sinks()
        .iter()
        .filter(|t| !a.contains(*t))
        .map(|t| (t.clone(), min_edge_cut_from_set(fig2.graph(), &a, t).unwrap().value))
        .collect();
    let seeds = 100;
    let (mut raw_bad, mut raw_equal, mut bounded_bad) = (0, 0, 0);
    for seed in 0..seeds {
        let cfg = |mode| SimConfig { network: fig2.clone(), adversary: a.clone(), n_src: 3, q: DEFAULT_Q, mode, seed };
        let raw = run_generation(&cfg(Mode::Raw)).unwrap();
        let ranks: Vec<usize> = bounds.iter().map(|(t, _)| raw.per_sink[t].error_rank).collect();
        if ranks.iter().zip(&bounds).any(|(r, (_, k))| r > k) {
            raw_bad += 1;
        }
        if ranks.iter().zip(&bounds).all(|(r, (_, k))| r == k) {
            raw_equal += 1;
        }
        for mode in [Mode::GatewayEnforced, Mode::Transformed] {
            let trace = run_generation(&cfg(mode)).unwrap();
            if trace.per_sink.values().any(|r| r.error_rank > 1) {
                bounded_bad += 1;
            }
        }
    }
    outcome(
        raw_bad == 0 && raw_equal * 100 >= 95 * seeds && bounded_bad == 0,
        format!(
            "{seeds} seeds: raw over bound {raw_bad}, raw at bound {raw_equal}, gateway/transformed over 1: {bounded_bad}"
        ),
    )
}

fn gateway() -> Outcome {
    type Stream = Vec<(u32, char)>;
    // (stream, dropped destinations)
    let table: Vec<(Stream, &str)> = vec![
        (vec![], ""),
        (vec![(7, 'a')], ""),
        (vec![(7, 'a'), (7, 'b'), (7, 'c')], ""),
        (vec![(1, 'a'), (1, 'b'), (2, 'c')], "c"),
        (vec![(1, 'a'), (2, 'b')], "b"),
        (vec![(2, 'a'), (1, 'b'), (2, 'c')], "b"),
        (vec![(1, 'a'), (2, 'b'), (3, 'c'), (1, 'd')], "bc"),
        (vec![(5, 'a'), (5, 'a'), (5, 'a')], ""),
        (vec![(0, 'x'), (9, 'x'), (0, 'y')], "x"),
        (vec![(4, 'a'), (3, 'b'), (3, 'c'), (3, 'd')], "bcd"),
        (vec![(1, 'a'), (1, 'b'), (1, 'c'), (1, 'd'), (8, 'e')], "e"),
    ];
    let mut bad = 0;
    for (stream, dropped) in &table {
        let out = gateway_filter(stream.clone());
        let got: String = out.dropped.iter().map(|(_, d)| *d).collect();
        let kept_ok = out.kept.iter().all(|(p, _)| Some(p) == out.reference.as_ref());
        let reference_ok = out.reference == stream.first().map(|(p, _)| *p);
        if got != *dropped || out.suspicious != !dropped.is_empty() || !kept_ok || !reference_ok {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{} streams, {bad} wrong", table.len()))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "fig2 capacities", example1),
        (2, "fig3 capacities", example2),
        (3, "Menger oracle", menger),
        (4, "broadcast capacity equals Lambda", theorem4),
        (5, "diversity lower bound", theorem5),
        (6, "transformed rate bounds", proposition1),
        (7, "rate oracle", rate_oracle),
        (8, "JLC invariants", jlc),
        (9, "simulation cut bound", simulation),
        (10, "gateway rule", gateway),
    ];
    let mut unexpected = Vec::new();
    for (n, name, run) in criteria {
        let out = run();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == n);
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        match known {
            Some((_, why)) if !out.pass => println!("criterion {n:>2} {verdict}  {name}: {} [known: {why}]", out.detail),
            _ => println!("criterion {n:>2} {verdict}  {name}: {}", out.detail),
        }
        let as_expected = match known {
            None => out.pass,
            Some(_) => !out.pass && out.cause_matches,
        };
        if !as_expected {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria at their expected outcome");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
