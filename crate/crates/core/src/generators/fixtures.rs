//! The three worked example networks, shipped as `.umn` files.
//!
//! Only their numeric properties are known, so the topologies are
//! reconstructions built to have exactly those properties. Loading a
//! fixture re-checks them, so an edited file fails fast.

use std::fmt;
use std::str::FromStr;

use crate::connectivity::{edge_connectivity, internal_connectivity};
use crate::error::{Error, Result};
use crate::format::parse_network;
use crate::generators::JlcConfig;
use crate::graph::id;
use crate::network::{diversity, UntrustedNetwork};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fixture {
    /// `K(s, v_i) = 3` everywhere but `λ(s, v5) = 1`.
    Fig2,
    /// `K(s, v_i) = λ(s, v_i) = 3` everywhere.
    Fig3,
    /// Diverse JLC network with `k = 12`, `d = 3`.
    Fig4,
}

/// Parameters that produced `fig4.umn`.
pub const FIG4_CONFIG: JlcConfig = JlcConfig {
    k: 12,
    d: 3,
    n_joins: 9,
    d_diverse_mode: true,
    seed: 4,
};

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::Fig2, Fixture::Fig3, Fixture::Fig4];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Fig2 => "fig2",
            Fixture::Fig3 => "fig3",
            Fixture::Fig4 => "fig4",
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fixture {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFixture(s.to_owned()))
    }
}

pub fn fixture_text(f: Fixture) -> &'static str {
    match f {
        Fixture::Fig2 => include_str!("../../fixtures/fig2.umn"),
        Fixture::Fig3 => include_str!("../../fixtures/fig3.umn"),
        Fixture::Fig4 => include_str!("../../fixtures/fig4.umn"),
    }
}

/// Loads a fixture by name (`fig2`, `fig3`, `fig4`) and checks its contract.
pub fn fixture(name: &str) -> Result<UntrustedNetwork> {
    let f: Fixture = name.parse()?;
    let n = parse_network(fixture_text(f))?;
    check_contract(f, &n)?;
    Ok(n)
}

fn drift(f: Fixture, what: String) -> Error {
    Error::InvalidNetwork(format!("fixture {f} drifted: {what}"))
}

fn check_contract(f: Fixture, n: &UntrustedNetwork) -> Result<()> {
    let g = n.graph();
    let s = n.source();
    let others: Vec<_> = g.vertices().iter().filter(|v| *v != s).cloned().collect();
    if n.sinks().len() != others.len() || !n.everything_untrusted() {
        return Err(drift(f, "every non-source node must be an untrusted sink".into()));
    }
    match f {
        Fixture::Fig2 | Fixture::Fig3 => {
            let roster: Vec<_> = (1..=9).map(|i| id(&format!("v{i}"))).collect();
            if others != roster {
                return Err(drift(f, "roster must be s, v1..v9".into()));
            }
            for t in &roster {
                let k = edge_connectivity(g, s, t)?;
                let l = internal_connectivity(g, s, t)?;
                let want_l = match f {
                    Fixture::Fig2 if t == &id("v5") => Some(1),
                    Fixture::Fig2 => None,
                    _ => Some(3),
                };
                if k != 3 || want_l.is_some_and(|w| w != l) {
                    return Err(drift(f, format!("K(s,{t}) = {k}, lambda(s,{t}) = {l}")));
                }
            }
        }
        Fixture::Fig4 => {
            let profile = diversity(n)?;
            for v in &others {
                if profile.per_node[v] != 3 || g.indegree(v)? != 3 {
                    return Err(drift(f, format!("{v} must have indegree and diversity 3")));
                }
            }
        }
    }
    Ok(())
}
