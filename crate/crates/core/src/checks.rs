//! Executable forms of the structural claims about broadcast-transformed
//! and diverse networks. Each check computes both sides independently and
//! reports whether the claim held on the given instance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{broadcast_transform, capacity, diversity, lambda_capacity, UntrustedNetwork};
use crate::rates::{cut_terms, rate_from_terms, Model};

/// Rate bounds on `β(N)`: `R^OA ≥ [C(β) - 2w]⁺`, `R^SS ≥ [C(β) - w]⁺`,
/// with equality when every non-source node is untrusted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proposition1Report {
    pub w: usize,
    pub c_beta: usize,
    #[serde(rename = "lhs_OA")]
    pub lhs_oa: usize,
    #[serde(rename = "lhs_SS")]
    pub lhs_ss: usize,
    #[serde(rename = "bound_OA")]
    pub bound_oa: usize,
    #[serde(rename = "bound_SS")]
    pub bound_ss: usize,
    pub equality_expected: bool,
    pub inequality_holds: bool,
    pub equality_holds: bool,
    pub holds: bool,
}

pub fn check_proposition1(n: &UntrustedNetwork, w: usize) -> Result<Proposition1Report> {
    let beta = broadcast_transform(n)?;
    let c_beta = capacity(&beta);
    if w > c_beta {
        return Err(Error::Precondition(format!(
            "budget {w} exceeds C(beta(N)) = {c_beta}"
        )));
    }
    let clamped = w > beta.untrusted().len();
    let effective = w.min(beta.untrusted().len());
    let terms = cut_terms(&beta, effective);
    let lhs_oa = rate_from_terms(&terms, Model::Omniscient, effective, clamped).rate;
    let lhs_ss = rate_from_terms(&terms, Model::SharedSecret, effective, clamped).rate;
    let bound_oa = c_beta.saturating_sub(2 * w);
    let bound_ss = c_beta.saturating_sub(w);
    let inequality_holds = lhs_oa >= bound_oa && lhs_ss >= bound_ss;
    let equality_holds = lhs_oa == bound_oa && lhs_ss == bound_ss;
    let equality_expected = n.everything_untrusted();
    Ok(Proposition1Report {
        w,
        c_beta,
        lhs_oa,
        lhs_ss,
        bound_oa,
        bound_ss,
        equality_expected,
        inequality_holds,
        equality_holds,
        holds: inequality_holds && (!equality_expected || equality_holds),
    })
}

/// `C(β(N)) = Λ(N)` when `U = V \ {s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem4Report {
    pub c_beta: usize,
    pub lambda_n: usize,
    pub equal: bool,
}

pub fn check_theorem4(n: &UntrustedNetwork) -> Result<Theorem4Report> {
    if !n.everything_untrusted() {
        return Err(Error::HypothesisViolated(
            "every non-source node must be untrusted".into(),
        ));
    }
    let c_beta = capacity(&broadcast_transform(n)?);
    let lambda_n = lambda_capacity(n);
    Ok(Theorem4Report {
        c_beta,
        lambda_n,
        equal: c_beta == lambda_n,
    })
}

/// `Λ(N) ≥ d(N)` on acyclic networks, and `C = Λ = d` as soon as some
/// sink has indegree `d(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem5Report {
    pub lambda_n: usize,
    pub d_n: usize,
    pub capacity: usize,
    /// Some sink has indegree exactly `d(N)`.
    pub tight_applies: bool,
    /// `tight_applies` and `C = Λ = d`.
    pub tight: bool,
    pub holds: bool,
}

pub fn check_theorem5(n: &UntrustedNetwork) -> Result<Theorem5Report> {
    let d_n = diversity(n)?.network_diversity;
    let lambda_n = lambda_capacity(n);
    let c = capacity(n);
    let g = n.graph();
    let tight_applies = n
        .sinks()
        .iter()
        .any(|t| g.indegree(t).expect("validated sink") == d_n);
    let tight = tight_applies && c == lambda_n && lambda_n == d_n;
    Ok(Theorem5Report {
        lambda_n,
        d_n,
        capacity: c,
        tight_applies,
        tight,
        holds: lambda_n >= d_n && (!tight_applies || tight),
    })
}
