//! The `.umn` network file format.
//!
//! One directive per line; `#` starts a comment that runs to the end of the
//! line and blank lines are ignored.
//!
//! ```text
//! source <id>                   exactly once
//! sink <id> [<id> ...]          at least one sink overall
//! untrusted <id> [<id> ...]     or `untrusted *` for every non-source node;
//!                               a bare `untrusted` declares the empty set.
//!                               Without any untrusted directive: `*`.
//! edge <u> <v> [<count>]        count >= 1, default 1; repeats accumulate
//! node <id> [<id> ...]          vertices not mentioned anywhere else
//! ```
//!
//! Parallel-edge indices follow file order. [`serialize_network`] writes the
//! canonical form: directives in the order above, sorted ids, one `edge`
//! line per pair with the accumulated count.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, NodeId};
use crate::network::UntrustedNetwork;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

enum Untrusted {
    Default,
    Star(usize),
    Listed(BTreeSet<NodeId>),
}

pub fn parse_network(text: &str) -> Result<UntrustedNetwork> {
    let mut source: Option<(NodeId, usize)> = None;
    let mut sinks: Vec<(NodeId, usize)> = Vec::new();
    let mut untrusted = Untrusted::Default;
    let mut untrusted_lines: Vec<(NodeId, usize)> = Vec::new();
    let mut builder = MultiGraph::builder();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = content.split_whitespace();
        let Some(directive) = words.next() else {
            continue;
        };
        let args: Vec<&str> = words.collect();
        let node = |w: &str| NodeId::new(w).map_err(|e| parse_error(line, e.to_string()));
        match directive {
            "source" => {
                if args.len() != 1 {
                    return Err(parse_error(line, "source takes exactly one id"));
                }
                if let Some((prev, at)) = &source {
                    return Err(parse_error(
                        line,
                        format!("duplicate source declaration ({prev} already declared on line {at})"),
                    ));
                }
                let s = node(args[0])?;
                builder.node(s.clone());
                source = Some((s, line));
            }
            "sink" => {
                if args.is_empty() {
                    return Err(parse_error(line, "sink needs at least one id"));
                }
                for w in args {
                    let t = node(w)?;
                    if sinks.iter().any(|(x, _)| *x == t) {
                        return Err(parse_error(line, format!("duplicate sink {t}")));
                    }
                    builder.node(t.clone());
                    sinks.push((t, line));
                }
            }
            "untrusted" => {
                if let Untrusted::Star(at) = untrusted {
                    return Err(parse_error(
                        line,
                        format!("duplicate untrusted declaration (`untrusted *` on line {at})"),
                    ));
                }
                if args == ["*"] {
                    if matches!(untrusted, Untrusted::Listed(_)) {
                        return Err(parse_error(line, "`untrusted *` cannot follow an explicit list"));
                    }
                    untrusted = Untrusted::Star(line);
                    continue;
                }
                if args.contains(&"*") {
                    return Err(parse_error(line, "`*` must appear alone"));
                }
                if !matches!(untrusted, Untrusted::Listed(_)) {
                    untrusted = Untrusted::Listed(BTreeSet::new());
                }
                let Untrusted::Listed(set) = &mut untrusted else {
                    unreachable!()
                };
                for w in args {
                    let u = node(w)?;
                    if !set.insert(u.clone()) {
                        return Err(parse_error(line, format!("duplicate untrusted node {u}")));
                    }
                    builder.node(u.clone());
                    untrusted_lines.push((u, line));
                }
            }
            "edge" => {
                if !(2..=3).contains(&args.len()) {
                    return Err(parse_error(line, "edge takes <u> <v> [<count>]"));
                }
                let u = node(args[0])?;
                let v = node(args[1])?;
                if u == v {
                    return Err(parse_error(line, format!("self-loop on {u}")));
                }
                let count = match args.get(2) {
                    None => 1,
                    Some(c) => match c.parse::<u32>() {
                        Ok(n) if n >= 1 => n,
                        _ => return Err(parse_error(line, format!("edge count must be an integer >= 1, got {c:?}"))),
                    },
                };
                builder.edges(u, v, count);
            }
            "node" => {
                for w in args {
                    builder.node(node(w)?);
                }
            }
            other => return Err(parse_error(line, format!("unknown directive {other:?}"))),
        }
    }

    let Some((source, _)) = source else {
        return Err(parse_error(last_line.max(1), "missing source directive"));
    };
    if let Some((_, at)) = sinks.iter().find(|(t, _)| *t == source) {
        return Err(parse_error(*at, format!("source {source} listed as sink")));
    }
    if let Some((_, at)) = untrusted_lines.iter().find(|(u, _)| *u == source) {
        return Err(parse_error(*at, format!("source {source} cannot be untrusted")));
    }
    if sinks.is_empty() {
        return Err(parse_error(last_line.max(1), "no sink declared"));
    }
    let graph = builder
        .build()
        .map_err(|e| parse_error(last_line.max(1), e.to_string()))?;
    let sinks: BTreeSet<NodeId> = sinks.into_iter().map(|(t, _)| t).collect();
    match untrusted {
        Untrusted::Listed(set) => UntrustedNetwork::new(graph, source, sinks, set),
        Untrusted::Default | Untrusted::Star(_) => UntrustedNetwork::all_untrusted(graph, source, sinks),
    }
    .map_err(|e| parse_error(last_line.max(1), e.to_string()))
}

fn join(ids: impl IntoIterator<Item = impl AsRef<str>>) -> String {
    ids.into_iter()
        .map(|s| s.as_ref().to_owned())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn serialize_network(n: &UntrustedNetwork) -> String {
    let g = n.graph();
    let mut out = String::new();
    writeln!(out, "source {}", n.source()).unwrap();
    writeln!(out, "sink {}", join(n.sinks().iter().map(NodeId::as_str))).unwrap();
    if n.everything_untrusted() {
        out.push_str("untrusted *\n");
    } else if n.untrusted().is_empty() {
        out.push_str("untrusted\n");
    } else {
        writeln!(out, "untrusted {}", join(n.untrusted().iter().map(NodeId::as_str))).unwrap();
    }
    let star = n.everything_untrusted();
    let isolated: Vec<&str> = g
        .vertices()
        .iter()
        .filter(|v| {
            *v != n.source()
                && !n.sinks().contains(*v)
                && (star || !n.untrusted().contains(*v))
                && g.indegree(v).unwrap_or(0) == 0
                && g.outdegree(v).unwrap_or(0) == 0
        })
        .map(NodeId::as_str)
        .collect();
    if !isolated.is_empty() {
        writeln!(out, "node {}", join(isolated)).unwrap();
    }
    let edges = g.edges();
    let mut i = 0;
    while i < edges.len() {
        let e = &edges[i];
        let run = edges[i..]
            .iter()
            .take_while(|f| f.tail == e.tail && f.head == e.head)
            .count();
        writeln!(out, "edge {} {} {}", e.tail, e.head, run).unwrap();
        i += run;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{id, ids};

    fn err_line(text: &str) -> (usize, String) {
        match parse_network(text) {
            Err(Error::Parse { line, message }) => (line, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_file() {
        let n = parse_network("source s\nsink t\nedge s t 3").unwrap();
        assert_eq!(n.graph().vertex_count(), 2);
        assert_eq!(n.graph().edge_count(), 3);
        assert_eq!(n.untrusted(), &ids(["t"]));
    }

    #[test]
    fn star_and_explicit_untrusted() {
        let n = parse_network("source s\nsink t\nuntrusted *\nedge s a\nedge a t\n").unwrap();
        assert_eq!(n.untrusted(), &ids(["a", "t"]));
        let n = parse_network("source s\nsink t\nuntrusted a\nedge s a\nedge a t\n").unwrap();
        assert_eq!(n.untrusted(), &ids(["a"]));
        let n = parse_network("source s\nsink t\nuntrusted\nedge s t\n").unwrap();
        assert!(n.untrusted().is_empty());
    }

    #[test]
    fn comments_blank_lines_and_accumulation() {
        let text = "# header\n\nsource s # the server\nsink t\nedge s t 2\nedge s t\n";
        let n = parse_network(text).unwrap();
        assert_eq!(n.graph().multiplicity(&id("s"), &id("t")).unwrap(), 3);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(err_line("sink t\nedge s t").1, "missing source directive");
        assert_eq!(err_line("source s\nsink s t\n"), (2, "source s listed as sink".into()));
        assert_eq!(err_line("source s\nsink t\nfrobnicate x\n").0, 3);
        assert_eq!(err_line("source s\nsink t\nedge s t 0\n").0, 3);
        assert_eq!(err_line("source s\nsink t\nedge s t -1\n").0, 3);
        assert_eq!(err_line("source s\nsource x\nsink t\n").0, 2);
        assert_eq!(err_line("source s\nsink t t\n").0, 2);
        assert_eq!(err_line("source s\nsink t\nuntrusted *\nuntrusted t\n").0, 4);
        assert_eq!(err_line("source s\nsink t\nuntrusted s\n").0, 3);
        assert_eq!(err_line("source s\nsink t\nedge t t\n").0, 3);
        assert_eq!(err_line("source s\nedge s t\n").1, "no sink declared");
        assert_eq!(err_line("source s\nsink t!\n").0, 2);
    }

    #[test]
    fn canonical_round_trip() {
        let text = "source s\nsink a t\nuntrusted a\nnode z\nedge a t 2\nedge s a 1\n";
        let n = parse_network(text).unwrap();
        assert_eq!(serialize_network(&n), text);
        assert_eq!(parse_network(&serialize_network(&n)).unwrap(), n);
    }
}
