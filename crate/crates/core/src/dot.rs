//! Graphviz rendering.

use std::fmt::Write as _;

use crate::network::UntrustedNetwork;

/// DOT text for `n`: the source is a box, untrusted nodes are dashed and
/// relay nodes (`u+`) get a double outline. Parallel edges are drawn
/// individually and labelled with their index.
pub fn render_dot(n: &UntrustedNetwork) -> String {
    let g = n.graph();
    let mut out = String::from("digraph umn {\n  rankdir=LR;\n");
    for v in g.vertices() {
        let mut attrs = Vec::new();
        if v == n.source() {
            attrs.push("shape=box");
        }
        if n.untrusted().contains(v) {
            attrs.push("style=dashed");
        }
        if v.is_relay() {
            attrs.push("peripheries=2");
        }
        if n.sinks().contains(v) {
            attrs.push("fontcolor=blue");
        }
        if attrs.is_empty() {
            writeln!(out, "  \"{v}\";").unwrap();
        } else {
            writeln!(out, "  \"{v}\" [{}];", attrs.join(", ")).unwrap();
        }
    }
    for e in g.edges() {
        let parallel = g.multiplicity(&e.tail, &e.head).unwrap_or(1) > 1;
        if parallel {
            writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.tail, e.head, e.index).unwrap();
        } else {
            writeln!(out, "  \"{}\" -> \"{}\";", e.tail, e.head).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
