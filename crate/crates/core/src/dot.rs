//! Graphviz export.

use std::fmt::Write;

use crate::graph::{is_mediatic, like_partition, Arc, Graph};
use crate::token::TokenSystem;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn header(out: &mut String, g: &Graph) {
    out.push_str("graph G {\n");
    for v in g.names() {
        let _ = writeln!(out, "  {};", quote(v));
    }
}

/// Undirected DOT. When the graph is mediatic each edge is labelled with the
/// like classes of its two arcs, `t<forward>/t<backward>`, and edges of the
/// same class pair share a color.
pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::new();
    header(&mut out, g);
    let partition = if is_mediatic(g).is_mediatic {
        like_partition(g).ok().and_then(|p| p.ok())
    } else {
        None
    };
    for &(a, b) in g.edges() {
        let (na, nb) = (quote(g.name(a)), quote(g.name(b)));
        match &partition {
            Some(p) => {
                let (k, r) = (p.class_of(Arc::new(a, b)).unwrap(), p.class_of(Arc::new(b, a)).unwrap());
                let rank = (0..k.min(r)).filter(|&j| j < p.reverse_class(j)).count();
                let color = PALETTE[rank % PALETTE.len()];
                let _ = writeln!(out, "  {na} -- {nb} [label=\"t{k}/t{r}\", color=\"{color}\"];");
            }
            None => {
                let _ = writeln!(out, "  {na} -- {nb};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Undirected DOT of the adjacency graph of a token system, each edge
/// labelled with the tokens moving along it in either direction.
pub fn system_to_dot(sys: &TokenSystem) -> String {
    let g = crate::convert::adjacency_graph(sys);
    let mut out = String::new();
    header(&mut out, &g);
    for &(a, b) in g.edges() {
        let (sa, sb) = (sys.state_id(g.name(a)).unwrap(), sys.state_id(g.name(b)).unwrap());
        let names = |from, to| {
            sys.outgoing(from)
                .iter()
                .filter(|&&(_, v)| v == to)
                .map(|&(t, _)| sys.token_name(t))
                .collect::<Vec<_>>()
                .join(",")
        };
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(g.name(a)),
            quote(g.name(b)),
            quote(&format!("{}/{}", names(sa, sb), names(sb, sa)))
        );
    }
    out.push_str("}\n");
    out
}
