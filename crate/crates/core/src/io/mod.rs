//! Text input formats, JSON reports and DOT export.
//!
//! Every format fixes the universe order by declaration order. Blank lines
//! and lines starting with `#` are ignored.

mod dot;
mod json;

pub use dot::{canonical_dot, decomposition_dot, graph_treedec_dot, undirected_dot};
pub use json::{
    canonical_json, decomposition_from_json, decomposition_json, duality_json, graph_treedec_json, property_report_json, tangle_from_json,
    tangles_json, undirected_json, width_json, SCHEMA,
};

use num::BigRational;

use crate::error::{Error, Result};
use crate::instances::{Graph, Hypergraph, RationalVectorFamily};
use crate::subset::{bit, Mask, Universe};
use crate::system::SetFunction;

/// A parsed input file.
#[derive(Debug, Clone)]
pub enum Input {
    Oracle(SetFunction),
    Graph(Graph),
    Hypergraph(Hypergraph),
    Vectors(RationalVectorFamily),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Oracle(_) => "oracle",
            Input::Graph(_) => "graph",
            Input::Hypergraph(_) => "hypergraph",
            Input::Vectors(_) => "vectors",
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Dispatch on the header word.
pub fn parse_input(text: &str) -> Result<Input> {
    let Some((line, header)) = lines(text).next() else {
        return Err(perr(0, "empty input"));
    };
    match header.split_whitespace().next() {
        Some("oracle") => parse_oracle(text).map(Input::Oracle),
        Some("graph") => parse_graph(text).map(Input::Graph),
        Some("hypergraph") => parse_hypergraph(text).map(Input::Hypergraph),
        Some("vectors") => parse_vectors(text).map(Input::Vectors),
        _ => Err(perr(line, format!("unknown header {header:?}"))),
    }
}

/// `oracle n`, then `2^n` integers; the `i`-th is the value at mask `i`.
pub fn parse_oracle(text: &str) -> Result<SetFunction> {
    let mut it = lines(text);
    let (line, header) = it.next().ok_or_else(|| perr(0, "empty input"))?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["oracle", n] => n.parse().map_err(|_| perr(line, format!("bad size {n}")))?,
        _ => return Err(perr(line, "expected `oracle n`")),
    };
    if n > crate::system::Limits::default().evaluate {
        return Err(Error::SizeLimit { op: "oracle table", n, limit: crate::system::Limits::default().evaluate });
    }
    let mut table = Vec::with_capacity(1 << n);
    for (line, l) in it {
        table.push(l.parse::<i64>().map_err(|_| perr(line, format!("bad value {l}")))?);
    }
    if table.len() != 1 << n {
        return Err(perr(0, format!("expected {} values, found {}", 1usize << n, table.len())));
    }
    SetFunction::from_table(Universe::indexed(n), table)
}

/// Declared vertices and label lists from the `e` lines.
fn vertex_and_edge_lines<'a>(text: &'a str, header: &str) -> Result<(Vec<String>, Vec<(usize, Vec<&'a str>)>)> {
    let mut it = lines(text);
    match it.next() {
        Some((_, h)) if h == header => {}
        Some((line, h)) => return Err(perr(line, format!("expected `{header}`, found {h:?}"))),
        None => return Err(perr(0, "empty input")),
    }
    let (mut vs, mut es) = (Vec::new(), Vec::new());
    for (line, l) in it {
        let mut words = l.split_whitespace();
        match words.next() {
            Some("v") => {
                let rest: Vec<&str> = words.collect();
                if rest.len() != 1 {
                    return Err(perr(line, "expected `v <label>`"));
                }
                if !es.is_empty() {
                    return Err(perr(line, "vertex declared after the first edge"));
                }
                vs.push(rest[0].to_string());
            }
            Some("e") => es.push((line, words.collect())),
            _ => return Err(perr(line, format!("unexpected line {l:?}"))),
        }
    }
    Ok((vs, es))
}

/// `graph`, `v <label>` lines, `e <label> <label>` lines.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let (vs, es) = vertex_and_edge_lines(text, "graph")?;
    let u = Universe::new(vs.iter().cloned())?;
    let mut edges = Vec::with_capacity(es.len());
    for (line, ends) in es {
        let [a, b] = ends[..] else {
            return Err(perr(line, "expected `e <label> <label>`"));
        };
        let idx = |l: &str| u.index_of(l).ok_or_else(|| perr(line, format!("unknown vertex {l}")));
        edges.push((idx(a)?, idx(b)?));
    }
    Graph::new(vs, &edges)
}

/// `hypergraph`, `v` lines, `e <label>...` lines. Edges are named `e1, e2, ...`.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let (vs, es) = vertex_and_edge_lines(text, "hypergraph")?;
    let u = Universe::new(vs)?;
    let mut edges: Vec<Mask> = Vec::with_capacity(es.len());
    for (line, ends) in &es {
        let mut m = 0;
        for l in ends {
            m |= bit(u.index_of(l).ok_or_else(|| perr(*line, format!("unknown vertex {l}")))?);
        }
        edges.push(m);
    }
    let names = Universe::new((1..=edges.len()).map(|i| format!("e{i}")))?;
    Hypergraph::new(u, names, edges)
}

/// `vectors d`, then one row of `d` rationals (`p/q` or integers) per element.
pub fn parse_vectors(text: &str) -> Result<RationalVectorFamily> {
    let mut it = lines(text);
    let (line, header) = it.next().ok_or_else(|| perr(0, "empty input"))?;
    let d: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["vectors", d] => d.parse().map_err(|_| perr(line, format!("bad dimension {d}")))?,
        _ => return Err(perr(line, "expected `vectors d`")),
    };
    let mut rows = Vec::new();
    for (line, l) in it {
        let row = l
            .split_whitespace()
            .map(|w| w.parse::<BigRational>().map_err(|_| perr(line, format!("bad rational {w}"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != d {
            return Err(perr(line, format!("expected {d} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    RationalVectorFamily::new(d, rows, None)
}
