//! JSON documents for matrices and graphs.
//!
//! Numbers are written with 17 significant digits so that a write/read cycle
//! is bit-exact. Readers reject unknown fields.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{ConventionChoice, WeightedGraph};
use crate::linalg::{c, Complex64, ComplexMatrix};
use crate::state::Partition;

/// Formats `x` with 17 significant digits; negative zero prints as zero.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn fmt_pair(z: Complex64) -> String {
    format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im))
}

fn json_error(e: serde_json::Error) -> Error {
    let msg = e.to_string();
    // serde_json appends " at line L column C"; keep only the message part.
    let message = match msg.rfind(" at line ") {
        Some(k) => msg[..k].to_string(),
        None => msg,
    };
    Error::parse(format!("line {}, column {}", e.line(), e.column()), message)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

/// Serialises a square matrix as `{"dim": d, "entries": [[re, im], ...]}` in
/// row-major order, one entry per line.
pub fn write_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"dim\": {},", m.rows()).unwrap();
    writeln!(out, "  \"entries\": [").unwrap();
    let n = m.entries().len();
    for (k, z) in m.entries().iter().enumerate() {
        let sep = if k + 1 < n { "," } else { "" };
        writeln!(out, "    {}{sep}", fmt_pair(*z)).unwrap();
    }
    writeln!(out, "  ]").unwrap();
    writeln!(out, "}}").unwrap();
    out
}

pub fn read_matrix(text: &str) -> Result<ComplexMatrix> {
    let raw: RawMatrix = serde_json::from_str(text).map_err(json_error)?;
    if raw.dim == 0 {
        return Err(Error::parse("dim", "dimension must be positive"));
    }
    if raw.entries.len() != raw.dim * raw.dim {
        return Err(Error::parse(
            "entries",
            format!("expected {} entries for dim {}, found {}", raw.dim * raw.dim, raw.dim, raw.entries.len()),
        ));
    }
    let data = raw.entries.iter().map(|[re, im]| c(*re, *im)).collect();
    ComplexMatrix::new(raw.dim, raw.dim, data)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    qubits: usize,
    partition: [usize; 2],
    #[serde(default)]
    convention: Option<String>,
    #[serde(default)]
    edges: Vec<RawEdge>,
    #[serde(default)]
    loops: Vec<RawLoop>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    u: usize,
    v: usize,
    w: [f64; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLoop {
    v: usize,
    w: f64,
}

/// A graph together with the convention requested by its document.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDocument {
    pub graph: WeightedGraph,
    pub convention: ConventionChoice,
}

pub fn read_graph(text: &str) -> Result<GraphDocument> {
    let raw: RawGraph = serde_json::from_str(text).map_err(json_error)?;
    let [p, q] = raw.partition;
    if p + q != raw.qubits {
        return Err(Error::parse(
            "partition",
            format!("partition [{p}, {q}] does not sum to qubits = {}", raw.qubits),
        ));
    }
    let partition = Partition::new(p, q).map_err(|e| Error::parse("partition", e.to_string()))?;
    let convention = match raw.convention.as_deref() {
        None => ConventionChoice::Auto,
        Some(s) => s.parse().map_err(|e: Error| Error::parse("convention", e.to_string()))?,
    };
    let mut graph = WeightedGraph::new(partition);
    let n = graph.n_vertices();
    for (k, e) in raw.edges.iter().enumerate() {
        let loc = format!("edges[{k}]");
        if e.u >= n || e.v >= n {
            return Err(Error::parse(loc, format!("vertex out of range 0..{n}")));
        }
        if e.u == e.v {
            return Err(Error::parse(loc, "self-loops belong in \"loops\""));
        }
        let key = (e.u.min(e.v), e.u.max(e.v));
        if graph.weight(key.0, key.1) != Complex64::new(0.0, 0.0) {
            return Err(Error::parse(loc, format!("duplicate edge ({}, {})", key.0, key.1)));
        }
        graph
            .add_edge(e.u, e.v, c(e.w[0], e.w[1]))
            .map_err(|err| Error::parse(format!("edges[{k}]"), err.to_string()))?;
    }
    let mut seen = vec![false; n];
    for (k, l) in raw.loops.iter().enumerate() {
        let loc = format!("loops[{k}]");
        if l.v >= n {
            return Err(Error::parse(loc, format!("vertex out of range 0..{n}")));
        }
        if std::mem::replace(&mut seen[l.v], true) {
            return Err(Error::parse(loc, format!("duplicate loop at {}", l.v)));
        }
        graph
            .set_loop(l.v, l.w)
            .map_err(|err| Error::parse(format!("loops[{k}]"), err.to_string()))?;
    }
    Ok(GraphDocument { graph, convention })
}

/// Canonical graph document: edges sorted with `u < v`, loops sorted by vertex.
pub fn write_graph(g: &WeightedGraph, convention: ConventionChoice) -> String {
    let p = g.partition();
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"qubits\": {},", g.n_qubits()).unwrap();
    writeln!(out, "  \"partition\": [{}, {}],", p.leading, p.trailing).unwrap();
    writeln!(out, "  \"convention\": \"{}\",", convention.as_str()).unwrap();
    let edges: Vec<String> = g
        .edges()
        .map(|(u, v, w)| format!("    {{\"u\": {u}, \"v\": {v}, \"w\": {}}}", fmt_pair(w)))
        .collect();
    let loops: Vec<String> = g
        .loops()
        .map(|(v, w)| format!("    {{\"v\": {v}, \"w\": {}}}", fmt_f64(w)))
        .collect();
    write_list(&mut out, "edges", &edges, true);
    write_list(&mut out, "loops", &loops, false);
    writeln!(out, "}}").unwrap();
    out
}

fn write_list(out: &mut String, key: &str, items: &[String], trailing_comma: bool) {
    let comma = if trailing_comma { "," } else { "" };
    if items.is_empty() {
        writeln!(out, "  \"{key}\": []{comma}").unwrap();
        return;
    }
    writeln!(out, "  \"{key}\": [").unwrap();
    writeln!(out, "{}", items.join(",\n")).unwrap();
    writeln!(out, "  ]{comma}").unwrap();
}
