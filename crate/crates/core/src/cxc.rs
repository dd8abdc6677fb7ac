//! The CXC text format.
//!
//! ```text
//! cxc 1
//! vertices N
//! edge U V
//! ...
//! ```
//!
//! Ids are 0-based, `#` starts a comment line, blank lines are ignored and
//! lines end in LF. Emitted edges are `U < V` in lexicographic order, so
//! output is byte-deterministic for a given complex.

use std::collections::HashSet;
use std::fmt::Write;

use crate::complex::CubeComplex;
use crate::error::{Error, Result};

/// Parsed but unvalidated contents of a CXC file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CxcGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CxcGraph {
    pub fn into_complex(self) -> Result<CubeComplex> {
        CubeComplex::new(self.vertex_count, &self.edges)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the line structure without running median validation.
pub fn parse_cxc_graph(text: &str) -> Result<CxcGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, "cxc 1")) => {}
        Some((n, other)) => return Err(parse_err(n, format!("expected header `cxc 1`, found {other:?}"))),
        None => return Err(parse_err(1, "missing header `cxc 1`")),
    }
    let vertex_count = match lines.next() {
        Some((n, line)) => {
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next(), parts.next()) {
                (Some("vertices"), Some(count), None) => count
                    .parse::<usize>()
                    .map_err(|_| parse_err(n, format!("bad vertex count {count:?}")))?,
                _ => return Err(parse_err(n, format!("expected `vertices N`, found {line:?}"))),
            }
        }
        None => return Err(parse_err(2, "missing `vertices N` line")),
    };
    if vertex_count == 0 {
        return Err(parse_err(2, "a complex needs at least one vertex"));
    }

    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (n, line) in lines {
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("edge"), Some(u), Some(v), None) => {
                let id = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| parse_err(n, format!("bad vertex id {s:?}")))
                };
                (id(u)?, id(v)?)
            }
            _ => return Err(parse_err(n, format!("expected `edge U V`, found {line:?}"))),
        };
        for id in [u, v] {
            if id >= vertex_count {
                return Err(parse_err(n, format!("vertex id {id} out of range 0..{vertex_count}")));
            }
        }
        if u == v {
            return Err(parse_err(n, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(n, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    Ok(CxcGraph { vertex_count, edges })
}

/// Parses and validates a complex.
pub fn parse_cxc(text: &str) -> Result<CubeComplex> {
    parse_cxc_graph(text)?.into_complex()
}

pub fn emit_cxc(complex: &CubeComplex) -> String {
    let mut out = String::with_capacity(24 + 16 * complex.edge_count());
    out.push_str("cxc 1\n");
    let _ = writeln!(out, "vertices {}", complex.vertex_count());
    for &(u, v) in complex.edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    out
}
