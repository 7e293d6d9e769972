//! Text graph format.
//!
//! ```text
//! pg 1
//! n <node_count>
//! e <u> <pu> <v> <pv>
//! ```
//!
//! One `e` line per edge in any order; `#` starts a comment. Canonical output
//! orients every edge `u < v` and sorts edges lexicographically.

use std::fmt::Write;

use super::{validate_graph, EdgeRecord, GraphError, PortGraph};

pub fn serialize(g: &PortGraph) -> String {
    let mut out = format!("pg 1\nn {}\n", g.node_count());
    for e in g.edges() {
        let _ = writeln!(out, "e {} {} {} {}", e.u, e.pu, e.v, e.pv);
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses and validates a graph. Line numbers in errors are 1-based.
pub fn deserialize(text: &str) -> Result<PortGraph, GraphError> {
    let mut header_seen = false;
    let mut node_count: Option<usize> = None;
    let mut edges = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let numbers = |expected: usize| -> Result<Vec<usize>, GraphError> {
            if fields.len() != expected + 1 {
                return Err(parse_err(
                    line,
                    format!("`{}` takes {expected} fields", fields[0]),
                ));
            }
            fields[1..]
                .iter()
                .map(|f| {
                    f.parse::<usize>()
                        .map_err(|_| parse_err(line, format!("`{f}` is not a non-negative integer")))
                })
                .collect()
        };
        match fields[0] {
            "pg" if !header_seen => {
                let version = numbers(1)?;
                if version[0] != 1 {
                    return Err(parse_err(line, format!("unsupported version {}", version[0])));
                }
                header_seen = true;
            }
            _ if !header_seen => return Err(parse_err(line, "expected `pg 1` header")),
            "n" if node_count.is_none() => node_count = Some(numbers(1)?[0]),
            "n" => return Err(parse_err(line, "duplicate `n` line")),
            "e" => {
                if node_count.is_none() {
                    return Err(parse_err(line, "`e` before `n`"));
                }
                let f = numbers(4)?;
                edges.push(EdgeRecord::new(f[0], f[1], f[2], f[3]));
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    let Some(node_count) = node_count else {
        return Err(parse_err(text.lines().count().max(1), "missing `n` line"));
    };
    validate_graph(&edges, node_count)
}
