use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

/// Reads the edge-list format: a header line `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are skipped.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let pair = parse_pair(trimmed).ok_or_else(|| {
            Error::parse(lineno, format!("expected two non-negative integers, got {trimmed:?}"))
        })?;
        if header.is_none() {
            header = Some(pair);
        } else {
            edges.push(pair);
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(1, "missing \"n m\" header"))?;
    if edges.len() != m {
        return Err(Error::parse(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, &edges)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

/// Writes `g` in edge-list format with edges sorted ascending.
pub fn write_edge_list<W: Write>(g: &Graph, mut writer: W) -> Result<()> {
    writeln!(writer, "{} {}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(writer, "{u} {v}")?;
    }
    Ok(())
}
