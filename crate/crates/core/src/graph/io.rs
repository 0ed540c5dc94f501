//! Edge-list text format: a header line `n m`, then `m` lines `u v`,
//! 0-indexed and whitespace-separated. Blank lines are ignored.

use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    load_edge_list(text.as_bytes())
}

pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse {
            line: i + 1,
            reason: e.to_string(),
        })?;
        if !line.trim().is_empty() {
            lines.push((i + 1, line));
        }
    }
    let mut iter = lines.into_iter();
    let (header_line, header) = iter.next().ok_or(Error::Parse {
        line: 1,
        reason: "missing header \"n m\"".into(),
    })?;
    let (n, m) = parse_pair(&header, header_line)?;

    let mut edges = Vec::with_capacity(m);
    let mut line_of = Vec::with_capacity(m);
    for (no, text) in iter {
        if edges.len() == m {
            return Err(Error::Parse {
                line: no,
                reason: format!("more than the {m} declared edges"),
            });
        }
        edges.push(parse_pair(&text, no)?);
        line_of.push(no);
    }
    if edges.len() < m {
        return Err(Error::Parse {
            line: line_of.last().copied().unwrap_or(header_line),
            reason: format!("expected {m} edges, found {}", edges.len()),
        });
    }
    Graph::try_from_edges(n, edges).map_err(|(pos, e)| Error::Parse {
        line: line_of[pos],
        reason: e.to_string(),
    })
}

fn parse_pair(text: &str, line: usize) -> Result<(usize, usize)> {
    let mut fields = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = fields.next().ok_or_else(|| Error::Parse {
            line,
            reason: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            reason: format!("invalid integer {tok:?}"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = fields.next() {
        return Err(Error::Parse {
            line,
            reason: format!("unexpected trailing field {extra:?}"),
        });
    }
    Ok((a, b))
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count())?;
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
