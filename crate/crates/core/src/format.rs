//! Plain-text instance format.
//!
//! ```text
//! # optional comments
//! parts 2 2 2
//! 1 1 1
//! 1 2 2
//! ```
//!
//! The header lists the part sizes; each further line is one edge, the i-th
//! number naming the vertex (1-based) chosen in part i. Lines starting with
//! `#` are comments. A stream of several instances is a concatenation of
//! such blocks, each opened by its own `parts` line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::PartiteHypergraph;

/// Upper bound on the total number of declared vertices.
pub const MAX_VERTICES: usize = 1 << 20;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Block {
    header_line: usize,
    part_sizes: Vec<usize>,
    rows: Vec<(usize, Vec<usize>)>,
}

impl Block {
    fn finish(self) -> Result<PartiteHypergraph> {
        let mut seen = std::collections::HashMap::new();
        for (line, row) in &self.rows {
            if let Some(first) = seen.insert(row.clone(), *line) {
                return Err(parse_err(
                    *line,
                    format!("duplicate edge (same as line {first})"),
                ));
            }
        }
        let edges = self.rows.into_iter().map(|(_, row)| row).collect();
        PartiteHypergraph::build(self.part_sizes, edges, false)
            .map_err(|e| parse_err(self.header_line, e.to_string()))
    }
}

fn parse_number(token: &str, line: usize) -> Result<usize> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, format!("expected a positive integer, got {token:?}")));
    }
    match token.parse::<usize>() {
        Ok(0) => Err(parse_err(line, "indices and sizes start at 1")),
        Ok(n) => Ok(n),
        Err(_) => Err(parse_err(line, format!("number {token:?} is too large"))),
    }
}

fn parse_header(rest: &[&str], line: usize) -> Result<Vec<usize>> {
    if rest.is_empty() {
        return Err(parse_err(line, "`parts` needs at least one part size"));
    }
    let sizes = rest
        .iter()
        .map(|t| parse_number(t, line))
        .collect::<Result<Vec<_>>>()?;
    let total = sizes.iter().try_fold(0usize, |acc, &k| acc.checked_add(k));
    match total {
        Some(t) if t <= MAX_VERTICES => Ok(sizes),
        _ => Err(parse_err(line, format!("more than {MAX_VERTICES} vertices declared"))),
    }
}

fn parse_blocks(text: &str) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    for (k, raw) in text.split('\n').enumerate() {
        let line = k + 1;
        let content = raw.strip_suffix('\r').unwrap_or(raw);
        if !content.is_ascii() {
            return Err(parse_err(line, "non-ASCII input"));
        }
        let trimmed = content.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_ascii_whitespace().collect();
        if tokens[0] == "parts" {
            blocks.push(Block {
                header_line: line,
                part_sizes: parse_header(&tokens[1..], line)?,
                rows: Vec::new(),
            });
            continue;
        }
        let Some(block) = blocks.last_mut() else {
            return Err(parse_err(line, "expected `parts k_1 ... k_r` header"));
        };
        let r = block.part_sizes.len();
        if tokens.len() != r {
            return Err(parse_err(
                line,
                format!("edge has {} entries, expected {r}", tokens.len()),
            ));
        }
        let mut row = Vec::with_capacity(r);
        for (part, token) in tokens.iter().enumerate() {
            let j = parse_number(token, line)?;
            if j > block.part_sizes[part] {
                return Err(parse_err(
                    line,
                    format!(
                        "vertex ({},{j}) out of range: part {} has {} vertices",
                        part + 1,
                        part + 1,
                        block.part_sizes[part]
                    ),
                ));
            }
            row.push(j - 1);
        }
        block.rows.push((line, row));
    }
    Ok(blocks)
}

/// Parses exactly one instance.
pub fn parse_instance(text: &str) -> Result<PartiteHypergraph> {
    let mut blocks = parse_blocks(text)?;
    match blocks.len() {
        0 => Err(parse_err(1, "missing `parts` header")),
        1 => blocks.pop().expect("one block").finish(),
        _ => Err(parse_err(
            blocks[1].header_line,
            "second `parts` header in a single-instance file",
        )),
    }
}

/// Parses a stream of zero or more instances.
pub fn parse_instances(text: &str) -> Result<Vec<PartiteHypergraph>> {
    parse_blocks(text)?.into_iter().map(Block::finish).collect()
}

/// Serializes an instance: LF line endings, single spaces, 1-based indices.
pub fn write_instance(h: &PartiteHypergraph) -> String {
    let mut out = String::from("parts");
    for k in h.part_sizes() {
        write!(out, " {k}").expect("write to String");
    }
    out.push('\n');
    for edge in h.edges() {
        let row: Vec<String> = edge.choice().iter().map(|j| (j + 1).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
