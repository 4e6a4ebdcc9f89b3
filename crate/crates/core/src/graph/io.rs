use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delimiter {
    /// Any run of ASCII whitespace.
    Whitespace,
    Char(char),
}

/// Edge-list text options. HINT exports use tab-separated gene symbols in
/// columns 0 and 1; BioGRID TAB3 keeps official symbols further right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOptions {
    pub delimiter: Delimiter,
    pub comment_prefix: String,
    pub columns: (usize, usize),
    /// Skip the first non-comment line.
    pub header: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            delimiter: Delimiter::Whitespace,
            comment_prefix: "#".to_string(),
            columns: (0, 1),
            header: false,
        }
    }
}

/// Reads an edge list into a [`Graph`].
///
/// Node indices follow ascending lexicographic label order, so any permutation
/// of the input lines yields the same graph. Duplicate lines and reversed
/// pairs collapse to one edge; self-loop lines are recorded but kept out of
/// the edge set until [`super::canonicalize`].
pub fn parse_edge_list<R: BufRead>(reader: R, options: &ParseOptions) -> Result<Graph> {
    let (ca, cb) = options.columns;
    let needed = ca.max(cb) + 1;
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut header_pending = options.header;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if trimmed.trim().is_empty() {
            continue;
        }
        if !options.comment_prefix.is_empty() && trimmed.starts_with(&options.comment_prefix) {
            continue;
        }
        if header_pending {
            header_pending = false;
            continue;
        }
        let tokens: Vec<&str> = match options.delimiter {
            Delimiter::Whitespace => trimmed.split_whitespace().collect(),
            Delimiter::Char(c) => trimmed.split(c).map(str::trim).collect(),
        };
        if tokens.len() < needed {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected at least {needed} columns, found {}", tokens.len()),
            });
        }
        let (a, b) = (tokens[ca], tokens[cb]);
        if a.is_empty() || b.is_empty() {
            return Err(Error::Parse { line: idx + 1, message: "empty node label".into() });
        }
        pairs.push((a.to_string(), b.to_string()));
    }

    let labels: Vec<String> =
        pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect::<BTreeSet<_>>().into_iter().collect();
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .map(|(a, b)| {
            let ia = labels.binary_search(a).expect("label collected above");
            let ib = labels.binary_search(b).expect("label collected above");
            (ia, ib)
        })
        .collect();
    Graph::with_labels(labels, &edges)
}

/// Writes the canonical edge list: one `u<TAB>v` line per edge with the
/// lexicographically smaller label first, lines sorted.
pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> Result<()> {
    let mut lines: Vec<(&str, &str)> = graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (graph.label(u), graph.label(v));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    lines.sort_unstable();
    for (a, b) in lines {
        writeln!(out, "{a}\t{b}")?;
    }
    Ok(())
}
