//! Line-oriented text format for a graph and its marked set:
//!
//! ```text
//! c free text
//! p bbg <n> <m>
//! s <i1> <i2> ...
//! e <i> <j>
//! ```
//!
//! Indices are 1-based. The header comes first (after comments), `s` appears
//! at most once, and exactly `m` distinct `e` lines follow.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{BipartiteGraph, SVertexSet, MAX_HALF_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn parse_index(tok: &str, n: usize, line: usize) -> Result<usize, ParseError> {
    let v: usize = tok.parse().map_err(|_| err(line, format!("invalid index `{tok}`")))?;
    if v == 0 || v > n {
        return Err(err(line, format!("index {v} outside 1..{n}")));
    }
    Ok(v - 1)
}

pub fn parse_graph(text: &str) -> Result<(BipartiteGraph, SVertexSet), ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut s: Option<SVertexSet> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let toks: Vec<&str> = raw.split_ascii_whitespace().collect();
        let Some(&kind) = toks.first() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(err(line, "duplicate `p` line"));
                }
                if toks.len() != 4 || toks[1] != "bbg" {
                    return Err(err(line, "expected `p bbg <n> <m>`"));
                }
                let n: usize = toks[2].parse().map_err(|_| err(line, "invalid n"))?;
                let m: usize = toks[3].parse().map_err(|_| err(line, "invalid m"))?;
                if n == 0 || n > MAX_HALF_ORDER {
                    return Err(err(line, format!("n must lie in 1..={MAX_HALF_ORDER}")));
                }
                if m > n * n {
                    return Err(err(line, format!("m = {m} exceeds n² = {}", n * n)));
                }
                header = Some((n, m, line));
            }
            "s" => {
                let (n, _, _) = header.ok_or_else(|| err(line, "`s` before `p` line"))?;
                if s.is_some() {
                    return Err(err(line, "duplicate `s` line"));
                }
                let mut members = Vec::new();
                for tok in &toks[1..] {
                    let v = parse_index(tok, n, line)?;
                    if members.contains(&v) {
                        return Err(err(line, format!("duplicate S member {}", v + 1)));
                    }
                    members.push(v);
                }
                s = Some(SVertexSet::new(n, members).expect("indices validated"));
            }
            "e" => {
                let (n, _, _) = header.ok_or_else(|| err(line, "`e` before `p` line"))?;
                if toks.len() != 3 {
                    return Err(err(line, "expected `e <i> <j>`"));
                }
                let x = parse_index(toks[1], n, line)?;
                let y = parse_index(toks[2], n, line)?;
                if !seen.insert((x, y)) {
                    return Err(err(line, format!("duplicate edge {} {}", x + 1, y + 1)));
                }
                edges.push((x, y));
            }
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }

    let (n, m, hline) = header.ok_or_else(|| err(last_line.max(1), "missing `p bbg` line"))?;
    if edges.len() != m {
        return Err(err(hline, format!("header declares m = {m} but {} edges follow", edges.len())));
    }
    let g = BipartiteGraph::new(n, edges).expect("indices validated");
    Ok((g, s.unwrap_or_default()))
}

/// Serializes with sorted edges; `comments` become leading `c` lines.
pub fn write_graph(g: &BipartiteGraph, s: &SVertexSet, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p bbg {} {}", g.n(), g.edge_count());
    if !s.is_empty() {
        out.push('s');
        for i in s.members() {
            let _ = write!(out, " {}", i + 1);
        }
        out.push('\n');
    }
    for (x, y) in g.edges() {
        let _ = writeln!(out, "e {} {}", x + 1, y + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_file() {
        let text = "c demo\np bbg 2 3\ns 1 2\ne 1 1\ne 1 2\ne 2 2\n";
        let (g, s) = parse_graph(text).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(s.len(), 2);
        assert_eq!(write_graph(&g, &s, &["demo".into()]), text);
    }

    #[test]
    fn missing_s_means_empty() {
        let (_, s) = parse_graph("p bbg 3 0\n").unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("p bbg 2 2\ne 1 1\n", 1),
            ("p bbg 2 1\ne 1 3\n", 2),
            ("p bbg 2 1\np bbg 2 1\ne 1 1\n", 2),
            ("p bbg 2 1\ne 0 1\n", 2),
            ("e 1 1\np bbg 2 1\n", 1),
            ("p bbg 2 2\ne 1 1\ne 1 1\n", 3),
            ("p bbg 2 0\ns 1\ns 2\n", 3),
            ("p bbg 2 0\nq\n", 2),
            ("c only\n", 1),
        ];
        for (text, line) in cases {
            let e = parse_graph(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }
}
