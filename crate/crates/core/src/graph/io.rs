//! DIMACS `.col` and METIS adjacency readers, and a DIMACS writer.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    match tok.map(str::parse::<usize>) {
        Some(Ok(v)) => Ok(v),
        Some(Err(_)) => parse_err(line, format!("invalid {what}")),
        None => parse_err(line, format!("missing {what}")),
    }
}

/// Parses the DIMACS coloring format (`c`, `p edge n m`, `e u v`, 1-based).
pub fn parse_dimacs_col(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("p") => {
                if n.is_some() {
                    return parse_err(lineno, "duplicate problem line");
                }
                match toks.next() {
                    Some("edge") | Some("col") | Some("edges") => {}
                    _ => return parse_err(lineno, "malformed header, expected `p edge n m`"),
                }
                let nv = parse_usize(toks.next(), lineno, "vertex count")?;
                parse_usize(toks.next(), lineno, "edge count")?;
                n = Some(nv);
            }
            Some("e") => {
                let Some(nv) = n else {
                    return parse_err(lineno, "edge line before problem line");
                };
                let u = parse_usize(toks.next(), lineno, "endpoint")?;
                let v = parse_usize(toks.next(), lineno, "endpoint")?;
                if u == 0 || v == 0 || u > nv || v > nv {
                    return parse_err(lineno, format!("vertex index out of range 1..={nv}"));
                }
                if u == v {
                    return parse_err(lineno, format!("self-loop at vertex {u}"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(tok) => return parse_err(lineno, format!("unknown line type `{tok}`")),
            None => {}
        }
    }
    let Some(n) = n else {
        return parse_err(last.max(1), "missing problem line `p edge n m`");
    };
    Graph::from_edges(n, edges)
}

/// Parses the unweighted METIS adjacency format: header `n m`, then one
/// line of 1-based neighbors per vertex. `%` starts a comment line.
pub fn parse_metis(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('%'));
    let (hline, header) = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((i, l)) => break (i + 1, l),
            None => return parse_err(1, "missing header `n m`"),
        };
    };
    let mut toks = header.split_whitespace();
    let n = parse_usize(toks.next(), hline, "vertex count")?;
    let m = parse_usize(toks.next(), hline, "edge count")?;
    if let Some(fmt) = toks.next() {
        if fmt.chars().any(|c| c != '0') {
            return parse_err(hline, "weighted METIS variants are not supported");
        }
    }
    let mut lists: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
    for v in 0..n {
        let (lineno, line) = match lines.next() {
            Some((i, l)) => (i + 1, l),
            None => (hline + v + 1, ""),
        };
        let mut nbrs = Vec::new();
        for tok in line.split_whitespace() {
            let u: usize = match tok.parse() {
                Ok(u) => u,
                Err(_) => return parse_err(lineno, format!("invalid neighbor `{tok}`")),
            };
            if u == 0 || u > n {
                return parse_err(lineno, format!("neighbor {u} out of range 1..={n}"));
            }
            if u - 1 == v {
                return parse_err(lineno, format!("self-loop at vertex {u}"));
            }
            nbrs.push(u - 1);
        }
        nbrs.sort_unstable();
        nbrs.dedup();
        lists.push((lineno, nbrs));
    }
    let mut edges = Vec::new();
    for (v, (lineno, nbrs)) in lists.iter().enumerate() {
        for &u in nbrs {
            if lists[u].1.binary_search(&v).is_err() {
                return parse_err(
                    *lineno,
                    format!(
                        "asymmetric adjacency: {} lists {} but not conversely",
                        v + 1,
                        u + 1
                    ),
                );
            }
            if v < u {
                edges.push((v, u));
            }
        }
    }
    if edges.len() != m {
        return parse_err(
            hline,
            format!("header declares {m} edges, adjacency lists hold {}", edges.len()),
        );
    }
    Graph::from_edges(n, edges)
}

/// Writes `g` in DIMACS `.col` form; `comments` become leading `c` lines.
pub fn write_dimacs_col(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p edge {} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_examples() {
        let g = parse_dimacs_col("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert_eq!(g, Graph::path(3));
        let g = parse_dimacs_col("c dup\np edge 2 1\ne 1 2\ne 1 2").unwrap();
        assert_eq!(g.m(), 1);
        let err = parse_dimacs_col("p edge 2 1\ne 1 1").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn dimacs_errors_name_lines() {
        assert!(matches!(
            parse_dimacs_col("p edge x 1").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_dimacs_col("c a\np edge 2 1\ne 1 3").unwrap_err(),
            Error::Parse { line: 3, .. }
        ));
        assert!(matches!(
            parse_dimacs_col("e 1 2").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(parse_dimacs_col("c nothing").is_err());
    }

    #[test]
    fn metis_examples() {
        assert_eq!(parse_metis("3 2\n2\n1 3\n2").unwrap(), Graph::path(3));
        assert_eq!(parse_metis("2 1\n2\n1").unwrap().m(), 1);
        let err = parse_metis("2 1\n2\n").unwrap_err();
        assert!(err.to_string().contains("asymmetric"));
        assert!(parse_metis("2 1\n3\n1").is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let g = Graph::cycle(5);
        let text = write_dimacs_col(&g, &["five cycle".into()]);
        assert_eq!(parse_dimacs_col(&text).unwrap(), g);
    }
}
