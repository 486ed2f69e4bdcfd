//! Plain-text file formats.
//!
//! * Undirected degree file: one integer per line.
//! * Directed degree file: two whitespace-separated integers per line, `in out`.
//! * Edge list: one edge per line, `u v` (meaning `u→v` when directed),
//!   preceded by `#` header lines carrying `N`, `L`, `directed` and `seed`.
//!
//! In every format blank lines and lines starting with `#` are ignored on
//! input.

use std::fmt::Write as _;

use crate::degree::{DegreeSequence, DirectedDegreeSequence};
use crate::error::{Error, Result};
use crate::sampler::MultiGraph;
use crate::Rational;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_int<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected an integer, found {tok:?}"),
    })
}

/// Raw undirected degrees; validation is left to [`DegreeSequence::from_raw`].
pub fn parse_degrees(text: &str) -> Result<Vec<i64>> {
    content_lines(text)
        .map(|(line, l)| {
            let mut toks = l.split_whitespace();
            let k = parse_int(line, toks.next().unwrap_or_default())?;
            if toks.next().is_some() {
                return Err(Error::Parse {
                    line,
                    message: "expected one degree per line".into(),
                });
            }
            Ok(k)
        })
        .collect()
}

pub fn parse_degree_sequence(text: &str) -> Result<DegreeSequence> {
    DegreeSequence::from_raw(&parse_degrees(text)?)
}

/// Raw `(in, out)` columns.
pub fn parse_directed_degrees(text: &str) -> Result<(Vec<i64>, Vec<i64>)> {
    let mut ins = Vec::new();
    let mut outs = Vec::new();
    for (line, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line,
                message: "expected \"in out\"".into(),
            });
        }
        ins.push(parse_int(line, toks[0])?);
        outs.push(parse_int(line, toks[1])?);
    }
    Ok((ins, outs))
}

pub fn parse_directed_degree_sequence(text: &str) -> Result<DirectedDegreeSequence> {
    let (ins, outs) = parse_directed_degrees(text)?;
    DirectedDegreeSequence::from_raw(&ins, &outs)
}

pub fn write_degrees(seq: &DegreeSequence) -> String {
    seq.degrees().iter().map(|k| format!("{k}\n")).collect()
}

pub fn write_directed_degrees(dseq: &DirectedDegreeSequence) -> String {
    dseq.in_degrees()
        .iter()
        .zip(dseq.out_degrees())
        .map(|(i, o)| format!("{i} {o}\n"))
        .collect()
}

pub fn write_edge_list(g: &MultiGraph, seed: Option<u64>) -> String {
    let mut out = String::new();
    writeln!(out, "# N={}", g.vertex_count()).unwrap();
    writeln!(out, "# L={}", g.edge_count()).unwrap();
    writeln!(out, "# directed={}", g.is_directed()).unwrap();
    if let Some(seed) = seed {
        writeln!(out, "# seed={seed}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Reads an edge list written by [`write_edge_list`]. `N` and `directed`
/// come from the header; without an `N=` line the vertex count is one more
/// than the largest label.
pub fn parse_edge_list(text: &str) -> Result<MultiGraph> {
    let mut n = None;
    let mut directed = false;
    for (i, l) in text.lines().enumerate() {
        let Some(header) = l.trim().strip_prefix('#') else {
            continue;
        };
        let header = header.trim();
        if let Some(v) = header.strip_prefix("N=") {
            n = Some(parse_int(i + 1, v)?);
        } else if let Some(v) = header.strip_prefix("directed=") {
            directed = v == "true";
        }
    }
    let mut edges = Vec::new();
    for (line, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line,
                message: "expected \"u v\"".into(),
            });
        }
        edges.push((parse_int(line, toks[0])?, parse_int(line, toks[1])?));
    }
    let n = n.unwrap_or_else(|| {
        edges
            .iter()
            .map(|&(u, v): &(usize, usize)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
    });
    MultiGraph::from_edges(n, directed, edges)
}

/// `numerator/denominator`, always with an explicit denominator.
pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
