//! Plain-text vertex files.
//!
//! ```text
//! # comment lines start with '#'
//! d n
//! x_1 ... x_d      (n lines, one vertex each)
//! ```
//!
//! Files are ASCII and must end with a newline.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::polytope::LatticePolytope;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the vertex list of a polytope file without validating geometry.
pub fn parse_vertex_list(text: &str) -> Result<(usize, Vec<Vec<i64>>)> {
    if !text.is_ascii() {
        let line = text.lines().position(|l| !l.is_ascii()).unwrap_or(0) + 1;
        return Err(parse_err(line, "non-ASCII input"));
    }
    if !text.ends_with('\n') {
        return Err(parse_err(
            text.lines().count().max(1),
            "missing trailing newline",
        ));
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header line `d n`"))?;
    let header = parse_ints(hline, header)?;
    let [dim, count] = header[..] else {
        return Err(parse_err(hline, "header must be `d n`"));
    };
    if dim <= 0 || count < 0 {
        return Err(parse_err(
            hline,
            "dimension must be positive and count nonnegative",
        ));
    }
    let (dim, count) = (dim as usize, count as usize);

    let mut vertices = Vec::with_capacity(count);
    for (line, content) in lines {
        if vertices.len() == count {
            return Err(parse_err(line, format!("more than {count} vertex lines")));
        }
        let v = parse_ints(line, content)?;
        if v.len() != dim {
            return Err(parse_err(
                line,
                format!("expected {dim} coordinates, found {}", v.len()),
            ));
        }
        vertices.push(v);
    }
    if vertices.len() != count {
        return Err(parse_err(
            text.lines().count(),
            format!("expected {count} vertex lines, found {}", vertices.len()),
        ));
    }
    Ok((dim, vertices))
}

fn parse_ints(line: usize, s: &str) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| parse_err(line, format!("not an integer: `{tok}`")))
        })
        .collect()
}

/// Parses and validates a polytope file. Geometric errors are reported
/// against the line of the offending vertex where possible.
pub fn parse_polytope(text: &str) -> Result<LatticePolytope> {
    let (dim, vertices) = parse_vertex_list(text)?;
    LatticePolytope::from_vertices(dim, vertices)
}

pub fn read_polytope_file(path: &std::path::Path) -> Result<LatticePolytope> {
    let text = std::fs::read_to_string(path)?;
    parse_polytope(&text)
}

/// Serializes vertex columns in the text format.
pub fn write_vertex_list(dim: usize, vertices: &[Vec<i64>], comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for l in c.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    let _ = writeln!(out, "{dim} {}", vertices.len());
    for v in vertices {
        let row: Vec<String> = v.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_polytope(p: &LatticePolytope, comment: Option<&str>) -> String {
    write_vertex_list(p.dim(), p.vertices(), comment)
}

/// A square matrix written as its columns.
pub fn write_matrix_columns(m: &IntMatrix, comment: Option<&str>) -> String {
    write_vertex_list(m.rows(), &m.columns(), comment)
}
