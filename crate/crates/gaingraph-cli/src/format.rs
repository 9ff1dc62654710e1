//! Flat-file formats for gain graphs and digraphs.
//!
//! Gain graph files:
//! ```text
//! gaingraph 3
//! e 1 2 0
//! e 2 3 1.5707963267948966
//! ```
//! One `e u v theta` line per edge, vertices 1-based, `theta` the gain
//! angle in radians of the oriented edge `u -> v`.
//!
//! Digraph files use the header `digraph n` and `a u v` arc lines; a
//! digon is written as two arc lines. Blank lines and lines starting
//! with `#` are ignored when reading and never produced when writing.

use gaingraph::{Digraph, Gain, GainGraph, SimpleGraph};
use std::fmt;

/// A syntax or consistency error, carrying the 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_vertex(token: &str, n: usize, line: usize) -> Result<usize, ParseError> {
    let label: usize = token
        .parse()
        .map_err(|_| ParseError::new(line, format!("invalid vertex label '{token}'")))?;
    if label == 0 || label > n {
        return Err(ParseError::new(
            line,
            format!("vertex {label} outside 1..={n}"),
        ));
    }
    Ok(label - 1)
}

/// Parse a gain graph file.
pub fn parse_gain_graph(text: &str) -> Result<GainGraph, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty file"))?;
    let mut parts = header.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some("gaingraph"), Some(n_str), None) => {
            let n: usize = n_str.parse().map_err(|_| {
                ParseError::new(header_line, format!("invalid vertex count '{n_str}'"))
            })?;
            if n == 0 {
                return Err(ParseError::new(header_line, "vertex count must be positive"));
            }
            let mut edges = Vec::new();
            let mut gains = Vec::new();
            for (line, content) in lines {
                let tokens: Vec<&str> = content.split_whitespace().collect();
                match tokens.as_slice() {
                    ["e", u, v, theta] => {
                        let u = parse_vertex(u, n, line)?;
                        let v = parse_vertex(v, n, line)?;
                        let angle: f64 = theta.parse().map_err(|_| {
                            ParseError::new(line, format!("invalid angle '{theta}'"))
                        })?;
                        if !angle.is_finite() {
                            return Err(ParseError::new(line, "angle must be finite"));
                        }
                        edges.push((u, v));
                        gains.push((u, v, Gain::from_angle(angle)));
                    }
                    _ => {
                        return Err(ParseError::new(
                            line,
                            format!("expected 'e <u> <v> <theta>', found '{content}'"),
                        ))
                    }
                }
            }
            let graph = SimpleGraph::new(n, &edges)
                .map_err(|e| ParseError::new(header_line, e.to_string()))?;
            GainGraph::new(graph, &gains).map_err(|e| ParseError::new(header_line, e.to_string()))
        }
        _ => Err(ParseError::new(
            header_line,
            format!("expected header 'gaingraph <n>', found '{header}'"),
        )),
    }
}

/// Serialize a gain graph canonically: header, then one line per edge in
/// ascending `(u, v)` order with the gain angle of the `u -> v`
/// orientation.
pub fn write_gain_graph(phi: &GainGraph) -> String {
    let mut out = format!("gaingraph {}\n", phi.graph().vertex_count());
    for (u, v) in phi.graph().edges() {
        out.push_str(&format!(
            "e {} {} {}\n",
            u + 1,
            v + 1,
            phi.gain(u, v).angle()
        ));
    }
    out
}

/// Parse a digraph file.
pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty file"))?;
    let mut parts = header.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some("digraph"), Some(n_str), None) => {
            let n: usize = n_str.parse().map_err(|_| {
                ParseError::new(header_line, format!("invalid vertex count '{n_str}'"))
            })?;
            if n == 0 {
                return Err(ParseError::new(header_line, "vertex count must be positive"));
            }
            let mut arcs = Vec::new();
            for (line, content) in lines {
                let tokens: Vec<&str> = content.split_whitespace().collect();
                match tokens.as_slice() {
                    ["a", u, v] => {
                        let u = parse_vertex(u, n, line)?;
                        let v = parse_vertex(v, n, line)?;
                        if arcs.contains(&(u, v)) {
                            return Err(ParseError::new(line, "duplicate arc"));
                        }
                        arcs.push((u, v));
                    }
                    _ => {
                        return Err(ParseError::new(
                            line,
                            format!("expected 'a <u> <v>', found '{content}'"),
                        ))
                    }
                }
            }
            Digraph::new(n, &arcs).map_err(|e| ParseError::new(header_line, e.to_string()))
        }
        _ => Err(ParseError::new(
            header_line,
            format!("expected header 'digraph <n>', found '{header}'"),
        )),
    }
}

/// Serialize a digraph canonically: arcs in ascending order.
pub fn write_digraph(x: &Digraph) -> String {
    let mut out = format!("digraph {}\n", x.vertex_count());
    for (u, v) in x.arcs() {
        out.push_str(&format!("a {} {}\n", u + 1, v + 1));
    }
    out
}
