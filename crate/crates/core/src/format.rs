//! Plain-text graph format.
//!
//! ```text
//! # negative 3-cycle
//! 3
//! 0 1 +
//! 1 2 +
//! 2 0 -
//! ```
//!
//! The first non-comment line is the vertex count; each following line is
//! `tail head sign` with sign `+` or `-`. Everything after `#` is ignored.
//! [`to_text`] writes arcs sorted by `(tail, head)` with LF endings, so
//! `to_text(&parse(&to_text(g))?) == to_text(g)` byte for byte.

use thiserror::Error;

use crate::graph::{Arc, GraphError, Sign, SignedDigraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing vertex count line")]
    MissingHeader,
    #[error("line {line}: invalid vertex count {text:?}")]
    BadVertexCount { line: usize, text: String },
    #[error("line {line}: malformed arc line {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: duplicate arc ({tail}, {head})")]
    DuplicateArc { line: usize, tail: usize, head: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    OutOfRange { line: usize, vertex: usize, n: usize },
}

fn strip(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

pub fn parse(text: &str) -> Result<SignedDigraph, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip(l))).filter(|(_, l)| !l.is_empty());

    let (line_no, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let n: usize = header
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| ParseError::BadVertexCount { line: line_no, text: header.to_string() })?;
    let mut g = SignedDigraph::empty(n).expect("n > 0");

    for (line, body) in lines {
        let malformed = || ParseError::MalformedLine { line, text: body.to_string() };
        let fields: Vec<&str> = body.split_whitespace().collect();
        let [tail, head, sign] = fields[..] else {
            return Err(malformed());
        };
        let tail: usize = tail.parse().map_err(|_| malformed())?;
        let head: usize = head.parse().map_err(|_| malformed())?;
        let sign = match sign {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            _ => return Err(malformed()),
        };
        g.insert_arc(Arc::new(tail, head, sign)).map_err(|e| match e {
            GraphError::VertexOutOfRange { vertex, n } => ParseError::OutOfRange { line, vertex, n },
            GraphError::SelfLoop(vertex) => ParseError::SelfLoop { line, vertex },
            GraphError::DuplicateArc { tail, head } => ParseError::DuplicateArc { line, tail, head },
            _ => malformed(),
        })?;
    }
    Ok(g)
}

pub fn to_text(g: &SignedDigraph) -> String {
    let mut out = format!("{}\n", g.order());
    for a in g.arcs() {
        out.push_str(&format!("{} {} {}\n", a.tail, a.head, a.sign));
    }
    out
}
