//! The quiver text format: one declaration per line, `#` starts a comment.
//!
//! ```text
//! # a two-cycle
//! vertex a_1
//! vertex a_2
//! edge x_1 : a_1 -> a_2
//! edge x_2 : a_2 -> a_1
//! ```
//!
//! Names in hand-written files match `[A-Za-z0-9_]+`; the parser additionally
//! accepts `.` so that generated blow-up ids round-trip.

use crate::io::ParseError;
use crate::quiver::{Quiver, RawQuiver};

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

/// Parses the text format into a raw description. Grammar only; the
/// data-model invariants are [`Quiver::validate`]'s job.
pub fn parse_quiver(input: &str) -> Result<RawQuiver, ParseError> {
    let mut raw = RawQuiver::default();
    for (idx, full_line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = full_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", name] if valid_name(name) => {
                raw.vertices.push((*name).to_string());
            }
            ["edge", name, ":", src, "->", tgt]
                if valid_name(name) && valid_name(src) && valid_name(tgt) =>
            {
                raw = raw.edge(name, src, tgt);
            }
            _ => {
                return Err(ParseError::Syntax {
                    line: line_no,
                    message: format!("unrecognized declaration `{line}`"),
                });
            }
        }
    }
    Ok(raw)
}

/// Prints the canonical text form; `parse_quiver` of the output reproduces
/// the quiver exactly.
pub fn print_quiver(q: &Quiver) -> String {
    let mut out = String::new();
    for v in q.vertices() {
        out.push_str("vertex ");
        out.push_str(q.vertex_name(v));
        out.push('\n');
    }
    for e in q.edges() {
        out.push_str("edge ");
        out.push_str(q.edge_name(e));
        out.push_str(" : ");
        out.push_str(q.vertex_name(q.src(e)));
        out.push_str(" -> ");
        out.push_str(q.vertex_name(q.tgt(e)));
        out.push('\n');
    }
    out
}
