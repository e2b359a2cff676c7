//! The hypergraph file format.
//!
//! A document is one JSON object with fields `n`, `r`, `edges` and an
//! optional `name`. Vertices are 0-indexed. The canonical rendering puts each
//! edge on its own line in colex order, so parse errors can name a line.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use extremal::KGraph;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub r: usize,
    pub edges: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}, {}: {}", self.field, self.message),
            None => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// Line of the `index`-th inner array of the `edges` field, if it can be found.
fn edge_line(text: &str, index: usize) -> Option<usize> {
    let start = text.find("\"edges\"")?;
    let mut line = 1 + text[..start].matches('\n').count();
    let mut depth = 0usize;
    let mut seen = 0usize;
    for ch in text[start..].chars() {
        match ch {
            '\n' => line += 1,
            '[' => {
                depth += 1;
                if depth == 2 {
                    if seen == index {
                        return Some(line);
                    }
                    seen += 1;
                }
            }
            ']' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    None
}

impl HypergraphDocument {
    pub fn from_graph(g: &KGraph, name: Option<String>) -> Self {
        HypergraphDocument { name, n: g.n(), r: g.r(), edges: g.edge_lists() }
    }

    /// Parses and validates a document.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let doc: HypergraphDocument = serde_json::from_str(text).map_err(|e| ParseError {
            line: Some(e.line()),
            field: "document".into(),
            message: e.to_string(),
        })?;
        doc.validate(text)?;
        Ok(doc)
    }

    fn validate(&self, text: &str) -> Result<(), ParseError> {
        let fail = |field: String, line: Option<usize>, message: &str| {
            Err(ParseError { line, field, message: message.into() })
        };
        if self.n > extremal::kgraph::MAX_VERTICES {
            return fail("n".into(), None, "too many vertices");
        }
        if self.r > self.n {
            return fail("r".into(), None, "r exceeds n");
        }
        let mut seen = HashSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            let field = format!("edges[{i}]");
            let line = edge_line(text, i);
            if e.len() != self.r {
                return fail(field, line, "edge size ≠ r");
            }
            if let Some(&v) = e.iter().find(|&&v| v >= self.n) {
                return fail(field, line, &format!("vertex {v} out of range"));
            }
            let mask = e.iter().fold(0u64, |m, &v| m | 1 << v);
            if mask.count_ones() as usize != e.len() {
                return fail(field, line, "repeated vertex");
            }
            if !seen.insert(mask) {
                return fail(field, line, "duplicate edge");
            }
        }
        Ok(())
    }

    pub fn to_graph(&self) -> Result<KGraph, ParseError> {
        KGraph::new(self.n, self.r, self.edges.iter().map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v)))
            .map_err(|e| ParseError { line: None, field: "document".into(), message: e.to_string() })
    }

    /// The same document with edges sorted and in colex order.
    pub fn canonical(&self) -> Result<Self, ParseError> {
        Ok(Self::from_graph(&self.to_graph()?, self.name.clone()))
    }

    /// Canonical text: one edge per line.
    pub fn render(&self) -> String {
        let mut out = String::from("{\n");
        if let Some(name) = &self.name {
            let _ = writeln!(out, "  \"name\": {},", serde_json::to_string(name).expect("string serializes"));
        }
        let _ = writeln!(out, "  \"n\": {},\n  \"r\": {},", self.n, self.r);
        if self.edges.is_empty() {
            out.push_str("  \"edges\": []\n}\n");
            return out;
        }
        out.push_str("  \"edges\": [\n");
        for (i, e) in self.edges.iter().enumerate() {
            let items: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let sep = if i + 1 < self.edges.len() { "," } else { "" };
            let _ = writeln!(out, "    [{}]{sep}", items.join(", "));
        }
        out.push_str("  ]\n}\n");
        out
    }
}

/// Parses a document straight to a graph.
pub fn parse_hypergraph(text: &str) -> Result<KGraph, ParseError> {
    HypergraphDocument::parse(text)?.to_graph()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_parses() {
        let g = parse_hypergraph(r#"{"n":4,"r":2,"edges":[[0,1],[1,2],[2,3],[0,3]]}"#).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.degrees(), vec![2; 4]);
    }

    #[test]
    fn wrong_edge_size() {
        let text = "{\n  \"n\": 4,\n  \"r\": 2,\n  \"edges\": [\n    [0, 1],\n    [0, 1, 2]\n  ]\n}";
        let err = HypergraphDocument::parse(text).unwrap_err();
        assert_eq!(err.message, "edge size ≠ r");
        assert_eq!(err.field, "edges[1]");
        assert_eq!(err.line, Some(6));
    }

    #[test]
    fn duplicates_and_ranges() {
        let dup = HypergraphDocument::parse(r#"{"n":4,"r":2,"edges":[[0,1],[1,0]]}"#).unwrap_err();
        assert_eq!(dup.message, "duplicate edge");
        let out = HypergraphDocument::parse(r#"{"n":3,"r":2,"edges":[[0,3]]}"#).unwrap_err();
        assert!(out.message.contains("out of range"));
        let rep = HypergraphDocument::parse(r#"{"n":3,"r":2,"edges":[[1,1]]}"#).unwrap_err();
        assert_eq!(rep.message, "repeated vertex");
        let bad = HypergraphDocument::parse("{\"n\": 3,\n \"r\": }").unwrap_err();
        assert_eq!(bad.line, Some(2));
        assert!(HypergraphDocument::parse(r#"{"n":3,"r":2,"edges":[],"extra":1}"#).is_err());
    }

    #[test]
    fn render_is_canonical() {
        let doc = HypergraphDocument::parse(r#"{"name":"c4","n":4,"r":2,"edges":[[1,0],[1,2],[2,3],[0,3]]}"#).unwrap();
        let canon = doc.canonical().unwrap();
        assert_eq!(canon.edges, vec![vec![0, 1], vec![1, 2], vec![0, 3], vec![2, 3]]);
        assert_eq!(HypergraphDocument::parse(&canon.render()).unwrap(), canon);
    }
}
