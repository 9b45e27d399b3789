//! Text formats: edge list, JSON, DOT.
//!
//! Edge list: an optional `n <count>` header, then one `u v` pair per line.
//! Blank lines and `#` comments are ignored. Without a header, `n` is the
//! largest label seen (1 for an empty list).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{bfs_levels, LabeledTree};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct TreeJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl LabeledTree {
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::TreeFormat(format!("line {}: {raw:?}", lineno + 1));
            match fields.as_slice() {
                ["n", count] if n.is_none() && edges.is_empty() => {
                    n = Some(count.parse::<usize>().map_err(|_| bad())?);
                }
                [u, v] => {
                    let u = u.parse::<usize>().map_err(|_| bad())?;
                    let v = v.parse::<usize>().map_err(|_| bad())?;
                    edges.push((u, v));
                }
                _ => return Err(bad()),
            }
        }
        let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(1));
        Self::new(n, &edges)
    }

    pub fn to_json(&self) -> String {
        let doc = TreeJson {
            n: self.n(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&doc).expect("tree JSON serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TreeJson = serde_json::from_str(text)?;
        let edges: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(doc.n, &edges)
    }

    /// JSON when the first non-blank character is `{`, edge list otherwise.
    pub fn from_text(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_edge_list(text)
        }
    }

    /// Undirected DOT graph; `annotate` adds `deg=…, level=…` to the labels.
    pub fn to_dot(&self, annotate: bool) -> String {
        let mut out = String::from("graph T {\n");
        if annotate {
            let levels = bfs_levels(self);
            for u in self.vertices() {
                let _ = writeln!(
                    out,
                    "  {u} [label=\"{u}\\ndeg={}, level={}\"];",
                    self.neighbors(u).len(),
                    levels.level(u)
                );
            }
        } else {
            for u in self.vertices() {
                let _ = writeln!(out, "  {u};");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}
