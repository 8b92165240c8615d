//! Simple undirected graphs with stable string labels.
//!
//! Nodes carry external string labels and are addressed internally by dense
//! ids `0..n`. Graphs are immutable values: every mutation returns a new
//! graph, so scoring code can share references freely across threads.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

const KARATE_EDGES: &str = include_str!("../data/karate.edges");
const LESMIS_EDGES: &str = include_str!("../data/lesmis.edges");

/// An unordered node pair, stored with the smaller id first.
pub type Pair = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// Sorted neighbor lists, symmetric.
    adj: Vec<Vec<usize>>,
    /// Canonical edge list: each edge once as (i, j) with i < j, sorted.
    edges: Vec<Pair>,
}

/// A parsed graph plus any non-fatal observations made while reading it.
#[derive(Debug)]
pub struct LoadResult {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

impl Graph {
    /// Build a graph from explicit labels and edges over label indices.
    /// Rejects duplicate labels, self-loops, parallel edges, and ids out of
    /// range.
    pub fn new(labels: Vec<String>, edges: &[Pair]) -> Result<Graph> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut canonical: Vec<Pair> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::NodeOutOfRange { id: a.max(b), n });
            }
            if a == b {
                return Err(Error::SelfLoopEdge(labels[a].clone()));
            }
            canonical.push((a.min(b), a.max(b)));
        }
        canonical.sort_unstable();
        canonical.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &canonical {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { labels, index, adj, edges: canonical })
    }

    /// Parse the edge-list text format: one edge per line as two
    /// whitespace-separated labels, `#` starts a comment, blank lines are
    /// skipped. Labels are numbered in order of first appearance. Duplicate
    /// edges collapse to one with a warning; self-loops and lines without
    /// exactly two tokens are errors carrying the 1-based line number.
    pub fn load_edge_list(text: &str) -> Result<LoadResult> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut seen: HashMap<Pair, usize> = HashMap::new();
        let mut edges: Vec<Pair> = Vec::new();
        let mut warnings = Vec::new();

        let mut intern = |label: &str, labels: &mut Vec<String>| -> usize {
            if let Some(&i) = index.get(label) {
                i
            } else {
                let i = labels.len();
                labels.push(label.to_string());
                index.insert(label.to_string(), i);
                i
            }
        };

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            if tokens.len() != 2 {
                return Err(Error::MalformedLine { line, found: tokens.len() });
            }
            if tokens[0] == tokens[1] {
                return Err(Error::SelfLoop { line, label: tokens[0].to_string() });
            }
            let a = intern(tokens[0], &mut labels);
            let b = intern(tokens[1], &mut labels);
            let pair = (a.min(b), a.max(b));
            if let Some(first) = seen.get(&pair) {
                warnings.push(format!(
                    "line {line}: duplicate edge ({} {}) first seen at line {first}; collapsed",
                    tokens[0], tokens[1]
                ));
            } else {
                seen.insert(pair, line);
                edges.push(pair);
            }
        }
        let graph = Graph::new(labels, &edges)?;
        Ok(LoadResult { graph, warnings })
    }

    /// One of the two bundled reference datasets: `karate` (Zachary's karate
    /// club, 34 nodes / 78 edges) or `lesmis` (Les Misérables character
    /// co-appearances, 77 nodes / 254 edges).
    pub fn builtin_dataset(name: &str) -> Result<Graph> {
        let text = match name {
            "karate" => KARATE_EDGES,
            "lesmis" => LESMIS_EDGES,
            other => return Err(Error::UnknownDataset(other.to_string())),
        };
        let loaded = Graph::load_edge_list(text)?;
        debug_assert!(loaded.warnings.is_empty(), "bundled dataset has duplicates");
        Ok(loaded.graph)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All N(N-1)/2 unordered pairs.
    pub fn total_possible_links(&self) -> usize {
        self.n() * self.n().saturating_sub(1) / 2
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Neighbor ids of `i`, sorted ascending.
    pub fn neighbors(&self, i: usize) -> Result<&[usize]> {
        self.adj
            .get(i)
            .map(|v| v.as_slice())
            .ok_or(Error::NodeOutOfRange { id: i, n: self.n() })
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.adj[i].binary_search(&j).is_ok()
    }

    /// Canonical edge list, sorted lexicographically with i < j per pair.
    pub fn edges(&self) -> &[Pair] {
        &self.edges
    }

    /// All pairs with an edge, in lexicographic order.
    pub fn adjacent_pairs(&self) -> Vec<Pair> {
        self.edges.clone()
    }

    /// All pairs without an edge, in lexicographic order. Together with
    /// `adjacent_pairs` this partitions the N(N-1)/2 unordered pairs.
    pub fn nonadjacent_pairs(&self) -> Vec<Pair> {
        let n = self.n();
        let mut out = Vec::with_capacity(self.total_possible_links() - self.edges.len());
        for i in 0..n {
            let mut next_edge = self.adj[i].iter().copied().skip_while(|&j| j <= i).peekable();
            for j in (i + 1)..n {
                if next_edge.peek() == Some(&j) {
                    next_edge.next();
                } else {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// New graph without the given edges; every edge must currently exist.
    pub fn remove_edges(&self, remove: &[Pair]) -> Result<Graph> {
        let mut to_remove: Vec<Pair> = Vec::with_capacity(remove.len());
        for &(a, b) in remove {
            let pair = (a.min(b), a.max(b));
            if a == b || !self.is_adjacent(pair.0, pair.1) {
                return Err(Error::NoSuchEdge {
                    a: self.label_or_id(a),
                    b: self.label_or_id(b),
                });
            }
            to_remove.push(pair);
        }
        to_remove.sort_unstable();
        to_remove.dedup();
        let remaining: Vec<Pair> = self
            .edges
            .iter()
            .copied()
            .filter(|e| to_remove.binary_search(e).is_err())
            .collect();
        Graph::new(self.labels.clone(), &remaining)
    }

    /// New graph with the given edges added; every edge must be absent and
    /// may not be a self-loop.
    pub fn add_edges(&self, add: &[Pair]) -> Result<Graph> {
        let mut all = self.edges.clone();
        for &(a, b) in add {
            if a >= self.n() || b >= self.n() {
                return Err(Error::NodeOutOfRange { id: a.max(b), n: self.n() });
            }
            if a == b {
                return Err(Error::SelfLoopEdge(self.labels[a].clone()));
            }
            if self.is_adjacent(a, b) {
                return Err(Error::EdgeExists {
                    a: self.labels[a].clone(),
                    b: self.labels[b].clone(),
                });
            }
            all.push((a.min(b), a.max(b)));
        }
        let before = all.len();
        all.sort_unstable();
        all.dedup();
        if all.len() != before {
            // Duplicate within the additions themselves.
            return Err(Error::InvalidConfig("duplicate edge in additions".into()));
        }
        Graph::new(self.labels.clone(), &all)
    }

    /// Connected components as sorted id lists, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Serialize in the edge-list text format this module parses.
    pub fn to_edge_list_text(&self) -> String {
        let mut s = String::new();
        for &(a, b) in &self.edges {
            s.push_str(&self.labels[a]);
            s.push(' ');
            s.push_str(&self.labels[b]);
            s.push('\n');
        }
        s
    }

    fn label_or_id(&self, i: usize) -> String {
        self.labels.get(i).cloned().unwrap_or_else(|| format!("<{i}>"))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} nodes, {} edges)", self.n(), self.edge_count())
    }
}
