//! Finite simple graphs with a distinguished root vertex.
//!
//! Text format: a `graph root <LABEL>` header, then one `u v` edge per line.
//! A line with a single label declares an isolated vertex.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tree::{is_label, parse_edge_list, TreeError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error(transparent)]
    Parse(#[from] TreeError),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0} {1}`")]
    DuplicateEdge(String, String),
    #[error("graph is disconnected")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedGraph {
    labels: Vec<String>,
    adj: Vec<Vec<VertexId>>,
    root: VertexId,
}

impl RootedGraph {
    pub fn from_edges(
        labels: Vec<String>,
        edges: &[(VertexId, VertexId)],
        root: VertexId,
    ) -> Result<RootedGraph, GraphError> {
        let n = labels.len();
        if n == 0 || root >= n {
            return Err(TreeError::Empty.into());
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(labels[a].clone()));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge(
                    labels[a].clone(),
                    labels[b].clone(),
                ));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(RootedGraph { labels, adj, root })
    }

    pub fn parse(text: &str) -> Result<RootedGraph, GraphError> {
        let (table, edges, root) = parse_edge_list(text, |first| {
            match first.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["graph", "root", r] if is_label(r) => Ok(Some(r.to_string())),
                _ => Err("expected header `graph root <LABEL>`".to_string()),
            }
        })?;
        let root = root.expect("header always names the root");
        // The root label is interned first.
        debug_assert_eq!(table.labels[0], root);
        RootedGraph::from_edges(table.labels, &edges, 0)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<VertexId>] {
        &self.adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (a, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    /// Distances from the root; `None` for unreachable vertices.
    pub fn distances(&self) -> Vec<Option<usize>> {
        bfs_distances(&self.adj, self.root)
    }

    pub fn is_connected(&self) -> bool {
        self.distances().iter().all(Option::is_some)
    }
}

pub(crate) fn bfs_distances(adj: &[Vec<VertexId>], source: VertexId) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap_or(0);
        for &u in &adj[v] {
            if dist[u].is_none() {
                dist[u] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

impl FromStr for RootedGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        RootedGraph::parse(s)
    }
}

impl fmt::Display for RootedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph root {}", self.labels[self.root])?;
        for (v, nbrs) in self.adj.iter().enumerate() {
            if nbrs.is_empty() {
                writeln!(f, "{}", self.labels[v])?;
            }
        }
        for (a, b) in self.edges() {
            writeln!(f, "{} {}", self.labels[a], self.labels[b])?;
        }
        Ok(())
    }
}
