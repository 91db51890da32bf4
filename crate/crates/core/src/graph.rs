//! Chemical graphs: simple, connected, maximum degree at most 3.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::edgetype::{validate_order_size, CountsProfile, EdgeTypeError, Point3, ValidPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order n = {0} is too small")]
    OrderTooSmall(usize),
    #[error("edge ({0}, {1}) is a loop or references a missing vertex")]
    BadEdge(u32, u32),
    #[error("edge ({0}, {1}) appears twice")]
    MultiEdge(u32, u32),
    #[error("vertex {0} has degree {1} > 3")]
    DegreeTooLarge(u32, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error(transparent)]
    Size(#[from] EdgeTypeError),
}

/// A simple connected graph with maximum degree at most 3 and `n >= 3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChemGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl<'de> Deserialize<'de> for ChemGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawGraph::deserialize(d)?;
        ChemGraph::new(raw.n, raw.edges).map_err(serde::de::Error::custom)
    }
}

impl ChemGraph {
    /// Validates and stores an edge list; edges are normalized to `u < v` and sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::OrderTooSmall(n));
        }
        let mut seen = BTreeSet::new();
        let mut degree = vec![0usize; n];
        for (u, v) in edges {
            if u == v || u as usize >= n || v as usize >= n {
                return Err(GraphError::BadEdge(u, v));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::MultiEdge(e.0, e.1));
            }
            for w in [u, v] {
                degree[w as usize] += 1;
                if degree[w as usize] > 3 {
                    return Err(GraphError::DegreeTooLarge(w, degree[w as usize]));
                }
            }
        }
        let g = ChemGraph {
            n,
            edges: seen.into_iter().collect(),
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        validate_order_size(n as i64, g.edges.len() as i64)?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn pair(&self) -> ValidPair {
        ValidPair::new(self.n as i64, self.edges.len() as i64).expect("validated on construction")
    }

    pub fn degrees(&self) -> Vec<u8> {
        let mut d = vec![0u8; self.n];
        for &(u, v) in &self.edges {
            d[u as usize] += 1;
            d[v as usize] += 1;
        }
        d
    }

    pub fn neighbors(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::with_capacity(3); self.n];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj
    }

    fn is_connected(&self) -> bool {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn point(&self) -> Point3 {
        profile_of(self).point()
    }

    /// Relabels vertices in breadth-first order from the lowest-degree,
    /// lowest-index vertex, visiting neighbours by (degree, old index).
    pub fn bfs_relabeled(&self) -> ChemGraph {
        let deg = self.degrees();
        let adj = self.neighbors();
        let start = (0..self.n).min_by_key(|&v| (deg[v], v)).expect("n >= 3");
        let mut new_id = vec![u32::MAX; self.n];
        let mut queue = std::collections::VecDeque::from([start]);
        new_id[start] = 0;
        let mut next = 1;
        while let Some(v) = queue.pop_front() {
            let mut nbrs: Vec<usize> = adj[v].iter().map(|&w| w as usize).collect();
            nbrs.sort_by_key(|&w| (deg[w], w));
            for w in nbrs {
                if new_id[w] == u32::MAX {
                    new_id[w] = next;
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (new_id[u as usize], new_id[v as usize]));
        ChemGraph::new(self.n, edges).expect("relabeling preserves validity")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "edges": self.edges })
    }

    /// Graphviz text; vertices carry their degree as a class attribute.
    pub fn to_dot(&self) -> String {
        let deg = self.degrees();
        let q = profile_of(self);
        let mut out = String::new();
        let [m12, m13, m22, m23, m33] = q.edge_counts();
        let _ = writeln!(out, "graph G {{");
        let _ = writeln!(
            out,
            "  label=\"n={} m={} ({m12},{m13},{m22},{m23},{m33})\";",
            self.n,
            self.edges.len()
        );
        for (v, d) in deg.iter().enumerate() {
            let _ = writeln!(out, "  {v} [degree={d}];");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Exact census obtained by scanning the edges with their endpoint degrees.
pub fn profile_of(g: &ChemGraph) -> CountsProfile {
    let deg = g.degrees();
    let mut m = [[0i64; 4]; 4];
    for &(u, v) in g.edges() {
        let (a, b) = (deg[u as usize], deg[v as usize]);
        m[a.min(b) as usize][a.max(b) as usize] += 1;
    }
    let mut counts = [0i64; 4];
    for &d in &deg {
        counts[d as usize] += 1;
    }
    CountsProfile {
        pair: g.pair(),
        m12: m[1][2],
        m13: m[1][3],
        m22: m[2][2],
        m23: m[2][3],
        m33: m[3][3],
        n1: counts[1],
        n2: counts[2],
        n3: counts[3],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    /// Two adjacent vertices joined to both ends of a path on `n - 2` vertices.
    TGraph,
}

pub fn family_graph(kind: Family, n: usize) -> Result<ChemGraph, GraphError> {
    let min = match kind {
        Family::Path | Family::Cycle => 3,
        Family::TGraph => 5,
    };
    if n < min {
        return Err(GraphError::OrderTooSmall(n));
    }
    let n32 = n as u32;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    match kind {
        Family::Path => edges.extend((1..n32).map(|v| (v - 1, v))),
        Family::Cycle => {
            edges.extend((1..n32).map(|v| (v - 1, v)));
            edges.push((0, n32 - 1));
        }
        Family::TGraph => {
            let end = n32 - 3;
            let (a, b) = (n32 - 2, n32 - 1);
            edges.extend((1..=end).map(|v| (v - 1, v)));
            edges.extend([(a, b), (a, 0), (a, end), (b, 0), (b, end)]);
        }
    }
    ChemGraph::new(n, edges)
}
