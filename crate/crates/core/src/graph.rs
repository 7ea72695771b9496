//! Undirected simple graphs: construction, complement, connectivity,
//! bipartition detection, and edge-list I/O.

use std::collections::VecDeque;

use thiserror::Error;

/// Errors from graph construction and edge-list parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge list is empty; expected a vertex count on the first line")]
    MissingHeader,
    #[error("line {line}: expected `u v`, found {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("self-loop {vertex}-{vertex} is not allowed")]
    SelfLoop { vertex: usize },
    #[error("vertex {vertex} out of range: graph has {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
}

/// An undirected simple graph on vertices `0..n`.
///
/// No self-loops, no duplicate edges; adjacency lists are kept sorted so
/// that iteration order (and everything serialized from it) is deterministic.
/// Graphs are immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Vec<Option<String>>,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            labels: vec![None; n],
        }
    }

    /// Builds a graph from an edge iterator. Repeated edges collapse to one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, count: n });
                }
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            adj,
            edge_count: edge_count / 2,
            labels: vec![None; n],
        })
    }

    /// Replaces the label table. `labels` must have one entry per vertex.
    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        assert_eq!(labels.len(), self.vertex_count(), "one label slot per vertex");
        self.labels = labels;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Label if present, otherwise the vertex id as text.
    pub fn display_label(&self, v: usize) -> String {
        match self.label(v) {
            Some(s) => s.to_string(),
            None => v.to_string(),
        }
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter().copied().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// True when both graphs have the same vertex count and edge set,
    /// ignoring labels.
    pub fn same_edge_set(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }

    /// The complement graph: `uv` is an edge iff `u != v` and `uv` is not an
    /// edge here. Labels carry over.
    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let mut adj = Vec::with_capacity(n);
        let mut edge_count = 0;
        for u in 0..n {
            let mut missing = Vec::with_capacity(n - 1 - self.degree(u));
            let mut present = self.adj[u].iter().copied().peekable();
            for v in 0..n {
                if present.peek() == Some(&v) {
                    present.next();
                    continue;
                }
                if v != u {
                    missing.push(v);
                }
            }
            edge_count += missing.len();
            adj.push(missing);
        }
        Graph {
            adj,
            edge_count: edge_count / 2,
            labels: self.labels.clone(),
        }
    }

    /// True iff every vertex is reachable from every other. The empty graph
    /// is connected by convention.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// Vertex degrees in non-decreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        degrees.sort_unstable();
        degrees
    }

    /// Two-colors the graph by breadth-first layering. On success the side
    /// containing the lowest-numbered vertex of each component becomes
    /// `side_a`; on failure returns one witness odd cycle.
    pub fn bipartition(&self) -> Result<BipartiteGraph, OddCycle> {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent: Vec<usize> = vec![usize::MAX; n];
        for root in 0..n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in self.neighbors(u) {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            parent[v] = u;
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => {
                            return Err(OddCycle {
                                cycle: odd_cycle_witness(&parent, u, v),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let side_a: Vec<usize> = (0..n).filter(|&v| color[v] == Some(false)).collect();
        let side_b: Vec<usize> = (0..n).filter(|&v| color[v] == Some(true)).collect();
        Ok(BipartiteGraph {
            graph: self.clone(),
            side_a,
            side_b,
        })
    }

    /// Parses the edge-list text format: first non-comment line is the vertex
    /// count, each following non-comment line is `u v`. Lines beginning with
    /// `#` and blank lines are ignored.
    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = || GraphError::MalformedLine {
                line: idx + 1,
                content: raw.to_string(),
            };
            match n {
                None => {
                    n = Some(line.parse().map_err(|_| malformed())?);
                }
                Some(count) => {
                    let mut tokens = line.split_whitespace();
                    let u: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(malformed)?;
                    let v: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(malformed)?;
                    if tokens.next().is_some() {
                        return Err(malformed());
                    }
                    if u == v {
                        return Err(GraphError::SelfLoop { vertex: u });
                    }
                    for w in [u, v] {
                        if w >= count {
                            return Err(GraphError::VertexOutOfRange { vertex: w, count });
                        }
                    }
                    edges.push((u, v));
                }
            }
        }
        let n = n.ok_or(GraphError::MissingHeader)?;
        Graph::from_edges(n, edges)
    }

    /// Serializes to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Reconstructs an odd closed cycle from BFS parent pointers once an edge
/// `uv` joins two vertices of the same color.
fn odd_cycle_witness(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let mut ancestors_u = vec![u];
    let mut x = u;
    while parent[x] != usize::MAX {
        x = parent[x];
        ancestors_u.push(x);
    }
    let mut path_v = vec![v];
    let mut y = v;
    while !ancestors_u.contains(&y) {
        y = parent[y];
        path_v.push(y);
    }
    // y is the lowest common ancestor; walk u's side down to it.
    let mut cycle: Vec<usize> = ancestors_u
        .iter()
        .copied()
        .take_while(|&z| z != y)
        .collect();
    cycle.extend(path_v.into_iter().rev());
    cycle
}

/// A graph together with a 2-coloring witness: each edge joins `side_a`
/// to `side_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Graph,
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

/// Invalid `(graph, side_a, side_b)` combinations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("side_a and side_b do not partition the vertex set")]
    NotAPartition,
    #[error("edge {u}-{v} has both endpoints on the same side")]
    EdgeWithinSide { u: usize, v: usize },
}

impl BipartiteGraph {
    /// Validates that the sides partition the vertices and every edge
    /// crosses between them.
    pub fn new(graph: Graph, side_a: Vec<usize>, side_b: Vec<usize>) -> Result<Self, BipartiteError> {
        let n = graph.vertex_count();
        let mut seen = vec![false; n];
        for &v in side_a.iter().chain(side_b.iter()) {
            if v >= n || seen[v] {
                return Err(BipartiteError::NotAPartition);
            }
            seen[v] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(BipartiteError::NotAPartition);
        }
        let mut in_a = vec![false; n];
        for &v in &side_a {
            in_a[v] = true;
        }
        for (u, v) in graph.edges() {
            if in_a[u] == in_a[v] {
                return Err(BipartiteError::EdgeWithinSide { u, v });
            }
        }
        Ok(BipartiteGraph { graph, side_a, side_b })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Side A in its stored order (`a_1, ..., a_s`).
    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    /// Side B in its stored order (`b_1, ..., b_t`).
    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }
}

/// Failure witness for [`Graph::bipartition`]: a closed cycle of odd length.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph is not bipartite: odd cycle {cycle:?}")]
pub struct OddCycle {
    pub cycle: Vec<usize>,
}
