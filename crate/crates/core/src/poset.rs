//! Finite strict partial orders: the gadget poset, axiom checking, height,
//! and comparability graphs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;
use crate::reduction::TripartiteGadget;

/// A finite set `0..n` with a strict relation `x < y` stored as ordered
/// pairs. The constructor does not enforce the order axioms; call
/// [`Poset::verify_axioms`] to check irreflexivity, antisymmetry, and
/// transitivity of the stored relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    element_count: usize,
    labels: Vec<Option<String>>,
    pairs: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("poset is empty")]
    Empty,
    #[error("strict relation contains a cycle")]
    CyclicRelation,
}

impl Poset {
    /// Builds a poset container from strict pairs. Panics if a pair refers
    /// to an element outside `0..n`.
    pub fn new(element_count: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        for &(x, y) in &pairs {
            assert!(x < element_count && y < element_count, "pair ({x}, {y}) out of range");
        }
        Poset {
            element_count,
            labels: vec![None; element_count],
            pairs,
        }
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        assert_eq!(labels.len(), self.element_count);
        self.labels = labels;
        self
    }

    pub fn element_count(&self) -> usize {
        self.element_count
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels[x].as_deref()
    }

    /// True iff `x < y` in the strict relation.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) || self.lt(y, x)
    }

    /// Strict pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Number of elements in a longest chain, via longest path over the
    /// strict relation.
    pub fn height(&self) -> Result<usize, PosetError> {
        if self.element_count == 0 {
            return Err(PosetError::Empty);
        }
        let n = self.element_count;
        let mut successors: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(x, y) in &self.pairs {
            successors[x].push(y);
            indegree[y] += 1;
        }
        let mut order: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut head = 0;
        let mut longest = vec![1usize; n];
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &successors[x] {
                longest[y] = longest[y].max(longest[x] + 1);
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    order.push(y);
                }
            }
        }
        if order.len() < n {
            return Err(PosetError::CyclicRelation);
        }
        Ok(*longest.iter().max().unwrap())
    }

    /// Graph on the same elements with an edge for every comparable pair.
    pub fn comparability_graph(&self) -> Graph {
        Graph::from_edges(self.element_count, self.pairs.iter().map(|&(x, y)| (x, y)))
            .expect("an antisymmetric irreflexive relation yields a simple graph")
            .with_labels(self.labels.clone())
    }

    /// Exhaustively checks the strict-order axioms with a full triple scan,
    /// listing every violation.
    pub fn verify_axioms(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        for &(x, y) in &self.pairs {
            if x == y {
                report.irreflexivity_violations.push(x);
            }
            if x < y && self.pairs.contains(&(y, x)) {
                report.antisymmetry_violations.push((x, y));
            }
        }
        let n = self.element_count;
        for x in 0..n {
            for y in 0..n {
                if !self.lt(x, y) {
                    continue;
                }
                for z in 0..n {
                    if z != x && self.lt(y, z) && !self.lt(x, z) {
                        report.transitivity_violations.push((x, y, z));
                    }
                }
            }
        }
        report
    }

    /// Text form: element count, then one `x < y` line per strict pair.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.element_count);
        for &(x, y) in &self.pairs {
            out.push_str(&format!("{x} < {y}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, PosetParseError> {
        let mut count: Option<usize> = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = || PosetParseError::MalformedLine {
                line: idx + 1,
                content: raw.to_string(),
            };
            match count {
                None => count = Some(line.parse().map_err(|_| malformed())?),
                Some(n) => {
                    let mut tokens = line.split_whitespace();
                    let x: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(malformed)?;
                    if tokens.next() != Some("<") {
                        return Err(malformed());
                    }
                    let y: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(malformed)?;
                    if tokens.next().is_some() {
                        return Err(malformed());
                    }
                    if x >= n || y >= n {
                        return Err(PosetParseError::ElementOutOfRange {
                            element: x.max(y),
                            count: n,
                        });
                    }
                    pairs.push((x, y));
                }
            }
        }
        let n = count.ok_or(PosetParseError::MissingHeader)?;
        Ok(Poset::new(n, pairs))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetParseError {
    #[error("poset text is empty; expected an element count")]
    MissingHeader,
    #[error("line {line}: expected `x < y`, found {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("element {element} out of range: poset has {count} elements")]
    ElementOutOfRange { element: usize, count: usize },
}

/// Every axiom violation found by an exhaustive scan.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub irreflexivity_violations: Vec<usize>,
    pub antisymmetry_violations: Vec<(usize, usize)>,
    pub transitivity_violations: Vec<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.irreflexivity_violations.is_empty()
            && self.antisymmetry_violations.is_empty()
            && self.transitivity_violations.is_empty()
    }
}

/// The gadget poset on V(H): every A-vertex lies below every B-vertex, and
/// each subdivision vertex sits strictly between its two neighbors. The
/// relation is transitive because a < c < b only ever composes to a core
/// pair a < b, which is always present.
pub fn build_gadget_poset(h: &TripartiteGadget) -> Poset {
    let mut pairs = BTreeSet::new();
    for &a in h.side_a() {
        for &b in h.side_b() {
            pairs.insert((a, b));
        }
    }
    for (&c, &(a, b)) in h.origin_map() {
        pairs.insert((a, c));
        pairs.insert((c, b));
    }
    Poset {
        element_count: h.graph().vertex_count(),
        labels: h.graph().labels().to_vec(),
        pairs,
    }
}
