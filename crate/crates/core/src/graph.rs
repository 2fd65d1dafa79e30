//! Simple undirected graphs stored as fixed-width adjacency bit rows.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::bits::{BitRow, CAPACITY};
use crate::error::{Error, Result};

/// Symbolic vertex name. Blow-ups record the base vertex and the copy index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub base: String,
    pub copy: Option<usize>,
}

impl Label {
    pub fn named(base: impl Into<String>) -> Label {
        Label {
            base: base.into(),
            copy: None,
        }
    }

    pub fn copy_of(base: impl Into<String>, copy: usize) -> Label {
        Label {
            base: base.into(),
            copy: Some(copy),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.copy {
            Some(c) => write!(f, "{}:{}", self.base, c),
            None => f.write_str(&self.base),
        }
    }
}

/// A simple undirected graph on the dense vertex set `0..n`.
///
/// Adjacency is symmetric and irreflexive; every mutating method keeps it so.
/// Labels are optional and, when present, unique per vertex.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<BitRow>,
    labels: Option<Vec<Label>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > CAPACITY {
            return Err(Error::CapacityExceeded(n));
        }
        Ok(Graph {
            n,
            adj: vec![BitRow::EMPTY; n],
            labels: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph whose edges are the pairs `i < j` with `adjacent(i, j)`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        Graph::from_fn(n, |i, j| j == i + 1 || (i == 0 && j + 1 == n && n > 2))
    }

    pub fn path(n: usize) -> Result<Graph> {
        Graph::from_fn(n, |i, j| j == i + 1)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
        Graph::from_fn(a + b, |i, j| i < a && j >= a)
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Graph> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Graph {
        self.labels = None;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&Label> {
        self.labels.as_ref().map(|l| &l[v])
    }

    /// Index of the vertex carrying `label`, if labels are present.
    pub fn find_label(&self, label: &Label) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitRow {
        &self.adj[v]
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.adj
    }

    /// The full vertex set as a bit row.
    pub fn vertex_set(&self) -> BitRow {
        BitRow::prefix(self.n)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.min_degree();
        (self.max_degree() == d).then_some(d)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitRow::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_independent(&self, set: &BitRow) -> bool {
        set.iter().all(|v| !self.adj[v].intersects(set))
    }

    /// Some triangle `[a, b, c]` with `a < b < c`, if one exists.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                let common = self.adj[u] & self.adj[v];
                if let Some(w) = common.iter().find(|&w| w > v) {
                    return Some([u, v, w]);
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                if self.adj[u].intersects(&self.adj[v]) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff every non-adjacent pair of distinct vertices has a common neighbour.
    pub fn is_maximal_triangle_free(&self) -> Result<bool> {
        if let Some(t) = self.find_triangle() {
            return Err(Error::NotTriangleFree(t));
        }
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u].contains(v) && !self.adj[u].intersects(&self.adj[v]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Subgraph induced on `keep`, in the given order. Labels are carried over.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph> {
        for &v in keep {
            self.check_vertex(v)?;
        }
        let mut g = Graph::from_fn(keep.len(), |i, j| self.has_edge(keep[i], keep[j]))?;
        if let Some(labels) = &self.labels {
            g = g.with_labels(keep.iter().map(|&v| labels[v].clone()).collect())?;
        }
        Ok(g)
    }

    /// The graph with the listed vertices removed; survivors keep their relative order.
    pub fn delete_vertices(&self, remove: &[usize]) -> Result<Graph> {
        let gone = BitRow::from_indices(remove.iter().copied());
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Relabelled copy where old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::BadParams(format!(
                "permutation of length {} for graph of order {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::BadParams("not a permutation".into()));
            }
        }
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        if let Some(labels) = &self.labels {
            let mut out = vec![Label::named(""); self.n];
            for (v, l) in labels.iter().enumerate() {
                out[perm[v]] = l.clone();
            }
            g = g.with_labels(out)?;
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_set();
        let adj = (0..self.n)
            .map(|v| {
                let mut row = all.difference(&self.adj[v]);
                row.remove(v);
                row
            })
            .collect();
        Graph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
        }
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v)?;
        }
        Ok(g)
    }

    /// Mycielski's construction: vertices `0..n` copy `self`, `n..2n` are the
    /// shadows `u_i` (adjacent to `N(v_i)`), and `2n` is the apex.
    pub fn mycielskian(&self) -> Result<Graph> {
        let n = self.n;
        let mut g = Graph::empty(2 * n + 1)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
            g.add_edge(n + u, v)?;
            g.add_edge(u, n + v)?;
        }
        for i in 0..n {
            g.add_edge(n + i, 2 * n)?;
        }
        Ok(g)
    }

    /// Same vertex count and adjacency, ignoring labels.
    pub fn same_adjacency(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj == other.adj
    }

    pub fn independence_number(&self) -> usize {
        crate::mis::independence_number(self)
    }

    pub fn chromatic_number(&self) -> usize {
        crate::coloring::chromatic_number(self)
    }

    pub fn canonical_form(&self) -> Vec<u8> {
        crate::canon::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.n == other.n
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }

    pub fn to_graph6(&self) -> String {
        crate::graph6::encode(self)
    }

    pub fn from_graph6(line: &str) -> Result<Graph> {
        crate::graph6::decode(line)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.same_adjacency(other) && self.labels == other.labels
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, e={}, {})", self.n, self.edge_count(), self.to_graph6())
    }
}
