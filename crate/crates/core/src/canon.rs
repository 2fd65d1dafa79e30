//! Canonical labelling by partition refinement and individualisation.
//!
//! Vertices with identical neighbourhoods (false twins) are merged first; the
//! resulting twin-free quotient is searched with vertex weights as colours and
//! the canonical graph is re-expanded class by class. Blow-ups therefore cost
//! no more than their base graph.
//!
//! The search tree individualises a vertex of the first non-singleton cell and
//! refines to an equitable partition. Leaves are compared by their permuted
//! adjacency matrix; the lexicographically largest one is canonical. Leaves
//! equivalent to the first leaf yield automorphisms, which prune children lying
//! in a common orbit of the pointwise stabiliser of the current path.

use crate::graph::Graph;
use crate::graph6;
use crate::twins::TwinQuotient;

/// Result of canonically labelling a graph.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `position[v]` is the index of vertex `v` in the canonical graph.
    pub position: Vec<usize>,
    /// Smallest vertex in the automorphism orbit of each vertex.
    pub orbit: Vec<usize>,
    /// graph6 encoding of the canonical graph; equal iff isomorphic.
    pub form: Vec<u8>,
}

impl Labeling {
    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.orbit[u] == self.orbit[v]
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit.iter().enumerate().filter(|&(v, &r)| v == r).count()
    }
}

pub fn canonical_form(g: &Graph) -> Vec<u8> {
    canonical_labeling(g).form
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    let tq = TwinQuotient::of(g);
    let weights = tq.weights();
    let classes = tq.classes;
    let mut quotient = Dense::new(tq.quotient.order());
    for (u, v) in tq.quotient.edges() {
        quotient.set(u, v);
    }
    let result = search(&quotient, &weights);

    let mut position = vec![0; n];
    let mut next = 0;
    for &c in &result.order {
        for &v in &classes[c] {
            position[v] = next;
            next += 1;
        }
    }
    debug_assert_eq!(next, n);

    let mut rep_of_class: Vec<usize> = vec![usize::MAX; classes.len()];
    for (c, &r) in result.orbit.iter().enumerate() {
        let m = classes[c][0];
        if m < rep_of_class[r] {
            rep_of_class[r] = m;
        }
    }
    let mut orbit = vec![0; n];
    for (c, members) in classes.iter().enumerate() {
        for &v in members {
            orbit[v] = rep_of_class[result.orbit[c]];
        }
    }

    let relabelled = g
        .permuted(&position)
        .expect("canonical position is a permutation");
    let form = graph6::encode(&relabelled).into_bytes();
    Labeling {
        position,
        orbit,
        form,
    }
}

/// Adjacency stored with `words` machine words per row.
struct Dense {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Dense {
    fn new(n: usize) -> Dense {
        let words = n.div_ceil(64).max(1);
        Dense {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + (v >> 6)] |= 1 << (v & 63);
        self.bits[v * self.words + (u >> 6)] |= 1 << (u & 63);
    }

    #[inline]
    fn has(&self, u: usize, v: usize) -> bool {
        (self.bits[u * self.words + (v >> 6)] >> (v & 63)) & 1 == 1
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }
}

struct SearchResult {
    /// Quotient vertices in canonical order.
    order: Vec<usize>,
    /// Orbit representative of each quotient vertex.
    orbit: Vec<usize>,
}

type Cells = Vec<Vec<usize>>;

struct Leaf {
    cert: Vec<u64>,
    order: Vec<usize>,
}

struct Searcher<'a> {
    q: &'a Dense,
    colour: &'a [u64],
    first: Option<Leaf>,
    first_path: Vec<usize>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

fn search(q: &Dense, colour: &[u64]) -> SearchResult {
    let n = q.n;
    if n == 0 {
        return SearchResult {
            order: Vec::new(),
            orbit: Vec::new(),
        };
    }
    let mut by_colour: Vec<(u64, usize)> = (0..n).map(|v| (colour[v], v)).collect();
    by_colour.sort_unstable();
    let mut cells: Cells = Vec::new();
    for (i, &(c, v)) in by_colour.iter().enumerate() {
        if i == 0 || by_colour[i - 1].0 != c {
            cells.push(Vec::new());
        }
        cells.last_mut().unwrap().push(v);
    }
    refine(q, &mut cells);

    let mut s = Searcher {
        q,
        colour,
        first: None,
        first_path: Vec::new(),
        best: None,
        autos: Vec::new(),
    };
    let mut path = Vec::new();
    s.descend(cells, &mut path);

    let mut uf = UnionFind::new(n);
    for a in &s.autos {
        for (v, &w) in a.iter().enumerate() {
            uf.union(v, w);
        }
    }
    let mut rep = vec![usize::MAX; n];
    for v in 0..n {
        let r = uf.find(v);
        if v < rep[r] {
            rep[r] = v;
        }
    }
    let orbit = (0..n).map(|v| rep[uf.find(v)]).collect();
    SearchResult {
        order: s.best.expect("search visits at least one leaf").order,
        orbit,
    }
}

impl Searcher<'_> {
    /// Returns `Some(d)` to unwind to the node at depth `d`.
    fn descend(&mut self, cells: Cells, path: &mut Vec<usize>) -> Option<usize> {
        let target = match cells.iter().position(|c| c.len() > 1) {
            Some(t) => t,
            None => return self.leaf(&cells, path),
        };
        let depth = path.len();
        let candidates = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for v in candidates {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, path) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(cell.iter().copied().filter(|&u| u != v).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            refine(self.q, &mut child);
            path.push(v);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn equivalent_to_explored(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.q.n);
        let mut any = false;
        for a in &self.autos {
            if path.iter().all(|&p| a[p] == p) {
                any = true;
                for (x, &y) in a.iter().enumerate() {
                    uf.union(x, y);
                }
            }
        }
        if !any {
            return false;
        }
        let rv = uf.find(v);
        explored.iter().any(|&u| uf.find(u) == rv)
    }

    fn leaf(&mut self, cells: &Cells, path: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let cert = certificate(self.q, self.colour, &order);
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                cert: cert.clone(),
                order: order.clone(),
            });
            self.first_path = path.to_vec();
            self.best = Some(Leaf { cert, order });
            return None;
        };
        if cert == first.cert {
            let mut gamma = vec![0; order.len()];
            for (p, &v) in first.order.iter().enumerate() {
                gamma[v] = order[p];
            }
            self.autos.push(gamma);
            let common = self
                .first_path
                .iter()
                .zip(path.iter())
                .take_while(|(a, b)| a == b)
                .count();
            return Some(common);
        }
        let best = self.best.as_ref().expect("best is set with first");
        if cert > best.cert {
            self.best = Some(Leaf { cert, order });
        } else if cert == best.cert {
            let mut gamma = vec![0; order.len()];
            for (p, &v) in best.order.iter().enumerate() {
                gamma[v] = order[p];
            }
            self.autos.push(gamma);
        }
        None
    }
}

/// Colours followed by the adjacency matrix in the given vertex order.
fn certificate(q: &Dense, colour: &[u64], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let words = n.div_ceil(64).max(1);
    let mut cert = Vec::with_capacity(n + n * words);
    cert.extend(order.iter().map(|&v| colour[v]));
    for &u in order {
        let mut row = vec![0u64; words];
        for (p, &v) in order.iter().enumerate() {
            if q.has(u, v) {
                // most significant bit first so that lexicographic order on
                // words matches lexicographic order on bits
                row[p >> 6] |= 1u64 << (63 - (p & 63));
            }
        }
        cert.extend(row);
    }
    cert
}

/// Refines `cells` to the coarsest equitable partition finer than it.
/// Split cells are ordered by their neighbour-count signatures, which keeps
/// the result invariant under relabelling.
fn refine(q: &Dense, cells: &mut Cells) {
    let words = q.words;
    loop {
        let ncells = cells.len();
        if ncells == q.n {
            return;
        }
        let mut masks = vec![0u64; ncells * words];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                masks[i * words + (v >> 6)] |= 1 << (v & 63);
            }
        }
        let mut next: Cells = Vec::with_capacity(ncells + 4);
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let row = q.row(v);
                    let sig = (0..ncells)
                        .map(|i| {
                            let m = &masks[i * words..(i + 1) * words];
                            row.iter()
                                .zip(m)
                                .map(|(a, b)| (a & b).count_ones())
                                .sum::<u32>()
                        })
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    let mut part: Vec<usize> = keyed[start..i].iter().map(|(_, v)| *v).collect();
                    part.sort_unstable();
                    next.push(part);
                    start = i;
                }
            }
        }
        let done = next.len() == ncells;
        *cells = next;
        if done {
            return;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        g.permuted(perm).unwrap()
    }

    #[test]
    fn cycle_relabelling_invariant() {
        let c5 = Graph::cycle(5).unwrap();
        let other = relabel(&c5, &[3, 0, 4, 1, 2]);
        assert_eq!(canonical_form(&c5), canonical_form(&other));
    }

    #[test]
    fn c6_differs_from_two_triangles() {
        let c6 = Graph::cycle(6).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let two_k3 = k3.disjoint_union(&k3).unwrap();
        assert_ne!(canonical_form(&c6), canonical_form(&two_k3));
    }

    #[test]
    fn orbits_of_path() {
        let p4 = Graph::path(4).unwrap();
        let l = canonical_labeling(&p4);
        assert!(l.same_orbit(0, 3));
        assert!(l.same_orbit(1, 2));
        assert!(!l.same_orbit(0, 1));
        assert_eq!(l.orbit_count(), 2);
    }

    #[test]
    fn twins_share_an_orbit() {
        let k = Graph::complete_bipartite(2, 3).unwrap();
        let l = canonical_labeling(&k);
        assert_eq!(l.orbit_count(), 2);
        assert!(l.same_orbit(2, 4));
    }

    #[test]
    fn edge_cases() {
        assert_eq!(canonical_form(&Graph::empty(0).unwrap()), b"?".to_vec());
        assert_eq!(canonical_form(&Graph::empty(1).unwrap()), b"@".to_vec());
        let e = Graph::empty(5).unwrap();
        assert_eq!(canonical_labeling(&e).orbit_count(), 1);
    }

    #[test]
    fn petersen_is_vertex_transitive() {
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(inner).chain(spokes).collect();
        let p = Graph::from_edges(10, &edges).unwrap();
        let l = canonical_labeling(&p);
        assert_eq!(l.orbit_count(), 1);
        let q = relabel(&p, &[9, 2, 7, 0, 5, 1, 8, 3, 6, 4]);
        assert_eq!(l.form, canonical_form(&q));
    }
}
