//! Exact chromatic number: DSATUR backtracking with iterative deepening on
//! the number of colours.

use crate::graph::Graph;
use crate::twins::TwinQuotient;

/// Exact chromatic number; 0 for the empty graph.
///
/// False twins can always share a colour, so the search runs on the twin
/// quotient.
pub fn chromatic_number(g: &Graph) -> usize {
    if g.order() == 0 {
        return 0;
    }
    let q = TwinQuotient::of(g).quotient;
    if q.edge_count() == 0 {
        return 1;
    }
    let upper = dsatur_greedy(&q);
    let mut lower = if is_bipartite(&q) { 2 } else { 3 };
    lower = lower.max(greedy_clique(&q));
    for c in lower..upper {
        if colourable(&q, c) {
            return c;
        }
    }
    upper
}

/// Proper colouring with at most `c` colours, if one exists.
pub fn colouring_with(g: &Graph, c: usize) -> Option<Vec<usize>> {
    let mut s = Dsatur::new(g, c);
    s.run(0).then(|| s.colour.iter().map(|c| c.unwrap()).collect())
}

fn colourable(g: &Graph, c: usize) -> bool {
    Dsatur::new(g, c).run(0)
}

fn is_bipartite(g: &Graph) -> bool {
    let n = g.order();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v).iter() {
                if side[u] == u8::MAX {
                    side[u] = 1 - side[v];
                    stack.push(u);
                } else if side[u] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

fn greedy_clique(g: &Graph) -> usize {
    let mut best = 1;
    for v in 0..g.order() {
        let mut cand = *g.neighbors(v);
        let mut size = 1;
        while let Some(u) = cand.iter().max_by_key(|&u| (cand & *g.neighbors(u)).count()) {
            size += 1;
            cand &= *g.neighbors(u);
        }
        best = best.max(size);
    }
    best
}

/// Number of colours used by plain greedy DSATUR.
fn dsatur_greedy(g: &Graph) -> usize {
    let n = g.order();
    let mut colour: Vec<Option<usize>> = vec![None; n];
    let mut used = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v].is_none())
            .max_by_key(|&v| {
                let mut seen = vec![false; used + 1];
                for u in g.neighbors(v).iter() {
                    if let Some(c) = colour[u] {
                        seen[c] = true;
                    }
                }
                (seen.iter().filter(|&&b| b).count(), g.degree(v))
            })
            .unwrap();
        let mut seen = vec![false; used + 1];
        for u in g.neighbors(v).iter() {
            if let Some(c) = colour[u] {
                seen[c] = true;
            }
        }
        let c = seen.iter().position(|&b| !b).unwrap();
        colour[v] = Some(c);
        used = used.max(c + 1);
    }
    used
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    colour: Vec<Option<usize>>,
    /// `count[v * k + c]`: neighbours of `v` holding colour `c`.
    count: Vec<u32>,
    saturation: Vec<usize>,
    max_used: usize,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, k: usize) -> Dsatur<'a> {
        let n = g.order();
        Dsatur {
            g,
            k,
            colour: vec![None; n],
            count: vec![0; n * k.max(1)],
            saturation: vec![0; n],
            max_used: 0,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = Some(c);
        for u in self.g.neighbors(v).iter() {
            let slot = &mut self.count[u * self.k + c];
            if *slot == 0 {
                self.saturation[u] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colour[v] = None;
        for u in self.g.neighbors(v).iter() {
            let slot = &mut self.count[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn run(&mut self, coloured: usize) -> bool {
        let n = self.g.order();
        if coloured == n {
            return true;
        }
        let v = (0..n)
            .filter(|&v| self.colour[v].is_none())
            .max_by_key(|&v| (self.saturation[v], self.g.degree(v)))
            .unwrap();
        if self.saturation[v] >= self.k {
            return false;
        }
        let prev_max = self.max_used;
        // new colours are interchangeable, so only the first unused one is tried
        let limit = self.k.min(self.max_used + 1);
        for c in 0..limit {
            if self.count[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            self.max_used = prev_max.max(c + 1);
            if self.run(coloured + 1) {
                return true;
            }
            self.unassign(v, c);
            self.max_used = prev_max;
        }
        false
    }
}
